#ifndef PDCNET_REFERENCE_TABLES_HPP
#define PDCNET_REFERENCE_TABLES_HPP

#include "pdcnet/fock.hpp"
#include "pdcnet/rational.hpp"
#include "pdcnet/symbolic.hpp"

#include <array>
#include <string>
#include <tuple>
#include <vector>

namespace pdcnet::reference {

// Order-4 amplitude table of the three-source (all pumps off) state after the
// local phase shifts. One entry per retained occupation; terms are
// (g power, gbar power, per-party phase exponents, re, im) with exact
// rational coefficients.
struct AmplitudeRow {
    Occupation occupation;
    std::vector<std::tuple<int, int, std::array<int, 3>, Rational, Rational>> terms;

    int min_order() const;
    PolynomialAmplitude expected(int order_max) const;
};

const std::vector<AmplitudeRow>& source_state_amplitudes();

// The tripartite double-click probability classes as polynomials in |g|^2:
// subset of parties measured, pump pattern inside that subset, and the exact
// coefficients per (power, uniform phase exponent).
struct ProbabilityClassRow {
    std::string name;
    int subset_mask;
    int pump_mask;
    std::vector<std::tuple<int, int, Rational>> coefficients;

    ProbabilityPolynomial expected(int parties) const;
};

const std::vector<ProbabilityClassRow>& probability_classes();

} // namespace pdcnet::reference

#endif
