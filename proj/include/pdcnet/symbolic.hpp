#ifndef PDCNET_SYMBOLIC_HPP
#define PDCNET_SYMBOLIC_HPP

#include "pdcnet/fock.hpp"
#include "pdcnet/network.hpp"
#include "pdcnet/rational.hpp"

#include <complex>
#include <map>
#include <optional>
#include <vector>

namespace pdcnet {

inline constexpr int kDefaultSymbolicOrder = 4;
inline constexpr int kMaxSymbolicOrder = 8;

// Exponent vector of e^{i sum_x k_x phi_x}, one entry per party.
using PhaseExponents = std::vector<int>;

// One monomial c * g^m * gbar^n * e^{i k.phi}.
struct AmplitudeTermKey {
    int g_power = 0;
    int gbar_power = 0;
    PhaseExponents phase;

    friend bool operator<(const AmplitudeTermKey& a, const AmplitudeTermKey& b) {
        if (a.g_power != b.g_power) return a.g_power < b.g_power;
        if (a.gbar_power != b.gbar_power) return a.gbar_power < b.gbar_power;
        return a.phase < b.phase;
    }
    friend bool operator==(const AmplitudeTermKey& a, const AmplitudeTermKey& b) {
        return a.g_power == b.g_power && a.gbar_power == b.gbar_power && a.phase == b.phase;
    }
};

using PolynomialAmplitude = std::map<AmplitudeTermKey, GaussianRational>;

/*
 * Perturbative state, exact in g and gbar up to total order order_max.
 *
 * Coefficients live in the factorial-scaled ladder basis: the physical
 * amplitude of occupation F is  coeff(F) * sqrt(prod_m F_m!).  In that basis a
 * pair creation multiplies a term by g and a pair annihilation by
 * gbar * n_i * n_j, so every coefficient stays Gaussian-rational for any pump
 * configuration. The scale is a plain integer whenever prod F_m! is a perfect
 * square, which covers every source-only (all pumps off) occupation.
 */
struct SymbolicState {
    int parties = 0;
    int order_max = kDefaultSymbolicOrder;
    std::map<Occupation, PolynomialAmplitude> amps;
};

SymbolicState vacuum_symbolic(int parties, int order_max);

// exp(i(g C + gbar A)) truncated at total monomial order order_max, applied
// term-by-term with exact series coefficients.
SymbolicState apply_squeezer_symbolic(const SymbolicState& state, ModeId mode_i, ModeId mode_j);

// Slot-1 phase shifter of one party, kept symbolic: adds occ(slot-1) to the
// party's phase exponent.
SymbolicState apply_phase_symbolic(const SymbolicState& state, int party);

// Same layer ordering as the numeric engine; stations act only where
// pump_on[x] is set.
SymbolicState evolve_network_symbolic(const NetworkSpec& network,
                                      const std::vector<bool>& pump_on,
                                      int order_max = kDefaultSymbolicOrder);

// Physical amplitude of an occupation when its ladder scale is an integer;
// nullopt when prod F_m! is not a perfect square.
std::optional<PolynomialAmplitude> exact_amplitude(const SymbolicState& state,
                                                   const Occupation& occ);

// Real polynomial coefficient on |g|^{2 p} e^{i k.phi}. Hermitian by
// construction: the entry at -k is the conjugate of the entry at k.
struct ProbabilityTermKey {
    int gsq_power = 0;
    PhaseExponents phase;

    friend bool operator<(const ProbabilityTermKey& a, const ProbabilityTermKey& b) {
        if (a.gsq_power != b.gsq_power) return a.gsq_power < b.gsq_power;
        return a.phase < b.phase;
    }
    friend bool operator==(const ProbabilityTermKey& a, const ProbabilityTermKey& b) {
        return a.gsq_power == b.gsq_power && a.phase == b.phase;
    }
};

struct ProbabilityPolynomial {
    int parties = 0;
    std::map<ProbabilityTermKey, GaussianRational> terms;
};

// Probability of the "11" double-click at every party in the subset, marginal
// over all other modes: sum over matching occupations of amp * conj(amp).
ProbabilityPolynomial probability_polynomial(const SymbolicState& state,
                                             const std::vector<int>& parties_subset);

double evaluate(const ProbabilityPolynomial& poly, Complex g,
                const std::vector<double>& phases);

// Exact substitution at rational |g|^2 with sum of phases equal to
// half_turns * pi. Requires every phase exponent vector to be a multiple of
// the all-ones vector, which the ring topology guarantees.
Rational evaluate_exact(const ProbabilityPolynomial& poly, const Rational& g_squared,
                        int half_turns);

// True when every phase exponent vector in the polynomial is zero.
bool phase_independent(const ProbabilityPolynomial& poly);

// Numeric value of a scaled-ladder coefficient polynomial at the given g and
// phases (multiply by sqrt(prod F_m!) for the physical amplitude).
Complex evaluate_amplitude(const PolynomialAmplitude& poly, Complex g,
                           const std::vector<double>& phases);

} // namespace pdcnet

#endif
