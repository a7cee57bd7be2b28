#ifndef PDCNET_GHZ_HPP
#define PDCNET_GHZ_HPP

#include "pdcnet/network.hpp"
#include "pdcnet/symbolic.hpp"

#include <vector>

namespace pdcnet {

// Tripartite double-click implications: with two pumps off, 11 results at
// those stations force the 11 result at the third station, whether its own
// pump is on or off.
struct ImplicationEntry {
    int inferred_party = 0;     // the station whose outcome is forced
    bool inferred_pump_on = false;
    double conditional = 0.0;   // P(11 there | 11 at the two off stations)
    double deviation = 0.0;     // 1 - conditional
    double conditioning_probability = 0.0;
};

struct ImplicationReport {
    std::vector<ImplicationEntry> entries; // 3 permutations x {off, on}
    double max_deviation = 0.0;
};

// Conditionals come from the exact perturbative polynomials; the pattern sums
// of the sparse engine cancel catastrophically at coincidence scales.
ImplicationReport implication_check(const NetworkSpec& network, Complex g,
                                    int order_max = kDefaultSymbolicOrder);

struct ParadoxGap {
    double lhs = 0.0; // P(11,11,11 | all pumps off)
    double rhs = 0.0; // P(11,11,11 | all pumps on) at the given phases
    double gap = 0.0; // lhs - rhs; > 0 exhibits the paradox
};

ParadoxGap paradox_gap(const NetworkSpec& network, Complex g, const std::vector<double>& phases,
                       int order_max = kDefaultSymbolicOrder);

// How much the idealized all-or-nothing implications weaken at finite g: the
// local-model slack 3 * max-deviation * lhs, to be beaten by the quantum gap.
struct DegradationReport {
    double deviation = 0.0;        // worst implication deviation at this g
    double per_g_squared = 0.0;    // deviation / |g|^2
    double budget = 0.0;           // 3 * deviation * lhs
    double lhs = 0.0;
    double gap = 0.0;              // paradox gap at phase sum pi
    bool outside_small_g = false;  // |g|^2 beyond the validity regime
    bool paradox_survives = false; // gap > budget
};

DegradationReport degradation_budget(const NetworkSpec& network, Complex g,
                                     int order_max = kDefaultSymbolicOrder);

} // namespace pdcnet

#endif
