#ifndef PDCNET_LHV_HPP
#define PDCNET_LHV_HPP

#include "pdcnet/behavior.hpp"
#include "pdcnet/rational.hpp"

#include <optional>
#include <vector>

namespace pdcnet {

inline constexpr double kLpTolerance = 1e-11;
inline constexpr int kMaxLpParties = 8;

// Deterministic local strategies, indexed 0 .. 4^N-1: two bits per party,
// bit 0 = outcome at setting 1, bit 1 = outcome at setting 2 (1 means "+").
int strategy_count(int parties);
std::vector<std::array<bool, 2>> decode_strategy(int parties, int index);

// The {0,1} behavior column of one strategy over all (s, o) cells, cell index
// s * 2^N + o, plus an implicit trailing 1 for the weight-sum row.
std::vector<int> strategy_column(int parties, int index);

/*
 * Outcome of the LHV membership test. Feasible verdicts carry strategy
 * weights reproducing the behavior; infeasible ones carry a Farkas
 * certificate, i.e. a Bell functional F(q) = sum_c coeff_c q_c + offset with
 * F <= 0 on every deterministic strategy and F > 0 on the behavior.
 */
template <class T>
struct BasicLhvVerdict {
    bool feasible = false;
    std::vector<T> weights;             // 4^N entries when feasible
    std::vector<T> certificate_cells;   // per (s,o) cell when infeasible
    T certificate_offset{};
    T violation{};                      // certificate value on the behavior
    T reconstruction_error{};           // max |M w - p| when feasible
    T max_column_value{};               // max over strategies of the certificate
    int pivots = 0;
};

using LhvVerdict = BasicLhvVerdict<double>;
using LhvVerdictExact = BasicLhvVerdict<Rational>;

// Phase-1 simplex membership test. The strategy matrix is 0/1 so the double
// tableau starts perfectly equilibrated; coincidence-scale separations of
// order |g|^{2N} sit far above the default tolerance. The exact-rational
// path delivers zero-tolerance verdicts from exact behaviors.
LhvVerdict lhv_feasible(const Behavior& behavior, double tol = kLpTolerance);
LhvVerdictExact lhv_feasible_exact(const RationalBehavior& behavior);

// Canonical comparison of a certificate against the lifted CH pattern: both
// functionals are evaluated on every deterministic strategy (which fixes them
// up to no-signaling rewriting) and matched up to positive scaling, searching
// party permutations, setting swaps and outcome relabelings.
template <class T>
struct InequalityMatch {
    bool matches_lifted_ch = false;
    T scale{};                    // certificate = scale * lifted CH on all strategies
    std::vector<T> vertex_values; // certificate functional per strategy
    T behavior_value{};
    bool used_symmetry = false;
};

// Re-derives a facet-sharp certificate from the behavior by maximizing the
// violation over all functionals that are non-positive on the local polytope,
// then canonicalizes it. `seed` (from lhv_feasible) is validated as a
// separating functional first.
InequalityMatch<double> certificate_to_inequality(const Behavior& behavior,
                                                  const LhvVerdict& seed,
                                                  double tol = kLpTolerance);
InequalityMatch<Rational> certificate_to_inequality_exact(const RationalBehavior& behavior,
                                                          const LhvVerdictExact& seed);

// Grid sweeps of the two measurement scenarios at N = 3.
struct SweepCell {
    double phase_sum = 0.0;     // on/off scenario: the common phase sum
    double t0 = 0.0, da = 0.0, db = 0.0, dc = 0.0; // phases-only parameters
    bool feasible = true;
    double violation = 0.0;
};

struct PhaseSweepReport {
    std::vector<SweepCell> cells;
    int infeasible_count = 0;
};

// All pumps switchable (on/off scenario): settings differ in pump only, one
// behavior per phase-sum grid point.
PhaseSweepReport on_off_phase_sweep(const NetworkSpec& network, double grid_step_over_pi,
                                    int order_max = kDefaultSymbolicOrder,
                                    double tol = kLpTolerance);

// All pumps on, two grid phases per party. Behaviors depend on the phase sums
// only, so the sweep runs over (T0, dA, dB, dC); every pair of grid settings
// maps onto one such cell.
PhaseSweepReport phases_only_sweep(const NetworkSpec& network, double grid_step_over_pi,
                                   int order_max = kDefaultSymbolicOrder,
                                   double tol = kLpTolerance);

} // namespace pdcnet

#endif
