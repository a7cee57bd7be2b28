#ifndef PDCNET_BEHAVIOR_HPP
#define PDCNET_BEHAVIOR_HPP

#include "pdcnet/network.hpp"
#include "pdcnet/rational.hpp"
#include "pdcnet/symbolic.hpp"

#include <array>
#include <map>
#include <vector>

namespace pdcnet {

inline constexpr double kBehaviorTolerance = 1e-10;
inline constexpr double kNegativeCellAbort = 1e-9;
inline constexpr double kNegativeCellClamp = 1e-12;

// Two alternative settings per observer.
struct SettingsProfile {
    std::vector<std::array<PartySetting, 2>> per_party;

    int parties() const { return static_cast<int>(per_party.size()); }

    // Pump-switching scenario: setting 1 = pump off, setting 2 = pump on,
    // same local phase for both.
    static SettingsProfile on_off(const std::vector<double>& phases);

    // All pumps on; the two settings differ only in the local phase.
    static SettingsProfile phases_only(const std::vector<double>& phases_setting1,
                                       const std::vector<double>& phases_setting2);
};

/*
 * Joint probability table over settings vectors and dichotomic outcomes.
 *
 * Index convention: bit x of `s` picks party x's setting (0 = setting 1,
 * 1 = setting 2); bit x of `o` set means party x saw the "+" double-click
 * event. p[s][o] with s, o in [0, 2^N).
 */
template <class T>
struct BasicBehavior {
    int parties = 0;
    std::vector<std::vector<T>> p;

    int settings_count() const { return 1 << parties; }
    int outcomes_count() const { return 1 << parties; }
};

using Behavior = BasicBehavior<double>;
using RationalBehavior = BasicBehavior<Rational>;

// Probability that every party in `care_mask` reports the outcome given by
// `plus_mask`, marginal over the rest.
template <class T>
T marginal_probability(const BasicBehavior<T>& b, int s, int care_mask, int plus_mask) {
    T acc{};
    const int n = b.outcomes_count();
    for (int o = 0; o < n; ++o) {
        if ((o & care_mask) == (plus_mask & care_mask)) acc += b.p[s][o];
    }
    return acc;
}

// One evolution per settings vector; the joint table is recovered from subset
// coincidence marginals by inclusion-exclusion over the subset lattice.
Behavior behavior_from_network(const NetworkSpec& network, const SettingsProfile& profile,
                               int cutoff = kDefaultCutoff);

/*
 * Same table from the perturbative engine. Each subset marginal is computed
 * with pumps restricted to that subset (everyone else off), the configuration
 * in which the marginal is physically defined. The order-truncated evolution
 * is sub-unitary in a pump-dependent way, so marginals taken from the full
 * pump pattern would disagree across settings vectors at order |g|^{2N};
 * the restricted convention keeps the truncated table exactly no-signaling.
 */
Behavior behavior_from_symbolic(const NetworkSpec& network, const SettingsProfile& profile,
                                int order_max = kDefaultSymbolicOrder);

// Exact-rational table for the on/off profile with phase sum equal to
// half_turns * pi. Zero rounding anywhere; same marginal convention as
// behavior_from_symbolic.
RationalBehavior behavior_exact_on_off(const NetworkSpec& network, const Rational& g_squared,
                                       int half_turns, int order_max = kDefaultSymbolicOrder);

// Cached "11 at every party in T" polynomials, keyed by subset and by the
// pump pattern restricted to that subset. Only the all-parties subset with
// every pump on carries phase dependence; the ring forces everything else to
// be phase free.
class SymbolicCoincidenceTable {
public:
    SymbolicCoincidenceTable(const NetworkSpec& network, int order_max);
    const ProbabilityPolynomial& coin(int subset_mask, int pump_mask);
    const NetworkSpec& network() const { return network_; }
    int order_max() const { return order_max_; }

private:
    NetworkSpec network_;
    int order_max_;
    std::map<int, SymbolicState> states_;
    std::map<std::pair<int, int>, ProbabilityPolynomial> polys_;
};

// Max violation over normalization and all marginal-consistency checks.
double no_signaling_violation(const Behavior& b);
double normalization_violation(const Behavior& b);

// Deterministic single-strategy behavior: per party, an outcome for each of
// its two settings (true = "+").
template <class T>
BasicBehavior<T> strategy_behavior(int parties, const std::vector<std::array<bool, 2>>& strategy) {
    BasicBehavior<T> b;
    b.parties = parties;
    const int n = 1 << parties;
    b.p.assign(n, std::vector<T>(n, T{}));
    for (int s = 0; s < n; ++s) {
        int o = 0;
        for (int x = 0; x < parties; ++x) {
            if (strategy[x][(s >> x) & 1]) o |= 1 << x;
        }
        b.p[s][o] = T(1);
    }
    return b;
}

// Inclusion-exclusion from "all parties in T clicked +" marginals to the full
// joint cell; coincidence[mask] indexed by party bitmask, coincidence[0] = 1.
template <class T>
std::vector<T> joint_from_coincidences(int parties, const std::vector<T>& coincidence) {
    const int n = 1 << parties;
    std::vector<T> cells(n, T{});
    for (int o = 0; o < n; ++o) {
        T acc{};
        for (int t = o;; t = (t + 1) | o) {
            T term = coincidence[t];
            int extra = t & ~o;
            int bits = 0;
            for (int m = extra; m; m &= m - 1) ++bits;
            if (bits % 2 == 0)
                acc += term;
            else
                acc -= term;
            if (t == n - 1) break;
        }
        cells[o] = acc;
    }
    return cells;
}

} // namespace pdcnet

#endif
