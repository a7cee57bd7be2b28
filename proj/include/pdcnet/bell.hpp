#ifndef PDCNET_BELL_HPP
#define PDCNET_BELL_HPP

#include "pdcnet/behavior.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace pdcnet {

// The six probabilities of a (possibly lifted) Clauser-Horne combination.
// value <= 0 under local realism.
template <class T>
struct ChTerms {
    T p_xy;   // both active parties unprimed
    T p_xyp;  // second active party primed
    T p_xpy;  // first active party primed
    T p_xpyp; // both primed (the interference term)
    T p_x;    // first active party alone
    T p_y;    // second active party alone

    T value() const { return p_xy + p_xyp + p_xpy - p_xpyp - p_x - p_y; }
};

/*
 * CH over two active parties, lifted by conjoining the "+" event at the
 * on-setting of every party in lifted_mask to all six terms. Unprimed means
 * setting 1, primed means setting 2. Marginal terms fix the absent active
 * party at setting 1; any choice agrees on no-signaling behaviors.
 */
template <class T>
ChTerms<T> lifted_ch_terms(const BasicBehavior<T>& b, int active_x, int active_y,
                           int lifted_mask) {
    if (active_x == active_y || (lifted_mask & (1 << active_x)) ||
        (lifted_mask & (1 << active_y)))
        throw std::invalid_argument("bell: active parties must be distinct and unlifted");
    const int bx = 1 << active_x;
    const int by = 1 << active_y;
    const int plus = bx | by | lifted_mask;

    auto joint = [&](bool x_primed, bool y_primed, int care) {
        int s = lifted_mask;
        if (x_primed) s |= bx;
        if (y_primed) s |= by;
        return marginal_probability(b, s, care, plus);
    };

    ChTerms<T> terms;
    terms.p_xy = joint(false, false, plus);
    terms.p_xyp = joint(false, true, plus);
    terms.p_xpy = joint(true, false, plus);
    terms.p_xpyp = joint(true, true, plus);
    terms.p_x = joint(false, false, bx | lifted_mask);
    terms.p_y = joint(false, false, by | lifted_mask);
    return terms;
}

// N-party lifting over parties {2..N-1}; reduces to the plain tripartite and
// four-party forms at N = 3, 4.
template <class T>
T n_lifted_ch_value(const BasicBehavior<T>& b) {
    if (b.parties < 3) throw std::invalid_argument("bell: lifting needs at least 3 parties");
    int lifted_mask = 0;
    for (int x = 2; x < b.parties; ++x) lifted_mask |= 1 << x;
    return lifted_ch_terms(b, 0, 1, lifted_mask).value();
}

template <class T>
T lifted_ch_value(const BasicBehavior<T>& b) {
    if (b.parties != 3) throw std::invalid_argument("bell: lifted CH is the 3-party form");
    return n_lifted_ch_value(b);
}

template <class T>
T doubly_lifted_ch_value(const BasicBehavior<T>& b) {
    if (b.parties != 4) throw std::invalid_argument("bell: doubly lifted CH is the 4-party form");
    return n_lifted_ch_value(b);
}

// CH lifted over one chosen party, the other two active.
template <class T>
T lifted_ch_value_over(const BasicBehavior<T>& b, int lifted_party) {
    if (b.parties != 3) throw std::invalid_argument("bell: single lifting needs 3 parties");
    int active_x = lifted_party == 0 ? 1 : 0;
    int active_y = lifted_party == 2 ? 1 : 2;
    return lifted_ch_terms(b, active_x, active_y, 1 << lifted_party).value();
}

// Sum of the three single liftings.
template <class T>
T symmetrized_ch_value(const BasicBehavior<T>& b) {
    return lifted_ch_value_over(b, 0) + lifted_ch_value_over(b, 1) + lifted_ch_value_over(b, 2);
}

// Symmetrized sum minus the all-primed triple coincidence; > 0 certifies
// genuine tripartite violation of local realism.
template <class T>
T genuine_tripartite_value(const BasicBehavior<T>& b) {
    const int all = (1 << b.parties) - 1;
    return symmetrized_ch_value(b) - marginal_probability(b, all, all, all);
}

template <class T>
T two_party_ch_value(const ChTerms<T>& terms) {
    return terms.value();
}

template <class T>
T two_party_ch_value(const BasicBehavior<T>& b) {
    if (b.parties != 2) throw std::invalid_argument("bell: two-party CH needs 2 parties");
    ChTerms<T> terms;
    terms.p_xy = marginal_probability(b, 0b00, 0b11, 0b11);
    terms.p_xyp = marginal_probability(b, 0b10, 0b11, 0b11);
    terms.p_xpy = marginal_probability(b, 0b01, 0b11, 0b11);
    terms.p_xpyp = marginal_probability(b, 0b11, 0b11, 0b11);
    terms.p_x = marginal_probability(b, 0b00, 0b01, 0b11);
    terms.p_y = marginal_probability(b, 0b00, 0b10, 0b11);
    return terms.value();
}

// Bayes-conditioned form: the lifted combination divided by the probability
// of the conditioning event (the lifted parties' on-setting "+" conjunction).
double conditional_ch_value(const Behavior& b);

// Full correlation functions E(s) = sum_o prod(+-1) P(o|s), indexed by the
// settings bitmask.
template <class T>
std::vector<T> correlation_tensor(const BasicBehavior<T>& b) {
    const int n = b.settings_count();
    std::vector<T> e(n, T{});
    for (int s = 0; s < n; ++s) {
        T acc{};
        for (int o = 0; o < n; ++o) {
            int minus_bits = 0;
            for (int m = ~o & (n - 1); m; m &= m - 1) ++minus_bits;
            if (minus_bits % 2 == 0)
                acc += b.p[s][o];
            else
                acc -= b.p[s][o];
        }
        e[s] = acc;
    }
    return e;
}

// Sum over k of |xi(k)| with xi(k) = 2^-N sum_s (-1)^{k.(s-1)} E(s); at most 1
// iff the correlation functions admit a local model.
double wwwzb_condition(const std::vector<double>& correlations, int parties);

struct VisibilityReport {
    double v_threshold_ch = 0.0;
    double v_threshold_genuine = 0.0;
};

// Closed-form thresholds of the leading-order model plus a bisection check on
// behaviors with the interference cell degraded to visibility V.
VisibilityReport visibility_thresholds();
VisibilityReport visibility_thresholds_bisection(
    const std::function<double(double)>& lifted_value_at_visibility,
    const std::function<double(double)>& genuine_value_at_visibility, double tolerance = 1e-6);

// Leading-order full-coincidence probability: phase-independent |g|^{2N} with
// any pump off; 2|g|^{2N}(1 + V cos(sum phi)) with every pump on.
double leading_order_coincidence(int parties, bool all_pumps_on, double g_squared,
                                 double phase_sum, double visibility = 1.0);

// The six CH terms of the leading-order model at the given phase sum.
ChTerms<double> leading_order_ch_terms(int parties, double g_squared, double phase_sum,
                                       double visibility = 1.0);

} // namespace pdcnet

#endif
