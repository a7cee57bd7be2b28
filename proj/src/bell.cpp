#include "pdcnet/bell.hpp"

#include "pdcnet/errors.hpp"

#include <cmath>

namespace pdcnet {

double conditional_ch_value(const Behavior& b) {
    if (b.parties != 3) throw std::invalid_argument("bell: conditional CH is the 3-party form");
    const int lifted_mask = 0b100;
    double conditioning = marginal_probability(b, lifted_mask, lifted_mask, lifted_mask);
    if (conditioning < 1e-15)
        throw undefined_conditional_error("bell: conditioning event has vanishing probability");
    return lifted_ch_value(b) / conditioning;
}

double wwwzb_condition(const std::vector<double>& correlations, int parties) {
    const int n = 1 << parties;
    if (static_cast<int>(correlations.size()) != n)
        throw std::invalid_argument("bell: correlation tensor size mismatch");
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
        double xi = 0.0;
        for (int s = 0; s < n; ++s) {
            int bits = 0;
            for (int m = k & s; m; m &= m - 1) ++bits;
            xi += (bits % 2 == 0 ? 1.0 : -1.0) * correlations[s];
        }
        total += std::abs(xi) / n;
    }
    return total;
}

VisibilityReport visibility_thresholds() {
    // Leading order: CH = -(1 + 2V cos), genuine = -(5 + 8V cos), both in
    // units of |g|^{2N}; at cos = -1 the roots are 1/2 and 5/8.
    VisibilityReport report;
    report.v_threshold_ch = 0.5;
    report.v_threshold_genuine = 5.0 / 8.0;
    return report;
}

namespace {

double bisect_root(const std::function<double(double)>& f, double tolerance) {
    double lo = 0.0, hi = 1.0;
    double flo = f(lo), fhi = f(hi);
    if (flo > 0.0 || fhi < 0.0)
        throw internal_consistency_error("bell: visibility bisection not bracketed");
    while (hi - lo > tolerance) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) <= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

VisibilityReport visibility_thresholds_bisection(
    const std::function<double(double)>& lifted_value_at_visibility,
    const std::function<double(double)>& genuine_value_at_visibility, double tolerance) {
    VisibilityReport report;
    report.v_threshold_ch = bisect_root(lifted_value_at_visibility, tolerance);
    report.v_threshold_genuine = bisect_root(genuine_value_at_visibility, tolerance);
    return report;
}

double leading_order_coincidence(int parties, bool all_pumps_on, double g_squared,
                                 double phase_sum, double visibility) {
    double base = std::pow(g_squared, parties);
    if (!all_pumps_on) return base;
    return 2.0 * base * (1.0 + visibility * std::cos(phase_sum));
}

ChTerms<double> leading_order_ch_terms(int parties, double g_squared, double phase_sum,
                                       double visibility) {
    ChTerms<double> terms;
    double base = std::pow(g_squared, parties);
    terms.p_xy = base;
    terms.p_xyp = base;
    terms.p_xpy = base;
    terms.p_xpyp = leading_order_coincidence(parties, true, g_squared, phase_sum, visibility);
    terms.p_x = base;
    terms.p_y = base;
    return terms;
}

} // namespace pdcnet
