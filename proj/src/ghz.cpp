#include "pdcnet/ghz.hpp"

#include "pdcnet/errors.hpp"
#include "pdcnet/symbolic.hpp"

#include <cmath>

namespace pdcnet {

ImplicationReport implication_check(const NetworkSpec& network, Complex g, int order_max) {
    if (network.parties != 3)
        throw std::invalid_argument("ghz: implication chain is the 3-party argument");
    const std::vector<double> phases(3, 0.0);

    ImplicationReport report;
    for (int inferred = 0; inferred < 3; ++inferred) {
        int off_a = (inferred + 1) % 3;
        int off_b = (inferred + 2) % 3;
        for (bool pump_on : {false, true}) {
            std::vector<bool> pumps(3, false);
            pumps[inferred] = pump_on;
            SymbolicState state = evolve_network_symbolic(network, pumps, order_max);
            auto joint = probability_polynomial(state, {off_a, off_b, inferred});
            auto conditioning = probability_polynomial(state, {off_a, off_b});
            if (!phase_independent(joint) || !phase_independent(conditioning))
                throw internal_consistency_error(
                    "ghz: pump-off probabilities must be phase independent");
            double pj = evaluate(joint, g, phases);
            double pc = evaluate(conditioning, g, phases);
            if (pc < 1e-15)
                throw undefined_conditional_error(
                    "ghz: conditioning double-click event has vanishing probability");
            ImplicationEntry entry;
            entry.inferred_party = inferred;
            entry.inferred_pump_on = pump_on;
            entry.conditional = pj / pc;
            entry.deviation = 1.0 - entry.conditional;
            entry.conditioning_probability = pc;
            report.max_deviation = std::max(report.max_deviation, entry.deviation);
            report.entries.push_back(entry);
        }
    }
    return report;
}

ParadoxGap paradox_gap(const NetworkSpec& network, Complex g, const std::vector<double>& phases,
                       int order_max) {
    if (network.parties != 3)
        throw std::invalid_argument("ghz: paradox gap is the 3-party statement");
    SymbolicState all_off = evolve_network_symbolic(network, {false, false, false}, order_max);
    SymbolicState all_on = evolve_network_symbolic(network, {true, true, true}, order_max);
    ParadoxGap result;
    result.lhs = evaluate(probability_polynomial(all_off, {0, 1, 2}), g, phases);
    result.rhs = evaluate(probability_polynomial(all_on, {0, 1, 2}), g, phases);
    result.gap = result.lhs - result.rhs;
    return result;
}

DegradationReport degradation_budget(const NetworkSpec& network, Complex g, int order_max) {
    DegradationReport report;
    const double gsq = std::norm(g);
    report.outside_small_g = gsq > 0.01 + 1e-12;

    ImplicationReport implications = implication_check(network, g, order_max);
    report.deviation = implications.max_deviation;
    report.per_g_squared = gsq > 0.0 ? report.deviation / gsq : 0.0;

    std::vector<double> phases(3, M_PI / 3.0);
    ParadoxGap gap = paradox_gap(network, g, phases, order_max);
    report.lhs = gap.lhs;
    report.gap = gap.gap;
    report.budget = 3.0 * report.deviation * gap.lhs;
    report.paradox_survives = gap.gap > report.budget;
    return report;
}

} // namespace pdcnet
