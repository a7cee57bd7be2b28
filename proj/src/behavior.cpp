#include "pdcnet/behavior.hpp"

#include "pdcnet/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace pdcnet {

namespace {

std::vector<PartySetting> settings_for(const SettingsProfile& profile, int s) {
    std::vector<PartySetting> out(profile.parties());
    for (int x = 0; x < profile.parties(); ++x) out[x] = profile.per_party[x][(s >> x) & 1];
    return out;
}

std::vector<int> mask_to_parties(int mask, int parties) {
    std::vector<int> out;
    for (int x = 0; x < parties; ++x)
        if (mask & (1 << x)) out.push_back(x);
    return out;
}

void clamp_cells(std::vector<double>& cells) {
    for (double& c : cells) {
        if (c < -kNegativeCellAbort)
            throw internal_consistency_error(
                "behavior: inclusion-exclusion produced a significantly negative cell");
        if (c < 0.0) c = 0.0;
    }
}

} // namespace

SettingsProfile SettingsProfile::on_off(const std::vector<double>& phases) {
    SettingsProfile profile;
    for (double phi : phases) {
        double folded = canonical_phase(phi);
        profile.per_party.push_back({PartySetting{false, folded}, PartySetting{true, folded}});
    }
    return profile;
}

SettingsProfile SettingsProfile::phases_only(const std::vector<double>& phases_setting1,
                                             const std::vector<double>& phases_setting2) {
    if (phases_setting1.size() != phases_setting2.size())
        throw std::invalid_argument("behavior: mismatched phase lists");
    SettingsProfile profile;
    for (std::size_t x = 0; x < phases_setting1.size(); ++x) {
        profile.per_party.push_back({PartySetting{true, canonical_phase(phases_setting1[x])},
                                     PartySetting{true, canonical_phase(phases_setting2[x])}});
    }
    return profile;
}

Behavior behavior_from_network(const NetworkSpec& network, const SettingsProfile& profile,
                               int cutoff) {
    if (profile.parties() != network.parties)
        throw std::invalid_argument("behavior: profile size mismatch");
    const int n = 1 << network.parties;
    Behavior b;
    b.parties = network.parties;
    b.p.assign(n, std::vector<double>(n, 0.0));

    for (int s = 0; s < n; ++s) {
        EvolutionReport report = evolve_network(network, settings_for(profile, s), cutoff);
        std::vector<double> coincidence(n, 1.0);
        for (int mask = 1; mask < n; ++mask)
            coincidence[mask] =
                coincidence_probability(report, mask_to_parties(mask, network.parties));
        b.p[s] = joint_from_coincidences(network.parties, coincidence);
        clamp_cells(b.p[s]);
    }
    return b;
}

SymbolicCoincidenceTable::SymbolicCoincidenceTable(const NetworkSpec& network, int order_max)
    : network_(network), order_max_(order_max) {}

const ProbabilityPolynomial& SymbolicCoincidenceTable::coin(int subset_mask, int pump_mask) {
    if (subset_mask == 0) throw std::invalid_argument("behavior: empty coincidence subset");
    if ((pump_mask & ~subset_mask) != 0)
        throw std::invalid_argument("behavior: pump mask must live inside the subset");
    auto key = std::make_pair(subset_mask, pump_mask);
    auto it = polys_.find(key);
    if (it != polys_.end()) return it->second;

    auto state_it = states_.find(pump_mask);
    if (state_it == states_.end()) {
        std::vector<bool> pumps(network_.parties);
        for (int x = 0; x < network_.parties; ++x) pumps[x] = (pump_mask >> x) & 1;
        state_it =
            states_.emplace(pump_mask, evolve_network_symbolic(network_, pumps, order_max_)).first;
    }
    ProbabilityPolynomial poly =
        probability_polynomial(state_it->second, mask_to_parties(subset_mask, network_.parties));
    return polys_.emplace(key, std::move(poly)).first->second;
}

Behavior behavior_from_symbolic(const NetworkSpec& network, const SettingsProfile& profile,
                                int order_max) {
    if (profile.parties() != network.parties)
        throw std::invalid_argument("behavior: profile size mismatch");
    const int n = 1 << network.parties;
    const Complex g = network.sources.front().g;
    SymbolicCoincidenceTable table(network, order_max);

    Behavior b;
    b.parties = network.parties;
    b.p.assign(n, std::vector<double>(n, 0.0));
    for (int s = 0; s < n; ++s) {
        auto settings = settings_for(profile, s);
        std::vector<double> phases(network.parties);
        for (int x = 0; x < network.parties; ++x) phases[x] = settings[x].phase;

        std::vector<double> coincidence(n, 1.0);
        for (int mask = 1; mask < n; ++mask) {
            int pump_mask = 0;
            for (int x = 0; x < network.parties; ++x) {
                if ((mask & (1 << x)) && settings[x].pump_on) pump_mask |= 1 << x;
            }
            coincidence[mask] = evaluate(table.coin(mask, pump_mask), g, phases);
        }
        b.p[s] = joint_from_coincidences(network.parties, coincidence);
        clamp_cells(b.p[s]);
    }
    return b;
}

RationalBehavior behavior_exact_on_off(const NetworkSpec& network, const Rational& g_squared,
                                       int half_turns, int order_max) {
    const int parties = network.parties;
    const int n = 1 << parties;
    SymbolicCoincidenceTable table(network, order_max);

    RationalBehavior b;
    b.parties = parties;
    b.p.assign(n, std::vector<Rational>(n));
    for (int s = 0; s < n; ++s) {
        // In the on/off profile the settings bits are the pump pattern.
        std::vector<Rational> coincidence(n, Rational(1));
        for (int mask = 1; mask < n; ++mask)
            coincidence[mask] = evaluate_exact(table.coin(mask, s & mask), g_squared, half_turns);
        b.p[s] = joint_from_coincidences(parties, coincidence);
        for (const Rational& cell : b.p[s]) {
            if (cell.sign() < 0)
                throw internal_consistency_error("behavior: exact cell came out negative");
        }
    }
    return b;
}

double normalization_violation(const Behavior& b) {
    double worst = 0.0;
    for (const auto& row : b.p) {
        double sum = 0.0;
        for (double c : row) sum += c;
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

double no_signaling_violation(const Behavior& b) {
    double worst = normalization_violation(b);
    const int n = b.settings_count();
    for (int x = 0; x < b.parties; ++x) {
        const int bit = 1 << x;
        for (int s = 0; s < n; ++s) {
            if (s & bit) continue;
            const int s2 = s | bit;
            // Marginal over party x must not depend on its setting.
            for (int o = 0; o < n; ++o) {
                if (o & bit) continue;
                double m1 = b.p[s][o] + b.p[s][o | bit];
                double m2 = b.p[s2][o] + b.p[s2][o | bit];
                worst = std::max(worst, std::abs(m1 - m2));
            }
        }
    }
    return worst;
}

} // namespace pdcnet
