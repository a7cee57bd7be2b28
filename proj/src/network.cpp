#include "pdcnet/network.hpp"

#include "pdcnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pdcnet {

NetworkSpec build_ring_network(int parties, Complex g) {
    if (parties < 2) throw std::invalid_argument("network: need at least 2 parties");
    if (std::abs(g) > kCouplingGuard)
        throw std::invalid_argument("network: |g| exceeds the engine validity guard");
    NetworkSpec net;
    net.parties = parties;
    for (int k = 0; k < parties; ++k) {
        int prev = (k + parties - 1) % parties;
        net.sources.push_back({ModeId{k, 1}, ModeId{prev, 2}, g});
        net.stations.push_back({ModeId{k, 1}, ModeId{k, 2}, g});
    }
    return net;
}

double canonical_phase(double phi) {
    double folded = std::fmod(phi, 2.0 * M_PI);
    if (folded < 0.0) folded += 2.0 * M_PI;
    return folded;
}

FockState apply_squeezer_exact(const FockState& state, const SqueezerSpec& spec,
                               int max_taylor_terms, double tau, int* terms_used) {
    if (spec.mode_i.flat() == spec.mode_j.flat())
        throw std::invalid_argument("network: degenerate squeezer modes");
    if (std::abs(spec.g) > kCouplingGuard)
        throw std::invalid_argument("network: |g| exceeds the engine validity guard");
    const int mi = spec.mode_i.flat();
    const int mj = spec.mode_j.flat();
    const Complex ig = Complex(0.0, 1.0) * spec.g;
    const Complex igbar = Complex(0.0, 1.0) * std::conj(spec.g);

    FockState result = state;
    FockState term = state;
    term.leaked_weight = 0.0;

    for (int j = 1; j <= max_taylor_terms; ++j) {
        // term_j = (i H / j) term_{j-1}, H = g a_i^dag a_j^dag + conj(g) a_i a_j
        FockState created = apply_pair_creation(term, mi, mj);
        FockState annihilated = apply_pair_annihilation(term, mi, mj);
        FockState next;
        next.mode_count = state.mode_count;
        next.cutoff = state.cutoff;
        for (const auto& [occ, amp] : created.terms) next.terms[occ] += ig * amp / double(j);
        for (const auto& [occ, amp] : annihilated.terms)
            next.terms[occ] += igbar * amp / double(j);
        prune(next, kPruneTolerance);
        term = std::move(next);

        double tn = std::sqrt(norm_sq(term));
        for (const auto& [occ, amp] : term.terms) result.terms[occ] += amp;
        if (tn < tau) {
            if (terms_used) *terms_used = j;
            prune(result, kPruneTolerance);
            return result;
        }
    }
    throw convergence_error("network: squeezer series did not converge within term budget");
}

EvolutionReport evolve_network(const NetworkSpec& network,
                               const std::vector<PartySetting>& settings, int cutoff) {
    if (static_cast<int>(settings.size()) != network.parties)
        throw std::invalid_argument("network: one setting per party required");

    EvolutionReport report;
    FockState state = vacuum(2 * network.parties, cutoff);
    double leaked = 0.0;

    auto tracked_squeeze = [&](const FockState& in, const SqueezerSpec& spec) {
        double before = norm_sq(in);
        int terms = 0;
        FockState out =
            apply_squeezer_exact(in, spec, kDefaultMaxTaylorTerms, kTaylorTolerance, &terms);
        double after = norm_sq(out);
        if (before > after) leaked += before - after;
        report.taylor_terms_used = std::max(report.taylor_terms_used, terms);
        return out;
    };

    for (const auto& src : network.sources) state = tracked_squeeze(state, src);
    for (int x = 0; x < network.parties; ++x) {
        state = apply_number_phase(state, ModeId{x, 1}.flat(), settings[x].phase);
    }
    for (int x = 0; x < network.parties; ++x) {
        if (settings[x].pump_on) state = tracked_squeeze(state, network.stations[x]);
    }

    report.final_state = std::move(state);
    report.leaked_weight = leaked;
    return report;
}

double coincidence_probability(const EvolutionReport& report,
                               const std::vector<int>& parties_subset) {
    if (parties_subset.empty())
        throw std::invalid_argument("network: empty coincidence subset");
    std::map<int, int> pattern;
    for (int party : parties_subset) {
        pattern[ModeId{party, 1}.flat()] = 1;
        pattern[ModeId{party, 2}.flat()] = 1;
    }
    return pattern_probability(report.final_state, pattern);
}

} // namespace pdcnet
