#ifndef PDCNET_NETWORK_HPP
#define PDCNET_NETWORK_HPP

#include "pdcnet/fock.hpp"

#include <complex>
#include <vector>

namespace pdcnet {

inline constexpr double kTaylorTolerance = 1e-18;
inline constexpr int kDefaultMaxTaylorTerms = 40;
inline constexpr int kDefaultCutoff = 6;
inline constexpr double kCouplingGuard = 0.5;

// One two-mode squeezer: exp(i(g a_i^dag a_j^dag + conj(g) a_i a_j)).
struct SqueezerSpec {
    ModeId mode_i;
    ModeId mode_j;
    Complex g;
};

/*
 * Interwoven ring of N parties: source k couples (party k, slot 1) with
 * (party k-1 mod N, slot 2); station x couples party x's own slot pair.
 * Every mode is touched by exactly one source and one station.
 */
struct NetworkSpec {
    int parties = 0;
    std::vector<SqueezerSpec> sources;
    std::vector<SqueezerSpec> stations;
};

// Local measurement-station knobs: pump on/off plus the slot-1 phase shift.
struct PartySetting {
    bool pump_on = false;
    double phase = 0.0;
};

// Phase folded into [0, 2 pi) for canonical comparison.
double canonical_phase(double phi);

struct EvolutionReport {
    FockState final_state;
    double leaked_weight = 0.0;
    int taylor_terms_used = 0;
};

NetworkSpec build_ring_network(int parties, Complex g);

// Truncated exponential series of the squeezer generator. Terminates when a
// series term's norm drops below tau; throws convergence_error otherwise.
// terms_used, when given, receives the series depth.
FockState apply_squeezer_exact(const FockState& state, const SqueezerSpec& spec,
                               int max_taylor_terms = kDefaultMaxTaylorTerms,
                               double tau = kTaylorTolerance, int* terms_used = nullptr);

// Vacuum -> all sources -> per-party slot-1 phases -> stations with pump on.
EvolutionReport evolve_network(const NetworkSpec& network,
                               const std::vector<PartySetting>& settings,
                               int cutoff = kDefaultCutoff);

// Probability that every party in the subset sees exactly one photon in each
// of its two modes, marginal over everything else.
double coincidence_probability(const EvolutionReport& report,
                               const std::vector<int>& parties_subset);

} // namespace pdcnet

#endif
