#ifndef PDCNET_FOCK_HPP
#define PDCNET_FOCK_HPP

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace pdcnet {

using Complex = std::complex<double>;

// Sparse-state tolerances. Pruning sits at the double-precision floor;
// the norm slack absorbs accumulated rounding in long products.
inline constexpr double kPruneTolerance = 1e-16;
inline constexpr double kNormSlack = 1e-12;

// One optical mode: each party owns a slot-1 / slot-2 pair.
struct ModeId {
    int party = 0;
    int slot = 1; // 1 or 2

    int flat() const { return 2 * party + (slot - 1); }
    static ModeId from_flat(int index) { return {index / 2, index % 2 + 1}; }

    friend bool operator==(const ModeId& a, const ModeId& b) {
        return a.party == b.party && a.slot == b.slot;
    }
};

// Photon counts per mode, length = mode_count.
using Occupation = std::vector<int>;

inline int total_photons(const Occupation& occ) {
    int t = 0;
    for (int n : occ) t += n;
    return t;
}

/*
 * Sparse multimode bosonic state: occupation -> complex amplitude.
 *
 * States are immutable values; every operation returns a fresh state. Terms are
 * kept in lexicographic occupation order so dumps and iteration are
 * deterministic. `leaked_weight` accumulates the squared amplitude of terms a
 * pair-creation pushed past the per-mode cutoff.
 */
struct FockState {
    int mode_count = 0;
    int cutoff = 0;
    std::map<Occupation, Complex> terms;
    double leaked_weight = 0.0;
};

FockState vacuum(int mode_count, int cutoff);

// a_i^dag a_j^dag with sqrt(n+1) ladder factors; over-cutoff images are
// dropped and their source weight recorded.
FockState apply_pair_creation(const FockState& state, int mode_i, int mode_j);

// a_i a_j; terms with an empty mode vanish.
FockState apply_pair_annihilation(const FockState& state, int mode_i, int mode_j);

// exp(i * phi * n_mode); exactly norm-preserving.
FockState apply_number_phase(const FockState& state, int mode, double phi);

// Marginal probability of the given partial occupation: sum of |amp|^2 over
// terms matching every constrained mode.
double pattern_probability(const FockState& state, const std::map<int, int>& pattern);

std::complex<double> inner_product(const FockState& a, const FockState& b);
double norm_sq(const FockState& state);

// Drop terms with |amp| <= tau.
void prune(FockState& state, double tau = kPruneTolerance);

std::string occupation_to_string(const Occupation& occ);

} // namespace pdcnet

#endif
