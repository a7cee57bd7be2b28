#include "pdcnet/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace pdcnet {

namespace {

void check_mode(const FockState& state, int mode) {
    if (mode < 0 || mode >= state.mode_count)
        throw std::invalid_argument("fock: mode index out of range");
}

} // namespace

FockState vacuum(int mode_count, int cutoff) {
    if (mode_count < 2 || mode_count % 2 != 0)
        throw std::invalid_argument("fock: mode_count must be even and >= 2");
    if (cutoff < 1) throw std::invalid_argument("fock: cutoff must be >= 1");
    FockState s;
    s.mode_count = mode_count;
    s.cutoff = cutoff;
    s.terms[Occupation(mode_count, 0)] = Complex(1.0, 0.0);
    return s;
}

FockState apply_pair_creation(const FockState& state, int mode_i, int mode_j) {
    check_mode(state, mode_i);
    check_mode(state, mode_j);
    if (mode_i == mode_j)
        throw std::invalid_argument("fock: pair creation needs two distinct modes");
    FockState out;
    out.mode_count = state.mode_count;
    out.cutoff = state.cutoff;
    out.leaked_weight = state.leaked_weight;
    for (const auto& [occ, amp] : state.terms) {
        if (occ[mode_i] + 1 > state.cutoff || occ[mode_j] + 1 > state.cutoff) {
            out.leaked_weight += std::norm(amp);
            continue;
        }
        Occupation next = occ;
        ++next[mode_i];
        ++next[mode_j];
        double factor = std::sqrt(double(next[mode_i])) * std::sqrt(double(next[mode_j]));
        out.terms[std::move(next)] += amp * factor;
    }
    return out;
}

FockState apply_pair_annihilation(const FockState& state, int mode_i, int mode_j) {
    check_mode(state, mode_i);
    check_mode(state, mode_j);
    if (mode_i == mode_j)
        throw std::invalid_argument("fock: pair annihilation needs two distinct modes");
    FockState out;
    out.mode_count = state.mode_count;
    out.cutoff = state.cutoff;
    out.leaked_weight = state.leaked_weight;
    for (const auto& [occ, amp] : state.terms) {
        if (occ[mode_i] == 0 || occ[mode_j] == 0) continue;
        double factor = std::sqrt(double(occ[mode_i])) * std::sqrt(double(occ[mode_j]));
        Occupation next = occ;
        --next[mode_i];
        --next[mode_j];
        out.terms[std::move(next)] += amp * factor;
    }
    return out;
}

FockState apply_number_phase(const FockState& state, int mode, double phi) {
    check_mode(state, mode);
    FockState out = state;
    if (phi == 0.0) return out;
    for (auto& [occ, amp] : out.terms) {
        amp *= std::polar(1.0, phi * occ[mode]);
    }
    return out;
}

double pattern_probability(const FockState& state, const std::map<int, int>& pattern) {
    for (const auto& [mode, count] : pattern) {
        check_mode(state, mode);
        if (count < 0) throw std::invalid_argument("fock: negative pattern count");
    }
    double p = 0.0;
    for (const auto& [occ, amp] : state.terms) {
        bool match = true;
        for (const auto& [mode, count] : pattern) {
            if (occ[mode] != count) {
                match = false;
                break;
            }
        }
        if (match) p += std::norm(amp);
    }
    return p;
}

std::complex<double> inner_product(const FockState& a, const FockState& b) {
    if (a.mode_count != b.mode_count)
        throw std::invalid_argument("fock: inner product needs equal mode counts");
    // Iterate the smaller map.
    const FockState& small = a.terms.size() <= b.terms.size() ? a : b;
    const FockState& large = a.terms.size() <= b.terms.size() ? b : a;
    Complex acc(0.0, 0.0);
    const bool small_is_a = &small == &a;
    for (const auto& [occ, amp] : small.terms) {
        auto it = large.terms.find(occ);
        if (it == large.terms.end()) continue;
        if (small_is_a)
            acc += std::conj(amp) * it->second;
        else
            acc += std::conj(it->second) * amp;
    }
    return acc;
}

double norm_sq(const FockState& state) {
    double n = 0.0;
    for (const auto& [occ, amp] : state.terms) n += std::norm(amp);
    return n;
}

void prune(FockState& state, double tau) {
    for (auto it = state.terms.begin(); it != state.terms.end();) {
        if (std::abs(it->second) <= tau)
            it = state.terms.erase(it);
        else
            ++it;
    }
}

std::string occupation_to_string(const Occupation& occ) {
    std::string s = "|";
    for (std::size_t i = 0; i < occ.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(occ[i]);
    }
    s += ">";
    return s;
}

} // namespace pdcnet
