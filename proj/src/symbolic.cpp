#include "pdcnet/symbolic.hpp"

#include "pdcnet/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace pdcnet {

namespace {

int term_order(const AmplitudeTermKey& key) { return key.g_power + key.gbar_power; }

void add_term(PolynomialAmplitude& poly, const AmplitudeTermKey& key,
              const GaussianRational& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = poly.try_emplace(key, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) poly.erase(it);
    }
}

void add_amplitude(std::map<Occupation, PolynomialAmplitude>& amps, const Occupation& occ,
                   const PolynomialAmplitude& poly) {
    if (poly.empty()) return;
    auto& target = amps[occ];
    for (const auto& [key, coeff] : poly) add_term(target, key, coeff);
    if (target.empty()) amps.erase(occ);
}

// One application of the generator g C + gbar A in the scaled ladder basis:
// creation contributes g, annihilation contributes gbar * n_i * n_j.
std::map<Occupation, PolynomialAmplitude> apply_generator(
    const std::map<Occupation, PolynomialAmplitude>& amps, int mi, int mj, int order_max) {
    std::map<Occupation, PolynomialAmplitude> out;
    for (const auto& [occ, poly] : amps) {
        PolynomialAmplitude raised, lowered;
        for (const auto& [key, coeff] : poly) {
            if (term_order(key) + 1 > order_max) continue;
            AmplitudeTermKey up = key;
            ++up.g_power;
            add_term(raised, up, coeff);
            if (occ[mi] > 0 && occ[mj] > 0) {
                AmplitudeTermKey down = key;
                ++down.gbar_power;
                add_term(lowered, down, coeff * GaussianRational(Rational(occ[mi] * occ[mj])));
            }
        }
        if (!raised.empty()) {
            Occupation up_occ = occ;
            ++up_occ[mi];
            ++up_occ[mj];
            add_amplitude(out, up_occ, raised);
        }
        if (!lowered.empty()) {
            Occupation down_occ = occ;
            --down_occ[mi];
            --down_occ[mj];
            add_amplitude(out, down_occ, lowered);
        }
    }
    return out;
}

} // namespace

SymbolicState vacuum_symbolic(int parties, int order_max) {
    if (parties < 2) throw std::invalid_argument("symbolic: need at least 2 parties");
    if (order_max < 0 || order_max > kMaxSymbolicOrder)
        throw std::invalid_argument("symbolic: order_max outside [0, 8]");
    SymbolicState s;
    s.parties = parties;
    s.order_max = order_max;
    AmplitudeTermKey unit;
    unit.phase.assign(parties, 0);
    s.amps[Occupation(2 * parties, 0)][unit] = GaussianRational(Rational(1));
    return s;
}

SymbolicState apply_squeezer_symbolic(const SymbolicState& state, ModeId mode_i, ModeId mode_j) {
    const int mi = mode_i.flat();
    const int mj = mode_j.flat();
    if (mi == mj) throw std::invalid_argument("symbolic: degenerate squeezer modes");

    SymbolicState result = state;
    std::map<Occupation, PolynomialAmplitude> power = state.amps;
    Rational inv_factorial(1);
    for (int j = 1; j <= state.order_max && !power.empty(); ++j) {
        power = apply_generator(power, mi, mj, state.order_max);
        inv_factorial = inv_factorial / Rational(j);
        GaussianRational prefactor = GaussianRational::i_power(j) * GaussianRational(inv_factorial);
        for (const auto& [occ, poly] : power) {
            PolynomialAmplitude scaled;
            for (const auto& [key, coeff] : poly) add_term(scaled, key, coeff * prefactor);
            add_amplitude(result.amps, occ, scaled);
        }
    }
    return result;
}

SymbolicState apply_phase_symbolic(const SymbolicState& state, int party) {
    if (party < 0 || party >= state.parties)
        throw std::invalid_argument("symbolic: party index out of range");
    const int slot1 = ModeId{party, 1}.flat();
    SymbolicState result;
    result.parties = state.parties;
    result.order_max = state.order_max;
    for (const auto& [occ, poly] : state.amps) {
        int photons = occ[slot1];
        if (photons == 0) {
            result.amps[occ] = poly;
            continue;
        }
        PolynomialAmplitude shifted;
        for (const auto& [key, coeff] : poly) {
            AmplitudeTermKey next = key;
            next.phase[party] += photons;
            shifted[next] = coeff;
        }
        result.amps[occ] = std::move(shifted);
    }
    return result;
}

SymbolicState evolve_network_symbolic(const NetworkSpec& network,
                                      const std::vector<bool>& pump_on, int order_max) {
    if (static_cast<int>(pump_on.size()) != network.parties)
        throw std::invalid_argument("symbolic: one pump flag per party required");
    SymbolicState state = vacuum_symbolic(network.parties, order_max);
    for (const auto& src : network.sources)
        state = apply_squeezer_symbolic(state, src.mode_i, src.mode_j);
    for (int x = 0; x < network.parties; ++x) state = apply_phase_symbolic(state, x);
    for (int x = 0; x < network.parties; ++x) {
        if (pump_on[x])
            state = apply_squeezer_symbolic(state, network.stations[x].mode_i,
                                            network.stations[x].mode_j);
    }
    return state;
}

std::optional<PolynomialAmplitude> exact_amplitude(const SymbolicState& state,
                                                   const Occupation& occ) {
    auto it = state.amps.find(occ);
    if (it == state.amps.end()) return PolynomialAmplitude{};
    BigInt scale_sq(1);
    for (int n : occ) scale_sq *= factorial_big(n);
    auto root = perfect_sqrt(scale_sq);
    if (!root) return std::nullopt;
    GaussianRational scale{Rational(*root, BigInt(1))};
    PolynomialAmplitude out;
    for (const auto& [key, coeff] : it->second) out[key] = coeff * scale;
    return out;
}

ProbabilityPolynomial probability_polynomial(const SymbolicState& state,
                                             const std::vector<int>& parties_subset) {
    if (parties_subset.empty())
        throw std::invalid_argument("symbolic: empty coincidence subset");
    for (int party : parties_subset) {
        if (party < 0 || party >= state.parties)
            throw std::invalid_argument("symbolic: party index out of range");
    }
    ProbabilityPolynomial result;
    result.parties = state.parties;

    for (const auto& [occ, poly] : state.amps) {
        bool match = true;
        for (int party : parties_subset) {
            if (occ[ModeId{party, 1}.flat()] != 1 || occ[ModeId{party, 2}.flat()] != 1) {
                match = false;
                break;
            }
        }
        if (!match) continue;

        BigInt scale_sq(1);
        for (int n : occ) scale_sq *= factorial_big(n);
        GaussianRational weight{Rational(scale_sq, BigInt(1))};

        for (const auto& [k1, c1] : poly) {
            for (const auto& [k2, c2] : poly) {
                int p = k1.g_power + k2.gbar_power;
                if (p != k1.gbar_power + k2.g_power)
                    throw internal_consistency_error(
                        "symbolic: probability term with unbalanced g powers");
                ProbabilityTermKey key;
                key.gsq_power = p;
                key.phase.resize(state.parties);
                for (int x = 0; x < state.parties; ++x)
                    key.phase[x] = k1.phase[x] - k2.phase[x];
                GaussianRational contrib = c1 * c2.conj() * weight;
                auto [it, inserted] = result.terms.try_emplace(key, contrib);
                if (!inserted) {
                    it->second += contrib;
                    if (it->second.is_zero()) result.terms.erase(it);
                }
            }
        }
    }
    return result;
}

double evaluate(const ProbabilityPolynomial& poly, Complex g,
                const std::vector<double>& phases) {
    if (static_cast<int>(phases.size()) != poly.parties)
        throw std::invalid_argument("symbolic: one phase per party required");
    const double gsq = std::norm(g);
    Complex acc(0.0, 0.0);
    for (const auto& [key, coeff] : poly.terms) {
        double angle = 0.0;
        for (int x = 0; x < poly.parties; ++x) angle += key.phase[x] * phases[x];
        acc += Complex(coeff.re.to_double(), coeff.im.to_double()) *
               std::pow(gsq, key.gsq_power) * std::polar(1.0, angle);
    }
    return acc.real();
}

Rational evaluate_exact(const ProbabilityPolynomial& poly, const Rational& g_squared,
                        int half_turns) {
    GaussianRational acc;
    for (const auto& [key, coeff] : poly.terms) {
        int uniform = key.phase.empty() ? 0 : key.phase[0];
        for (int k : key.phase) {
            if (k != uniform)
                throw internal_consistency_error(
                    "symbolic: non-uniform phase exponents in probability");
        }
        int sign = (uniform * half_turns) % 2 == 0 ? 1 : -1;
        GaussianRational term = coeff * GaussianRational(Rational::pow(g_squared, key.gsq_power));
        if (sign < 0) term = -term;
        acc += term;
    }
    if (!acc.im.is_zero())
        throw internal_consistency_error("symbolic: probability evaluated to a complex value");
    return acc.re;
}

bool phase_independent(const ProbabilityPolynomial& poly) {
    for (const auto& [key, coeff] : poly.terms) {
        for (int k : key.phase)
            if (k != 0) return false;
    }
    return true;
}

Complex evaluate_amplitude(const PolynomialAmplitude& poly, Complex g,
                           const std::vector<double>& phases) {
    Complex acc(0.0, 0.0);
    const Complex gbar = std::conj(g);
    for (const auto& [key, coeff] : poly) {
        double angle = 0.0;
        for (std::size_t x = 0; x < phases.size() && x < key.phase.size(); ++x)
            angle += key.phase[x] * phases[x];
        Complex value(coeff.re.to_double(), coeff.im.to_double());
        acc += value * std::pow(g, key.g_power) * std::pow(gbar, key.gbar_power) *
               std::polar(1.0, angle);
    }
    return acc;
}

} // namespace pdcnet
