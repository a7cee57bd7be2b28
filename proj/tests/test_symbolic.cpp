#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdcnet/behavior.hpp"
#include "pdcnet/network.hpp"
#include "pdcnet/symbolic.hpp"

#include <cmath>
#include <vector>

using namespace pdcnet;

namespace {

struct GoldenTerm {
    int m, n;
    std::array<int, 3> k;
    Rational re, im;
};

struct GoldenKet {
    Occupation occ;
    std::vector<GoldenTerm> terms;
};

// The order-4 source-only state after the local phase shifts, one entry per
// retained ket. Phase exponents are per party (A, B, C).
std::vector<GoldenKet> golden_state() {
    auto R = [](std::int64_t n, std::int64_t d = 1) { return Rational(n, d); };
    std::vector<GoldenKet> kets;
    kets.push_back({{0, 0, 0, 0, 0, 0},
                    {{0, 0, {0, 0, 0}, R(1), R(0)},
                     {1, 1, {0, 0, 0}, R(-3, 2), R(0)},
                     {2, 2, {0, 0, 0}, R(11, 8), R(0)}}});
    kets.push_back({{0, 1, 1, 1, 1, 0},
                    {{2, 0, {0, 1, 1}, R(-1), R(0)}, {3, 1, {0, 1, 1}, R(13, 6), R(0)}}});
    kets.push_back({{1, 0, 0, 1, 1, 1},
                    {{2, 0, {1, 0, 1}, R(-1), R(0)}, {3, 1, {1, 0, 1}, R(13, 6), R(0)}}});
    kets.push_back({{1, 1, 1, 0, 0, 1},
                    {{2, 0, {1, 1, 0}, R(-1), R(0)}, {3, 1, {1, 1, 0}, R(13, 6), R(0)}}});
    kets.push_back({{0, 0, 0, 1, 1, 0},
                    {{1, 0, {0, 0, 1}, R(0), R(1)}, {2, 1, {0, 0, 1}, R(0), R(-11, 6)}}});
    kets.push_back({{0, 1, 1, 0, 0, 0},
                    {{1, 0, {0, 1, 0}, R(0), R(1)}, {2, 1, {0, 1, 0}, R(0), R(-11, 6)}}});
    kets.push_back({{1, 0, 0, 0, 0, 1},
                    {{1, 0, {1, 0, 0}, R(0), R(1)}, {2, 1, {1, 0, 0}, R(0), R(-11, 6)}}});
    kets.push_back({{0, 0, 0, 2, 2, 0},
                    {{2, 0, {0, 0, 2}, R(-1), R(0)}, {3, 1, {0, 0, 2}, R(13, 6), R(0)}}});
    kets.push_back({{0, 2, 2, 0, 0, 0},
                    {{2, 0, {0, 2, 0}, R(-1), R(0)}, {3, 1, {0, 2, 0}, R(13, 6), R(0)}}});
    kets.push_back({{2, 0, 0, 0, 0, 2},
                    {{2, 0, {2, 0, 0}, R(-1), R(0)}, {3, 1, {2, 0, 0}, R(13, 6), R(0)}}});
    kets.push_back({{0, 0, 0, 3, 3, 0}, {{3, 0, {0, 0, 3}, R(0), R(-1)}}});
    kets.push_back({{0, 3, 3, 0, 0, 0}, {{3, 0, {0, 3, 0}, R(0), R(-1)}}});
    kets.push_back({{3, 0, 0, 0, 0, 3}, {{3, 0, {3, 0, 0}, R(0), R(-1)}}});
    kets.push_back({{0, 1, 1, 2, 2, 0}, {{3, 0, {0, 1, 2}, R(0), R(-1)}}});
    kets.push_back({{0, 2, 2, 1, 1, 0}, {{3, 0, {0, 2, 1}, R(0), R(-1)}}});
    kets.push_back({{1, 0, 0, 2, 2, 1}, {{3, 0, {1, 0, 2}, R(0), R(-1)}}});
    kets.push_back({{2, 1, 1, 0, 0, 2}, {{3, 0, {2, 1, 0}, R(0), R(-1)}}});
    kets.push_back({{2, 0, 0, 1, 1, 2}, {{3, 0, {2, 0, 1}, R(0), R(-1)}}});
    kets.push_back({{1, 2, 2, 0, 0, 1}, {{3, 0, {1, 2, 0}, R(0), R(-1)}}});
    kets.push_back({{0, 0, 0, 4, 4, 0}, {{4, 0, {0, 0, 4}, R(1), R(0)}}});
    kets.push_back({{4, 0, 0, 0, 0, 4}, {{4, 0, {4, 0, 0}, R(1), R(0)}}});
    kets.push_back({{0, 4, 4, 0, 0, 0}, {{4, 0, {0, 4, 0}, R(1), R(0)}}});
    kets.push_back({{0, 1, 1, 3, 3, 0}, {{4, 0, {0, 1, 3}, R(1), R(0)}}});
    kets.push_back({{0, 3, 3, 1, 1, 0}, {{4, 0, {0, 3, 1}, R(1), R(0)}}});
    kets.push_back({{1, 0, 0, 3, 3, 1}, {{4, 0, {1, 0, 3}, R(1), R(0)}}});
    kets.push_back({{3, 1, 1, 0, 0, 3}, {{4, 0, {3, 1, 0}, R(1), R(0)}}});
    kets.push_back({{3, 0, 0, 1, 1, 3}, {{4, 0, {3, 0, 1}, R(1), R(0)}}});
    kets.push_back({{1, 3, 3, 0, 0, 1}, {{4, 0, {1, 3, 0}, R(1), R(0)}}});
    kets.push_back({{2, 1, 1, 1, 1, 2}, {{4, 0, {2, 1, 1}, R(1), R(0)}}});
    kets.push_back({{1, 2, 2, 1, 1, 1}, {{4, 0, {1, 2, 1}, R(1), R(0)}}});
    kets.push_back({{1, 1, 1, 2, 2, 1}, {{4, 0, {1, 1, 2}, R(1), R(0)}}});
    kets.push_back({{2, 2, 2, 0, 0, 2}, {{4, 0, {2, 2, 0}, R(1), R(0)}}});
    kets.push_back({{2, 0, 0, 2, 2, 2}, {{4, 0, {2, 0, 2}, R(1), R(0)}}});
    kets.push_back({{0, 2, 2, 2, 2, 0}, {{4, 0, {0, 2, 2}, R(1), R(0)}}});
    kets.push_back({{1, 1, 1, 1, 1, 1}, {{3, 0, {1, 1, 1}, R(0), R(-1)}}});
    return kets;
}

PolynomialAmplitude to_poly(const std::vector<GoldenTerm>& terms) {
    PolynomialAmplitude poly;
    for (const auto& t : terms) {
        AmplitudeTermKey key;
        key.g_power = t.m;
        key.gbar_power = t.n;
        key.phase = {t.k[0], t.k[1], t.k[2]};
        poly[key] = GaussianRational(t.re, t.im);
    }
    return poly;
}

Rational coefficient(const ProbabilityPolynomial& poly, int power, int uniform_k) {
    ProbabilityTermKey key;
    key.gsq_power = power;
    key.phase.assign(poly.parties, uniform_k);
    auto it = poly.terms.find(key);
    if (it == poly.terms.end()) return Rational(0);
    REQUIRE(it->second.im.is_zero());
    return it->second.re;
}

bool only_terms(const ProbabilityPolynomial& poly,
                const std::vector<std::pair<int, int>>& allowed) {
    for (const auto& [key, coeff] : poly.terms) {
        int uniform = key.phase.empty() ? 0 : key.phase[0];
        for (int k : key.phase)
            if (k != uniform) return false;
        bool ok = false;
        for (const auto& [p, u] : allowed)
            if (p == key.gsq_power && u == uniform) ok = true;
        if (!ok) return false;
    }
    return true;
}

} // namespace

TEST_CASE("single squeezer expansion at order 2") {
    SymbolicState s = vacuum_symbolic(3, 2);
    s = apply_squeezer_symbolic(s, ModeId{0, 1}, ModeId{0, 2});
    // |00>: 1 - g gbar / 2, |11>: i g, |22>: -g^2 (scale sqrt(2!2!) = 2).
    auto vacuum_amp = exact_amplitude(s, {0, 0, 0, 0, 0, 0}).value();
    AmplitudeTermKey unit{0, 0, {0, 0, 0}};
    AmplitudeTermKey loop{1, 1, {0, 0, 0}};
    CHECK(vacuum_amp.at(unit) == GaussianRational(Rational(1)));
    CHECK(vacuum_amp.at(loop) == GaussianRational(Rational(-1, 2)));

    auto pair_amp = exact_amplitude(s, {1, 1, 0, 0, 0, 0}).value();
    CHECK(pair_amp.at(AmplitudeTermKey{1, 0, {0, 0, 0}}) ==
          GaussianRational(Rational(0), Rational(1)));

    auto double_amp = exact_amplitude(s, {2, 2, 0, 0, 0, 0}).value();
    CHECK(double_amp.at(AmplitudeTermKey{2, 0, {0, 0, 0}}) == GaussianRational(Rational(-1)));
}

TEST_CASE("order zero is the identity") {
    NetworkSpec net = build_ring_network(3, 0.1);
    SymbolicState s = evolve_network_symbolic(net, {false, false, false}, 0);
    REQUIRE(s.amps.size() == 1);
    CHECK(s.amps.count(Occupation(6, 0)) == 1);
}

TEST_CASE("three-source vacuum coefficient") {
    NetworkSpec net = build_ring_network(3, 0.1);
    SymbolicState s = evolve_network_symbolic(net, {false, false, false}, 2);
    auto vac = exact_amplitude(s, Occupation(6, 0)).value();
    CHECK(vac.at(AmplitudeTermKey{1, 1, {0, 0, 0}}) == GaussianRational(Rational(-3, 2)));
}

TEST_CASE("source-only state matches the order-4 golden table exactly") {
    NetworkSpec net = build_ring_network(3, 0.1);
    SymbolicState s = evolve_network_symbolic(net, {false, false, false}, 4);

    auto golden = golden_state();
    CHECK(s.amps.size() == golden.size()); // support is exactly the golden kets

    for (const auto& ket : golden) {
        CAPTURE(occupation_to_string(ket.occ));
        auto amp = exact_amplitude(s, ket.occ);
        REQUIRE(amp.has_value());
        CHECK(*amp == to_poly(ket.terms));
    }
}

TEST_CASE("probability polynomials reproduce the measured-rate table") {
    NetworkSpec net = build_ring_network(3, 0.1);
    SymbolicCoincidenceTable table(net, 4);

    SUBCASE("single party, pump off") {
        auto p = table.coin(0b001, 0b000);
        CHECK(coefficient(p, 2, 0) == Rational(1));
        CHECK(coefficient(p, 3, 0) == Rational(-10, 3));
        CHECK(coefficient(p, 4, 0) == Rational(205, 36));
        CHECK(only_terms(p, {{2, 0}, {3, 0}, {4, 0}}));
    }
    SUBCASE("single party, pump on") {
        auto p = table.coin(0b001, 0b001);
        CHECK(coefficient(p, 1, 0) == Rational(1));
        CHECK(coefficient(p, 2, 0) == Rational(-8, 3));
        CHECK(coefficient(p, 3, 0) == Rational(-65, 9));
        CHECK(coefficient(p, 4, 0) == Rational(278, 9));
        CHECK(only_terms(p, {{1, 0}, {2, 0}, {3, 0}, {4, 0}}));
    }
    SUBCASE("pairs with pumps off") {
        for (int mask : {0b011, 0b110, 0b101}) {
            auto p = table.coin(mask, 0b000);
            CHECK(coefficient(p, 3, 0) == Rational(1));
            CHECK(only_terms(p, {{3, 0}, {4, 0}}));
            CHECK(coefficient(p, 4, 0) == Rational(0));
        }
    }
    SUBCASE("triples with zero, one and two pumps on") {
        for (int pumps : {0b000, 0b001, 0b011}) {
            auto p = table.coin(0b111, pumps);
            CHECK(coefficient(p, 3, 0) == Rational(1));
            CHECK(only_terms(p, {{3, 0}, {4, 0}}));
            CHECK(coefficient(p, 4, 0) == Rational(0));
        }
    }
    SUBCASE("pair with one pump on") {
        auto p = table.coin(0b011, 0b001);
        CHECK(coefficient(p, 3, 0) == Rational(1));
        CHECK(only_terms(p, {{3, 0}, {4, 0}}));
        CHECK(coefficient(p, 4, 0) == Rational(0));
    }
    SUBCASE("pair with both pumps on") {
        auto p = table.coin(0b011, 0b011);
        CHECK(coefficient(p, 2, 0) == Rational(1));
        CHECK(coefficient(p, 3, 0) == Rational(-16, 3));
        CHECK(coefficient(p, 4, 0) == Rational(361, 36));
        CHECK(only_terms(p, {{2, 0}, {3, 0}, {4, 0}}));
    }
    SUBCASE("all-pumps-on triple carries the interference term and no order-4 part") {
        auto p = table.coin(0b111, 0b111);
        CHECK(coefficient(p, 3, 0) == Rational(2));
        CHECK(coefficient(p, 3, 1) == Rational(1));
        CHECK(coefficient(p, 3, -1) == Rational(1));
        CHECK(only_terms(p, {{3, 0}, {3, 1}, {3, -1}}));
    }
}

TEST_CASE("probability polynomials are hermitian and phase-sum only") {
    NetworkSpec net = build_ring_network(3, 0.1);
    SymbolicCoincidenceTable table(net, 4);
    for (int mask = 1; mask < 8; ++mask) {
        for (int pumps = 0; pumps < 8; ++pumps) {
            if (pumps & ~mask) continue;
            const auto& poly = table.coin(mask, pumps);
            for (const auto& [key, coeff] : poly.terms) {
                int uniform = key.phase[0];
                for (int k : key.phase) CHECK(k == uniform);
                ProbabilityTermKey conj_key = key;
                for (int& k : conj_key.phase) k = -k;
                auto it = poly.terms.find(conj_key);
                REQUIRE(it != poly.terms.end());
                CHECK(it->second == coeff.conj());
            }
        }
    }
}

TEST_CASE("evaluation") {
    NetworkSpec net = build_ring_network(3, 0.1);
    SymbolicCoincidenceTable table(net, 4);
    const auto& interference = table.coin(0b111, 0b111);

    // Destructive interference at phase sum pi.
    CHECK(evaluate(interference, 0.1, {M_PI / 3, M_PI / 3, M_PI / 3}) ==
          doctest::Approx(0.0).epsilon(1e-18));
    CHECK(evaluate_exact(interference, Rational(1, 100), 1) == Rational(0));

    // Constructive: 4 |g|^6.
    CHECK(evaluate_exact(interference, Rational(1, 100), 0) == Rational(4, 1000000));

    // Zero coupling kills everything.
    CHECK(evaluate(table.coin(0b001, 0b001), 0.0, {0, 0, 0}) == 0.0);

    // Vacuum coefficient by direct substitution.
    SymbolicState s = evolve_network_symbolic(net, {false, false, false}, 4);
    auto vac = exact_amplitude(s, Occupation(6, 0)).value();
    Complex value = evaluate_amplitude(vac, 0.1, {0, 0, 0});
    CHECK(value.real() == doctest::Approx(0.98513750).epsilon(1e-12));
    CHECK(value.imag() == 0.0);
}

TEST_CASE("numeric and symbolic amplitudes agree on the source-only state") {
    const double g = 0.1;
    NetworkSpec net = build_ring_network(3, g);
    std::vector<PartySetting> all_off = {{false, 0.3}, {false, 1.1}, {false, 2.4}};
    FockState numeric = evolve_network(net, all_off).final_state;
    SymbolicState symbolic = evolve_network_symbolic(net, {false, false, false}, 4);
    std::vector<double> phases = {0.3, 1.1, 2.4};

    for (const auto& [occ, poly] : symbolic.amps) {
        auto amp = exact_amplitude(symbolic, occ);
        REQUIRE(amp.has_value());
        Complex predicted = evaluate_amplitude(*amp, g, phases);
        Complex actual(0, 0);
        auto it = numeric.terms.find(occ);
        if (it != numeric.terms.end()) actual = it->second;
        // Amplitudes truncated at order 4 differ from the full ones at order
        // g^5 and beyond.
        CHECK(std::abs(predicted - actual) < 20.0 * std::pow(g, 5));
    }
}

TEST_CASE("marginal convention keeps pump-restricted and full configurations apart") {
    // The order-truncated single-party marginal genuinely depends on the
    // spectator pumps; the coincidence table must therefore pin them off.
    NetworkSpec net = build_ring_network(3, 0.1);
    SymbolicState on_off_off = evolve_network_symbolic(net, {true, false, false}, 4);
    SymbolicState on_on_on = evolve_network_symbolic(net, {true, true, true}, 4);
    auto restricted = probability_polynomial(on_off_off, {0});
    auto full = probability_polynomial(on_on_on, {0});
    CHECK(restricted.terms != full.terms);
}

TEST_CASE("guards") {
    CHECK_THROWS_AS(vacuum_symbolic(3, 9), std::invalid_argument);
    CHECK_THROWS_AS(vacuum_symbolic(1, 4), std::invalid_argument);
    NetworkSpec net = build_ring_network(3, 0.1);
    SymbolicState s = evolve_network_symbolic(net, {false, false, false}, 2);
    CHECK_THROWS_AS(probability_polynomial(s, {}), std::invalid_argument);
    CHECK_THROWS_AS(probability_polynomial(s, {5}), std::invalid_argument);
}
