#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdcnet/behavior.hpp"
#include "pdcnet/bell.hpp"
#include "pdcnet/lhv.hpp"

#include <cmath>
#include <random>

using namespace pdcnet;

namespace {

const std::vector<double> kThirdPi = {M_PI / 3, M_PI / 3, M_PI / 3};

Behavior quantum_behavior(double g, double phase_sum) {
    NetworkSpec net = build_ring_network(3, g);
    std::vector<double> phases = {phase_sum, 0.0, 0.0};
    return behavior_from_symbolic(net, SettingsProfile::on_off(phases));
}

} // namespace

TEST_CASE("leading-order lifted CH formula") {
    const double x = 0.01; // |g|^2
    for (double sum : {0.0, 1.0, M_PI / 2, 2.0, M_PI, 4.0}) {
        double value = leading_order_ch_terms(3, x, sum).value();
        double expected = -std::pow(x, 3) * (1.0 + 2.0 * std::cos(sum));
        CHECK(value == doctest::Approx(expected).epsilon(1e-12));
    }
    // Maximal violation |g|^6 at phase sum pi.
    CHECK(leading_order_ch_terms(3, x, M_PI).value() == doctest::Approx(std::pow(x, 3)));
}

TEST_CASE("lifted CH on deterministic strategies never exceeds zero") {
    for (int idx = 0; idx < strategy_count(3); ++idx) {
        Behavior b = strategy_behavior<double>(3, decode_strategy(3, idx));
        CHECK(lifted_ch_value(b) <= 0.0);
    }
}

TEST_CASE("lifted CH on random local mixtures stays non-positive") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int strategies = strategy_count(3);
    std::vector<Behavior> vertex;
    for (int idx = 0; idx < strategies; ++idx)
        vertex.push_back(strategy_behavior<double>(3, decode_strategy(3, idx)));

    for (int trial = 0; trial < 10000; ++trial) {
        // Sparse random mixture.
        Behavior mix;
        mix.parties = 3;
        mix.p.assign(8, std::vector<double>(8, 0.0));
        double total = 0.0;
        std::vector<std::pair<int, double>> weights;
        for (int pick = 0; pick < 5; ++pick) {
            double w = unit(rng);
            weights.emplace_back(int(unit(rng) * strategies) % strategies, w);
            total += w;
        }
        for (auto& [idx, w] : weights) {
            for (int s = 0; s < 8; ++s)
                for (int o = 0; o < 8; ++o) mix.p[s][o] += (w / total) * vertex[idx].p[s][o];
        }
        CHECK(lifted_ch_value(mix) <= 1e-12);
        CHECK(symmetrized_ch_value(mix) <= 1e-12);
        CHECK(genuine_tripartite_value(mix) <= 1e-12);
    }
}

TEST_CASE("two-party CH hand values") {
    ChTerms<double> zero{};
    CHECK(two_party_ch_value(zero) == 0.0);

    // Product behavior with P(X) = p: value = 3p^2 - p^2 - 2p = 2p^2 - 2p.
    double p = 0.5;
    ChTerms<double> product{p * p, p * p, p * p, p * p, p, p};
    CHECK(two_party_ch_value(product) == doctest::Approx(-0.5));
}

TEST_CASE("two-party ring violates CH at phase sum pi") {
    NetworkSpec net = build_ring_network(2, 0.1);
    Behavior b = behavior_from_symbolic(net, SettingsProfile::on_off({M_PI / 2, M_PI / 2}));
    double value = two_party_ch_value(b);
    CHECK(value > 0.0);
    // Leading order: |g|^4 at the optimum.
    CHECK(value == doctest::Approx(std::pow(0.01, 2)).epsilon(0.05));
}

TEST_CASE("symmetrized and genuine combinations at leading order") {
    const double x = 0.01;
    auto terms_at = [&](double sum, double v) { return leading_order_ch_terms(3, x, sum, v); };

    // Sum of three equal liftings.
    double sym_pi = 3.0 * terms_at(M_PI, 1.0).value();
    CHECK(sym_pi == doctest::Approx(3.0 * std::pow(x, 3)));
    double sym_zero = 3.0 * terms_at(0.0, 1.0).value();
    CHECK(sym_zero == doctest::Approx(-9.0 * std::pow(x, 3)));

    // Genuine bound: -(5 + 8 V cos) in units |g|^6.
    auto genuine = [&](double sum, double v) {
        return 3.0 * terms_at(sum, v).value() -
               leading_order_coincidence(3, true, x, sum, v);
    };
    CHECK(genuine(M_PI, 1.0) == doctest::Approx(3.0 * std::pow(x, 3)));
    CHECK(genuine(M_PI, 0.0) == doctest::Approx(-5.0 * std::pow(x, 3)));
    CHECK(genuine(M_PI, 5.0 / 8.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("quantum behavior combinations") {
    Behavior at_pi = quantum_behavior(0.1, M_PI);
    const double x3 = std::pow(0.01, 3);
    CHECK(lifted_ch_value(at_pi) == doctest::Approx(x3).epsilon(0.01));
    CHECK(symmetrized_ch_value(at_pi) == doctest::Approx(3 * x3).epsilon(0.01));
    CHECK(genuine_tripartite_value(at_pi) == doctest::Approx(3 * x3).epsilon(0.01));
    CHECK(conditional_ch_value(at_pi) > 0.0);

    Behavior at_zero = quantum_behavior(0.1, 0.0);
    CHECK(lifted_ch_value(at_zero) < 0.0);
    CHECK(lifted_ch_value(at_zero) == doctest::Approx(-3 * x3).epsilon(0.01));
}

TEST_CASE("argmax of the lifted CH sits at phase sum pi") {
    // Leading-order model scanned on the acceptance grid resolution.
    const double x = 0.01;
    double best_sum = -1.0, best_value = -1e9;
    for (int k = 0; k <= 200; ++k) {
        double sum = k * 0.01 * M_PI;
        double value = leading_order_ch_terms(3, x, sum).value();
        if (value > best_value) {
            best_value = value;
            best_sum = sum;
        }
    }
    CHECK(best_sum == doctest::Approx(M_PI));
}

TEST_CASE("violation window follows the quantum formula") {
    // -(1 + 2 cos) > 0 iff cos < -1/2, i.e. phase sums strictly inside
    // (2pi/3, 4pi/3). The grid never lands on the boundary.
    const double x = 0.01;
    for (int k = 0; k <= 200; ++k) {
        double sum = k * 0.01 * M_PI;
        bool violated = leading_order_ch_terms(3, x, sum).value() > 0.0;
        bool inside = std::cos(sum) < -0.5;
        CHECK(violated == inside);
    }
}

TEST_CASE("four and five party liftings at leading order") {
    const double x = 0.01;
    CHECK(leading_order_ch_terms(4, x, M_PI).value() == doctest::Approx(std::pow(x, 4)));
    CHECK(leading_order_ch_terms(4, x, 0.0).value() == doctest::Approx(-3.0 * std::pow(x, 4)));
    CHECK(leading_order_ch_terms(5, x, M_PI).value() == doctest::Approx(std::pow(x, 5)));

    // Zero behavior gives zero.
    ChTerms<double> zero{};
    CHECK(zero.value() == 0.0);
}

TEST_CASE("n-party lifting reduces to the three- and four-party forms") {
    Behavior b = quantum_behavior(0.1, 1.3);
    CHECK(n_lifted_ch_value(b) == lifted_ch_value(b));

    NetworkSpec net4 = build_ring_network(4, 0.1);
    Behavior b4 = behavior_from_symbolic(net4, SettingsProfile::on_off({2.0, 0.3, 0.0, 0.0}));
    CHECK(n_lifted_ch_value(b4) == doubly_lifted_ch_value(b4));
    CHECK(doubly_lifted_ch_value(b4) ==
          doctest::Approx(-std::pow(0.01, 4) * (1 + 2 * std::cos(2.3))).epsilon(0.01));
}

TEST_CASE("correlation tensor basics") {
    std::vector<std::array<bool, 2>> all_minus = {{false, false}, {false, false}, {false, false}};
    Behavior det = strategy_behavior<double>(3, all_minus);
    auto e = correlation_tensor(det);
    for (double v : e) CHECK(v == -1.0); // (-1)^3

    Behavior uniform;
    uniform.parties = 3;
    uniform.p.assign(8, std::vector<double>(8, 1.0 / 8.0));
    for (double v : correlation_tensor(uniform)) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("wwwzb condition") {
    SUBCASE("deterministic product correlations saturate at exactly one") {
        std::mt19937 rng(5);
        for (int trial = 0; trial < 50; ++trial) {
            int a = rng() & 3, b = rng() & 3, c = rng() & 3;
            std::vector<double> e(8);
            for (int s = 0; s < 8; ++s) {
                auto sign = [&](int local, int bit) {
                    return ((local >> bit) & 1) ? 1.0 : -1.0;
                };
                e[s] = sign(a, s & 1) * sign(b, (s >> 1) & 1) * sign(c, (s >> 2) & 1);
            }
            CHECK(wwwzb_condition(e, 3) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("zero correlations give zero") {
        CHECK(wwwzb_condition(std::vector<double>(8, 0.0), 3) == 0.0);
    }
    SUBCASE("mermin correlations reach two") {
        // E(s) = cos(theta_1 + theta_2 + theta_3), theta in {0, pi/2}.
        std::vector<double> e(8);
        for (int s = 0; s < 8; ++s) {
            int quarter_turns = (s & 1) + ((s >> 1) & 1) + ((s >> 2) & 1);
            e[s] = std::cos(quarter_turns * M_PI / 2.0);
        }
        CHECK(wwwzb_condition(e, 3) == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("feasible quantum behaviors satisfy the condition") {
        Behavior b = quantum_behavior(0.1, 0.2);
        LhvVerdict verdict = lhv_feasible(b);
        if (verdict.feasible) CHECK(wwwzb_condition(correlation_tensor(b), 3) <= 1.0 + 1e-9);
    }
}

TEST_CASE("visibility thresholds") {
    VisibilityReport analytic = visibility_thresholds();
    CHECK(analytic.v_threshold_ch == 0.5);
    CHECK(analytic.v_threshold_genuine == 0.625);

    // Bisection on the leading-order model reproduces them.
    const double x = 0.01;
    auto lifted = [&](double v) { return leading_order_ch_terms(3, x, M_PI, v).value(); };
    auto genuine = [&](double v) {
        return 3.0 * leading_order_ch_terms(3, x, M_PI, v).value() -
               leading_order_coincidence(3, true, x, M_PI, v);
    };
    VisibilityReport numeric = visibility_thresholds_bisection(lifted, genuine);
    CHECK(numeric.v_threshold_ch == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(numeric.v_threshold_genuine == doctest::Approx(0.625).epsilon(1e-5));

    // Full visibility violates both at phase sum pi.
    CHECK(lifted(1.0) > 0.0);
    CHECK(genuine(1.0) > 0.0);
}

TEST_CASE("wwwzb condition holds on every feasible sweep cell") {
    NetworkSpec net = build_ring_network(3, 0.1);
    for (int k = 0; k <= 8; ++k) {
        double sum = k * 0.25 * M_PI;
        Behavior b = behavior_from_symbolic(net, SettingsProfile::on_off({sum, 0.0, 0.0}));
        LhvVerdict verdict = lhv_feasible(b);
        if (verdict.feasible)
            CHECK(wwwzb_condition(correlation_tensor(b), 3) <= 1.0 + 1e-9);
    }
}

TEST_CASE("four-party leading coincidence with one pump off") {
    // |g|^8, phase free, with no order-4 correction.
    NetworkSpec net = build_ring_network(4, 0.1);
    SymbolicCoincidenceTable table(net, 4);
    const auto& poly = table.coin(0b1111, 0b1110);
    REQUIRE(poly.terms.size() == 1);
    const auto& [key, coeff] = *poly.terms.begin();
    CHECK(key.gsq_power == 4);
    CHECK(key.phase == PhaseExponents(4, 0));
    CHECK(coeff == GaussianRational(Rational(1)));
    CHECK(leading_order_coincidence(4, false, 0.01, 1.234) ==
          doctest::Approx(std::pow(0.01, 4)));
}
