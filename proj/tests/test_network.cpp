#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdcnet/errors.hpp"
#include "pdcnet/network.hpp"
#include "pdcnet/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace pdcnet;

namespace {

// Independent oracle: dense matrix exponential of the two-mode squeezer on
// the truncated (cutoff+1)^2 space, via plain Taylor summation on the full
// matrix. Kept separate from the sparse engine on purpose.
std::vector<Complex> dense_two_mode_squeezer(Complex g, int cutoff,
                                             const std::vector<Complex>& input) {
    const int d = cutoff + 1;
    const int dim = d * d;
    auto idx = [d](int a, int b) { return a * d + b; };
    std::vector<Complex> h(dim * dim, Complex(0, 0));
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            if (a + 1 < d && b + 1 < d) {
                double f = std::sqrt(double(a + 1)) * std::sqrt(double(b + 1));
                h[idx(a + 1, b + 1) * dim + idx(a, b)] += g * f;
            }
            if (a > 0 && b > 0) {
                double f = std::sqrt(double(a)) * std::sqrt(double(b));
                h[idx(a - 1, b - 1) * dim + idx(a, b)] += std::conj(g) * f;
            }
        }
    }
    std::vector<Complex> result = input;
    std::vector<Complex> term = input;
    for (int j = 1; j < 60; ++j) {
        std::vector<Complex> next(dim, Complex(0, 0));
        for (int r = 0; r < dim; ++r) {
            Complex acc(0, 0);
            for (int c = 0; c < dim; ++c) acc += h[r * dim + c] * term[c];
            next[r] = acc * Complex(0, 1) / double(j);
        }
        term = std::move(next);
        double tn = 0;
        for (const Complex& v : term) tn += std::norm(v);
        for (int r = 0; r < dim; ++r) result[r] += term[r];
        if (std::sqrt(tn) < 1e-18) break;
    }
    return result;
}

bool has_pair(const std::vector<SqueezerSpec>& specs, int pa, int sa, int pb, int sb) {
    return std::any_of(specs.begin(), specs.end(), [&](const SqueezerSpec& s) {
        return s.mode_i == ModeId{pa, sa} && s.mode_j == ModeId{pb, sb};
    });
}

} // namespace

TEST_CASE("ring topology for three parties") {
    NetworkSpec net = build_ring_network(3, 0.1);
    REQUIRE(net.sources.size() == 3);
    REQUIRE(net.stations.size() == 3);
    CHECK(has_pair(net.sources, 0, 1, 2, 2)); // a1 with c2
    CHECK(has_pair(net.sources, 1, 1, 0, 2)); // b1 with a2
    CHECK(has_pair(net.sources, 2, 1, 1, 2)); // c1 with b2
    CHECK(has_pair(net.stations, 0, 1, 0, 2));
    CHECK(has_pair(net.stations, 1, 1, 1, 2));
    CHECK(has_pair(net.stations, 2, 1, 2, 2));

    // Every mode in exactly one source and one station.
    std::vector<int> source_hits(6, 0), station_hits(6, 0);
    for (const auto& s : net.sources) {
        ++source_hits[s.mode_i.flat()];
        ++source_hits[s.mode_j.flat()];
    }
    for (const auto& s : net.stations) {
        ++station_hits[s.mode_i.flat()];
        ++station_hits[s.mode_j.flat()];
    }
    CHECK(std::all_of(source_hits.begin(), source_hits.end(), [](int h) { return h == 1; }));
    CHECK(std::all_of(station_hits.begin(), station_hits.end(), [](int h) { return h == 1; }));
}

TEST_CASE("ring topology for four and two parties") {
    NetworkSpec net4 = build_ring_network(4, 0.1);
    CHECK(has_pair(net4.sources, 0, 1, 3, 2)); // a1 with d2
    CHECK(has_pair(net4.sources, 1, 1, 0, 2));
    CHECK(has_pair(net4.sources, 2, 1, 1, 2));
    CHECK(has_pair(net4.sources, 3, 1, 2, 2));

    NetworkSpec net2 = build_ring_network(2, 0.1);
    CHECK(has_pair(net2.sources, 0, 1, 1, 2)); // a1 with b2
    CHECK(has_pair(net2.sources, 1, 1, 0, 2)); // b1 with a2

    CHECK_THROWS_AS(build_ring_network(1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(build_ring_network(3, 0.6), std::invalid_argument);
}

TEST_CASE("squeezer with zero coupling is the identity") {
    FockState v = vacuum(2, 6);
    FockState out = apply_squeezer_exact(v, {ModeId{0, 1}, ModeId{0, 2}, 0.0});
    REQUIRE(out.terms.size() == 1);
    CHECK(out.terms.at({0, 0}) == Complex(1.0, 0.0));
}

TEST_CASE("squeezer matches the dense matrix exponential") {
    const int cutoff = 6;
    const int d = cutoff + 1;
    for (Complex g : {Complex(0.1, 0.0), Complex(0.05, 0.08), Complex(-0.12, 0.02)}) {
        FockState v = vacuum(2, cutoff);
        FockState out = apply_squeezer_exact(v, {ModeId{0, 1}, ModeId{0, 2}, g});

        std::vector<Complex> dense_in(d * d, Complex(0, 0));
        dense_in[0] = Complex(1, 0);
        std::vector<Complex> dense_out = dense_two_mode_squeezer(g, cutoff, dense_in);

        for (int a = 0; a <= cutoff; ++a) {
            for (int b = 0; b <= cutoff; ++b) {
                Complex sparse_amp(0, 0);
                auto it = out.terms.find({a, b});
                if (it != out.terms.end()) sparse_amp = it->second;
                CHECK(std::abs(sparse_amp - dense_out[a * d + b]) < 1e-13);
            }
        }
    }
}

TEST_CASE("squeezed vacuum second order amplitudes") {
    // exp expansion by hand: amp(00) = 1 - |g|^2/2 + O(g^4), amp(11) = ig + O(g^3),
    // amp(22) = -g^2 + O(g^4).
    const double g = 0.1;
    FockState v = vacuum(2, 6);
    FockState out = apply_squeezer_exact(v, {ModeId{0, 1}, ModeId{0, 2}, g});
    CHECK(std::abs(out.terms.at({0, 0}) - Complex(1 - g * g / 2, 0)) < 5e-5);
    CHECK(std::abs(out.terms.at({1, 1}) - Complex(0, g)) < 1e-3); // next term (5/6)g^3
    CHECK(std::abs(out.terms.at({2, 2}) - Complex(-g * g, 0)) < 2e-4); // next term (7/6)g^4
    CHECK(norm_sq(out) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("squeezer convergence guard") {
    FockState v = vacuum(2, 6);
    CHECK_THROWS_AS(apply_squeezer_exact(v, {ModeId{0, 1}, ModeId{0, 2}, 0.3}, 2),
                    convergence_error);
    CHECK_THROWS_AS(apply_squeezer_exact(v, {ModeId{0, 1}, ModeId{0, 2}, 0.7}),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_squeezer_exact(v, {ModeId{0, 1}, ModeId{0, 1}, 0.1}),
                    std::invalid_argument);
}

TEST_CASE("network evolution at g = 0 stays vacuum") {
    NetworkSpec net = build_ring_network(3, 0.0);
    std::vector<PartySetting> settings(3, PartySetting{true, 0.3});
    EvolutionReport report = evolve_network(net, settings);
    REQUIRE(report.final_state.terms.size() == 1);
    CHECK(std::abs(report.final_state.terms.at(Occupation(6, 0)) - Complex(1, 0)) < 1e-15);
}

TEST_CASE("unitarity across couplings") {
    for (double g : {0.05, 0.1, 0.15}) {
        NetworkSpec net = build_ring_network(3, g);
        std::vector<PartySetting> settings = {{true, 0.4}, {true, 1.1}, {false, 2.0}};
        EvolutionReport report = evolve_network(net, settings, 6);
        CHECK(std::abs(norm_sq(report.final_state) + report.leaked_weight - 1.0) < 1e-10);
    }
}

TEST_CASE("source layer order is irrelevant") {
    NetworkSpec net = build_ring_network(3, Complex(0.09, 0.03));
    NetworkSpec permuted = net;
    std::rotate(permuted.sources.begin(), permuted.sources.begin() + 1, permuted.sources.end());
    std::swap(permuted.stations[0], permuted.stations[2]);
    std::vector<PartySetting> settings = {{true, 0.2}, {false, 0.9}, {true, 1.7}};
    FockState a = evolve_network(net, settings).final_state;
    FockState b = evolve_network(permuted, settings).final_state;
    for (const auto& [occ, amp] : a.terms) {
        Complex other(0, 0);
        auto it = b.terms.find(occ);
        if (it != b.terms.end()) other = it->second;
        CHECK(std::abs(amp - other) < 1e-13);
    }
}

TEST_CASE("coincidence probabilities against the paper polynomials") {
    const double g = 0.1;
    const double x = g * g;
    NetworkSpec net = build_ring_network(3, g);
    std::vector<PartySetting> all_off(3, PartySetting{false, 0.5});
    EvolutionReport report = evolve_network(net, all_off);

    double p_single = coincidence_probability(report, {0});
    double expected_single = x * x - (10.0 / 3.0) * x * x * x + (205.0 / 36.0) * x * x * x * x;
    CHECK(std::abs(p_single - expected_single) < 5e-9);

    double p_pair = coincidence_probability(report, {0, 1});
    CHECK(std::abs(p_pair - x * x * x) < 1e-7);

    EvolutionReport empty = evolve_network(build_ring_network(3, 0.0), all_off);
    CHECK(coincidence_probability(empty, {0, 1, 2}) == 0.0);
    CHECK_THROWS_AS(coincidence_probability(report, {}), std::invalid_argument);
}

TEST_CASE("pump-off coincidences are phase independent") {
    NetworkSpec net = build_ring_network(3, 0.1);
    std::vector<double> reference;
    for (double phi : {0.0, 0.7, 1.9, 3.0}) {
        std::vector<PartySetting> settings = {{false, phi}, {false, 2 * phi}, {true, 0.3 + phi}};
        EvolutionReport report = evolve_network(net, settings);
        double p = coincidence_probability(report, {0, 1, 2});
        reference.push_back(p);
    }
    for (double p : reference) CHECK(std::abs(p - reference.front()) < 1e-12);
}

TEST_CASE("all-on sixfold coincidence depends on the phase sum only") {
    NetworkSpec net = build_ring_network(3, 0.1);
    auto sixfold = [&](double pa, double pb, double pc) {
        std::vector<PartySetting> settings = {{true, pa}, {true, pb}, {true, pc}};
        return coincidence_probability(evolve_network(net, settings), {0, 1, 2});
    };
    // Equal sums, different splits.
    double p1 = sixfold(1.3, 0.4, 0.8);
    double p2 = sixfold(0.5, 1.0, 1.0);
    double p3 = sixfold(2.5, 0.0, 0.0);
    CHECK(std::abs(p1 - p2) < 1e-12);
    CHECK(std::abs(p1 - p3) < 1e-12);

    // Destructive interference at phase sum pi; what survives is the
    // genuine |g|^8 tail of the full evolution.
    double suppressed = sixfold(M_PI / 3, M_PI / 3, M_PI / 3);
    CHECK(suppressed < 5e-9);
}

TEST_CASE("four-party ring: numeric and exact engines agree") {
    const double g = 0.1;
    NetworkSpec net = build_ring_network(4, g);
    std::vector<PartySetting> settings = {{true, 0.3}, {true, 0.9}, {true, 1.4}, {false, 0.0}};
    EvolutionReport rep = evolve_network(net, settings, 5);
    double numeric = coincidence_probability(rep, {0, 1, 2, 3});

    SymbolicState state = evolve_network_symbolic(net, {true, true, true, false}, 8);
    double symbolic =
        evaluate(probability_polynomial(state, {0, 1, 2, 3}), g, {0.3, 0.9, 1.4, 0.0});
    // Residual tails start at |g|^14; their four-party combinatorial factors
    // are a few hundred.
    CHECK(std::abs(numeric - symbolic) < 2e-11);
    CHECK(numeric == doctest::Approx(std::pow(g * g, 4)).epsilon(0.25));
}
