#include "pdcnet/reference_tables.hpp"

namespace pdcnet::reference {

namespace {

Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

std::vector<AmplitudeRow> build_amplitudes() {
    std::vector<AmplitudeRow> rows;
    rows.push_back({{0, 0, 0, 0, 0, 0},
                    {{0, 0, {0, 0, 0}, R(1), R(0)},
                     {1, 1, {0, 0, 0}, R(-3, 2), R(0)},
                     {2, 2, {0, 0, 0}, R(11, 8), R(0)}}});
    auto pair_g2 = [&](Occupation occ, std::array<int, 3> k) {
        rows.push_back(
            {std::move(occ), {{2, 0, k, R(-1), R(0)}, {3, 1, k, R(13, 6), R(0)}}});
    };
    pair_g2({0, 1, 1, 1, 1, 0}, {0, 1, 1});
    pair_g2({1, 0, 0, 1, 1, 1}, {1, 0, 1});
    pair_g2({1, 1, 1, 0, 0, 1}, {1, 1, 0});
    pair_g2({0, 0, 0, 2, 2, 0}, {0, 0, 2});
    pair_g2({0, 2, 2, 0, 0, 0}, {0, 2, 0});
    pair_g2({2, 0, 0, 0, 0, 2}, {2, 0, 0});
    auto single_g = [&](Occupation occ, std::array<int, 3> k) {
        rows.push_back(
            {std::move(occ), {{1, 0, k, R(0), R(1)}, {2, 1, k, R(0), R(-11, 6)}}});
    };
    single_g({0, 0, 0, 1, 1, 0}, {0, 0, 1});
    single_g({0, 1, 1, 0, 0, 0}, {0, 1, 0});
    single_g({1, 0, 0, 0, 0, 1}, {1, 0, 0});
    auto triple_g3 = [&](Occupation occ, std::array<int, 3> k) {
        rows.push_back({std::move(occ), {{3, 0, k, R(0), R(-1)}}});
    };
    triple_g3({0, 0, 0, 3, 3, 0}, {0, 0, 3});
    triple_g3({0, 3, 3, 0, 0, 0}, {0, 3, 0});
    triple_g3({3, 0, 0, 0, 0, 3}, {3, 0, 0});
    triple_g3({0, 1, 1, 2, 2, 0}, {0, 1, 2});
    triple_g3({0, 2, 2, 1, 1, 0}, {0, 2, 1});
    triple_g3({1, 0, 0, 2, 2, 1}, {1, 0, 2});
    triple_g3({2, 1, 1, 0, 0, 2}, {2, 1, 0});
    triple_g3({2, 0, 0, 1, 1, 2}, {2, 0, 1});
    triple_g3({1, 2, 2, 0, 0, 1}, {1, 2, 0});
    triple_g3({1, 1, 1, 1, 1, 1}, {1, 1, 1});
    auto quad_g4 = [&](Occupation occ, std::array<int, 3> k) {
        rows.push_back({std::move(occ), {{4, 0, k, R(1), R(0)}}});
    };
    quad_g4({0, 0, 0, 4, 4, 0}, {0, 0, 4});
    quad_g4({4, 0, 0, 0, 0, 4}, {4, 0, 0});
    quad_g4({0, 4, 4, 0, 0, 0}, {0, 4, 0});
    quad_g4({0, 1, 1, 3, 3, 0}, {0, 1, 3});
    quad_g4({0, 3, 3, 1, 1, 0}, {0, 3, 1});
    quad_g4({1, 0, 0, 3, 3, 1}, {1, 0, 3});
    quad_g4({3, 1, 1, 0, 0, 3}, {3, 1, 0});
    quad_g4({3, 0, 0, 1, 1, 3}, {3, 0, 1});
    quad_g4({1, 3, 3, 0, 0, 1}, {1, 3, 0});
    quad_g4({2, 1, 1, 1, 1, 2}, {2, 1, 1});
    quad_g4({1, 2, 2, 1, 1, 1}, {1, 2, 1});
    quad_g4({1, 1, 1, 2, 2, 1}, {1, 1, 2});
    quad_g4({2, 2, 2, 0, 0, 2}, {2, 2, 0});
    quad_g4({2, 0, 0, 2, 2, 2}, {2, 0, 2});
    quad_g4({0, 2, 2, 2, 2, 0}, {0, 2, 2});
    return rows;
}

std::vector<ProbabilityClassRow> build_classes() {
    std::vector<ProbabilityClassRow> classes;
    classes.push_back({"P(off)", 0b001, 0b000,
                       {{2, 0, R(1)}, {3, 0, R(-10, 3)}, {4, 0, R(205, 36)}}});
    classes.push_back({"P(on)", 0b001, 0b001,
                       {{1, 0, R(1)}, {2, 0, R(-8, 3)}, {3, 0, R(-65, 9)}, {4, 0, R(278, 9)}}});
    classes.push_back({"P(A,B)", 0b011, 0b000, {{3, 0, R(1)}}});
    classes.push_back({"P(B,C)", 0b110, 0b000, {{3, 0, R(1)}}});
    classes.push_back({"P(A,C)", 0b101, 0b000, {{3, 0, R(1)}}});
    classes.push_back({"P(off,off,off)", 0b111, 0b000, {{3, 0, R(1)}}});
    classes.push_back({"P(on,off,off)", 0b111, 0b001, {{3, 0, R(1)}}});
    classes.push_back({"P(on,on,off)", 0b111, 0b011, {{3, 0, R(1)}}});
    classes.push_back({"P(on,off)", 0b011, 0b001, {{3, 0, R(1)}}});
    classes.push_back({"P(on,on)", 0b011, 0b011,
                       {{2, 0, R(1)}, {3, 0, R(-16, 3)}, {4, 0, R(361, 36)}}});
    classes.push_back({"P(A',B',C')", 0b111, 0b111,
                       {{3, 0, R(2)}, {3, 1, R(1)}, {3, -1, R(1)}}});
    return classes;
}

} // namespace

int AmplitudeRow::min_order() const {
    int best = 99;
    for (const auto& [m, n, k, re, im] : terms) best = std::min(best, m + n);
    return best;
}

PolynomialAmplitude AmplitudeRow::expected(int order_max) const {
    PolynomialAmplitude poly;
    for (const auto& [m, n, k, re, im] : terms) {
        if (m + n > order_max) continue;
        AmplitudeTermKey key{m, n, {k[0], k[1], k[2]}};
        poly[key] = GaussianRational(re, im);
    }
    return poly;
}

ProbabilityPolynomial ProbabilityClassRow::expected(int parties) const {
    ProbabilityPolynomial poly;
    poly.parties = parties;
    for (const auto& [power, k, coeff] : coefficients) {
        ProbabilityTermKey key;
        key.gsq_power = power;
        key.phase.assign(parties, k);
        poly.terms[key] = GaussianRational(coeff);
    }
    return poly;
}

const std::vector<AmplitudeRow>& source_state_amplitudes() {
    static const std::vector<AmplitudeRow> rows = build_amplitudes();
    return rows;
}

const std::vector<ProbabilityClassRow>& probability_classes() {
    static const std::vector<ProbabilityClassRow> classes = build_classes();
    return classes;
}

} // namespace pdcnet::reference
