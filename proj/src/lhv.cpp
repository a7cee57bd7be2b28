#include "pdcnet/lhv.hpp"

#include "pdcnet/bell.hpp"
#include "pdcnet/errors.hpp"
#include "pdcnet/parallel.hpp"
#include "pdcnet/simplex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace pdcnet {

int strategy_count(int parties) {
    if (parties < 1 || parties > kMaxLpParties)
        throw resource_error("lhv: party count outside the 4^N enumeration guard");
    int count = 1;
    for (int x = 0; x < parties; ++x) count *= 4;
    return count;
}

std::vector<std::array<bool, 2>> decode_strategy(int parties, int index) {
    std::vector<std::array<bool, 2>> strategy(parties);
    for (int x = 0; x < parties; ++x) {
        int local = (index >> (2 * x)) & 3;
        strategy[x] = {(local & 1) != 0, (local & 2) != 0};
    }
    return strategy;
}

std::vector<int> strategy_column(int parties, int index) {
    const int n = 1 << parties;
    std::vector<int> column(n * n, 0);
    for (int s = 0; s < n; ++s) {
        int o = 0;
        for (int x = 0; x < parties; ++x) {
            int local = (index >> (2 * x)) & 3;
            int outcome = (local >> ((s >> x) & 1)) & 1;
            if (outcome) o |= 1 << x;
        }
        column[s * n + o] = 1;
    }
    return column;
}

namespace {

template <class T>
std::vector<T> behavior_cells(const BasicBehavior<T>& b) {
    const int n = b.settings_count();
    std::vector<T> cells;
    cells.reserve(n * n);
    for (int s = 0; s < n; ++s)
        for (int o = 0; o < n; ++o) cells.push_back(b.p[s][o]);
    return cells;
}

template <class T>
BasicLhvVerdict<T> feasibility_impl(const BasicBehavior<T>& behavior, const T& tol) {
    const int parties = behavior.parties;
    const int strategies = strategy_count(parties);
    const std::vector<T> cells = behavior_cells(behavior);
    const std::size_t cell_count = cells.size();
    const std::size_t rows = cell_count + 1;

    std::vector<std::vector<T>> a(rows, std::vector<T>(strategies, T{}));
    std::vector<T> b(rows, T{});
    for (int idx = 0; idx < strategies; ++idx) {
        std::vector<int> column = strategy_column(parties, idx);
        for (std::size_t c = 0; c < cell_count; ++c) {
            if (column[c]) a[c][idx] = T(1);
        }
        a[cell_count][idx] = T(1);
    }
    for (std::size_t c = 0; c < cell_count; ++c) b[c] = cells[c];
    b[cell_count] = T(1);

    Simplex<T> solver(std::move(a), std::move(b), tol);
    BasicLhvVerdict<T> verdict;
    verdict.feasible = solver.solve_feasibility();
    verdict.pivots = solver.pivot_count();

    if (verdict.feasible) {
        verdict.weights = solver.primal();
        std::vector<T> reconstructed(cell_count, T{});
        for (int idx = 0; idx < strategies; ++idx) {
            if (!(verdict.weights[idx] > tol)) continue;
            std::vector<int> column = strategy_column(parties, idx);
            for (std::size_t c = 0; c < cell_count; ++c) {
                if (column[c]) reconstructed[c] += verdict.weights[idx];
            }
        }
        T worst{};
        for (std::size_t c = 0; c < cell_count; ++c) {
            T diff = reconstructed[c] - cells[c];
            if (diff < T{}) diff = T{} - diff;
            if (diff > worst) worst = diff;
        }
        verdict.reconstruction_error = worst;
    } else {
        std::vector<T> dual = solver.farkas_dual();
        verdict.certificate_cells.assign(dual.begin(), dual.begin() + cell_count);
        verdict.certificate_offset = dual[cell_count];

        T violation = verdict.certificate_offset;
        for (std::size_t c = 0; c < cell_count; ++c)
            violation += verdict.certificate_cells[c] * cells[c];
        verdict.violation = violation;

        bool first = true;
        for (int idx = 0; idx < strategies; ++idx) {
            std::vector<int> column = strategy_column(parties, idx);
            T value = verdict.certificate_offset;
            for (std::size_t c = 0; c < cell_count; ++c) {
                if (column[c]) value += verdict.certificate_cells[c];
            }
            if (first || value > verdict.max_column_value) verdict.max_column_value = value;
            first = false;
        }
    }
    return verdict;
}

} // namespace

LhvVerdict lhv_feasible(const Behavior& behavior, double tol) {
    if (no_signaling_violation(behavior) > kBehaviorTolerance)
        throw std::invalid_argument("lhv: behavior fails the no-signaling precondition");
    LhvVerdict verdict = feasibility_impl<double>(behavior, tol);
    // Verdicts inside the tolerance band are not trustworthy in floating
    // point; the exact-rational path resolves them.
    if (verdict.feasible && verdict.reconstruction_error > tol)
        throw precision_error("lhv: weights do not reconstruct the behavior at tolerance");
    if (!verdict.feasible && verdict.violation < 10 * tol)
        throw precision_error("lhv: separation below 10x tolerance; use the exact mode");
    return verdict;
}

LhvVerdictExact lhv_feasible_exact(const RationalBehavior& behavior) {
    return feasibility_impl<Rational>(behavior, Rational(0));
}

namespace {

// Certificate value of a functional (cells..., offset) on one strategy column.
template <class T>
T column_value(const std::vector<T>& cells_part, const T& offset, const std::vector<int>& column) {
    T value = offset;
    for (std::size_t c = 0; c < column.size(); ++c) {
        if (column[c]) value += cells_part[c];
    }
    return value;
}

// Lifted-CH value on every deterministic strategy; these vertex values pin a
// Bell functional up to no-signaling rewriting.
template <class T>
std::vector<T> lifted_ch_vertex_values(int parties) {
    const int strategies = strategy_count(parties);
    std::vector<T> values(strategies);
    for (int idx = 0; idx < strategies; ++idx) {
        auto b = strategy_behavior<T>(parties, decode_strategy(parties, idx));
        values[idx] = n_lifted_ch_value(b);
    }
    return values;
}

// Strategy-index image under (party permutation, setting swaps, outcome
// flips); flips are indexed per party and setting.
int transform_strategy(int parties, int index, const std::vector<int>& party_perm,
                       int setting_swap_mask, int outcome_flip_mask) {
    int out = 0;
    for (int x = 0; x < parties; ++x) {
        int src = party_perm[x];
        int local = (index >> (2 * src)) & 3;
        bool o1 = local & 1;
        bool o2 = local & 2;
        if (setting_swap_mask & (1 << x)) std::swap(o1, o2);
        if (outcome_flip_mask & (1 << (2 * x))) o1 = !o1;
        if (outcome_flip_mask & (1 << (2 * x + 1))) o2 = !o2;
        out |= ((o1 ? 1 : 0) | (o2 ? 2 : 0)) << (2 * x);
    }
    return out;
}

template <class T>
bool proportional(const std::vector<T>& values, const std::vector<T>& pattern, const T& tol,
                  T& scale_out) {
    // scale from the largest-magnitude pattern entry, then verify everywhere.
    std::size_t anchor = pattern.size();
    T best{};
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        T mag = pattern[i] < T{} ? T{} - pattern[i] : pattern[i];
        if (mag > best) {
            best = mag;
            anchor = i;
        }
    }
    if (anchor == pattern.size()) return false;
    T scale = values[anchor] / pattern[anchor];
    if (!(scale > tol)) return false;
    // Comparison budget scales with the functional's magnitude; exact mode
    // (tol = 0) demands equality.
    T budget = (tol + tol * scale) * T(1000);
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        T diff = values[i] - scale * pattern[i];
        if (diff < T{}) diff = T{} - diff;
        if (diff > budget) return false;
    }
    scale_out = scale;
    return true;
}

template <class T>
InequalityMatch<T> certificate_match_impl(const BasicBehavior<T>& behavior,
                                          const BasicLhvVerdict<T>& seed, const T& tol) {
    if (seed.feasible)
        throw std::invalid_argument("lhv: certificate extraction needs an infeasible verdict");
    const int parties = behavior.parties;
    const int strategies = strategy_count(parties);
    const std::vector<T> cells = behavior_cells(behavior);
    const std::size_t dims = cells.size() + 1; // cells plus constant offset

    // Sharpen the seed by maximizing the violation over all functionals that
    // are non-positive on the local polytope, normalized to value 1 on the
    // behavior: variables y = u - v with one slack per constraint.
    const std::size_t rows = strategies + 1;
    const std::size_t cols = 2 * dims + rows;
    std::vector<std::vector<T>> a(rows, std::vector<T>(cols, T{}));
    std::vector<T> b(rows, T{});
    for (int idx = 0; idx < strategies; ++idx) {
        std::vector<int> column = strategy_column(parties, idx);
        for (std::size_t c = 0; c < column.size(); ++c) {
            if (!column[c]) continue;
            a[idx][c] = T(1);
            a[idx][dims + c] = T(-1);
        }
        a[idx][dims - 1] = T(1);
        a[idx][2 * dims - 1] = T(-1);
        a[idx][2 * dims + idx] = T(1);
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
        a[strategies][c] = cells[c];
        a[strategies][dims + c] = T{} - cells[c];
    }
    a[strategies][dims - 1] = T(1);
    a[strategies][2 * dims - 1] = T(-1);
    a[strategies][2 * dims + strategies] = T(1);
    b[strategies] = T(1);

    std::vector<T> cost(cols, T{});
    for (std::size_t c = 0; c < cells.size(); ++c) {
        cost[c] = T{} - cells[c];
        cost[dims + c] = cells[c];
    }
    cost[dims - 1] = T(-1);
    cost[2 * dims - 1] = T(1);

    Simplex<T> solver(std::move(a), std::move(b), tol);
    // The slack columns are a ready feasible basis (b >= 0, identity block).
    std::vector<std::size_t> slack_basis(rows);
    for (std::size_t i = 0; i < rows; ++i) slack_basis[i] = 2 * dims + i;
    solver.adopt_identity_basis(slack_basis);
    solver.minimize(cost);
    std::vector<T> primal = solver.primal();

    InequalityMatch<T> match;
    std::vector<T> functional_cells(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c)
        functional_cells[c] = primal[c] - primal[dims + c];
    T offset = primal[dims - 1] - primal[2 * dims - 1];

    match.behavior_value = offset;
    for (std::size_t c = 0; c < cells.size(); ++c)
        match.behavior_value += functional_cells[c] * cells[c];

    match.vertex_values.resize(strategies);
    for (int idx = 0; idx < strategies; ++idx)
        match.vertex_values[idx] =
            column_value(functional_cells, offset, strategy_column(parties, idx));

    if (!(match.behavior_value > tol)) return match; // no separation recovered

    const std::vector<T> ch = lifted_ch_vertex_values<T>(parties);
    if (proportional(match.vertex_values, ch, tol, match.scale)) {
        match.matches_lifted_ch = true;
        return match;
    }

    // Canonicalize over the local symmetry group.
    std::vector<int> perm(parties);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<T> pattern(strategies);
    do {
        for (int swap_mask = 0; swap_mask < (1 << parties); ++swap_mask) {
            for (int flip_mask = 0; flip_mask < (1 << (2 * parties)); ++flip_mask) {
                for (int idx = 0; idx < strategies; ++idx)
                    pattern[idx] = ch[transform_strategy(parties, idx, perm, swap_mask, flip_mask)];
                if (proportional(match.vertex_values, pattern, tol, match.scale)) {
                    match.matches_lifted_ch = true;
                    match.used_symmetry = true;
                    return match;
                }
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return match;
}

} // namespace

InequalityMatch<double> certificate_to_inequality(const Behavior& behavior,
                                                  const LhvVerdict& seed, double tol) {
    return certificate_match_impl<double>(behavior, seed, tol);
}

InequalityMatch<Rational> certificate_to_inequality_exact(const RationalBehavior& behavior,
                                                          const LhvVerdictExact& seed) {
    return certificate_match_impl<Rational>(behavior, seed, Rational(0));
}

PhaseSweepReport on_off_phase_sweep(const NetworkSpec& network, double grid_step_over_pi,
                                    int order_max, double tol) {
    if (grid_step_over_pi <= 0.0) throw std::invalid_argument("lhv: grid step must be positive");
    const int points = static_cast<int>(std::lround(2.0 / grid_step_over_pi)) + 1;

    PhaseSweepReport report;
    report.cells.resize(points);
    parallel_for(points, [&](std::size_t k) {
        double sum = M_PI * grid_step_over_pi * static_cast<double>(k);
        std::vector<double> phases(network.parties, 0.0);
        phases[0] = sum;
        Behavior behavior =
            behavior_from_symbolic(network, SettingsProfile::on_off(phases), order_max);
        LhvVerdict verdict = lhv_feasible(behavior, tol);
        SweepCell cell;
        cell.phase_sum = sum;
        cell.feasible = verdict.feasible;
        cell.violation = verdict.feasible ? 0.0 : verdict.violation;
        report.cells[k] = cell;
    });
    for (const auto& cell : report.cells)
        if (!cell.feasible) ++report.infeasible_count;
    return report;
}

PhaseSweepReport phases_only_sweep(const NetworkSpec& network, double grid_step_over_pi,
                                   int order_max, double tol) {
    if (grid_step_over_pi <= 0.0) throw std::invalid_argument("lhv: grid step must be positive");
    if (network.parties != 3)
        throw std::invalid_argument("lhv: the phases-only sweep is implemented for N = 3");
    const int n = 1 << network.parties;
    const int points = static_cast<int>(std::lround(2.0 / grid_step_over_pi));
    const Complex g = network.sources.front().g;

    // Proper-subset coincidence marginals are phase free; only the
    // all-parties coin varies, and only through the phase sum. Tabulate it
    // once per grid sum.
    SymbolicCoincidenceTable table(network, order_max);
    const std::vector<double> no_phases(network.parties, 0.0);
    std::vector<std::vector<double>> coins_by_sum(points, std::vector<double>(n, 1.0));
    for (int mask = 1; mask < n - 1; ++mask) {
        double value = evaluate(table.coin(mask, mask), g, no_phases);
        for (int k = 0; k < points; ++k) coins_by_sum[k][mask] = value;
    }
    for (int k = 0; k < points; ++k) {
        std::vector<double> phases(network.parties, 0.0);
        phases[0] = M_PI * grid_step_over_pi * k;
        coins_by_sum[k][n - 1] = evaluate(table.coin(n - 1, n - 1), g, phases);
    }

    const std::size_t total = static_cast<std::size_t>(points) * points * points * points;
    PhaseSweepReport report;
    report.cells.resize(total);
    parallel_for(total, [&](std::size_t flat) {
        int t0 = static_cast<int>(flat % points);
        int da = static_cast<int>((flat / points) % points);
        int db = static_cast<int>((flat / points / points) % points);
        int dc = static_cast<int>(flat / points / points / points);

        Behavior behavior;
        behavior.parties = network.parties;
        behavior.p.assign(n, std::vector<double>(n, 0.0));
        for (int s = 0; s < n; ++s) {
            int sum_index = t0;
            if (s & 1) sum_index += da;
            if (s & 2) sum_index += db;
            if (s & 4) sum_index += dc;
            sum_index %= points;
            behavior.p[s] = joint_from_coincidences(network.parties, coins_by_sum[sum_index]);
            for (double& cell : behavior.p[s]) {
                if (cell < 0.0) cell = 0.0;
            }
        }
        LhvVerdict verdict = lhv_feasible(behavior, tol);
        SweepCell cell;
        cell.t0 = t0 * grid_step_over_pi;
        cell.da = da * grid_step_over_pi;
        cell.db = db * grid_step_over_pi;
        cell.dc = dc * grid_step_over_pi;
        cell.feasible = verdict.feasible;
        cell.violation = verdict.feasible ? 0.0 : verdict.violation;
        report.cells[flat] = cell;
    });
    for (const auto& cell : report.cells)
        if (!cell.feasible) ++report.infeasible_count;
    return report;
}

} // namespace pdcnet
