#ifndef PDCNET_SIMPLEX_HPP
#define PDCNET_SIMPLEX_HPP

#include "pdcnet/errors.hpp"

#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace pdcnet {

/*
 * Dense two-phase primal simplex for min c.x, A x = b, x >= 0 with b >= 0.
 *
 * Bland's rule throughout, so the pivot sequence terminates and is fully
 * deterministic for a fixed column order. Instantiated with T = double
 * (tolerance-based sign tests) and T = Rational (exact, tolerance zero).
 * Phase 1 minimizes the sum of one artificial per row; when that optimum is
 * positive the problem is infeasible and the simplex multipliers y form a
 * Farkas certificate: y.A <= 0 columnwise while y.b > 0.
 */
template <class T>
class Simplex {
public:
    Simplex(std::vector<std::vector<T>> a, std::vector<T> b, T tol)
        : tol_(std::move(tol)), rows_(a.size()), structural_(a.empty() ? 0 : a[0].size()) {
        for (const auto& row : a) {
            if (row.size() != structural_)
                throw std::invalid_argument("simplex: ragged constraint matrix");
        }
        if (b.size() != rows_) throw std::invalid_argument("simplex: rhs size mismatch");
        for (const auto& v : b) {
            if (v < T{}) throw std::invalid_argument("simplex: rhs must be non-negative");
        }
        const std::size_t total = structural_ + rows_;
        tableau_.assign(rows_, std::vector<T>(total + 1, T{}));
        basis_.resize(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < structural_; ++j) tableau_[i][j] = a[i][j];
            tableau_[i][structural_ + i] = T(1);
            tableau_[i][total] = b[i];
            basis_[i] = structural_ + i;
        }
        // Phase-1 reduced costs: 0 on structural minus the row sums, so the
        // artificial basis starts with zero reduced cost.
        cost_.assign(total + 1, T{});
        for (std::size_t j = 0; j < structural_; ++j) {
            T acc{};
            for (std::size_t i = 0; i < rows_; ++i) acc += tableau_[i][j];
            cost_[j] = -acc;
        }
        for (std::size_t j = structural_; j < total; ++j) cost_[j] = T{};
        T rhs_acc{};
        for (std::size_t i = 0; i < rows_; ++i) rhs_acc += tableau_[i][total];
        cost_[total] = -rhs_acc; // negative of the current phase-1 objective
    }

    // Returns true when a feasible basis was found.
    bool solve_feasibility() {
        run(/*allow_artificial_entering=*/false);
        phase1_objective_ = -cost_.back();
        feasible_ = !(phase1_objective_ > tol_);
        if (feasible_) drive_out_artificials();
        return feasible_;
    }

    // Adopt a caller-supplied feasible basis whose columns form an identity
    // submatrix in row order (e.g. slack columns), skipping phase 1 entirely.
    void adopt_identity_basis(const std::vector<std::size_t>& basis_columns) {
        if (basis_columns.size() != rows_)
            throw std::invalid_argument("simplex: basis size mismatch");
        basis_ = basis_columns;
        feasible_ = true;
        phase1_objective_ = T{};
    }

    // Requires a prior successful solve_feasibility(). Minimizes c.x over the
    // structural variables.
    void minimize(const std::vector<T>& c) {
        if (!feasible_) throw std::logic_error("simplex: minimize on infeasible program");
        if (c.size() != structural_) throw std::invalid_argument("simplex: cost size mismatch");
        const std::size_t total = structural_ + rows_;
        cost_.assign(total + 1, T{});
        for (std::size_t j = 0; j < structural_; ++j) cost_[j] = c[j];
        // Reduce by the current basis.
        for (std::size_t i = 0; i < rows_; ++i) {
            if (basis_[i] >= structural_) continue;
            T coeff = cost_[basis_[i]];
            if (is_zero(coeff)) continue;
            for (std::size_t j = 0; j <= total; ++j) cost_[j] -= coeff * tableau_[i][j];
        }
        run(/*allow_artificial_entering=*/false);
    }

    std::vector<T> primal() const {
        std::vector<T> x(structural_, T{});
        for (std::size_t i = 0; i < rows_; ++i) {
            if (basis_[i] < structural_) x[basis_[i]] = tableau_[i].back();
        }
        return x;
    }

    // Simplex multipliers of the phase-1 optimum; meaningful after an
    // infeasible solve_feasibility().
    std::vector<T> farkas_dual() const {
        std::vector<T> y(rows_, T{});
        for (std::size_t i = 0; i < rows_; ++i) {
            y[i] = T(1) - cost_[structural_ + i];
        }
        return y;
    }

    const T& phase1_objective() const { return phase1_objective_; }
    T objective() const { return -cost_.back(); }
    int pivot_count() const { return pivots_; }

private:
    T tol_;
    std::size_t rows_;
    std::size_t structural_;
    std::vector<std::vector<T>> tableau_;
    std::vector<T> cost_;
    std::vector<std::size_t> basis_;
    bool feasible_ = false;
    T phase1_objective_{};
    int pivots_ = 0;

    bool is_zero(const T& v) const { return !(v > tol_) && !(v < -tol_); }

    void pivot(std::size_t row, std::size_t col) {
        const std::size_t width = tableau_[0].size();
        T inv = T(1) / tableau_[row][col];
        for (std::size_t j = 0; j < width; ++j) tableau_[row][j] *= inv;
        tableau_[row][col] = T(1);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == row || is_zero(tableau_[i][col])) continue;
            T factor = tableau_[i][col];
            for (std::size_t j = 0; j < width; ++j)
                tableau_[i][j] -= factor * tableau_[row][j];
            tableau_[i][col] = T{};
        }
        if (!is_zero(cost_[col])) {
            T factor = cost_[col];
            for (std::size_t j = 0; j < width; ++j) cost_[j] -= factor * tableau_[row][j];
            cost_[col] = T{};
        }
        basis_[row] = col;
        ++pivots_;
    }

    void run(bool allow_artificial_entering) {
        const std::size_t total = structural_ + rows_;
        const std::size_t limit = allow_artificial_entering ? total : structural_;
        for (;;) {
            // Bland: smallest-index column with negative reduced cost.
            std::size_t entering = total;
            for (std::size_t j = 0; j < limit; ++j) {
                if (cost_[j] < -tol_) {
                    entering = j;
                    break;
                }
            }
            if (entering == total) return;

            // Ratio test. Exact mode follows Bland strictly (smallest basis
            // index among ties); the floating path takes the largest pivot
            // among near-ties.
            const bool exact = !(tol_ > T{});
            std::size_t leaving = rows_;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (!(tableau_[i][entering] > tol_)) continue;
                if (leaving == rows_) {
                    leaving = i;
                    continue;
                }
                T lhs = tableau_[i].back() * tableau_[leaving][entering];
                T rhs = tableau_[leaving].back() * tableau_[i][entering];
                if (lhs < rhs) {
                    leaving = i;
                } else if (is_zero(lhs - rhs)) {
                    if (exact) {
                        if (basis_[i] < basis_[leaving]) leaving = i;
                    } else if (tableau_[i][entering] > tableau_[leaving][entering]) {
                        leaving = i;
                    }
                }
            }
            if (leaving == rows_)
                throw internal_consistency_error("simplex: unbounded direction");
            pivot(leaving, entering);
        }
    }

    // Replace basic artificials by structural columns where possible; rows
    // that admit no safe pivot are redundant and harmless since the
    // artificial stays at zero and never re-enters. The floating path also
    // refuses tiny pivot elements.
    void drive_out_artificials() {
        const bool exact = !(tol_ > T{});
        for (std::size_t i = 0; i < rows_; ++i) {
            if (basis_[i] < structural_) continue;
            std::size_t best = structural_;
            for (std::size_t j = 0; j < structural_; ++j) {
                T mag = tableau_[i][j] < T{} ? T{} - tableau_[i][j] : tableau_[i][j];
                if (is_zero(mag)) continue;
                if constexpr (std::is_floating_point_v<T>) {
                    if (!(mag > T(1e-7))) continue;
                }
                if (best == structural_) best = j;
                if (exact) break;
                T best_mag =
                    tableau_[i][best] < T{} ? T{} - tableau_[i][best] : tableau_[i][best];
                if (mag > best_mag) best = j;
            }
            if (best < structural_) pivot(i, best);
        }
    }
};

} // namespace pdcnet

#endif
