#include "mrsched/lp.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace mrsched {

namespace {

constexpr double kPivotEps = 1e-9;

// Dense two-phase simplex tableau. Rows with positive rhs get an artificial
// variable; rows with rhs <= 0 are flipped into <= form so their slack can
// start basic. Pivoting is Bland's least-index rule in both phases, which is
// deterministic and cannot cycle. Artificial columns never re-enter the basis.
class SimplexTableau {
public:
    SimplexTableau(const LinearProgram& lp) : n_(lp.num_vars) {
        const int m = static_cast<int>(lp.constraints.size());
        slack_start_ = n_;
        art_start_ = n_ + m;
        int art_count = 0;
        for (const LinearConstraint& c : lp.constraints) {
            if (c.rhs > 0.0) ++art_count;
        }
        cols_ = n_ + m + art_count + 1;  // last column is the rhs
        rows_.assign(static_cast<std::size_t>(m),
                     std::vector<double>(static_cast<std::size_t>(cols_), 0.0));
        basis_.resize(static_cast<std::size_t>(m));

        int next_art = art_start_;
        for (int i = 0; i < m; ++i) {
            const LinearConstraint& c = lp.constraints[static_cast<std::size_t>(i)];
            auto& row = rows_[static_cast<std::size_t>(i)];
            const double sign = c.rhs > 0.0 ? 1.0 : -1.0;
            for (const auto& [var, coef] : c.terms) {
                row[static_cast<std::size_t>(var)] += sign * coef;
            }
            row[static_cast<std::size_t>(cols_) - 1] = sign * c.rhs;
            // a.x >= rhs becomes a.x - s = rhs (surplus) or -a.x + s = -rhs.
            row[static_cast<std::size_t>(slack_start_ + i)] = -sign;
            if (c.rhs > 0.0) {
                row[static_cast<std::size_t>(next_art)] = 1.0;
                basis_[static_cast<std::size_t>(i)] = next_art++;
            } else {
                basis_[static_cast<std::size_t>(i)] = slack_start_ + i;
            }
        }
    }

    // Phase 1: drive the artificial variables to zero. Returns the residual
    // infeasibility (zero for feasible programs).
    double phase1() {
        if (art_start_ + 1 == cols_) return 0.0;  // no artificials at all
        std::vector<double> cost(static_cast<std::size_t>(cols_) - 1, 0.0);
        for (int j = art_start_; j + 1 < cols_; ++j) cost[static_cast<std::size_t>(j)] = 1.0;
        rebuild_reduced_costs(cost);
        iterate(/*allow_unbounded=*/false);
        const double infeas = objective_value(cost);
        if (infeas > kLpFeasTol) return infeas;
        expel_artificials();
        return 0.0;
    }

    // Phase 2: optimize the real objective from the feasible basis.
    void phase2(const std::vector<double>& objective) {
        std::vector<double> cost(static_cast<std::size_t>(cols_) - 1, 0.0);
        for (int j = 0; j < n_; ++j) cost[static_cast<std::size_t>(j)] = objective[static_cast<std::size_t>(j)];
        rebuild_reduced_costs(cost);
        iterate(/*allow_unbounded=*/true);
    }

    std::vector<double> extract(int num_vars) const {
        std::vector<double> x(static_cast<std::size_t>(num_vars), 0.0);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const int b = basis_[i];
            if (b < num_vars) {
                x[static_cast<std::size_t>(b)] = std::max(0.0, rows_[i][static_cast<std::size_t>(cols_) - 1]);
            }
        }
        return x;
    }

private:
    void rebuild_reduced_costs(const std::vector<double>& cost) {
        reduced_ = cost;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const double cb = cost[static_cast<std::size_t>(basis_[i])];
            if (cb == 0.0) continue;
            for (int j = 0; j + 1 < cols_; ++j) {
                reduced_[static_cast<std::size_t>(j)] -= cb * rows_[i][static_cast<std::size_t>(j)];
            }
        }
    }

    double objective_value(const std::vector<double>& cost) const {
        double z = 0.0;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            z += cost[static_cast<std::size_t>(basis_[i])] * rows_[i][static_cast<std::size_t>(cols_) - 1];
        }
        return z;
    }

    void iterate(bool allow_unbounded) {
        for (;;) {
            // Bland: smallest-index column with a negative reduced cost.
            int enter = -1;
            for (int j = 0; j < art_start_; ++j) {
                if (reduced_[static_cast<std::size_t>(j)] < -kPivotEps) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return;

            // Ratio test; ties go to the smallest basic variable index.
            int leave = -1;
            double best_ratio = 0.0;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                const double a = rows_[i][static_cast<std::size_t>(enter)];
                if (a <= kPivotEps) continue;
                const double ratio = rows_[i][static_cast<std::size_t>(cols_) - 1] / a;
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[static_cast<std::size_t>(leave)])) {
                    leave = static_cast<int>(i);
                    best_ratio = ratio;
                }
            }
            if (leave < 0) {
                if (allow_unbounded) {
                    throw InternalError(InternalError::Kind::Unbounded,
                                        "LP objective is unbounded below");
                }
                return;  // cannot happen in phase 1: its objective is bounded
            }
            pivot(static_cast<std::size_t>(leave), enter);
        }
    }

    void pivot(std::size_t row, int col) {
        auto& prow = rows_[row];
        const double inv = 1.0 / prow[static_cast<std::size_t>(col)];
        for (double& v : prow) v *= inv;
        prow[static_cast<std::size_t>(col)] = 1.0;
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            if (k == row) continue;
            const double f = rows_[k][static_cast<std::size_t>(col)];
            if (f == 0.0) continue;
            auto& r = rows_[k];
            for (int j = 0; j < cols_; ++j) {
                r[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
            }
            r[static_cast<std::size_t>(col)] = 0.0;
        }
        const double f = reduced_[static_cast<std::size_t>(col)];
        if (f != 0.0) {
            for (int j = 0; j + 1 < cols_; ++j) {
                reduced_[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
            }
            reduced_[static_cast<std::size_t>(col)] = 0.0;
        }
        basis_[row] = col;
    }

    // After phase 1, pivot zero-level artificials out of the basis; rows with
    // no usable entry are redundant and removed.
    void expel_artificials() {
        for (std::size_t i = 0; i < rows_.size();) {
            if (basis_[i] < art_start_) {
                ++i;
                continue;
            }
            int col = -1;
            for (int j = 0; j < art_start_; ++j) {
                if (std::fabs(rows_[i][static_cast<std::size_t>(j)]) > kPivotEps) {
                    col = j;
                    break;
                }
            }
            if (col >= 0) {
                pivot(i, col);
                ++i;
            } else {
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
    }

    int n_ = 0;
    int cols_ = 0;
    int slack_start_ = 0;
    int art_start_ = 0;
    std::vector<std::vector<double>> rows_;
    std::vector<int> basis_;
    std::vector<double> reduced_;
};

}  // namespace

LpVertex lp_core_solve(const LinearProgram& lp) {
    SimplexTableau tableau(lp);
    const double infeas = tableau.phase1();
    if (infeas > 0.0) {
        throw InternalError(InternalError::Kind::LpInfeasible,
                            "restricted LP infeasible (residual " + std::to_string(infeas) + ")");
    }
    tableau.phase2(lp.objective);

    LpVertex v;
    v.x = tableau.extract(lp.num_vars);
    v.objective = 0.0;
    for (int j = 0; j < lp.num_vars; ++j) {
        v.objective += lp.objective[static_cast<std::size_t>(j)] * v.x[static_cast<std::size_t>(j)];
    }
    return v;
}

}  // namespace mrsched
