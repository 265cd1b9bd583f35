#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mrsched/model.hpp"

namespace mrsched {

// Solver tolerances: a point is accepted when no constraint (base row or
// subset cut) is violated by more than kLpFeasTol; plain comparisons use
// kTimeTol from model.hpp.
inline constexpr double kLpFeasTol = 1e-7;

// One linear inequality  sum_i coef_i * x_{var_i} >= rhs  with x >= 0
// implicit for every variable.
struct LinearConstraint {
    std::vector<std::pair<int, double>> terms;
    double rhs = 0.0;

    double eval(const std::vector<double>& x) const {
        double lhs = 0.0;
        for (const auto& [var, coef] : terms) lhs += coef * x[static_cast<std::size_t>(var)];
        return lhs;
    }
};

// min objective . x  subject to constraints and x >= 0.
struct LinearProgram {
    int num_vars = 0;
    std::vector<double> objective;
    std::vector<LinearConstraint> constraints;
};

struct LpVertex {
    std::vector<double> x;
    double objective = 0.0;
};

// Dense two-phase simplex with Bland's least-index pivoting (deterministic,
// cycle-free). Throws InternalError{Unbounded} or InternalError{LpInfeasible};
// neither can occur for the relaxations built in this project.
LpVertex lp_core_solve(const LinearProgram& lp);

// ---------------------------------------------------------------------------
// The completion-time relaxation. Variables are laid out as
//   x[0..N)   = C_j    (job completion times)
//   x[N..2N)  = C_j^M  (map phase completion times)
// indexed by job id - 1.

// Per-job phase bounds, in the combined tightest form:
//   C_j^M >= max(p_j^M / mu_j, largest map / v_1) + r_j
//   C_j   >= C_j^M + max(p_j^R / mu_j, largest reduce / v_1)
std::vector<LinearConstraint> base_constraints(const Workload& w, const DerivedStats& s);

// The subset cut for S:
//   sum_{j in S} p_j C_j >= (sum_{j in S} p_j)^2 / (2 mu) + sum_{j in S} p_j^2 / (2 mu_j)
LinearConstraint subset_cut(const std::vector<int>& subset, const DerivedStats& s);

// How badly the cut for `subset` is violated at the point C; positive means
// violated. Throws ValidationError{EmptySubset} for an empty subset.
double violation(const std::vector<int>& subset, const std::vector<double>& C,
                 const DerivedStats& s);

struct ViolationReport {
    std::vector<int> subset;  // job ids, ascending
    double value = 0.0;       // V(subset)
};

// Sorts jobs on C_j - p_j / (2 mu_j) and scans the N prefix sets in O(N)
// after the O(N log N) sort; returns the best prefix when its violation
// exceeds tol, otherwise nullopt. Whenever any subset is violated, every
// member of the maximizer sorts strictly before every non-member under this
// key, so the best prefix IS the global maximum.
std::optional<ViolationReport> separation_oracle(const std::vector<double>& C,
                                                 const DerivedStats& s, double tol);

// Exhaustive reference oracle over all 2^N - 1 subsets (N <= 20); ties on
// the maximum go to the lexicographically smallest id set.
std::optional<ViolationReport> brute_force_oracle(const std::vector<double>& C,
                                                  const DerivedStats& s, double tol);

struct LpSolution {
    std::vector<double> C;
    std::vector<double> C_M;
    double objective = 0.0;
    std::vector<std::vector<int>> generated_sets;  // subsets whose cut was added
    int iterations = 0;                            // restricted LP solves
};

// Minimizes sum_j w_j C_j over the base constraints plus subset cuts found
// by row generation: solve, separate, add the violated cut, repeat until the
// oracle reports nothing above kLpFeasTol. The objective lower-bounds the
// optimal weighted completion time of any feasible schedule.
LpSolution solve_lp(const Workload& w, const DerivedStats& s);

}  // namespace mrsched
