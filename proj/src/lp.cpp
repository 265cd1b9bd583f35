#include "mrsched/lp.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace mrsched {

namespace {

// 0/0 -> 0 for jobs whose phase (or, in planning workloads, whole task set)
// is empty.
double safe_div(double num, double den) { return num == 0.0 ? 0.0 : num / den; }

}  // namespace

std::vector<LinearConstraint> base_constraints(const Workload& w, const DerivedStats& s) {
    const int n = w.job_count();
    const double v1 = w.cluster.speeds.front();
    std::vector<LinearConstraint> out;
    out.reserve(2 * static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const Job& job = w.jobs[static_cast<std::size_t>(j)];
        const double map_time = std::max(safe_div(s.p_map[static_cast<std::size_t>(j)], s.mu_j[static_cast<std::size_t>(j)]),
                                         job.largest_map() / v1);
        const double reduce_time = std::max(safe_div(s.p_reduce[static_cast<std::size_t>(j)], s.mu_j[static_cast<std::size_t>(j)]),
                                            job.largest_reduce() / v1);
        out.push_back({{{n + j, 1.0}}, map_time + job.release});
        out.push_back({{{j, 1.0}, {n + j, -1.0}}, reduce_time});
    }
    return out;
}

LinearConstraint subset_cut(const std::vector<int>& subset, const DerivedStats& s) {
    LinearConstraint cut;
    double total = 0.0;
    double quad = 0.0;
    for (int id : subset) {
        const std::size_t i = static_cast<std::size_t>(id - 1);
        cut.terms.push_back({id - 1, s.p[i]});
        total += s.p[i];
        quad += safe_div(s.p[i] * s.p[i], 2.0 * s.mu_j[i]);
    }
    cut.rhs = total * total / (2.0 * s.mu) + quad;
    return cut;
}

double violation(const std::vector<int>& subset, const std::vector<double>& C,
                 const DerivedStats& s) {
    if (subset.empty()) {
        throw ValidationError(ValidationError::Kind::EmptySubset,
                              "violation of the empty subset is undefined");
    }
    double lhs = 0.0;
    double total = 0.0;
    double quad = 0.0;
    for (int id : subset) {
        const std::size_t i = static_cast<std::size_t>(id - 1);
        lhs += s.p[i] * C[i];
        total += s.p[i];
        quad += safe_div(s.p[i] * s.p[i], 2.0 * s.mu_j[i]);
    }
    return -lhs + total * total / (2.0 * s.mu) + quad;
}

std::optional<ViolationReport> separation_oracle(const std::vector<double>& C,
                                                 const DerivedStats& s, double tol) {
    const std::size_t n = s.p.size();

    // Ascending C_j - p_j / (2 mu_j) puts every member of the most violated
    // set strictly before every non-member, so scanning prefixes suffices.
    std::vector<int> order;
    order.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (s.p[i] > 0.0) order.push_back(static_cast<int>(i));
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double ka = C[static_cast<std::size_t>(a)] - s.p[static_cast<std::size_t>(a)] / (2.0 * s.mu_j[static_cast<std::size_t>(a)]);
        const double kb = C[static_cast<std::size_t>(b)] - s.p[static_cast<std::size_t>(b)] / (2.0 * s.mu_j[static_cast<std::size_t>(b)]);
        if (ka != kb) return ka < kb;
        return a < b;
    });

    double lhs = 0.0;
    double total = 0.0;
    double quad = 0.0;
    double best = 0.0;
    std::size_t best_len = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const std::size_t i = static_cast<std::size_t>(order[k]);
        lhs += s.p[i] * C[i];
        total += s.p[i];
        quad += s.p[i] * s.p[i] / (2.0 * s.mu_j[i]);
        const double v = -lhs + total * total / (2.0 * s.mu) + quad;
        if (best_len == 0 || v > best) {
            best = v;
            best_len = k + 1;
        }
    }
    if (best_len == 0 || best <= tol) return std::nullopt;

    ViolationReport report;
    report.value = best;
    report.subset.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_len));
    for (int& id : report.subset) ++id;
    std::sort(report.subset.begin(), report.subset.end());
    return report;
}

std::optional<ViolationReport> brute_force_oracle(const std::vector<double>& C,
                                                  const DerivedStats& s, double tol) {
    const int n = static_cast<int>(s.p.size());
    if (n > 20) {
        throw InternalError(InternalError::Kind::TooManyJobs,
                            "brute force oracle limited to 20 jobs, got " + std::to_string(n));
    }
    double best = 0.0;
    std::vector<int> best_set;
    std::vector<int> subset;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        subset.clear();
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) subset.push_back(i + 1);
        }
        const double v = violation(subset, C, s);
        if (best_set.empty() || v > best || (v == best && subset < best_set)) {
            best = v;
            best_set = subset;
        }
    }
    if (best <= tol) return std::nullopt;
    return ViolationReport{best_set, best};
}

LpSolution solve_lp(const Workload& w, const DerivedStats& s) {
    const int n = w.job_count();

    LinearProgram lp;
    lp.num_vars = 2 * n;
    lp.objective.assign(static_cast<std::size_t>(lp.num_vars), 0.0);
    for (int j = 0; j < n; ++j) {
        lp.objective[static_cast<std::size_t>(j)] = w.jobs[static_cast<std::size_t>(j)].weight;
    }
    lp.constraints = base_constraints(w, s);

    // Violations below the solver's own arithmetic noise floor cannot be cut
    // away; scale the stopping tolerance with the cut magnitudes.
    double scale = 0.0;
    for (double p : s.p) scale += p;
    const double tol = std::max(kLpFeasTol, 1e-12 * scale * scale / (2.0 * s.mu));

    const int max_cuts = 50 * n;
    LpSolution sol;
    std::set<std::vector<int>> pool;
    for (;;) {
        LpVertex vertex = lp_core_solve(lp);
        ++sol.iterations;
        sol.C.assign(vertex.x.begin(), vertex.x.begin() + n);
        sol.C_M.assign(vertex.x.begin() + n, vertex.x.end());
        sol.objective = vertex.objective;

        auto report = separation_oracle(sol.C, s, tol);
        if (!report) break;
        if (!pool.insert(report->subset).second) break;  // numeric floor reached
        if (static_cast<int>(sol.generated_sets.size()) >= max_cuts) {
            throw InternalError(InternalError::Kind::IterationLimitExceeded,
                                "row generation exceeded " + std::to_string(max_cuts) + " cuts");
        }
        lp.constraints.push_back(subset_cut(report->subset, s));
        sol.generated_sets.push_back(report->subset);
    }
    return sol;
}

}  // namespace mrsched
