#include "mrsched/dmrs.hpp"

#include <algorithm>
#include <cmath>

namespace mrsched {

double twct(const Workload& w, const std::vector<double>& completion) {
    double total = 0.0;
    for (std::size_t i = 0; i < w.jobs.size(); ++i) {
        total += w.jobs[i].weight * completion[i];
    }
    return total;
}

std::vector<int> job_order(const LpSolution& lp, const DerivedStats& s) {
    std::vector<int> order(s.p.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i) + 1;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const std::size_t ia = static_cast<std::size_t>(a - 1);
        const std::size_t ib = static_cast<std::size_t>(b - 1);
        const double ka = lp.C[ia] - (s.p[ia] == 0.0 ? 0.0 : s.p[ia] / (2.0 * s.mu_j[ia]));
        const double kb = lp.C[ib] - (s.p[ib] == 0.0 ? 0.0 : s.p[ib] / (2.0 * s.mu_j[ib]));
        if (ka != kb) return ka < kb;
        return a < b;
    });
    return order;
}

Schedule schedule_dmrs(const Workload& w, const std::vector<int>& order) {
    const int m = w.cluster.machine_count();
    const std::size_t n = w.jobs.size();

    Schedule sch;
    sch.order = order;
    sch.per_machine.resize(static_cast<std::size_t>(m));
    sch.job_completion.assign(n, 0.0);
    sch.map_completion.assign(n, 0.0);

    std::vector<double> frontier(static_cast<std::size_t>(m), 0.0);
    const auto& speeds = w.cluster.speeds;

    auto place = [&](int job_id, Phase phase, int task, int machine, double start,
                     double end) {
        sch.per_machine[static_cast<std::size_t>(machine)].push_back(
            static_cast<int>(sch.placements.size()));
        sch.placements.push_back({job_id, phase, task, machine + 1, start, end});
        frontier[static_cast<std::size_t>(machine)] = end;
    };

    for (int id : order) {
        const Job& job = w.job(id);
        const std::size_t ji = static_cast<std::size_t>(id - 1);

        double map_done = job.release;
        for (std::size_t t = 0; t < job.map_sizes.size(); ++t) {
            const double size = job.map_sizes[t];
            int best = 0;
            double best_end = 0.0;
            for (int l = 0; l < m; ++l) {
                const double end = std::max(frontier[static_cast<std::size_t>(l)], job.release) +
                                   size / speeds[static_cast<std::size_t>(l)];
                if (l == 0 || end < best_end) {
                    best = l;
                    best_end = end;
                }
            }
            const double start = std::max(frontier[static_cast<std::size_t>(best)], job.release);
            place(id, Phase::Map, static_cast<int>(t) + 1, best, start, best_end);
            map_done = std::max(map_done, best_end);
        }
        sch.map_completion[ji] = map_done;

        double completion = map_done;
        for (std::size_t t = 0; t < job.reduce_sizes.size(); ++t) {
            const double size = job.reduce_sizes[t];
            int best = 0;
            double best_end = 0.0;
            double best_start = 0.0;
            for (int l = 0; l < m; ++l) {
                const double ready = std::max({frontier[static_cast<std::size_t>(l)], map_done, job.release});
                const double end = ready + size / speeds[static_cast<std::size_t>(l)];
                if (l == 0 || end < best_end) {
                    best = l;
                    best_end = end;
                    best_start = ready;
                }
            }
            place(id, Phase::Reduce, static_cast<int>(t) + 1, best, best_start, best_end);
            completion = std::max(completion, best_end);
        }
        sch.job_completion[ji] = completion;
    }
    return sch;
}

double lemma2_bound(const Workload& w, const DerivedStats& s,
                    const std::vector<int>& order, int j) {
    const int m = w.cluster.machine_count();
    double max_release = 0.0;
    double sum_largest_map = 0.0;
    double sum_p = 0.0;
    for (int k = 0; k < j; ++k) {
        const Job& job = w.job(order[static_cast<std::size_t>(k)]);
        max_release = std::max(max_release, job.release);
        sum_largest_map += job.largest_map();
        sum_p += job.total();
    }
    const double largest_reduce = w.job(order[static_cast<std::size_t>(j - 1)]).largest_reduce();
    return max_release +
           ((m - 1) * (largest_reduce + sum_largest_map) + sum_p) / s.mu;
}

double theoretical_ratio(const Workload& w, const DerivedStats& s, bool zero_release) {
    const int m = w.cluster.machine_count();
    const double spread = (m - 1) / s.skew;
    return zero_release ? 2.0 * (1.0 + spread) : 3.0 + 2.0 * spread;
}

}  // namespace mrsched
