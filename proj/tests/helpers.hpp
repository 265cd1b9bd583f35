#pragma once

#include <algorithm>
#include <tuple>
#include <vector>

#include "mrsched/dmrs.hpp"
#include "mrsched/model.hpp"
#include "mrsched/rng.hpp"

namespace mrsched::test {

inline Workload make_workload(std::vector<double> speeds, std::vector<Job> jobs) {
    Workload w;
    w.cluster.speeds = std::move(speeds);
    w.jobs = std::move(jobs);
    return validate_workload(std::move(w));
}

struct RandomOptions {
    int max_tasks_per_phase = 4;
    double max_size = 10.0;
    double release_prob = 0.5;  // chance the whole instance gets releases
    double max_release = 20.0;
    double min_speed = 1.0;
    double max_speed = 8.0;
};

// A validated random instance: N jobs, m machines, task sizes uniform in
// (0, max_size]. Each instance is either all-zero-release or mixed.
inline Workload random_workload(Rng& rng, int max_jobs, int max_machines,
                                const RandomOptions& opt = {}) {
    Workload w;
    const int m = static_cast<int>(rng.uniform_int(1, static_cast<std::uint64_t>(max_machines)));
    for (int l = 0; l < m; ++l) {
        w.cluster.speeds.push_back(rng.uniform(opt.min_speed, opt.max_speed));
    }
    const int n = static_cast<int>(rng.uniform_int(1, static_cast<std::uint64_t>(max_jobs)));
    const bool with_release = rng.uniform01() < opt.release_prob;
    for (int j = 1; j <= n; ++j) {
        Job job;
        job.id = j;
        job.weight = static_cast<double>(rng.uniform_int(1, 5));
        job.release = with_release && rng.uniform01() < 0.7 ? rng.uniform(0.0, opt.max_release) : 0.0;
        const int maps = static_cast<int>(
            rng.uniform_int(0, static_cast<std::uint64_t>(opt.max_tasks_per_phase)));
        const int reduces =
            maps == 0 ? static_cast<int>(rng.uniform_int(
                            1, static_cast<std::uint64_t>(opt.max_tasks_per_phase)))
                      : static_cast<int>(rng.uniform_int(
                            0, static_cast<std::uint64_t>(opt.max_tasks_per_phase)));
        for (int t = 0; t < maps; ++t) job.map_sizes.push_back(rng.uniform_pos(opt.max_size));
        for (int t = 0; t < reduces; ++t) job.reduce_sizes.push_back(rng.uniform_pos(opt.max_size));
        w.jobs.push_back(std::move(job));
    }
    return validate_workload(std::move(w));
}

// Placement lists in task identity order, for comparing schedules that were
// emitted in different traversal orders.
inline std::vector<Placement> canonical(std::vector<Placement> v) {
    std::sort(v.begin(), v.end(), [](const Placement& a, const Placement& b) {
        return std::tuple(a.job, a.phase == Phase::Map ? 0 : 1, a.task) <
               std::tuple(b.job, b.phase == Phase::Map ? 0 : 1, b.task);
    });
    return v;
}

}  // namespace mrsched::test
