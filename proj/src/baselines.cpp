#include "mrsched/baselines.hpp"

#include <algorithm>
#include <tuple>
#include <utility>

#include "mrsched/lp.hpp"
#include "mrsched/rng.hpp"
#include "mrsched/sim.hpp"

namespace mrsched {

namespace {

Schedule trace_to_schedule(ExecutionTrace trace, std::vector<int> order) {
    Schedule sch;
    sch.placements = std::move(trace.placements);
    sch.per_machine = std::move(trace.per_machine);
    sch.job_completion = std::move(trace.job_completion);
    sch.map_completion = std::move(trace.map_completion);
    sch.order = std::move(order);
    return sch;
}

}  // namespace

Schedule schedule_fifo(const Workload& w, bool early_reduce) {
    const int m = w.cluster.machine_count();
    const std::size_t n = w.jobs.size();
    const auto& speeds = w.cluster.speeds;

    std::vector<int> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i) + 1;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double ra = w.job(a).release;
        const double rb = w.job(b).release;
        if (ra != rb) return ra < rb;
        return a < b;
    });

    Schedule sch;
    sch.order = order;
    sch.per_machine.resize(static_cast<std::size_t>(m));
    sch.job_completion.assign(n, 0.0);
    sch.map_completion.assign(n, 0.0);

    std::vector<double> frontier(static_cast<std::size_t>(m), 0.0);
    auto place = [&](int job_id, Phase phase, int task, int machine, double start, double end) {
        sch.per_machine[static_cast<std::size_t>(machine)].push_back(
            static_cast<int>(sch.placements.size()));
        sch.placements.push_back({job_id, phase, task, machine + 1, start, end});
        frontier[static_cast<std::size_t>(machine)] = end;
    };

    // "First available" picks the machine that frees up earliest, not the one
    // that would finish the task earliest.
    auto first_available = [&](double floor) {
        int best = 0;
        double best_open = 0.0;
        for (int l = 0; l < m; ++l) {
            const double open = std::max(frontier[static_cast<std::size_t>(l)], floor);
            if (l == 0 || open < best_open) {
                best = l;
                best_open = open;
            }
        }
        return std::pair<int, double>{best, best_open};
    };

    for (int id : order) {
        const Job& job = w.job(id);
        const std::size_t ji = static_cast<std::size_t>(id - 1);

        double map_done = job.release;
        for (std::size_t t = 0; t < job.map_sizes.size(); ++t) {
            const auto [l, open] = first_available(job.release);
            const double end = open + job.map_sizes[t] / speeds[static_cast<std::size_t>(l)];
            place(id, Phase::Map, static_cast<int>(t) + 1, l, open, end);
            map_done = std::max(map_done, end);
        }
        sch.map_completion[ji] = map_done;

        double completion = map_done;
        for (std::size_t t = 0; t < job.reduce_sizes.size(); ++t) {
            int l;
            double start;
            if (early_reduce) {
                // Chosen while the maps may still be running; the machine
                // sits idle from its frontier until the maps finish.
                std::tie(l, start) = first_available(job.release);
                start = std::max(start, map_done);
            } else {
                std::tie(l, start) = first_available(std::max(job.release, map_done));
            }
            const double end = start + job.reduce_sizes[t] / speeds[static_cast<std::size_t>(l)];
            place(id, Phase::Reduce, static_cast<int>(t) + 1, l, start, end);
            completion = std::max(completion, end);
        }
        sch.job_completion[ji] = completion;
    }
    return sch;
}

Schedule schedule_identical(const Workload& w) {
    const int m = w.cluster.machine_count();

    Workload planning = w;
    const double mean_speed = w.cluster.total_speed() / m;
    planning.cluster.speeds.assign(static_cast<std::size_t>(m), mean_speed);

    const DerivedStats stats = derive_stats(planning);
    const LpSolution lp = solve_lp(planning, stats);
    const std::vector<int> order = job_order(lp, stats);
    const Schedule plan = schedule_dmrs(planning, order);

    // Same assignment and per-machine order, timed on the real speeds.
    std::vector<std::vector<Placement>> queues(static_cast<std::size_t>(m));
    for (std::size_t l = 0; l < queues.size(); ++l) {
        for (int pi : plan.per_machine[l]) {
            queues[l].push_back(plan.placements[static_cast<std::size_t>(pi)]);
        }
    }
    ExecutionTrace replay = replay_queues(w, w.cluster.speeds, queues,
                                          [](int, Phase, int) { return 1.0; });
    return trace_to_schedule(std::move(replay), order);
}

Schedule schedule_maponly(const Workload& w, std::uint64_t seed) {
    const int m = w.cluster.machine_count();
    const std::size_t n = w.jobs.size();
    const auto& speeds = w.cluster.speeds;

    Workload planning = w;
    for (Job& job : planning.jobs) job.reduce_sizes.clear();
    const DerivedStats planning_stats = derive_stats(planning);
    const LpSolution lp = solve_lp(planning, planning_stats);
    const std::vector<int> order = job_order(lp, planning_stats);

    Schedule sch;
    sch.order = order;
    sch.per_machine.resize(static_cast<std::size_t>(m));
    sch.job_completion.assign(n, 0.0);
    sch.map_completion.assign(n, 0.0);

    std::vector<double> frontier(static_cast<std::size_t>(m), 0.0);
    auto place = [&](int job_id, Phase phase, int task, int machine, double start, double end) {
        sch.per_machine[static_cast<std::size_t>(machine)].push_back(
            static_cast<int>(sch.placements.size()));
        sch.placements.push_back({job_id, phase, task, machine + 1, start, end});
        frontier[static_cast<std::size_t>(machine)] = end;
    };

    Rng rng(seed);
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
            const int l = static_cast<int>(rng.uniform_int(1, static_cast<std::uint64_t>(m))) - 1;
            const double start = std::max({frontier[static_cast<std::size_t>(l)], map_done, job.release});
            const double end = start + job.reduce_sizes[t] / speeds[static_cast<std::size_t>(l)];
            place(id, Phase::Reduce, static_cast<int>(t) + 1, l, start, end);
            completion = std::max(completion, end);
        }
        sch.job_completion[ji] = completion;
    }
    return sch;
}

}  // namespace mrsched
