#include "mrsched/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <tuple>

#include "mrsched/rng.hpp"

namespace mrsched {

namespace {

double task_size(const Workload& w, int job, Phase phase, int task) {
    const Job& j = w.job(job);
    const auto& sizes = phase == Phase::Map ? j.map_sizes : j.reduce_sizes;
    return sizes[static_cast<std::size_t>(task - 1)];
}

const char* phase_name(Phase p) { return p == Phase::Map ? "map" : "reduce"; }

std::string task_tag(const Placement& pl) {
    return std::string("job ") + std::to_string(pl.job) + " " + phase_name(pl.phase) +
           " task " + std::to_string(pl.task);
}

// Times the per-machine queues by advancing each machine as far as its head
// allows; a reduce head blocks until all of its job's maps are realized.
// Returns false on a precedence deadlock (possible only for arbitrary
// enumerated orders, never for schedules built by the planners).
bool replay_impl(const Workload& w, const std::vector<double>& speeds,
                 const std::vector<std::vector<Placement>>& queues, const DrawFn& draw,
                 ExecutionTrace& out) {
    const std::size_t m = queues.size();
    const std::size_t n = w.jobs.size();

    std::vector<int> maps_left(n, 0);
    std::size_t total = 0;
    for (const auto& q : queues) {
        total += q.size();
        for (const Placement& pl : q) {
            if (pl.phase == Phase::Map) ++maps_left[static_cast<std::size_t>(pl.job - 1)];
        }
    }

    out.placements.clear();
    out.placements.reserve(total);
    out.per_machine.assign(m, {});
    out.map_completion.resize(n);
    out.job_completion.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        out.map_completion[i] = w.jobs[i].release;
        out.job_completion[i] = w.jobs[i].release;
    }

    std::vector<std::size_t> idx(m, 0);
    std::vector<double> frontier(m, 0.0);
    std::size_t placed = 0;
    while (placed < total) {
        bool progressed = false;
        for (std::size_t l = 0; l < m; ++l) {
            while (idx[l] < queues[l].size()) {
                const Placement& proto = queues[l][idx[l]];
                const std::size_t ji = static_cast<std::size_t>(proto.job - 1);
                if (proto.phase == Phase::Reduce && maps_left[ji] > 0) break;

                const double release = w.jobs[ji].release;
                const double ready =
                    proto.phase == Phase::Reduce ? std::max(release, out.map_completion[ji]) : release;
                const double start = std::max(frontier[l], ready);
                const double duration = task_size(w, proto.job, proto.phase, proto.task) /
                                        speeds[l] * draw(proto.job, proto.phase, proto.task);
                const double end = start + duration;

                out.per_machine[l].push_back(static_cast<int>(out.placements.size()));
                out.placements.push_back(
                    {proto.job, proto.phase, proto.task, static_cast<int>(l) + 1, start, end});
                frontier[l] = end;
                if (proto.phase == Phase::Map) {
                    --maps_left[ji];
                    out.map_completion[ji] = std::max(out.map_completion[ji], end);
                }
                out.job_completion[ji] = std::max(out.job_completion[ji], end);
                ++idx[l];
                ++placed;
                progressed = true;
            }
        }
        if (!progressed) return false;
    }
    out.twct = twct(w, out.job_completion);
    out.replan_count = 0;
    return true;
}

void validate_impl(const Workload& w, const std::vector<Placement>& placements,
                   bool check_durations, std::vector<ScheduleViolation>& out) {
    using Kind = ScheduleViolation::Kind;
    const int m = w.cluster.machine_count();
    const std::size_t n = w.jobs.size();

    // (a) every task of every job appears exactly once
    std::vector<std::vector<int>> map_seen(n), reduce_seen(n);
    for (std::size_t i = 0; i < n; ++i) {
        map_seen[i].assign(w.jobs[i].map_sizes.size(), 0);
        reduce_seen[i].assign(w.jobs[i].reduce_sizes.size(), 0);
    }
    for (const Placement& pl : placements) {
        if (pl.job < 1 || pl.job > static_cast<int>(n)) {
            out.push_back({Kind::UnknownTask, task_tag(pl) + ": no such job"});
            continue;
        }
        auto& seen = pl.phase == Phase::Map ? map_seen[static_cast<std::size_t>(pl.job - 1)]
                                            : reduce_seen[static_cast<std::size_t>(pl.job - 1)];
        if (pl.task < 1 || pl.task > static_cast<int>(seen.size())) {
            out.push_back({Kind::UnknownTask, task_tag(pl) + ": no such task"});
            continue;
        }
        if (++seen[static_cast<std::size_t>(pl.task - 1)] > 1) {
            out.push_back({Kind::DuplicateTask, task_tag(pl) + " placed more than once"});
        }
        if (pl.machine < 1 || pl.machine > m) {
            out.push_back({Kind::BadMachine,
                           task_tag(pl) + ": machine " + std::to_string(pl.machine)});
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto* seen : {&map_seen[i], &reduce_seen[i]}) {
            for (std::size_t t = 0; t < seen->size(); ++t) {
                if ((*seen)[t] == 0) {
                    out.push_back({Kind::MissingTask,
                                   "job " + std::to_string(i + 1) +
                                       (seen == &map_seen[i] ? " map" : " reduce") + " task " +
                                       std::to_string(t + 1) + " never placed"});
                }
            }
        }
    }

    // (b) per-machine non-overlap
    std::vector<std::vector<const Placement*>> by_machine(static_cast<std::size_t>(m));
    for (const Placement& pl : placements) {
        if (pl.machine >= 1 && pl.machine <= m) {
            by_machine[static_cast<std::size_t>(pl.machine - 1)].push_back(&pl);
        }
    }
    for (auto& list : by_machine) {
        std::sort(list.begin(), list.end(), [](const Placement* a, const Placement* b) {
            return std::tie(a->start, a->end) < std::tie(b->start, b->end);
        });
        for (std::size_t i = 1; i < list.size(); ++i) {
            if (list[i]->start < list[i - 1]->end - kTimeTol) {
                out.push_back({Kind::Overlap, task_tag(*list[i]) + " overlaps " +
                                                   task_tag(*list[i - 1]) + " on machine " +
                                                   std::to_string(list[i]->machine)});
            }
        }
    }

    // (c) release, (d) precedence, (e) duration
    std::vector<double> map_end(n, -std::numeric_limits<double>::infinity());
    for (const Placement& pl : placements) {
        if (pl.job < 1 || pl.job > static_cast<int>(n)) continue;
        if (pl.phase == Phase::Map) {
            auto& e = map_end[static_cast<std::size_t>(pl.job - 1)];
            e = std::max(e, pl.end);
        }
    }
    for (const Placement& pl : placements) {
        if (pl.job < 1 || pl.job > static_cast<int>(n)) continue;
        const Job& job = w.job(pl.job);
        if (pl.start < job.release - kTimeTol) {
            out.push_back({Kind::ReleaseViolation,
                           task_tag(pl) + " starts at " + std::to_string(pl.start) +
                               " before release " + std::to_string(job.release)});
        }
        if (pl.phase == Phase::Reduce &&
            pl.start < map_end[static_cast<std::size_t>(pl.job - 1)] - kTimeTol) {
            out.push_back({Kind::PrecedenceViolation,
                           task_tag(pl) + " starts before the job's maps finish"});
        }
        if (check_durations && pl.machine >= 1 && pl.machine <= m && pl.task >= 1) {
            const auto& sizes = pl.phase == Phase::Map ? job.map_sizes : job.reduce_sizes;
            if (pl.task <= static_cast<int>(sizes.size())) {
                const double expect = sizes[static_cast<std::size_t>(pl.task - 1)] /
                                      w.cluster.speeds[static_cast<std::size_t>(pl.machine - 1)];
                if (std::fabs((pl.end - pl.start) - expect) > kTimeTol) {
                    out.push_back({Kind::DurationMismatch,
                                   task_tag(pl) + " runs " + std::to_string(pl.end - pl.start) +
                                       ", expected " + std::to_string(expect)});
                }
            }
        }
    }
}

}  // namespace

std::vector<ScheduleViolation> validate_schedule(const Workload& w, const Schedule& sch) {
    std::vector<ScheduleViolation> out;
    validate_impl(w, sch.placements, /*check_durations=*/true, out);
    return out;
}

std::vector<ScheduleViolation> validate_trace(const Workload& w, const ExecutionTrace& trace) {
    std::vector<ScheduleViolation> out;
    validate_impl(w, trace.placements, /*check_durations=*/false, out);
    return out;
}

DrawFn make_draws(const Workload& w, const PerturbationModel& perturb) {
    if (perturb.mode == PerturbationModel::Mode::None) {
        return [](int, Phase, int) { return 1.0; };
    }
    if (!(perturb.lo > 0.0) || perturb.lo > perturb.hi) {
        throw ValidationError(ValidationError::Kind::BadPerturbation,
                              "perturbation range must satisfy 0 < lo <= hi");
    }
    // One factor per task, drawn in canonical task order so the mapping from
    // seed to factors does not depend on scheduler decisions.
    auto factors = std::make_shared<std::map<std::tuple<int, int, int>, double>>();
    Rng rng(perturb.seed);
    for (const Job& job : w.jobs) {
        for (std::size_t t = 0; t < job.map_sizes.size(); ++t) {
            (*factors)[{job.id, 0, static_cast<int>(t) + 1}] = rng.uniform(perturb.lo, perturb.hi);
        }
        for (std::size_t t = 0; t < job.reduce_sizes.size(); ++t) {
            (*factors)[{job.id, 1, static_cast<int>(t) + 1}] = rng.uniform(perturb.lo, perturb.hi);
        }
    }
    return [factors](int job, Phase phase, int task) {
        return factors->at({job, phase == Phase::Map ? 0 : 1, task});
    };
}

ExecutionTrace replay_queues(const Workload& w, const std::vector<double>& speeds,
                             const std::vector<std::vector<Placement>>& queues,
                             const DrawFn& draw) {
    ExecutionTrace trace;
    if (!replay_impl(w, speeds, queues, draw, trace)) {
        throw InternalError(InternalError::Kind::ReplayDeadlock,
                            "cyclic precedence in fixed-order replay");
    }
    return trace;
}

ExecutionTrace execute_static(const Workload& w, const Schedule& sch, const DrawFn& draw) {
    std::vector<std::vector<Placement>> queues(sch.per_machine.size());
    for (std::size_t l = 0; l < sch.per_machine.size(); ++l) {
        for (int pi : sch.per_machine[l]) {
            queues[l].push_back(sch.placements[static_cast<std::size_t>(pi)]);
        }
    }
    return replay_queues(w, w.cluster.speeds, queues, draw);
}

ExecutionTrace execute_static(const Workload& w, const Schedule& sch,
                              const PerturbationModel& perturb) {
    return execute_static(w, sch, make_draws(w, perturb));
}

ExecutionTrace execute_dynamic(const Workload& w, const std::vector<int>& order,
                               const DrawFn& draw) {
    const int m = w.cluster.machine_count();
    const std::size_t n = w.jobs.size();
    const auto& speeds = w.cluster.speeds;

    // Static plan for counting diverging machine choices.
    const Schedule plan = schedule_dmrs(w, order);
    std::map<std::tuple<int, int, int>, int> planned_machine;
    for (const Placement& pl : plan.placements) {
        planned_machine[{pl.job, pl.phase == Phase::Map ? 0 : 1, pl.task}] = pl.machine;
    }

    struct Assigned {
        Placement pl;
        double ready;
    };
    std::vector<std::vector<Assigned>> assigned(static_cast<std::size_t>(m));
    std::vector<double> frontier(static_cast<std::size_t>(m), 0.0);  // realized

    ExecutionTrace trace;
    trace.per_machine.assign(static_cast<std::size_t>(m), {});
    trace.map_completion.resize(n);
    trace.job_completion.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        trace.map_completion[i] = w.jobs[i].release;
        trace.job_completion[i] = w.jobs[i].release;
    }

    // The scheduler's view of machine l at time t: realized completions are
    // known, the running task contributes its remaining data at nominal
    // speed, queued tasks their full size at nominal speed.
    auto estimate = [&](int l, double t) {
        double avail = 0.0;
        for (const Assigned& a : assigned[static_cast<std::size_t>(l)]) {
            if (a.pl.end <= t) {
                avail = std::max(avail, a.pl.end);
            } else if (a.pl.start <= t) {
                const double remaining = task_size(w, a.pl.job, a.pl.phase, a.pl.task) *
                                         (a.pl.end - t) / (a.pl.end - a.pl.start);
                avail = std::max(avail, t) + remaining / speeds[static_cast<std::size_t>(l)];
            } else {
                avail = std::max(avail, a.ready) +
                        task_size(w, a.pl.job, a.pl.phase, a.pl.task) / speeds[static_cast<std::size_t>(l)];
            }
        }
        return avail;
    };

    auto dispatch = [&](int job_id, Phase phase, int task) {
        const std::size_t ji = static_cast<std::size_t>(job_id - 1);
        const Job& job = w.jobs[ji];
        const double size = task_size(w, job_id, phase, task);
        const double ready = phase == Phase::Map
                                 ? job.release
                                 : std::max(job.release, trace.map_completion[ji]);

        int best = 0;
        double best_end = 0.0;
        for (int l = 0; l < m; ++l) {
            const double avail = estimate(l, ready);
            const double end = std::max(avail, ready) + size / speeds[static_cast<std::size_t>(l)];
            if (l == 0 || end < best_end) {
                best = l;
                best_end = end;
            }
        }

        const double start = std::max(frontier[static_cast<std::size_t>(best)], ready);
        const double end = start + size / speeds[static_cast<std::size_t>(best)] * draw(job_id, phase, task);
        assigned[static_cast<std::size_t>(best)].push_back(
            {{job_id, phase, task, best + 1, start, end}, ready});
        frontier[static_cast<std::size_t>(best)] = end;

        trace.per_machine[static_cast<std::size_t>(best)].push_back(
            static_cast<int>(trace.placements.size()));
        trace.placements.push_back({job_id, phase, task, best + 1, start, end});
        if (phase == Phase::Map) {
            trace.map_completion[ji] = std::max(trace.map_completion[ji], end);
        }
        trace.job_completion[ji] = std::max(trace.job_completion[ji], end);

        if (planned_machine.at({job_id, phase == Phase::Map ? 0 : 1, task}) != best + 1) {
            ++trace.replan_count;
        }
    };

    for (int id : order) {
        const Job& job = w.job(id);
        for (std::size_t t = 0; t < job.map_sizes.size(); ++t) {
            dispatch(id, Phase::Map, static_cast<int>(t) + 1);
        }
        for (std::size_t t = 0; t < job.reduce_sizes.size(); ++t) {
            dispatch(id, Phase::Reduce, static_cast<int>(t) + 1);
        }
    }
    trace.twct = twct(w, trace.job_completion);
    return trace;
}

ExecutionTrace execute_dynamic(const Workload& w, const std::vector<int>& order,
                               const PerturbationModel& perturb) {
    return execute_dynamic(w, order, make_draws(w, perturb));
}

std::pair<double, Schedule> brute_force_optimal(const Workload& w) {
    const int m = w.cluster.machine_count();
    int total_tasks = 0;
    for (const Job& job : w.jobs) total_tasks += job.task_count();
    if (total_tasks > 6 || m > 3) {
        throw InternalError(InternalError::Kind::TooLarge,
                            "brute force optimum limited to 6 tasks on 3 machines");
    }

    std::vector<Placement> tasks;
    for (const Job& job : w.jobs) {
        for (std::size_t t = 0; t < job.map_sizes.size(); ++t) {
            tasks.push_back({job.id, Phase::Map, static_cast<int>(t) + 1, 0, 0.0, 0.0});
        }
        for (std::size_t t = 0; t < job.reduce_sizes.size(); ++t) {
            tasks.push_back({job.id, Phase::Reduce, static_cast<int>(t) + 1, 0, 0.0, 0.0});
        }
    }
    const std::size_t T = tasks.size();
    const DrawFn unit = [](int, Phase, int) { return 1.0; };

    double best_twct = std::numeric_limits<double>::infinity();
    ExecutionTrace best_trace;

    std::vector<int> asg(T, 0);
    std::vector<std::vector<int>> members(static_cast<std::size_t>(m));
    for (;;) {
        for (auto& v : members) v.clear();
        for (std::size_t i = 0; i < T; ++i) {
            members[static_cast<std::size_t>(asg[i])].push_back(static_cast<int>(i));
        }

        // Cartesian product of per-machine task orders.
        std::vector<std::vector<int>> perm(members);
        std::function<void(std::size_t)> walk = [&](std::size_t l) {
            if (l == perm.size()) {
                std::vector<std::vector<Placement>> queues(static_cast<std::size_t>(m));
                for (std::size_t k = 0; k < perm.size(); ++k) {
                    for (int ti : perm[k]) queues[k].push_back(tasks[static_cast<std::size_t>(ti)]);
                }
                ExecutionTrace trace;
                if (replay_impl(w, w.cluster.speeds, queues, unit, trace) &&
                    trace.twct < best_twct) {
                    best_twct = trace.twct;
                    best_trace = std::move(trace);
                }
                return;
            }
            std::sort(perm[l].begin(), perm[l].end());
            do {
                walk(l + 1);
            } while (std::next_permutation(perm[l].begin(), perm[l].end()));
        };
        walk(0);

        // odometer over machine assignments
        std::size_t d = 0;
        while (d < T && ++asg[d] == m) asg[d++] = 0;
        if (d == T) break;
    }

    Schedule sch;
    sch.placements = best_trace.placements;
    sch.per_machine = best_trace.per_machine;
    sch.job_completion = best_trace.job_completion;
    sch.map_completion = best_trace.map_completion;
    sch.order.resize(w.jobs.size());
    for (std::size_t i = 0; i < sch.order.size(); ++i) sch.order[i] = static_cast<int>(i) + 1;
    return {best_twct, sch};
}

}  // namespace mrsched
