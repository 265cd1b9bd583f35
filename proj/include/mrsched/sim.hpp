#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mrsched/dmrs.hpp"
#include "mrsched/model.hpp"

namespace mrsched {

// Realized execution of a workload: same shape as a Schedule, with realized
// times and the weighted completion total already folded in.
struct ExecutionTrace {
    std::vector<Placement> placements;
    std::vector<std::vector<int>> per_machine;
    std::vector<double> job_completion;
    std::vector<double> map_completion;
    double twct = 0.0;
    int replan_count = 0;
};

// Multiplicative duration noise: each task's realized duration is
// size/speed times an i.i.d. factor drawn uniformly from [lo, hi].
struct PerturbationModel {
    enum class Mode { None, Multiplicative };
    Mode mode = Mode::None;
    double lo = 1.0;
    double hi = 1.0;
    std::uint64_t seed = 0;
};

struct ScheduleViolation {
    enum class Kind {
        MissingTask,
        DuplicateTask,
        UnknownTask,
        BadMachine,
        Overlap,
        ReleaseViolation,
        PrecedenceViolation,
        DurationMismatch,
    };
    Kind kind;
    std::string detail;
};

// Checks a planned schedule: every task placed exactly once, machines run one
// task at a time, no start before release, no reduce before the job's maps
// finish, and durations equal size/speed. Violations are returned, not thrown.
std::vector<ScheduleViolation> validate_schedule(const Workload& w, const Schedule& sch);

// Same checks on realized times, minus the duration check (realized durations
// include perturbation).
std::vector<ScheduleViolation> validate_trace(const Workload& w, const ExecutionTrace& trace);

// Per-task duration multipliers, keyed by (job, phase, task). Used by both
// execution modes so a given seed perturbs the same task identically whether
// the plan is replayed or re-optimized.
using DrawFn = std::function<double(int job, Phase phase, int task)>;
DrawFn make_draws(const Workload& w, const PerturbationModel& perturb);

// Replays the schedule's per-machine task order with perturbed durations.
// Machine assignment and order never change; starts respect release times
// and realized map completions.
ExecutionTrace execute_static(const Workload& w, const Schedule& sch,
                              const PerturbationModel& perturb);
ExecutionTrace execute_static(const Workload& w, const Schedule& sch, const DrawFn& draw);

// Re-runs the list scheduler's machine argmin at dispatch time against
// realized frontiers: completed durations are known, in-flight and queued
// work is estimated at nominal speed. Job order stays fixed; replan_count
// counts tasks whose machine differs from the static plan.
ExecutionTrace execute_dynamic(const Workload& w, const std::vector<int>& order,
                               const PerturbationModel& perturb);
ExecutionTrace execute_dynamic(const Workload& w, const std::vector<int>& order,
                               const DrawFn& draw);

// Exhaustive minimum weighted completion time over every machine assignment
// and per-machine order; total tasks <= 6 and m <= 3. Test oracle only.
std::pair<double, Schedule> brute_force_optimal(const Workload& w);

// Shared fixed-assignment replay: times the given per-machine queues
// (vectors of placement prototypes carrying job/phase/task/machine) against
// `speeds`, honoring release and precedence. Throws on a precedence deadlock.
ExecutionTrace replay_queues(const Workload& w, const std::vector<double>& speeds,
                             const std::vector<std::vector<Placement>>& queues,
                             const DrawFn& draw);

}  // namespace mrsched
