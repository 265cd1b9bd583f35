#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mrsched/baselines.hpp"
#include "mrsched/json_io.hpp"
#include "mrsched/lp.hpp"
#include "mrsched/sim.hpp"

#include "helpers.hpp"

using namespace mrsched;

namespace {

bool has_kind(const std::vector<ScheduleViolation>& violations, ScheduleViolation::Kind kind) {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const ScheduleViolation& v) { return v.kind == kind; });
}

DrawFn draw_for(int job, Phase phase, int task, double factor) {
    return [=](int j, Phase p, int t) {
        return (j == job && p == phase && t == task) ? factor : 1.0;
    };
}

}  // namespace

TEST_CASE("schedule validation") {
    Workload w = test::make_workload({2, 1}, {{1, 1.0, 0.0, {4, 4}, {2}}});

    SUBCASE("planner output is clean") {
        CHECK(validate_schedule(w, schedule_dmrs(w, {1})).empty());
    }
    SUBCASE("reduce before map completion") {
        Schedule sch;
        sch.placements = {{1, Phase::Map, 1, 1, 0.0, 2.0},
                          {1, Phase::Map, 2, 2, 0.0, 4.0},
                          {1, Phase::Reduce, 1, 1, 2.0, 3.0}};  // maps end at 4
        CHECK(has_kind(validate_schedule(w, sch), ScheduleViolation::Kind::PrecedenceViolation));
    }
    SUBCASE("duplicate and missing tasks") {
        Schedule sch;
        sch.placements = {{1, Phase::Map, 1, 1, 0.0, 2.0},
                          {1, Phase::Map, 1, 2, 0.0, 4.0},
                          {1, Phase::Reduce, 1, 1, 4.0, 5.0}};
        const auto violations = validate_schedule(w, sch);
        CHECK(has_kind(violations, ScheduleViolation::Kind::DuplicateTask));
        CHECK(has_kind(violations, ScheduleViolation::Kind::MissingTask));
    }
    SUBCASE("overlap on one machine") {
        Schedule sch;
        sch.placements = {{1, Phase::Map, 1, 1, 0.0, 2.0},
                          {1, Phase::Map, 2, 1, 1.0, 3.0},
                          {1, Phase::Reduce, 1, 2, 3.0, 5.0}};
        CHECK(has_kind(validate_schedule(w, sch), ScheduleViolation::Kind::Overlap));
    }
    SUBCASE("start before release") {
        Workload late = test::make_workload({1}, {{1, 1.0, 5.0, {2}, {}}});
        Schedule sch;
        sch.placements = {{1, Phase::Map, 1, 1, 0.0, 2.0}};
        CHECK(has_kind(validate_schedule(late, sch), ScheduleViolation::Kind::ReleaseViolation));
    }
    SUBCASE("wrong duration") {
        Schedule sch;
        sch.placements = {{1, Phase::Map, 1, 1, 0.0, 2.5},
                          {1, Phase::Map, 2, 1, 2.5, 4.5},
                          {1, Phase::Reduce, 1, 1, 4.5, 5.5}};
        CHECK(has_kind(validate_schedule(w, sch), ScheduleViolation::Kind::DurationMismatch));
    }
}

TEST_CASE("static replay") {
    Workload w = test::make_workload(
        {2, 1}, {{1, 1.0, 0.0, {4, 4}, {2}}, {2, 2.0, 1.0, {3}, {1}}});
    const DerivedStats s = derive_stats(w);
    const LpSolution lp = solve_lp(w, s);
    const Schedule sch = schedule_dmrs(w, job_order(lp, s));

    SUBCASE("no perturbation reproduces planned times exactly") {
        const ExecutionTrace trace = execute_static(w, sch, PerturbationModel{});
        CHECK(test::canonical(trace.placements) == test::canonical(sch.placements));
        CHECK(trace.twct == doctest::Approx(twct(w, sch.job_completion)));
        CHECK(trace.replan_count == 0);
    }
    SUBCASE("single machine, zero release: doubling draws doubles completions") {
        Workload one = test::make_workload({2}, {{1, 1.0, 0.0, {4}, {2}}, {2, 1.0, 0.0, {3}, {}}});
        const Schedule plan = schedule_dmrs(one, {1, 2});
        const ExecutionTrace trace =
            execute_static(one, plan, [](int, Phase, int) { return 2.0; });
        CHECK(trace.job_completion[0] == doctest::Approx(2.0 * plan.job_completion[0]));
        CHECK(trace.job_completion[1] == doctest::Approx(2.0 * plan.job_completion[1]));
    }
    SUBCASE("fixed seed gives identical traces") {
        PerturbationModel perturb{PerturbationModel::Mode::Multiplicative, 0.7, 1.4, 99};
        const ExecutionTrace a = execute_static(w, sch, perturb);
        const ExecutionTrace b = execute_static(w, sch, perturb);
        CHECK(trace_to_json(w, a).dump() == trace_to_json(w, b).dump());
    }
    SUBCASE("perturbed traces stay feasible") {
        PerturbationModel perturb{PerturbationModel::Mode::Multiplicative, 0.5, 2.0, 7};
        const ExecutionTrace trace = execute_static(w, sch, perturb);
        CHECK(validate_trace(w, trace).empty());
    }
    SUBCASE("perturbation range is checked") {
        PerturbationModel bad{PerturbationModel::Mode::Multiplicative, 0.0, 2.0, 1};
        CHECK_THROWS_AS(execute_static(w, sch, bad), ValidationError);
    }
}

TEST_CASE("dynamic execution") {
    SUBCASE("no perturbation matches the static plan with zero replans") {
        Rng rng(777);
        for (int trial = 0; trial < 40; ++trial) {
            const Workload w = test::random_workload(rng, 6, 3);
            const DerivedStats s = derive_stats(w);
            const std::vector<int> order = job_order(solve_lp(w, s), s);
            const Schedule plan = schedule_dmrs(w, order);
            const ExecutionTrace stat = execute_static(w, plan, PerturbationModel{});
            const ExecutionTrace dyn = execute_dynamic(w, order, PerturbationModel{});
            CHECK(dyn.replan_count == 0);
            CHECK(test::canonical(dyn.placements) == test::canonical(stat.placements));
            CHECK(dyn.job_completion == stat.job_completion);
            CHECK(dyn.twct == stat.twct);
        }
    }
    SUBCASE("a slow in-flight map diverts later work") {
        // Two machines of speeds 2 and 1. Job 1 (one map of size 8) plans on
        // the fast machine, [0,4]. Job 2 releases at 5 with a map of size 4:
        // the plan expects machine 1 free at 4 and places it there, [5,7].
        // When job 1's map runs 3x slow the dispatcher sees machine 1 busy
        // until ~7.3 at job 2's release and moves its map to machine 2.
        Workload w = test::make_workload(
            {2, 1}, {{1, 1.0, 0.0, {8}, {}}, {2, 1.0, 5.0, {4}, {}}});
        const std::vector<int> order = {1, 2};
        const Schedule plan = schedule_dmrs(w, order);
        CHECK(plan.placements[1].machine == 1);
        CHECK(plan.placements[1].start == doctest::Approx(5.0));

        const DrawFn slow = draw_for(1, Phase::Map, 1, 3.0);
        const ExecutionTrace stat = execute_static(w, plan, slow);
        CHECK(stat.job_completion[1] == doctest::Approx(14.0));  // waits for [0,12]

        const ExecutionTrace dyn = execute_dynamic(w, order, slow);
        CHECK(dyn.replan_count == 1);
        CHECK(dyn.placements[1].machine == 2);
        CHECK(dyn.job_completion[1] == doctest::Approx(9.0));
        CHECK(validate_trace(w, dyn).empty());
    }
    SUBCASE("perturbed dynamic traces stay feasible") {
        Rng rng(31337);
        for (int trial = 0; trial < 40; ++trial) {
            const Workload w = test::random_workload(rng, 6, 3);
            const DerivedStats s = derive_stats(w);
            const std::vector<int> order = job_order(solve_lp(w, s), s);
            PerturbationModel perturb{PerturbationModel::Mode::Multiplicative, 0.5, 2.0,
                                      static_cast<std::uint64_t>(trial)};
            const ExecutionTrace dyn = execute_dynamic(w, order, perturb);
            CHECK(validate_trace(w, dyn).empty());
        }
    }
}

TEST_CASE("exhaustive optimum on tiny instances") {
    SUBCASE("single machine worked example") {
        Workload w = test::make_workload({1}, {{1, 1.0, 0.0, {2}, {3}}});
        const auto [best, sch] = brute_force_optimal(w);
        CHECK(best == doctest::Approx(5.0));
        CHECK(validate_schedule(w, sch).empty());
    }
    SUBCASE("two machines worked example") {
        Workload w = test::make_workload({2, 1}, {{1, 1.0, 0.0, {4, 4}, {2}}});
        const auto [best, sch] = brute_force_optimal(w);
        CHECK(best == doctest::Approx(5.0));
        const Schedule dmrs = schedule_dmrs(w, {1});
        CHECK(twct(w, dmrs.job_completion) == doctest::Approx(best));
    }
    SUBCASE("size guard") {
        Workload w = test::make_workload(
            {1}, {{1, 1.0, 0.0, {1, 1, 1, 1}, {1, 1, 1}}});
        CHECK_THROWS_AS(brute_force_optimal(w), InternalError);
    }
    SUBCASE("lp <= optimum <= any scheduler") {
        Rng rng(65537);
        for (int trial = 0; trial < 25; ++trial) {
            const Workload w =
                test::random_workload(rng, 3, 3, {.max_tasks_per_phase = 2, .max_size = 10.0});
            int tasks = 0;
            for (const Job& job : w.jobs) tasks += job.task_count();
            if (tasks > 6) continue;

            const DerivedStats s = derive_stats(w);
            const LpSolution lp = solve_lp(w, s);
            const auto [best, opt_sch] = brute_force_optimal(w);
            CHECK(lp.objective <= best + 1e-6);

            const std::vector<int> order = job_order(lp, s);
            const double dmrs_twct = twct(w, schedule_dmrs(w, order).job_completion);
            CHECK(best <= dmrs_twct + 1e-9);

            const bool zero_release = std::all_of(
                w.jobs.begin(), w.jobs.end(), [](const Job& j) { return j.release == 0.0; });
            CHECK(dmrs_twct <= theoretical_ratio(w, s, zero_release) * lp.objective + 1e-6);
        }
    }
    SUBCASE("adding a dominated machine never hurts") {
        Rng rng(28657);
        for (int trial = 0; trial < 15; ++trial) {
            const Workload w =
                test::random_workload(rng, 3, 2, {.max_tasks_per_phase = 2, .max_size = 10.0});
            int tasks = 0;
            for (const Job& job : w.jobs) tasks += job.task_count();
            if (tasks > 6) continue;

            Workload wider = w;
            wider.cluster.speeds.push_back(1e-3);
            std::sort(wider.cluster.speeds.begin(), wider.cluster.speeds.end(),
                      std::greater<>());
            CHECK(brute_force_optimal(wider).first <= brute_force_optimal(w).first + 1e-9);
        }
    }
}
