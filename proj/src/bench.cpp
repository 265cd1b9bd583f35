#include "mrsched/bench.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mrsched/baselines.hpp"
#include "mrsched/lp.hpp"
#include "mrsched/rng.hpp"

namespace mrsched {

ScenarioSpec scenario_from_json(const json& j) {
    ScenarioSpec spec;
    if (!j.is_object()) {
        throw ValidationError(ValidationError::Kind::InvalidSpec, "scenario must be an object");
    }
    spec.machines = j.value("machines", spec.machines);
    spec.speed_ratio = j.value("speed_ratio", spec.speed_ratio);
    spec.fast_machines = j.value("fast_machines", spec.fast_machines);
    spec.release_groups = j.value("release_groups", spec.release_groups);
    spec.release_gap = j.value("release_gap", spec.release_gap);
    if (j.contains("mix")) {
        for (const auto& e : j.at("mix")) {
            JobMix mix;
            mix.count = e.value("count", 0);
            mix.map_total = e.value("map_total", 0.0);
            mix.map_task_size = e.value("map_task_size", 0.0);
            mix.reduce_tasks = e.value("reduce_tasks", 0);
            mix.reduce_ratio = e.value("reduce_ratio", 0.0);
            spec.mix.push_back(mix);
        }
    }
    return spec;
}

json scenario_to_json(const ScenarioSpec& spec) {
    json mix = json::array();
    for (const JobMix& e : spec.mix) {
        mix.push_back({{"count", e.count},
                       {"map_total", e.map_total},
                       {"map_task_size", e.map_task_size},
                       {"reduce_tasks", e.reduce_tasks},
                       {"reduce_ratio", e.reduce_ratio}});
    }
    return {{"machines", spec.machines},
            {"speed_ratio", spec.speed_ratio},
            {"fast_machines", spec.fast_machines},
            {"mix", mix},
            {"release_groups", spec.release_groups},
            {"release_gap", spec.release_gap}};
}

Workload generate_scenario(const ScenarioSpec& spec, std::uint64_t seed) {
    if (spec.machines < 1 || spec.fast_machines < 0 || spec.fast_machines > spec.machines ||
        !(spec.speed_ratio > 0.0) || spec.release_groups < 1 || spec.release_gap < 0.0) {
        throw ValidationError(ValidationError::Kind::InvalidSpec, "bad cluster or release shape");
    }
    int total_jobs = 0;
    for (const JobMix& mix : spec.mix) {
        if (mix.count < 0 || mix.reduce_tasks < 0 || mix.reduce_ratio < 0.0) {
            throw ValidationError(ValidationError::Kind::InvalidSpec, "bad job mix entry");
        }
        if (mix.count > 0 && (!(mix.map_total > 0.0) || !(mix.map_task_size > 0.0))) {
            throw ValidationError(ValidationError::Kind::InvalidSpec,
                                  "job mix entry needs positive map sizes");
        }
        total_jobs += mix.count;
    }
    if (total_jobs < 1) {
        throw ValidationError(ValidationError::Kind::InvalidSpec, "scenario produces no jobs");
    }

    Workload w;
    for (int l = 0; l < spec.machines; ++l) {
        w.cluster.speeds.push_back(l < spec.fast_machines ? spec.speed_ratio : 1.0);
    }

    // Weights are the only random part: uniform integers 1..5, drawn per job
    // in id order.
    Rng rng(seed);
    int next_id = 1;
    for (const JobMix& mix : spec.mix) {
        for (int c = 0; c < mix.count; ++c) {
            Job job;
            job.id = next_id++;
            job.weight = static_cast<double>(rng.uniform_int(1, 5));

            const int k = static_cast<int>(std::ceil(mix.map_total / mix.map_task_size - 1e-12));
            for (int t = 0; t < k - 1; ++t) job.map_sizes.push_back(mix.map_task_size);
            job.map_sizes.push_back(mix.map_total - (k - 1) * mix.map_task_size);

            if (mix.reduce_tasks > 0 && mix.reduce_ratio > 0.0) {
                const double each = mix.reduce_ratio * mix.map_total / mix.reduce_tasks;
                job.reduce_sizes.assign(static_cast<std::size_t>(mix.reduce_tasks), each);
            }
            w.jobs.push_back(std::move(job));
        }
    }

    // Contiguous id ranges released group by group, `release_gap` apart.
    const int groups = std::min(spec.release_groups, total_jobs);
    const int base = total_jobs / groups;
    const int extra = total_jobs % groups;
    int pos = 0;
    for (int g = 0; g < groups; ++g) {
        const int size = base + (g < extra ? 1 : 0);
        for (int i = 0; i < size; ++i) {
            w.jobs[static_cast<std::size_t>(pos++)].release = g * spec.release_gap;
        }
    }
    return validate_workload(std::move(w));
}

namespace {

Schedule plan_scheduler(const Workload& w, const DerivedStats& stats, const LpSolution& lp,
                        const std::string& name, std::uint64_t seed,
                        const ExperimentOptions& options) {
    if (name == "dmrs") return schedule_dmrs(w, job_order(lp, stats));
    if (name == "fifo") return schedule_fifo(w, options.fifo_early_reduce);
    if (name == "identical") return schedule_identical(w);
    if (name == "maponly") return schedule_maponly(w, seed);
    throw ValidationError(ValidationError::Kind::InvalidSpec, "unknown scheduler " + name);
}

void run_cells(const Workload& w, std::uint64_t seed, const ExperimentOptions& options,
               ExperimentResult& result) {
    const DerivedStats stats = derive_stats(w);
    const LpSolution lp = solve_lp(w, stats);
    const bool zero_release =
        std::all_of(w.jobs.begin(), w.jobs.end(), [](const Job& j) { return j.release == 0.0; });
    const double ratio = theoretical_ratio(w, stats, zero_release);

    PerturbationModel perturb{options.perturb_mode, options.perturb_lo, options.perturb_hi, seed};

    std::map<std::string, double> twct_by_name;
    for (const std::string& name : kSchedulerOrder) {
        if (std::find(options.schedulers.begin(), options.schedulers.end(), name) ==
            options.schedulers.end()) {
            continue;
        }
        const Schedule sch = plan_scheduler(w, stats, lp, name, seed, options);
        if (!validate_schedule(w, sch).empty()) {
            throw InternalError(InternalError::Kind::InvariantViolated,
                                name + " produced an invalid schedule");
        }
        ExecutionTrace trace = options.dynamic && name == "dmrs"
                                   ? execute_dynamic(w, sch.order, perturb)
                                   : execute_static(w, sch, perturb);
        twct_by_name[name] = trace.twct;

        ExperimentRow row;
        row.seed = seed;
        row.scheduler = name;
        row.twct_seconds = trace.twct;
        row.twct_hours = trace.twct / 3600.0;
        row.lp_bound = lp.objective;
        row.emp_ratio = lp.objective > 0.0 ? trace.twct / lp.objective : 1.0;
        row.theo_ratio = ratio;
        row.skew = stats.skew;
        result.rows.push_back(std::move(row));
    }

    // DMRS improvement is defined against the stored TWCTs of the same seed.
    if (twct_by_name.count("dmrs")) {
        const double dmrs = twct_by_name.at("dmrs");
        for (auto& row : result.rows) {
            if (row.seed != seed || row.scheduler == "dmrs") continue;
            if (row.twct_seconds > 0.0) {
                row.improvement_vs_dmrs = 1.0 - dmrs / row.twct_seconds;
            }
        }
    }
}

void finalize(ExperimentResult& result) {
    for (const std::string& name : kSchedulerOrder) {
        double sum = 0.0;
        int count = 0;
        for (const ExperimentRow& row : result.rows) {
            if (row.scheduler == name) {
                sum += row.twct_seconds;
                ++count;
            }
        }
        if (count > 0) result.mean_twct_seconds.push_back({name, sum / count});
    }
}

}  // namespace

ExperimentResult run_experiment(const Workload& w, const std::vector<std::uint64_t>& seeds,
                                const ExperimentOptions& options) {
    std::vector<std::uint64_t> sorted = seeds;
    std::sort(sorted.begin(), sorted.end());
    ExperimentResult result;
    for (std::uint64_t seed : sorted) run_cells(w, seed, options, result);
    finalize(result);
    return result;
}

ExperimentResult run_scenario_experiment(const ScenarioSpec& spec,
                                         const std::vector<std::uint64_t>& seeds,
                                         const ExperimentOptions& options) {
    std::vector<std::uint64_t> sorted = seeds;
    std::sort(sorted.begin(), sorted.end());
    ExperimentResult result;
    for (std::uint64_t seed : sorted) {
        const Workload w = generate_scenario(spec, seed);
        run_cells(w, seed, options, result);
    }
    finalize(result);
    return result;
}

std::string emit_csv(const ExperimentResult& result) {
    std::string out =
        "seed,scheduler,twct_seconds,twct_hours,lp_bound,emp_ratio,theo_ratio,D,"
        "improvement_vs_dmrs\n";
    for (const ExperimentRow& r : result.rows) {
        out += std::to_string(r.seed);
        out += ',';
        out += r.scheduler;
        out += ',';
        out += format_double(r.twct_seconds);
        out += ',';
        out += format_double(r.twct_hours);
        out += ',';
        out += format_double(r.lp_bound);
        out += ',';
        out += format_double(r.emp_ratio);
        out += ',';
        out += format_double(r.theo_ratio);
        out += ',';
        out += format_double(r.skew);
        out += ',';
        out += format_double(r.improvement_vs_dmrs);
        out += '\n';
    }
    return out;
}

json result_to_json(const ExperimentResult& result) {
    json rows = json::array();
    for (const ExperimentRow& r : result.rows) {
        rows.push_back({{"seed", r.seed},
                        {"scheduler", r.scheduler},
                        {"twct_seconds", r.twct_seconds},
                        {"twct_hours", r.twct_hours},
                        {"lp_bound", r.lp_bound},
                        {"emp_ratio", r.emp_ratio},
                        {"theo_ratio", r.theo_ratio},
                        {"D", r.skew},
                        {"improvement_vs_dmrs", r.improvement_vs_dmrs}});
    }
    json means = json::array();
    for (const auto& [name, value] : result.mean_twct_seconds) {
        means.push_back({{"scheduler", name}, {"twct_seconds", value}});
    }
    return {{"rows", rows}, {"mean", means}};
}

ExperimentResult result_from_json(const json& j) {
    ExperimentResult result;
    for (const auto& r : j.at("rows")) {
        ExperimentRow row;
        row.seed = r.at("seed").get<std::uint64_t>();
        row.scheduler = r.at("scheduler").get<std::string>();
        row.twct_seconds = r.at("twct_seconds").get<double>();
        row.twct_hours = r.at("twct_hours").get<double>();
        row.lp_bound = r.at("lp_bound").get<double>();
        row.emp_ratio = r.at("emp_ratio").get<double>();
        row.theo_ratio = r.at("theo_ratio").get<double>();
        row.skew = r.at("D").get<double>();
        row.improvement_vs_dmrs = r.at("improvement_vs_dmrs").get<double>();
        result.rows.push_back(std::move(row));
    }
    for (const auto& m : j.at("mean")) {
        result.mean_twct_seconds.push_back(
            {m.at("scheduler").get<std::string>(), m.at("twct_seconds").get<double>()});
    }
    return result;
}

}  // namespace mrsched
