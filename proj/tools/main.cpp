// Command line front end: generate workloads, solve the completion-time
// relaxation, plan schedules, simulate them, and run scheduler comparisons.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mrsched/baselines.hpp"
#include "mrsched/bench.hpp"
#include "mrsched/json_io.hpp"
#include "mrsched/lp.hpp"
#include "mrsched/sim.hpp"

namespace {

using namespace mrsched;

Workload load_workload(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError(ValidationError::Kind::InvalidSpec, "cannot open " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError(ValidationError::Kind::InvalidSpec,
                              path + ": " + std::string(e.what()));
    }
    return workload_from_json(j);
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError(ValidationError::Kind::InvalidSpec, "cannot write " + path);
    }
    out << content;
}

PerturbationModel parse_perturb(const std::string& text, std::uint64_t seed) {
    PerturbationModel model;
    if (text.empty()) return model;
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw ValidationError(ValidationError::Kind::BadPerturbation,
                              "--perturb expects lo,hi");
    }
    model.mode = PerturbationModel::Mode::Multiplicative;
    model.lo = std::stod(text.substr(0, comma));
    model.hi = std::stod(text.substr(comma + 1));
    model.seed = seed;
    return model;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        seeds.push_back(std::stoull(text));
        return seeds;
    }
    const std::uint64_t a = std::stoull(text.substr(0, dots));
    const std::uint64_t b = std::stoull(text.substr(dots + 2));
    if (b < a) {
        throw ValidationError(ValidationError::Kind::InvalidSpec,
                              "--seeds range must be ascending");
    }
    for (std::uint64_t s = a; s <= b; ++s) seeds.push_back(s);
    return seeds;
}

Schedule plan(const Workload& w, const std::string& scheduler, bool fifo_early_reduce,
              std::uint64_t seed) {
    if (scheduler == "dmrs") {
        const DerivedStats stats = derive_stats(w);
        const LpSolution lp = solve_lp(w, stats);
        return schedule_dmrs(w, job_order(lp, stats));
    }
    if (scheduler == "fifo") return schedule_fifo(w, fifo_early_reduce);
    if (scheduler == "identical") return schedule_identical(w);
    if (scheduler == "maponly") return schedule_maponly(w, seed);
    throw ValidationError(ValidationError::Kind::InvalidSpec,
                          "unknown scheduler " + scheduler);
}

int run(int argc, char** argv) {
    CLI::App app{"LP-guided scheduling of dependent map/reduce tasks on heterogeneous machines"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Generate a workload from a scenario spec");
    std::string gen_spec, gen_out;
    std::uint64_t gen_seed = 0;
    gen->add_option("--spec", gen_spec, "Scenario spec JSON file")->required();
    gen->add_option("--seed", gen_seed, "Seed for the weight draws");
    gen->add_option("-o,--output", gen_out, "Output workload file (default stdout)");

    // solve-lp
    auto* lp_cmd = app.add_subcommand("solve-lp", "Solve the completion-time relaxation");
    std::string lp_workload, lp_out;
    lp_cmd->add_option("workload", lp_workload, "Workload JSON file")->required();
    lp_cmd->add_option("-o,--output", lp_out, "Output file (default stdout)");

    // schedule
    auto* sch_cmd = app.add_subcommand("schedule", "Plan a schedule");
    std::string sch_workload, sch_scheduler = "dmrs", sch_out;
    bool sch_early = true;
    std::uint64_t sch_seed = 0;
    sch_cmd->add_option("workload", sch_workload, "Workload JSON file")->required();
    sch_cmd->add_option("--scheduler", sch_scheduler, "dmrs|fifo|identical|maponly");
    sch_cmd->add_option("--fifo-early-reduce", sch_early,
                        "FIFO grabs reduce machines before maps finish");
    sch_cmd->add_option("--seed", sch_seed, "Seed for map-only reduce placement");
    sch_cmd->add_option("-o,--output", sch_out, "Output file (default stdout)");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Plan and execute a schedule");
    std::string sim_workload, sim_scheduler = "dmrs", sim_mode = "static", sim_perturb, sim_out;
    bool sim_early = true;
    std::uint64_t sim_seed = 0;
    sim_cmd->add_option("workload", sim_workload, "Workload JSON file")->required();
    sim_cmd->add_option("--scheduler", sim_scheduler, "dmrs|fifo|identical|maponly");
    sim_cmd->add_option("--mode", sim_mode, "static|dynamic (dynamic applies to dmrs)");
    sim_cmd->add_option("--perturb", sim_perturb, "Duration factor range lo,hi");
    sim_cmd->add_option("--seed", sim_seed, "Seed for perturbation and map-only placement");
    sim_cmd->add_option("--fifo-early-reduce", sim_early,
                        "FIFO grabs reduce machines before maps finish");
    sim_cmd->add_option("-o,--output", sim_out, "Trace output file (default stdout)");

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "Compare schedulers over seeded runs");
    std::string exp_spec, exp_seeds = "1", exp_format = "csv", exp_out;
    exp_cmd->add_option("--spec", exp_spec, "Scenario spec JSON file")->required();
    exp_cmd->add_option("--seeds", exp_seeds, "Seed or inclusive range a..b");
    exp_cmd->add_option("--format", exp_format, "csv|json");
    exp_cmd->add_option("-o,--output", exp_out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (gen->parsed()) {
        std::ifstream in(gen_spec);
        if (!in) {
            throw ValidationError(ValidationError::Kind::InvalidSpec, "cannot open " + gen_spec);
        }
        json j;
        in >> j;
        const Workload w = generate_scenario(scenario_from_json(j), gen_seed);
        write_output(gen_out, workload_to_json(w).dump(2) + "\n");
        return 0;
    }

    if (lp_cmd->parsed()) {
        const Workload w = load_workload(lp_workload);
        const LpSolution sol = solve_lp(w, derive_stats(w));
        write_output(lp_out, lp_solution_to_json(sol).dump(2) + "\n");
        return 0;
    }

    if (sch_cmd->parsed()) {
        const Workload w = load_workload(sch_workload);
        const Schedule sch = plan(w, sch_scheduler, sch_early, sch_seed);
        if (!validate_schedule(w, sch).empty()) {
            throw InternalError(InternalError::Kind::InvariantViolated,
                                sch_scheduler + " produced an invalid schedule");
        }
        write_output(sch_out, schedule_to_json(w, sch).dump(2) + "\n");
        return 0;
    }

    if (sim_cmd->parsed()) {
        const Workload w = load_workload(sim_workload);
        const PerturbationModel perturb = parse_perturb(sim_perturb, sim_seed);
        const Schedule sch = plan(w, sim_scheduler, sim_early, sim_seed);
        ExecutionTrace trace;
        if (sim_mode == "dynamic") {
            if (sim_scheduler != "dmrs") {
                throw ValidationError(ValidationError::Kind::InvalidSpec,
                                      "--mode dynamic requires --scheduler dmrs");
            }
            trace = execute_dynamic(w, sch.order, perturb);
        } else if (sim_mode == "static") {
            trace = execute_static(w, sch, perturb);
        } else {
            throw ValidationError(ValidationError::Kind::InvalidSpec,
                                  "unknown mode " + sim_mode);
        }
        if (!validate_trace(w, trace).empty()) {
            throw InternalError(InternalError::Kind::InvariantViolated,
                                "execution trace violates feasibility");
        }
        write_output(sim_out, trace_to_json(w, trace).dump(2) + "\n");
        std::cerr << "TWCT " << format_double(trace.twct) << " s ("
                  << format_double(trace.twct / 3600.0) << " h), replans "
                  << trace.replan_count << "\n";
        return 0;
    }

    if (exp_cmd->parsed()) {
        std::ifstream in(exp_spec);
        if (!in) {
            throw ValidationError(ValidationError::Kind::InvalidSpec, "cannot open " + exp_spec);
        }
        json j;
        in >> j;
        const ExperimentResult result =
            run_scenario_experiment(scenario_from_json(j), parse_seeds(exp_seeds));
        if (exp_format == "csv") {
            write_output(exp_out, emit_csv(result));
        } else if (exp_format == "json") {
            write_output(exp_out, result_to_json(result).dump(2) + "\n");
        } else {
            throw ValidationError(ValidationError::Kind::InvalidSpec,
                                  "unknown format " + exp_format);
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
