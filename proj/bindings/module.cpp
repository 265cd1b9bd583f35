#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>

#include "mrsched/baselines.hpp"
#include "mrsched/bench.hpp"
#include "mrsched/json_io.hpp"
#include "mrsched/lp.hpp"
#include "mrsched/sim.hpp"

namespace py = pybind11;
using namespace mrsched;

namespace {

py::object json_to_py(const json& j) {
    switch (j.type()) {
        case json::value_t::null:
            return py::none();
        case json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case json::value_t::number_integer:
            return py::int_(j.get<std::int64_t>());
        case json::value_t::number_unsigned:
            return py::int_(j.get<std::uint64_t>());
        case json::value_t::number_float:
            return py::float_(j.get<double>());
        case json::value_t::string:
            return py::str(j.get<std::string>());
        case json::value_t::array: {
            py::list out;
            for (const auto& v : j) out.append(json_to_py(v));
            return out;
        }
        case json::value_t::object: {
            py::dict out;
            for (const auto& [key, value] : j.items()) {
                out[py::str(key)] = json_to_py(value);
            }
            return out;
        }
        default:
            return py::none();
    }
}

json py_to_json(const py::handle& h) {
    if (h.is_none()) return nullptr;
    if (py::isinstance<py::bool_>(h)) return h.cast<bool>();
    if (py::isinstance<py::int_>(h)) return h.cast<std::int64_t>();
    if (py::isinstance<py::float_>(h)) return h.cast<double>();
    if (py::isinstance<py::str>(h)) return h.cast<std::string>();
    if (py::isinstance<py::dict>(h)) {
        json out = json::object();
        for (const auto& item : h.cast<py::dict>()) {
            out[item.first.cast<std::string>()] = py_to_json(item.second);
        }
        return out;
    }
    if (py::isinstance<py::sequence>(h)) {
        json out = json::array();
        for (const auto& item : h.cast<py::sequence>()) out.push_back(py_to_json(item));
        return out;
    }
    throw py::type_error("unsupported value in workload/spec structure");
}

Workload workload_from_py(const py::dict& d) { return workload_from_json(py_to_json(d)); }

Schedule plan_named(const Workload& w, const std::string& scheduler, bool fifo_early_reduce,
                    std::uint64_t seed) {
    if (scheduler == "dmrs") {
        const DerivedStats stats = derive_stats(w);
        return schedule_dmrs(w, job_order(solve_lp(w, stats), stats));
    }
    if (scheduler == "fifo") return schedule_fifo(w, fifo_early_reduce);
    if (scheduler == "identical") return schedule_identical(w);
    if (scheduler == "maponly") return schedule_maponly(w, seed);
    throw ValidationError(ValidationError::Kind::InvalidSpec, "unknown scheduler " + scheduler);
}

PerturbationModel perturb_from(double lo, double hi, std::uint64_t seed) {
    PerturbationModel p;
    if (lo != 1.0 || hi != 1.0) {
        p.mode = PerturbationModel::Mode::Multiplicative;
        p.lo = lo;
        p.hi = hi;
        p.seed = seed;
    }
    return p;
}

}  // namespace

PYBIND11_MODULE(_mrsched, m) {
    m.doc() = "LP-guided scheduling of dependent map/reduce tasks on heterogeneous machines";

    py::register_exception<ValidationError>(m, "WorkloadError", PyExc_ValueError);
    py::register_exception<InternalError>(m, "SolverError", PyExc_RuntimeError);

    m.def(
        "validate_workload",
        [](const py::dict& w) { return json_to_py(workload_to_json(workload_from_py(w))); },
        py::arg("workload"),
        "Check and canonicalize a workload dict (speeds and task lists sorted descending).");

    m.def(
        "derive_stats",
        [](const py::dict& w) {
            const Workload wl = workload_from_py(w);
            const DerivedStats s = derive_stats(wl);
            py::dict out;
            out["mu"] = s.mu;
            out["D"] = s.skew;
            out["q"] = s.q;
            out["mu_j"] = s.mu_j;
            out["p_map"] = s.p_map;
            out["p_reduce"] = s.p_reduce;
            out["p"] = s.p;
            return out;
        },
        py::arg("workload"), "Cluster and per-job quantities used by the LP and schedulers.");

    m.def(
        "task_skewness",
        [](const py::dict& w) { return task_skewness(workload_from_py(w)); }, py::arg("workload"),
        "min over jobs of total data / (largest map + largest reduce task).");

    m.def(
        "solve_lp",
        [](const py::dict& w) {
            const Workload wl = workload_from_py(w);
            return json_to_py(lp_solution_to_json(solve_lp(wl, derive_stats(wl))));
        },
        py::arg("workload"),
        "Solve the completion-time relaxation; the objective lower-bounds any schedule.");

    m.def(
        "schedule",
        [](const py::dict& w, const std::string& scheduler, bool fifo_early_reduce,
           std::uint64_t seed) {
            const Workload wl = workload_from_py(w);
            return json_to_py(
                schedule_to_json(wl, plan_named(wl, scheduler, fifo_early_reduce, seed)));
        },
        py::arg("workload"), py::arg("scheduler") = "dmrs", py::arg("fifo_early_reduce") = true,
        py::arg("seed") = 0, "Plan a schedule with dmrs|fifo|identical|maponly.");

    m.def(
        "simulate",
        [](const py::dict& w, const std::string& scheduler, const std::string& mode,
           double perturb_lo, double perturb_hi, std::uint64_t seed, bool fifo_early_reduce) {
            const Workload wl = workload_from_py(w);
            const Schedule sch = plan_named(wl, scheduler, fifo_early_reduce, seed);
            const PerturbationModel p = perturb_from(perturb_lo, perturb_hi, seed);
            ExecutionTrace trace;
            if (mode == "dynamic") {
                if (scheduler != "dmrs") {
                    throw ValidationError(ValidationError::Kind::InvalidSpec,
                                          "dynamic mode requires the dmrs scheduler");
                }
                trace = execute_dynamic(wl, sch.order, p);
            } else {
                trace = execute_static(wl, sch, p);
            }
            return json_to_py(trace_to_json(wl, trace));
        },
        py::arg("workload"), py::arg("scheduler") = "dmrs", py::arg("mode") = "static",
        py::arg("perturb_lo") = 1.0, py::arg("perturb_hi") = 1.0, py::arg("seed") = 0,
        py::arg("fifo_early_reduce") = true,
        "Plan and execute; dynamic mode re-picks machines from realized progress.");

    m.def(
        "validate_schedule",
        [](const py::dict& w, const py::dict& schedule) {
            const Workload wl = workload_from_py(w);
            const json js = py_to_json(schedule);
            Schedule sch;
            for (const auto& p : js.at("placements")) {
                sch.placements.push_back(
                    {p.at("job").get<int>(),
                     p.at("phase").get<std::string>() == "map" ? Phase::Map : Phase::Reduce,
                     p.at("task").get<int>(), p.at("machine").get<int>(),
                     p.at("start").get<double>(), p.at("end").get<double>()});
            }
            py::list out;
            for (const auto& v : validate_schedule(wl, sch)) out.append(v.detail);
            return out;
        },
        py::arg("workload"), py::arg("schedule"),
        "Feasibility check of a schedule dict; returns a list of violation messages.");

    m.def(
        "brute_force_optimal",
        [](const py::dict& w) {
            const Workload wl = workload_from_py(w);
            auto [best, sch] = brute_force_optimal(wl);
            return py::make_tuple(best, json_to_py(schedule_to_json(wl, sch)));
        },
        py::arg("workload"),
        "Exhaustive optimum for tiny instances (at most 6 tasks, 3 machines).");

    m.def(
        "theoretical_ratio",
        [](const py::dict& w, bool zero_release) {
            const Workload wl = workload_from_py(w);
            return theoretical_ratio(wl, derive_stats(wl), zero_release);
        },
        py::arg("workload"), py::arg("zero_release"),
        "Proven worst-case TWCT ratio for the LP-guided scheduler.");

    m.def(
        "generate_scenario",
        [](const py::dict& spec, std::uint64_t seed) {
            return json_to_py(
                workload_to_json(generate_scenario(scenario_from_json(py_to_json(spec)), seed)));
        },
        py::arg("spec"), py::arg("seed") = 0, "Deterministic workload from a scenario spec.");

    m.def(
        "run_experiment",
        [](const py::dict& spec, const std::vector<std::uint64_t>& seeds,
           const std::string& format) {
            const ExperimentResult res =
                run_scenario_experiment(scenario_from_json(py_to_json(spec)), seeds);
            if (format == "csv") return py::object(py::str(emit_csv(res)));
            return json_to_py(result_to_json(res));
        },
        py::arg("spec"), py::arg("seeds"), py::arg("format") = "json",
        "Compare all four schedulers over seeded runs of a scenario.");
}
