#include "mrsched/json_io.hpp"

#include <charconv>

namespace mrsched {

namespace {

double require_number(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw ValidationError(ValidationError::Kind::InvalidSpec,
                              where + ": missing or non-numeric \"" + key + "\"");
    }
    return j.at(key).get<double>();
}

std::vector<double> number_list(const json& j, const std::string& where) {
    if (!j.is_array()) {
        throw ValidationError(ValidationError::Kind::InvalidSpec, where + " must be an array");
    }
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) {
            throw ValidationError(ValidationError::Kind::InvalidSpec,
                                  where + " must contain only numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

json workload_to_json(const Workload& w) {
    json jobs = json::array();
    for (const Job& job : w.jobs) {
        jobs.push_back({{"id", job.id},
                        {"weight", job.weight},
                        {"release", job.release},
                        {"map", job.map_sizes},
                        {"reduce", job.reduce_sizes}});
    }
    return {{"machines", w.cluster.speeds}, {"jobs", jobs}};
}

Workload workload_from_json(const json& j) {
    Workload w;
    if (!j.is_object() || !j.contains("machines") || !j.contains("jobs")) {
        throw ValidationError(ValidationError::Kind::InvalidSpec,
                              "workload must have \"machines\" and \"jobs\"");
    }
    w.cluster.speeds = number_list(j.at("machines"), "\"machines\"");
    if (!j.at("jobs").is_array()) {
        throw ValidationError(ValidationError::Kind::InvalidSpec, "\"jobs\" must be an array");
    }
    for (const auto& jj : j.at("jobs")) {
        Job job;
        job.id = static_cast<int>(require_number(jj, "id", "job"));
        const std::string where = "job " + std::to_string(job.id);
        job.weight = require_number(jj, "weight", where);
        job.release = jj.contains("release") ? require_number(jj, "release", where) : 0.0;
        if (jj.contains("map")) job.map_sizes = number_list(jj.at("map"), where + " \"map\"");
        if (jj.contains("reduce")) {
            job.reduce_sizes = number_list(jj.at("reduce"), where + " \"reduce\"");
        }
        w.jobs.push_back(std::move(job));
    }
    return validate_workload(std::move(w));
}

json lp_solution_to_json(const LpSolution& sol) {
    return {{"objective", sol.objective},
            {"C", sol.C},
            {"C_M", sol.C_M},
            {"cuts", sol.generated_sets.size()},
            {"iterations", sol.iterations}};
}

namespace {

json placements_to_json(const std::vector<Placement>& placements) {
    json out = json::array();
    for (const Placement& pl : placements) {
        out.push_back({{"job", pl.job},
                       {"phase", pl.phase == Phase::Map ? "map" : "reduce"},
                       {"task", pl.task},
                       {"machine", pl.machine},
                       {"start", pl.start},
                       {"end", pl.end}});
    }
    return out;
}

}  // namespace

json schedule_to_json(const Workload& w, const Schedule& sch) {
    return {{"order", sch.order},
            {"placements", placements_to_json(sch.placements)},
            {"twct", twct(w, sch.job_completion)}};
}

json trace_to_json(const Workload&, const ExecutionTrace& trace) {
    return {{"placements", placements_to_json(trace.placements)},
            {"job_completion", trace.job_completion},
            {"map_completion", trace.map_completion},
            {"twct", trace.twct},
            {"replans", trace.replan_count}};
}

}  // namespace mrsched
