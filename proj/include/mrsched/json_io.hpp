#pragma once

#include <string>

#include <json.hpp>

#include "mrsched/dmrs.hpp"
#include "mrsched/model.hpp"
#include "mrsched/sim.hpp"

namespace mrsched {

// The interchange format shared by every CLI subcommand:
// {"machines":[v1,...],
//  "jobs":[{"id":1,"weight":w,"release":r,"map":[...],"reduce":[...]}]}
using json = nlohmann::ordered_json;

json workload_to_json(const Workload& w);

// Parses and validates; throws ValidationError on malformed input.
Workload workload_from_json(const json& j);

json lp_solution_to_json(const LpSolution& sol);

// {"order":[...],"placements":[{"job":..,"phase":"map","task":..,
//  "machine":..,"start":..,"end":..}],"twct":..}
json schedule_to_json(const Workload& w, const Schedule& sch);

json trace_to_json(const Workload& w, const ExecutionTrace& trace);

// Shortest round-trip decimal form, used everywhere a number is printed.
std::string format_double(double value);

}  // namespace mrsched
