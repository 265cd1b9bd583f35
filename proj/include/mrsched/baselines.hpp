#pragma once

#include <cstdint>

#include "mrsched/dmrs.hpp"
#include "mrsched/model.hpp"

namespace mrsched {

// First-in-first-out: jobs by ascending (release, id); every task goes to
// the machine whose frontier opens first rather than the one finishing it
// first. With early_reduce set, a job's reduce tasks grab their machine as
// soon as the maps are handed out and hold it idle until the maps finish,
// which is what starves fast machines on reduce-heavy workloads.
Schedule schedule_fifo(const Workload& w, bool early_reduce);

// Plans with the LP-guided scheduler as if every machine ran at the mean
// speed, then replays that fixed assignment and order on the real speeds.
Schedule schedule_identical(const Workload& w);

// Plans job order and map placement with the LP-guided scheduler on a
// reduce-stripped copy of the workload; reduce tasks land on seeded
// uniform-random machines.
Schedule schedule_maponly(const Workload& w, std::uint64_t seed);

}  // namespace mrsched
