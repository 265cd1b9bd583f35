#pragma once

#include <vector>

#include "mrsched/lp.hpp"
#include "mrsched/model.hpp"

namespace mrsched {

enum class Phase { Map, Reduce };

// One task pinned to a machine with planned start and end times. Task
// indices are 1-based into the job's descending-sorted size list; machine
// indices are 1-based with machine 1 the fastest.
struct Placement {
    int job = 0;
    Phase phase = Phase::Map;
    int task = 0;
    int machine = 0;
    double start = 0.0;
    double end = 0.0;

    bool operator==(const Placement&) const = default;
};

struct Schedule {
    std::vector<Placement> placements;
    std::vector<std::vector<int>> per_machine;  // placement indices, start order
    std::vector<double> job_completion;         // indexed by id - 1
    std::vector<double> map_completion;         // = release when the job has no maps
    std::vector<int> order;                     // the job permutation used
};

// Total weighted completion time of a set of per-job completion times.
double twct(const Workload& w, const std::vector<double>& completion);

// Jobs sorted ascending by C_j - p_j / (2 mu_j), ties by id. This is the
// same key the separation oracle scans, so the final LP point satisfies the
// subset cut of every prefix of this order.
std::vector<int> job_order(const LpSolution& lp, const DerivedStats& s);

// The LP-guided list scheduler: walk jobs in `order`; place each map task
// (largest first) on the machine finishing it earliest, then each reduce
// task the same way but no earlier than the job's map completion.
Schedule schedule_dmrs(const Workload& w, const std::vector<int>& order);

// Closed-form upper bound on the completion time of the job at (1-based)
// position j of `order` under schedule_dmrs:
//   max_{k<=j} r_{o(k)} + [ (m-1) (largest reduce of o(j) +
//       sum_{k<=j} largest map of o(k)) + sum_{k<=j} p_{o(k)} ] / mu
double lemma2_bound(const Workload& w, const DerivedStats& s,
                    const std::vector<int>& order, int j);

// Proven worst-case ratio between the scheduler's weighted completion time
// and the optimum: 2 (1 + (m-1)/D) when every release is zero, otherwise
// 3 + 2 (m-1)/D.
double theoretical_ratio(const Workload& w, const DerivedStats& s, bool zero_release);

}  // namespace mrsched
