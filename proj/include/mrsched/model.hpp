#pragma once

#include <vector>

#include "mrsched/errors.hpp"

namespace mrsched {

// Comparison tolerance used throughout for time arithmetic.
inline constexpr double kTimeTol = 1e-9;

// A heterogeneous cluster: one speed per machine, in data units per second,
// sorted descending so machine 1 is the fastest.
struct Cluster {
    std::vector<double> speeds;

    int machine_count() const { return static_cast<int>(speeds.size()); }

    double total_speed() const {
        double mu = 0.0;
        for (double v : speeds) mu += v;
        return mu;
    }
};

// One job: a weight, a release time, and two descending-sorted task size
// lists. Either phase may be empty, but not both.
struct Job {
    int id = 0;
    double weight = 0.0;
    double release = 0.0;
    std::vector<double> map_sizes;
    std::vector<double> reduce_sizes;

    int task_count() const {
        return static_cast<int>(map_sizes.size() + reduce_sizes.size());
    }

    double total_map() const {
        double s = 0.0;
        for (double p : map_sizes) s += p;
        return s;
    }

    double total_reduce() const {
        double s = 0.0;
        for (double p : reduce_sizes) s += p;
        return s;
    }

    double total() const { return total_map() + total_reduce(); }

    // Largest task of each phase; zero when the phase is empty.
    double largest_map() const { return map_sizes.empty() ? 0.0 : map_sizes.front(); }
    double largest_reduce() const { return reduce_sizes.empty() ? 0.0 : reduce_sizes.front(); }
};

struct Workload {
    Cluster cluster;
    std::vector<Job> jobs;  // sorted by id; ids are 1..N after validation

    int job_count() const { return static_cast<int>(jobs.size()); }
    const Job& job(int id) const { return jobs[static_cast<std::size_t>(id - 1)]; }
};

// Quantities derived once per workload and consumed by the LP and the
// schedulers. All per-job vectors are indexed by id - 1.
struct DerivedStats {
    double mu = 0.0;              // total cluster speed
    double skew = 1.0;            // task-skewness product D
    std::vector<int> q;           // max concurrent tasks of job j
    std::vector<double> mu_j;     // sum of the q_j fastest speeds
    std::vector<double> p_map;    // total map data of job j
    std::vector<double> p_reduce; // total reduce data of job j
    std::vector<double> p;        // p_map + p_reduce
};

// Checks and canonicalizes a raw workload: speeds and task lists are sorted
// descending, jobs are sorted by id, and ids must form 1..N. Throws
// ValidationError on any malformed field.
Workload validate_workload(Workload raw);

// Computes DerivedStats for a validated workload. Pure and deterministic.
DerivedStats derive_stats(const Workload& w);

// The task-skewness product D: the minimum over jobs of total data size
// divided by (largest map task + largest reduce task). At least 1 for any
// validated workload.
double task_skewness(const Workload& w);

}  // namespace mrsched
