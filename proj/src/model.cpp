#include "mrsched/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace mrsched {

Workload validate_workload(Workload raw) {
    if (raw.cluster.speeds.empty()) {
        throw ValidationError(ValidationError::Kind::EmptyCluster,
                              "cluster has no machines");
    }
    for (double v : raw.cluster.speeds) {
        if (!(v > 0.0)) {
            throw ValidationError(ValidationError::Kind::NonPositiveSpeed,
                                  "machine speed " + std::to_string(v) + " is not positive");
        }
    }
    std::sort(raw.cluster.speeds.begin(), raw.cluster.speeds.end(), std::greater<>());

    if (raw.jobs.empty()) {
        throw ValidationError(ValidationError::Kind::NoJobs, "workload has no jobs");
    }

    for (Job& job : raw.jobs) {
        const std::string tag = "job " + std::to_string(job.id);
        if (job.weight < 0.0) {
            throw ValidationError(ValidationError::Kind::NegativeWeight,
                                  tag + " has negative weight");
        }
        if (job.release < 0.0) {
            throw ValidationError(ValidationError::Kind::NegativeRelease,
                                  tag + " has negative release time");
        }
        if (job.map_sizes.empty() && job.reduce_sizes.empty()) {
            throw ValidationError(ValidationError::Kind::EmptyJob,
                                  tag + " has neither map nor reduce tasks");
        }
        for (const auto* sizes : {&job.map_sizes, &job.reduce_sizes}) {
            for (double p : *sizes) {
                if (!(p > 0.0)) {
                    throw ValidationError(ValidationError::Kind::NonPositiveTaskSize,
                                          tag + " has task size " + std::to_string(p));
                }
            }
        }
        std::sort(job.map_sizes.begin(), job.map_sizes.end(), std::greater<>());
        std::sort(job.reduce_sizes.begin(), job.reduce_sizes.end(), std::greater<>());
    }

    std::sort(raw.jobs.begin(), raw.jobs.end(),
              [](const Job& a, const Job& b) { return a.id < b.id; });
    const int n = raw.job_count();
    for (int i = 0; i < n; ++i) {
        const int id = raw.jobs[static_cast<std::size_t>(i)].id;
        if (i > 0 && id == raw.jobs[static_cast<std::size_t>(i - 1)].id) {
            throw ValidationError(ValidationError::Kind::DuplicateJobId,
                                  "duplicate job id " + std::to_string(id));
        }
        if (id != i + 1) {
            throw ValidationError(ValidationError::Kind::InvalidJobId,
                                  "job ids must be 1.." + std::to_string(n) +
                                      ", found " + std::to_string(id));
        }
    }
    return raw;
}

double task_skewness(const Workload& w) {
    double d = std::numeric_limits<double>::infinity();
    for (const Job& job : w.jobs) {
        const double denom = job.largest_map() + job.largest_reduce();
        if (denom > 0.0) d = std::min(d, job.total() / denom);
    }
    // Only internal planning workloads can have every job empty.
    return std::isfinite(d) ? d : 1.0;
}

DerivedStats derive_stats(const Workload& w) {
    DerivedStats s;
    const int m = w.cluster.machine_count();
    std::vector<double> prefix(static_cast<std::size_t>(m) + 1, 0.0);
    for (int l = 0; l < m; ++l) {
        prefix[static_cast<std::size_t>(l) + 1] =
            prefix[static_cast<std::size_t>(l)] + w.cluster.speeds[static_cast<std::size_t>(l)];
    }
    s.mu = prefix.back();

    const std::size_t n = w.jobs.size();
    s.q.resize(n);
    s.mu_j.resize(n);
    s.p_map.resize(n);
    s.p_reduce.resize(n);
    s.p.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Job& job = w.jobs[i];
        s.q[i] = std::min(job.task_count(), m);
        s.mu_j[i] = prefix[static_cast<std::size_t>(s.q[i])];
        s.p_map[i] = job.total_map();
        s.p_reduce[i] = job.total_reduce();
        s.p[i] = s.p_map[i] + s.p_reduce[i];
    }
    s.skew = task_skewness(w);
    return s;
}

}  // namespace mrsched
