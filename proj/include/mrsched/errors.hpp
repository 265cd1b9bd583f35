#pragma once

#include <stdexcept>
#include <string>

namespace mrsched {

// Problems with user-supplied data (workloads, scenario specs, CLI input).
// The CLI maps these to exit code 1.
class ValidationError : public std::runtime_error {
public:
    enum class Kind {
        EmptyCluster,
        NonPositiveSpeed,
        NonPositiveTaskSize,
        EmptyJob,
        DuplicateJobId,
        InvalidJobId,
        NegativeRelease,
        NegativeWeight,
        NoJobs,
        InvalidSpec,
        BadPerturbation,
        EmptySubset,
    };

    ValidationError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Failures that indicate a bug in the solver or scheduler rather than bad
// input (an always-feasible LP reported infeasible, a replay deadlock, ...).
// The CLI maps these to exit code 2.
class InternalError : public std::runtime_error {
public:
    enum class Kind {
        LpInfeasible,
        Unbounded,
        IterationLimitExceeded,
        TooManyJobs,
        TooLarge,
        ReplayDeadlock,
        InvariantViolated,
    };

    InternalError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

}  // namespace mrsched
