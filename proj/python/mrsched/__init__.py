"""LP-guided scheduling of dependent map/reduce tasks on heterogeneous machines.

A workload is a plain dict:

    {"machines": [8, 8, 1, 1],
     "jobs": [{"id": 1, "weight": 2, "release": 0.0,
               "map": [64, 64], "reduce": [32]}]}

The main entry points mirror the CLI: ``solve_lp`` for the lower bound,
``schedule`` / ``simulate`` for planning and execution, ``generate_scenario``
and ``run_experiment`` for benchmark sweeps.
"""

from mrsched._mrsched import (
    SolverError,
    WorkloadError,
    brute_force_optimal,
    derive_stats,
    generate_scenario,
    run_experiment,
    schedule,
    simulate,
    solve_lp,
    task_skewness,
    theoretical_ratio,
    validate_schedule,
    validate_workload,
)

__all__ = [
    "SolverError",
    "WorkloadError",
    "brute_force_optimal",
    "derive_stats",
    "generate_scenario",
    "run_experiment",
    "schedule",
    "simulate",
    "solve_lp",
    "task_skewness",
    "theoretical_ratio",
    "validate_schedule",
    "validate_workload",
]
