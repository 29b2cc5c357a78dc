"""Preemptive TDMA schedulers with setup delay."""

from ._tdmasched import (
    AlgorithmError,
    InstanceStats,
    OracleLimitError,
    ParseError,
    TrafficInstance,
    __version__,
    bench,
    generate,
    makespan,
    optimal_cost,
    schedule,
    validate,
)

ALGORITHMS = ("mga", "imga", "gwa", "apbs")

__all__ = [
    "ALGORITHMS",
    "AlgorithmError",
    "InstanceStats",
    "OracleLimitError",
    "ParseError",
    "TrafficInstance",
    "__version__",
    "bench",
    "generate",
    "makespan",
    "optimal_cost",
    "schedule",
    "validate",
]
