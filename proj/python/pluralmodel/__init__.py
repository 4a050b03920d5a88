"""Many-core scaling model, energy-time calculus and plural-architecture simulator."""

from ._plural import (
    ChipSpec,
    ConfigError,
    CrewViolation,
    DegenerateInputError,
    DomainError,
    EnsembleMetrics,
    GraphError,
    ParseError,
    PluralError,
    Task,
    TaskGraph,
    UsageError,
    ValidationError,
    check_crew,
    comm,
    concurrent_pairs,
    dump_graph,
    ensemble_metrics,
    et2,
    expand_duplicables,
    load_graph,
    parse_graph,
    sim,
    single_metrics,
    sweep,
    validate_dag,
)

__all__ = [name for name in dir() if not name.startswith("_")]
