"""Steiner TSP toolkit: instance generation, PMRA reduction, QUBO export and annealing."""

from ._stsp import (
    Error,
    InfeasibleError,
    Instance,
    InvalidArgument,
    Model,
    ParseError,
    Qubo,
    anneal,
    build_model,
    decode,
    gap_csv,
    generate_instance,
    optimal_cost,
    reduce,
    to_qubo,
)

__all__ = [
    "Error",
    "InfeasibleError",
    "Instance",
    "InvalidArgument",
    "Model",
    "ParseError",
    "Qubo",
    "anneal",
    "build_model",
    "decode",
    "gap_csv",
    "generate_instance",
    "optimal_cost",
    "reduce",
    "to_qubo",
]
