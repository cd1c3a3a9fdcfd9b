"""Exact certifying solver for LPs over gainfree Leontief substitution systems."""

from .certify import (
    BothInfeasible,
    DualInfeasible,
    InternalError,
    Optimal,
    PrimalInfeasible,
    solve,
    solve_traced,
    verify_outcome,
)
from .model import (
    CycleWitness,
    Instance,
    InvalidInstance,
    NegativeB,
    NotGainfree,
    NotLeontief,
    build_hypergraph,
    check_gainfree,
    max_gain_cycle,
    normalize,
    validate,
)
from .numerics import M, MAffine, Rational, parse_rational

__all__ = [
    "BothInfeasible",
    "CycleWitness",
    "DualInfeasible",
    "Instance",
    "InternalError",
    "InvalidInstance",
    "M",
    "MAffine",
    "NegativeB",
    "NotGainfree",
    "NotLeontief",
    "Optimal",
    "PrimalInfeasible",
    "Rational",
    "build_hypergraph",
    "check_gainfree",
    "max_gain_cycle",
    "normalize",
    "parse_rational",
    "solve",
    "solve_traced",
    "validate",
    "verify_outcome",
]
