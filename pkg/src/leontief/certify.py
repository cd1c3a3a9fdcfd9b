"""Four-way duality outcome with certificates, plus the independent checkers.

The checkers work on the original :class:`Instance` only and share no code
with the solver beyond exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, NamedTuple, Sequence, Union

from .dual import DualTrace, dual_feasibility, dual_solution, farkas_dual
from .model import (
    Hypergraph,
    Instance,
    NotGainfree,
    build_hypergraph,
    check_gainfree,
    denormalize_certificates,
    dot,
    normalize,
    require_valid,
)
from .primal import farkas_primal, primal_feasibility, primal_solution

Vector = tuple[Fraction, ...]


class InternalError(RuntimeError):
    """The solver produced a certificate its own checker rejects."""


@dataclass(frozen=True)
class Optimal:
    """Case (i): primal and dual feasible solutions with equal objective values."""

    tag: ClassVar[str] = "optimal"
    fields: ClassVar[tuple[str, str]] = ("x", "y")
    x: Vector
    y: Vector


@dataclass(frozen=True)
class PrimalInfeasible:
    """Case (ii): Farkas vector for ``Ax = b`` and a dual feasible ``y``."""

    tag: ClassVar[str] = "primal_infeasible"
    fields: ClassVar[tuple[str, str]] = ("z", "y")
    z: Vector
    y: Vector


@dataclass(frozen=True)
class DualInfeasible:
    """Case (iii): primal feasible ``x`` and an unbounded direction ``r``."""

    tag: ClassVar[str] = "dual_infeasible"
    fields: ClassVar[tuple[str, str]] = ("x", "r")
    x: Vector
    r: Vector


@dataclass(frozen=True)
class BothInfeasible:
    tag: ClassVar[str] = "both_infeasible"
    fields: ClassVar[tuple[str, str]] = ("z", "r")
    z: Vector
    r: Vector


Outcome = Union[Optimal, PrimalInfeasible, DualInfeasible, BothInfeasible]
OUTCOME_TYPES: dict[str, type] = {cls.tag: cls for cls in (Optimal, PrimalInfeasible, DualInfeasible, BothInfeasible)}


def _fmt(q: Fraction) -> str:
    return str(q)


def _require_len(vec, expected, name):
    if len(vec) != expected:
        raise ValueError(f"{name} has length {len(vec)}, expected {expected}")


def primal_feasible_violations(inst: Instance, x: Sequence[Fraction]) -> list[str]:
    _require_len(x, inst.n, "x")
    out = [f"x has a negative entry at {j + 1}: {_fmt(v)}" for j, v in enumerate(x) if v < 0]
    ax = inst.matvec(x)
    out += [f"A x ≠ b at row {i + 1}: {_fmt(lhs)} vs {_fmt(rhs)}" for i, (lhs, rhs) in enumerate(zip(ax, inst.b)) if lhs != rhs]
    return out


def dual_feasible_violations(inst: Instance, y: Sequence[Fraction]) -> list[str]:
    _require_len(y, inst.m, "y")
    yA = inst.rmatvec(y)
    return [f"y^T A > c^T at column {j + 1}: {_fmt(lhs)} > {_fmt(rhs)}" for j, (lhs, rhs) in enumerate(zip(yA, inst.c)) if lhs > rhs]


def farkas_primal_violations(inst: Instance, z: Sequence[Fraction]) -> list[str]:
    _require_len(z, inst.m, "z")
    zA = inst.rmatvec(z)
    out = [f"z^T A > 0 at column {j + 1}: {_fmt(v)}" for j, v in enumerate(zA) if v > 0]
    zb = dot(z, inst.b)
    if not zb > 0:
        out.append(f"z^T b = {_fmt(zb)} is not positive")
    return out


def farkas_dual_violations(inst: Instance, r: Sequence[Fraction]) -> list[str]:
    _require_len(r, inst.n, "r")
    out = [f"r has a negative entry at {j + 1}: {_fmt(v)}" for j, v in enumerate(r) if v < 0]
    ar = inst.matvec(r)
    out += [f"A r ≠ 0 at row {i + 1}: {_fmt(v)}" for i, v in enumerate(ar) if v != 0]
    cr = dot(inst.c, r)
    if not cr < 0:
        out.append(f"c^T r = {_fmt(cr)} is not negative")
    return out


def verify_primal_feasible(inst: Instance, x: Sequence[Fraction]) -> bool:
    return not primal_feasible_violations(inst, x)


def verify_dual_feasible(inst: Instance, y: Sequence[Fraction]) -> bool:
    return not dual_feasible_violations(inst, y)


def verify_farkas_primal(inst: Instance, z: Sequence[Fraction]) -> bool:
    return not farkas_primal_violations(inst, z)


def verify_farkas_dual(inst: Instance, r: Sequence[Fraction]) -> bool:
    return not farkas_dual_violations(inst, r)


def outcome_violations(inst: Instance, outcome: Outcome) -> list[str]:
    """All violated certificate conditions for ``outcome`` on ``inst``."""
    out = []
    if isinstance(outcome, (Optimal, DualInfeasible)):
        out += primal_feasible_violations(inst, outcome.x)
    if isinstance(outcome, (Optimal, PrimalInfeasible)):
        out += dual_feasible_violations(inst, outcome.y)
    if isinstance(outcome, (PrimalInfeasible, BothInfeasible)):
        out += farkas_primal_violations(inst, outcome.z)
    if isinstance(outcome, (DualInfeasible, BothInfeasible)):
        out += farkas_dual_violations(inst, outcome.r)
    if isinstance(outcome, Optimal):
        cx, by = dot(inst.c, outcome.x), dot(inst.b, outcome.y)
        if cx != by:
            out.append(f"objectives differ: c^T x = {_fmt(cx)}, b^T y = {_fmt(by)}")
    if not isinstance(outcome, (Optimal, PrimalInfeasible, DualInfeasible, BothInfeasible)):
        raise TypeError(f"not an outcome: {outcome!r}")
    return out


def verify_outcome(inst: Instance, outcome: Outcome) -> bool:
    return not outcome_violations(inst, outcome)


def objective(inst: Instance, outcome: Outcome):
    """Optimal value for case (i), else None."""
    if isinstance(outcome, Optimal):
        return dot(inst.c, outcome.x)
    return None


class SolveResult(NamedTuple):
    outcome: Outcome
    trace: DualTrace
    hypergraph: Hypergraph


def solve_traced(inst: Instance, *, check_gainfree_first: bool = True, verify: bool = True) -> SolveResult:
    """Like :func:`solve` but also returns the dual trace and the hypergraph.

    The trace and hypergraph belong to the column-normalized twin of ``inst``.
    """
    require_valid(inst)
    norm, scaling = normalize(inst)
    h = build_hypergraph(norm)
    if check_gainfree_first:
        witness = check_gainfree(h)
        if witness is not None:
            raise NotGainfree(witness)

    trace = dual_feasibility(h)
    if trace.value:
        y = dual_solution(h, trace.y_final)
        r = None
    else:
        y = None
        r = farkas_dual(h, trace)

    if primal_feasibility(norm.b, trace.nontriv_final):
        x = primal_solution(h, norm.b, trace)
        z = None
    else:
        x = None
        z = farkas_primal(trace.y_final, trace.nontriv_final, norm.b)

    if x is not None:
        outcome = Optimal(x, y) if y is not None else DualInfeasible(x, r)
    else:
        outcome = PrimalInfeasible(z, y) if y is not None else BothInfeasible(z, r)
    outcome = denormalize_certificates(scaling, outcome)

    if verify:
        problems = outcome_violations(inst, outcome)
        if problems:
            raise InternalError(f"{outcome.tag} certificate failed verification: {problems[0]}")
    return SolveResult(outcome, trace, h)


def solve(inst: Instance, *, check_gainfree_first: bool = True, verify: bool = True) -> Outcome:
    """Classify ``min c^T x, Ax = b, x >= 0`` and return certificates for the case.

    Raises :class:`~leontief.model.NotLeontief` / :class:`~leontief.model.NegativeB`
    for invalid input and :class:`~leontief.model.NotGainfree` when a cycle
    with gain above one exists (unless the check is switched off).
    """
    return solve_traced(inst, check_gainfree_first=check_gainfree_first, verify=verify).outcome
