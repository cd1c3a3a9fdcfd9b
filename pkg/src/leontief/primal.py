"""Certifying feasibility test for ``Ax = b, x >= 0`` driven by a dual trace."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .dual import DualTrace, dual_feasibility
from .model import Hypergraph
from .numerics import MAffine


@dataclass
class PrimalRetrievalState:
    x: list[Fraction]
    f: list[Fraction]
    remaining: set[int] = field(default_factory=set)


def primal_feasibility(b: Sequence[Fraction], nontriv_m: Sequence[bool]) -> bool:
    """True iff ``b`` vanishes on every vertex that never became nontrivial."""
    if len(b) != len(nontriv_m):
        raise ValueError("b and nontriv have different lengths")
    return all(bv == 0 for bv, nt in zip(b, nontriv_m) if not nt)


def primal_solution(h: Hypergraph, b: Sequence[Fraction], trace: DualTrace) -> tuple[Fraction, ...]:
    """Peel nontrivial vertices in decreasing order of ``q`` to build ``x >= 0`` with ``Ax = b``.

    When the dual was infeasible the predecessor data comes from a rerun of
    value iteration with all lengths zero; nontriv does not depend on lengths.
    """
    nontriv = trace.nontriv_final
    if not primal_feasibility(b, nontriv):
        raise ValueError("primal_solution called on a primal infeasible instance")
    source = trace
    if not trace.value:
        source = dual_feasibility(h.with_lengths(0))
        assert source.value, "zero-length dual must be feasible"
        assert source.nontriv_final == nontriv, "nontriv changed with the lengths"

    state = PrimalRetrievalState(
        x=[Fraction(0)] * h.n,
        f=[Fraction(bv) for bv in b],
        remaining={v for v in range(h.vertex_count) if nontriv[v]},
    )
    while state.remaining:
        v = max(state.remaining, key=lambda u: (source.q[u], -u))
        j = source.p[source.q[v]][v]
        assert j is not None and h.arcs[j].head == v
        state.x[j] = state.f[v]
        for u, g in h.arcs[j].tails.items():
            state.f[u] += g * state.x[j]
        state.remaining.discard(v)
    return tuple(state.x)


def farkas_primal(
    y_m: Sequence[MAffine], nontriv_m: Sequence[bool], b: Sequence[Fraction] | None = None
) -> tuple[Fraction, ...]:
    """The M-coefficients of the trivial vertices: ``z^T A <= 0`` and ``z^T b > 0``.

    Passing ``b`` enables the precondition check (the primal must be infeasible).
    """
    if len(y_m) != len(nontriv_m):
        raise ValueError("y_m and nontriv have different lengths")
    if b is not None and primal_feasibility(b, nontriv_m):
        raise ValueError("farkas_primal called on a primal feasible instance")
    return tuple(Fraction(0) if nt else yv.alpha for yv, nt in zip(y_m, nontriv_m))
