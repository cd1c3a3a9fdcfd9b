"""Certifying feasibility test for the Horn-type dual ``y^T A <= c``.

Value iteration over symbolic upper bounds ``alpha*M + beta``; every bound
carries a nonnegative combination ``r`` of columns explaining where it came
from, which is what lets an infeasible run produce a Farkas certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .model import Hypergraph
from .numerics import MAffine

SparseVec = Mapping[int, Fraction]

_ZERO = Fraction(0)
_EMPTY: dict[int, Fraction] = {}


@dataclass(frozen=True)
class DualTrace:
    """Full history of a value-iteration run.

    Index ``[k][v]`` is iteration ``k`` (0..m) and vertex ``v``.  ``r`` vectors
    are sparse ``{column: coefficient}`` maps; use :meth:`r_dense` for a
    length-n tuple.  ``q[v]`` is the last iteration at which ``v`` became
    nontrivial (0 if never).
    """

    m: int
    n: int
    y: tuple[tuple[MAffine, ...], ...]
    r: tuple[tuple[SparseVec, ...], ...]
    change: tuple[tuple[bool, ...], ...]
    p: tuple[tuple[Optional[int], ...], ...]
    nontriv: tuple[tuple[bool, ...], ...]
    q: tuple[int, ...]
    value: bool

    @property
    def y_final(self) -> tuple[MAffine, ...]:
        return self.y[self.m]

    @property
    def nontriv_final(self) -> tuple[bool, ...]:
        return self.nontriv[self.m]

    def r_dense(self, k: int, v: int) -> tuple[Fraction, ...]:
        return densify(self.r[k][v], self.n)


@dataclass(frozen=True)
class CycleTrace:
    """Backward walk ``w_{m+1}, w_m, ...`` that closes at ``w_s = w_t``."""

    w: Mapping[int, int]
    arcs: Mapping[int, int]
    s: int
    t: int


def densify(vec: SparseVec, n: int) -> tuple[Fraction, ...]:
    out = [_ZERO] * n
    for j, value in vec.items():
        out[j] = value
    return tuple(out)


def arc_value(h: Hypergraph, j: int, y: Sequence[MAffine]) -> MAffine:
    """``l(E) + sum_u gamma(E, u) * y(u)``."""
    arc = h.arcs[j]
    alpha = _ZERO
    beta = arc.length
    for u, g in arc.tails.items():
        yu = y[u]
        alpha += g * yu.alpha
        beta += g * yu.beta
    return MAffine(alpha, beta)


def best_arc(h: Hypergraph, v: int, y: Sequence[MAffine]) -> tuple[Optional[int], Optional[MAffine]]:
    """Lowest-index minimizer of :func:`arc_value` over arcs into ``v``."""
    best_j = None
    best = None
    for j in h.in_arcs[v]:
        val = arc_value(h, j, y)
        if best is None or val < best:
            best_j, best = j, val
    return best_j, best


def combine(j: int, h: Hypergraph, rs: Sequence[SparseVec]) -> dict[int, Fraction]:
    """``e_j + sum_u gamma(E_j, u) * rs[u]``."""
    out = {j: Fraction(1)}
    for u, g in h.arcs[j].tails.items():
        for col, coef in rs[u].items():
            out[col] = out.get(col, _ZERO) + g * coef
    return out


def improvable_vertices(h: Hypergraph, y: Sequence[MAffine]) -> list[tuple[int, int]]:
    """Vertices whose bound a single relaxation would still lower, with the arc."""
    found = []
    for v in range(h.vertex_count):
        j, val = best_arc(h, v, y)
        if j is not None and y[v] > val:
            found.append((v, j))
    return found


def violated_headless_arcs(h: Hypergraph, y: Sequence[MAffine]) -> list[int]:
    out = []
    for j in h.headless_arcs:
        val = arc_value(h, j, y)
        if val < 0:
            # a positive M-coefficient would make the sum positive
            assert val.alpha == 0, "violated headless arc with an M term"
            out.append(j)
    return out


def dual_feasibility(h: Hypergraph) -> DualTrace:
    """Run ``m`` Jacobi rounds of value iteration from ``y = M``."""
    m, n = h.vertex_count, h.n
    big = MAffine.big()
    y = [tuple([big] * m)]
    r: list[tuple[SparseVec, ...]] = [tuple([_EMPTY] * m)]
    change = [tuple([False] * m)]
    p: list[tuple[Optional[int], ...]] = [tuple([None] * m)]
    nontriv = [tuple([False] * m)]
    q = [0] * m

    for k in range(1, m + 1):
        y_prev, r_prev, nt_prev = y[k - 1], r[k - 1], nontriv[k - 1]
        y_k = list(y_prev)
        r_k = list(r_prev)
        ch_k = [False] * m
        p_k: list[Optional[int]] = [None] * m
        nt_k = list(nt_prev)
        for v in range(m):
            j, val = best_arc(h, v, y_prev)
            if j is None or not y_prev[v] > val:
                continue
            y_k[v] = val
            p_k[v] = j
            r_k[v] = combine(j, h, r_prev)
            ch_k[v] = True
            if all(nt_prev[u] for u in h.arcs[j].tails):
                nt_k[v] = True
                q[v] = k
        y.append(tuple(y_k))
        r.append(tuple(r_k))
        change.append(tuple(ch_k))
        p.append(tuple(p_k))
        nontriv.append(tuple(nt_k))

    value = not improvable_vertices(h, y[m]) and not violated_headless_arcs(h, y[m])
    return DualTrace(m, n, tuple(y), tuple(r), tuple(change), tuple(p), tuple(nontriv), tuple(q), value)


def _lambda(h: Hypergraph, y_m: Sequence[MAffine]) -> Fraction:
    lam = None
    for j, arc in enumerate(h.arcs):
        slack = -arc_value(h, j, y_m)
        if arc.head is not None:
            slack = slack + y_m[arc.head]
        if slack.alpha < 0:
            cand = slack.beta / -slack.alpha
            if lam is None or cand > lam:
                lam = cand
    if lam is None:
        return Fraction(0)
    # any lambda at or above the bound is feasible; an integer one keeps
    # y* integral whenever A and c are
    return Fraction(math.ceil(lam))


def dual_solution(h: Hypergraph, y_m: Sequence[MAffine], *, check: bool = True) -> tuple[Fraction, ...]:
    """Turn the symbolic final bounds into a concrete dual feasible ``y*``.

    Substitutes for M a value large enough to satisfy every constraint
    whose slack still carries a negative M-coefficient.  With ``check`` off
    the substitution runs on any ``y_m`` and feasibility is not promised.
    """
    if len(y_m) != h.vertex_count:
        raise ValueError("y_m has the wrong length")
    if check and (improvable_vertices(h, y_m) or violated_headless_arcs(h, y_m)):
        raise ValueError("dual_solution needs a trace with value=True")
    lam = _lambda(h, y_m)
    return tuple(val.evaluate(lam) for val in y_m)


def find_cycle(h: Hypergraph, trace: DualTrace, v: int, j: int) -> tuple[CycleTrace, dict[int, Fraction]]:
    """Walk back from an improvable vertex through changed tails until a vertex repeats.

    Returns the walk and ``r^{(m+1)}`` for the extra relaxation step.
    """
    m = trace.m
    w = {m + 1: v}
    arcs = {m + 1: j}
    seen = {v: m + 1}
    r_next = combine(j, h, trace.r[m])
    for k in range(m + 1, 1, -1):
        u = next((u for u in sorted(h.arcs[arcs[k]].tails) if trace.change[k - 1][u]), None)
        if u is None:
            raise AssertionError(f"no changed tail at step {k}; hypergraph is probably not gainfree")
        w[k - 1] = u
        arcs[k - 1] = trace.p[k - 1][u]
        if u in seen:
            return CycleTrace(w, arcs, k - 1, seen[u]), r_next
        seen[u] = k - 1
    raise AssertionError("backward walk did not close a cycle")


def farkas_dual(h: Hypergraph, trace: DualTrace) -> tuple[Fraction, ...]:
    """Return ``r >= 0`` with ``A r = 0`` and ``c^T r < 0``."""
    if trace.value:
        raise ValueError("farkas_dual needs a trace with value=False")
    y_m = trace.y_final
    improvable = improvable_vertices(h, y_m)
    if improvable:
        v, j = improvable[0]
        cyc, r_next = find_cycle(h, trace, v, j)
        r_t = r_next if cyc.t == trace.m + 1 else trace.r[cyc.t][cyc.w[cyc.t]]
        r_s = trace.r[cyc.s][cyc.w[cyc.s]]
        out = dict(r_t)
        for col, coef in r_s.items():
            out[col] = out.get(col, _ZERO) - coef
        return densify(out, h.n)
    j = violated_headless_arcs(h, y_m)[0]
    return densify(combine(j, h, trace.r[trace.m]), h.n)


def check_trace_invariants(h: Hypergraph, trace: DualTrace) -> None:
    """Assert the per-iteration structure of a value-iteration trace.

    Bounds only ever decrease, and a bound keeps an M term exactly while its
    vertex is trivial.  Each ``r`` explains its bound: ``A r <= e_v`` with
    ``c^T r`` equal to the constant part.  Raises AssertionError on the first
    failure.
    """
    m = trace.m
    big = MAffine.big()
    for v in range(m):
        assert trace.y[0][v] == big and not trace.r[0][v]
        assert not trace.change[0][v] and not trace.nontriv[0][v]
    for k in range(m + 1):
        for v in range(m):
            yk = trace.y[k][v]
            if k:
                prev = trace.y[k - 1][v]
                assert yk <= prev, f"y increased at k={k}, v={v}"
                assert (yk < prev) == trace.change[k][v], f"change flag wrong at k={k}, v={v}"
            assert yk.alpha >= 0, f"negative M coefficient at k={k}, v={v}"
            assert (yk.alpha == 0) == trace.nontriv[k][v], f"nontriv/M mismatch at k={k}, v={v}"
            rv = trace.r[k][v]
            assert all(coef >= 0 for coef in rv.values()), f"r negative at k={k}, v={v}"
            ar = h.apply(rv)
            for i, value in enumerate(ar):
                unit = 1 if i == v else 0
                assert value <= unit, f"A r > e_v at k={k}, v={v}"
                if trace.nontriv[k][v]:
                    assert value == unit, f"A r != e_v for nontrivial k={k}, v={v}"
            cost = sum((h.arcs[j].length * coef for j, coef in rv.items()), Fraction(0))
            assert cost == yk.beta, f"c^T r != beta at k={k}, v={v}"
    levels = [frozenset(v for v in range(m) if trace.nontriv[k][v]) for k in range(m + 1)]
    for k in range(m):
        if levels[k] == levels[k + 1]:
            assert all(levels[l] == levels[k] for l in range(k, m + 1)), f"nontriv set moved after stalling at k={k}"
