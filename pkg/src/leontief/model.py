"""Problem instances ``min c^T x, Ax = b, x >= 0`` and their hypergraph view.

Rows of ``A`` are vertices, columns are hyperarcs.  Column ``j`` with a unit
entry in row ``i`` has head ``v_i``; its negative entries form the tail, with
gain ``-A_ij``; its cost ``c_j`` is the hyperarc length.
"""

from __future__ import annotations

import dataclasses
import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from .numerics import as_rational, format_rational


class InvalidInstance(ValueError):
    """Raised when an instance is not a Leontief substitution system."""

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class NotLeontief(InvalidInstance):
    pass


class NegativeB(InvalidInstance):
    pass


class NotGainfree(ValueError):
    def __init__(self, witness: CycleWitness):
        self.witness = witness
        super().__init__(f"hypergraph has a cycle with gain {format_rational(witness.gain)} > 1: {witness}")


@dataclass(frozen=True, eq=True)
class Instance:
    """Sparse LP data.  ``entries`` maps 0-based ``(row, col)`` to nonzero values."""

    m: int
    n: int
    entries: Mapping[tuple[int, int], Fraction]
    b: tuple[Fraction, ...]
    c: tuple[Fraction, ...]

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("dimensions must be nonnegative")
        b = tuple(as_rational(v) for v in self.b)
        c = tuple(as_rational(v) for v in self.c)
        if len(b) != self.m:
            raise ValueError(f"b has length {len(b)}, expected m={self.m}")
        if len(c) != self.n:
            raise ValueError(f"c has length {len(c)}, expected n={self.n}")
        entries = {}
        for (i, j), value in self.entries.items():
            if not (0 <= i < self.m and 0 <= j < self.n):
                raise ValueError(f"entry ({i}, {j}) outside a {self.m}x{self.n} matrix")
            value = as_rational(value)
            if value != 0:
                entries[(i, j)] = value
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "entries", entries)

    __hash__ = None

    @classmethod
    def from_dense(cls, A: Sequence[Sequence], b: Sequence, c: Sequence) -> Instance:
        m = len(A)
        n = len(A[0]) if m else len(c)
        entries = {}
        for i, row in enumerate(A):
            if len(row) != n:
                raise ValueError("ragged matrix")
            for j, value in enumerate(row):
                value = as_rational(value)
                if value:
                    entries[(i, j)] = value
        return cls(m, n, entries, tuple(b), tuple(c))

    @cached_property
    def columns(self) -> tuple[dict[int, Fraction], ...]:
        cols: list[dict[int, Fraction]] = [{} for _ in range(self.n)]
        for (i, j), value in sorted(self.entries.items()):
            cols[j][i] = value
        return tuple(cols)

    def dense(self) -> list[list[Fraction]]:
        A = [[Fraction(0)] * self.n for _ in range(self.m)]
        for (i, j), value in self.entries.items():
            A[i][j] = value
        return A

    def matvec(self, x: Sequence[Fraction]) -> list[Fraction]:
        """``A @ x``."""
        _check_len(x, self.n, "column vector")
        out = [Fraction(0)] * self.m
        for (i, j), value in self.entries.items():
            if x[j]:
                out[i] += value * x[j]
        return out

    def rmatvec(self, y: Sequence[Fraction]) -> list[Fraction]:
        """``y^T A`` as a length-n list."""
        _check_len(y, self.m, "row vector")
        out = [Fraction(0)] * self.n
        for (i, j), value in self.entries.items():
            if y[i]:
                out[j] += value * y[i]
        return out

    def with_b(self, b: Sequence) -> Instance:
        return Instance(self.m, self.n, self.entries, tuple(b), self.c)

    def with_c(self, c: Sequence) -> Instance:
        return Instance(self.m, self.n, self.entries, self.b, tuple(c))


def _check_len(vec, expected, what):
    if len(vec) != expected:
        raise ValueError(f"{what} has length {len(vec)}, expected {expected}")


def dot(u: Iterable[Fraction], v: Iterable[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), Fraction(0))


@dataclass(frozen=True)
class Hyperarc:
    head: Optional[int]
    tails: Mapping[int, Fraction]
    length: Fraction

    def __str__(self):
        head = "∅" if self.head is None else f"v{self.head + 1}"
        tails = ", ".join(f"v{u + 1}:{format_rational(g)}" for u, g in sorted(self.tails.items()))
        return f"({head} <- {{{tails}}}, len={format_rational(self.length)})"


@dataclass(frozen=True)
class Hypergraph:
    vertex_count: int
    arcs: tuple[Hyperarc, ...]

    @cached_property
    def in_arcs(self) -> tuple[tuple[int, ...], ...]:
        incoming: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for j, arc in enumerate(self.arcs):
            if arc.head is not None:
                incoming[arc.head].append(j)
        return tuple(tuple(a) for a in incoming)

    @cached_property
    def headless_arcs(self) -> tuple[int, ...]:
        return tuple(j for j, arc in enumerate(self.arcs) if arc.head is None)

    @property
    def n(self) -> int:
        return len(self.arcs)

    def apply(self, r: Mapping[int, Fraction] | Sequence[Fraction]) -> list[Fraction]:
        """``A @ r`` for the (unit-positive) matrix this hypergraph encodes."""
        items = r.items() if isinstance(r, Mapping) else enumerate(r)
        out = [Fraction(0)] * self.vertex_count
        for j, value in items:
            if not value:
                continue
            arc = self.arcs[j]
            if arc.head is not None:
                out[arc.head] += value
            for u, g in arc.tails.items():
                out[u] -= g * value
        return out

    def with_lengths(self, value=0) -> Hypergraph:
        value = as_rational(value)
        return Hypergraph(self.vertex_count, tuple(dataclasses.replace(a, length=value) for a in self.arcs))

    def to_instance(self, b: Sequence) -> Instance:
        entries = {}
        for j, arc in enumerate(self.arcs):
            if arc.head is not None:
                entries[(arc.head, j)] = Fraction(1)
            for u, g in arc.tails.items():
                entries[(u, j)] = -g
        return Instance(self.vertex_count, len(self.arcs), entries, tuple(b), tuple(a.length for a in self.arcs))


@dataclass(frozen=True)
class ScalingRecord:
    factors: tuple[Fraction, ...]

    @property
    def is_identity(self) -> bool:
        return all(f == 1 for f in self.factors)


@dataclass(frozen=True)
class CycleWitness:
    """Directed cycle ``v1 E1 v2 ... Ek v1`` with ``v_{i+1} = h(E_i)``, ``v_i`` in ``T(E_i)``."""

    vertices: tuple[int, ...]
    arcs: tuple[int, ...]
    gain_product: Fraction

    @property
    def gain(self) -> Fraction:
        return 1 / self.gain_product

    def __str__(self):
        parts = []
        for v, e in zip(self.vertices, self.arcs):
            parts.append(f"v{v + 1} E{e + 1}")
        return " ".join(parts) + f" v{self.vertices[0] + 1}"


def validate(inst: Instance) -> list[str]:
    """Return every violated Leontief-substitution-system condition (empty if ok)."""
    problems = []
    for j, col in enumerate(inst.columns):
        positives = [i for i, v in col.items() if v > 0]
        if len(positives) > 1:
            rows = ", ".join(str(i + 1) for i in positives)
            problems.append(f"two positive entries in column {j + 1} (rows {rows})")
    negative = [i for i, v in enumerate(inst.b) if v < 0]
    if negative:
        problems.append("b not nonnegative (rows " + ", ".join(str(i + 1) for i in negative) + ")")
    return problems


def require_valid(inst: Instance) -> None:
    problems = validate(inst)
    if not problems:
        return
    if any(p.startswith("two positive") for p in problems):
        raise NotLeontief(problems)
    raise NegativeB(problems)


def normalize(inst: Instance) -> tuple[Instance, ScalingRecord]:
    """Scale every column so its positive entry (if any) becomes 1."""
    factors = []
    entries = {}
    c = []
    for j, col in enumerate(inst.columns):
        scale = next((v for v in col.values() if v > 0), Fraction(1))
        factors.append(scale)
        for i, v in col.items():
            entries[(i, j)] = v / scale
        c.append(inst.c[j] / scale)
    return Instance(inst.m, inst.n, entries, inst.b, tuple(c)), ScalingRecord(tuple(factors))


def denormalize_certificates(scaling: ScalingRecord, outcome):
    """Map certificates of the normalized twin back to the original columns.

    Column vectors (``x`` and ``r``) are divided by the column scale; row
    vectors (``y`` and ``z``) are unchanged.
    """
    if scaling.is_identity:
        return outcome
    changes = {}
    for name in ("x", "r"):
        vec = getattr(outcome, name, None)
        if vec is not None:
            _check_len(vec, len(scaling.factors), name)
            changes[name] = tuple(v / a for v, a in zip(vec, scaling.factors))
    return dataclasses.replace(outcome, **changes)


def build_hypergraph(inst: Instance) -> Hypergraph:
    arcs = []
    for j, col in enumerate(inst.columns):
        head = None
        tails = {}
        for i, v in col.items():
            if v > 0:
                if v != 1 or head is not None:
                    raise ValueError(f"column {j + 1} is not unit-positive Leontief; normalize first")
                head = i
            else:
                tails[i] = -v
        arcs.append(Hyperarc(head, tails, inst.c[j]))
    return Hypergraph(inst.m, tuple(arcs))


def _projected_arcs(h: Hypergraph):
    # one ordinary arc u -> h(E) per tail u, weighted by gamma(E, u)
    return [(u, arc.head, g, j) for j, arc in enumerate(h.arcs) if arc.head is not None for u, g in arc.tails.items()]


def _product_potentials(h: Hypergraph):
    """Multiplicative Bellman-Ford from an all-ones start.

    Returns ``(potentials, pred, last_improved)``; ``last_improved`` is a
    vertex that still relaxed after ``m`` rounds, or None.
    """
    m = h.vertex_count
    arcs = _projected_arcs(h)
    d = [Fraction(1)] * m
    pred: list[Optional[tuple[int, int]]] = [None] * m
    for _ in range(m):
        changed = False
        for u, v, g, j in arcs:
            cand = d[u] * g
            if cand < d[v]:
                d[v] = cand
                pred[v] = (u, j)
                changed = True
        if not changed:
            return d, pred, None
    for u, v, g, j in arcs:
        cand = d[u] * g
        if cand < d[v]:
            d[v] = cand
            pred[v] = (u, j)
            return d, pred, v
    return d, pred, None


def _witness_from_pred(h: Hypergraph, pred, start: int) -> CycleWitness:
    x = start
    for _ in range(h.vertex_count):
        x = pred[x][0]
    # walk the predecessor cycle through x, collecting it backwards
    back_vertices = [x]
    back_arcs = []
    y = x
    while True:
        u, j = pred[y]
        back_arcs.append(j)
        if u == x:
            break
        back_vertices.append(u)
        y = u
    # forward order: v1 E1 v2 ... with v_{i+1} = h(E_i)
    vertices = tuple(reversed(back_vertices))
    vertices = vertices[-1:] + vertices[:-1]
    arcs = tuple(reversed(back_arcs))
    return make_witness(h, vertices, arcs)


def make_witness(h: Hypergraph, vertices: Sequence[int], arcs: Sequence[int]) -> CycleWitness:
    product = Fraction(1)
    k = len(vertices)
    for i, (v, j) in enumerate(zip(vertices, arcs)):
        arc = h.arcs[j]
        if arc.head != vertices[(i + 1) % k] or v not in arc.tails:
            raise ValueError("sequence is not a directed cycle")
        product *= arc.tails[v]
    return CycleWitness(tuple(vertices), tuple(arcs), product)


def check_gainfree(h: Hypergraph) -> Optional[CycleWitness]:
    """None if every directed cycle has gain <= 1, else a cycle with gain > 1."""
    _, pred, bad = _product_potentials(h)
    if bad is None:
        return None
    return _witness_from_pred(h, pred, bad)


def max_gain_cycle(h: Hypergraph) -> Optional[CycleWitness]:
    """Cycle of largest gain in a gainfree hypergraph, or None if acyclic.

    Reweights arcs by the Bellman-Ford potentials so every weight is >= 1,
    then runs a multiplicative Dijkstra from each vertex.
    """
    d, _, bad = _product_potentials(h)
    if bad is not None:
        raise NotGainfree(check_gainfree(h))
    out: list[list[tuple[int, Fraction, int]]] = [[] for _ in range(h.vertex_count)]
    for u, v, g, j in _projected_arcs(h):
        out[u].append((v, g * d[u] / d[v], j))
    best: Optional[tuple[Fraction, list[int], list[int]]] = None
    for s in range(h.vertex_count):
        dist = {s: Fraction(1)}
        back: dict[int, tuple[int, int]] = {}
        closing: Optional[tuple[Fraction, int, int]] = None
        tie = itertools.count()
        heap = [(Fraction(1), next(tie), s)]
        done = set()
        while heap:
            du, _, u = heapq.heappop(heap)
            if u in done:
                continue
            done.add(u)
            for v, w, j in out[u]:
                cand = du * w
                if v == s:
                    if closing is None or cand < closing[0]:
                        closing = (cand, u, j)
                elif v not in dist or cand < dist[v]:
                    dist[v] = cand
                    back[v] = (u, j)
                    heapq.heappush(heap, (cand, next(tie), v))
        if closing is None:
            continue
        value, u, j = closing
        if best is not None and value >= best[0]:
            continue
        vertices = [u]
        arcs = [j]
        while u != s:
            u, jj = back[u]
            vertices.append(u)
            arcs.append(jj)
        vertices.reverse()
        arcs.reverse()
        best = (value, vertices, arcs)
    if best is None:
        return None
    return make_witness(h, best[1], best[2])
