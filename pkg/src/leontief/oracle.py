"""Slow, independent LP classification used to cross-check the main solver.

``simplex_solve`` is a textbook two-phase tableau simplex over ``Fraction``
with Bland's rule; it knows nothing about Leontief structure.
``two_phase_primal_feasibility`` is a second primal feasibility route that
reuses the main solver on an auxiliary gainfree Leontief instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .certify import Optimal, solve
from .model import Instance, build_hypergraph, check_gainfree, dot, normalize, require_valid

MAX_ROWS = 10
MAX_COLS = 24

OPTIMAL = "optimal"
PRIMAL_INFEASIBLE = "primal_infeasible"
DUAL_INFEASIBLE = "dual_infeasible"
BOTH_INFEASIBLE = "both_infeasible"


class OracleSizeError(ValueError):
    pass


@dataclass(frozen=True)
class OracleVerdict:
    """Classification plus whatever witnesses the simplex run produced.

    ``x`` is a primal feasible point, ``y`` a dual feasible point, ``z`` a
    Farkas vector for the primal and ``ray`` a direction with ``A d = 0``,
    ``d >= 0``, ``c^T d < 0``.
    """

    status: str
    value: Optional[Fraction] = None
    x: Optional[tuple[Fraction, ...]] = None
    y: Optional[tuple[Fraction, ...]] = None
    z: Optional[tuple[Fraction, ...]] = None
    ray: Optional[tuple[Fraction, ...]] = None


class _Tableau:
    """Equality-form tableau ``[A | I_art] x = b`` with ``b >= 0``.

    Artificial columns stay in the tableau so their reduced costs expose the
    simplex multipliers; they are never allowed to re-enter in phase two.
    """

    def __init__(self, A: list[list[Fraction]], b: list[Fraction]):
        self.m = len(b)
        self.n = len(A[0]) if A else 0
        self.sign = [1] * self.m
        rows = []
        for i in range(self.m):
            s = -1 if b[i] < 0 else 1
            self.sign[i] = s
            row = [s * a for a in A[i]] + [Fraction(int(k == i)) for k in range(self.m)] + [s * b[i]]
            rows.append(row)
        self.rows = rows
        self.basis = [self.n + i for i in range(self.m)]
        self.width = self.n + self.m

    def reduced_costs(self, cost: Sequence[Fraction]) -> list[Fraction]:
        red = list(cost) + [Fraction(0)]
        for i, bi in enumerate(self.basis):
            cb = cost[bi]
            if cb:
                row = self.rows[i]
                for k in range(self.width + 1):
                    if row[k]:
                        red[k] -= cb * row[k]
        return red

    def pivot(self, r: int, col: int) -> None:
        prow = self.rows[r]
        piv = prow[col]
        prow[:] = [v / piv for v in prow]
        for i, row in enumerate(self.rows):
            if i != r and row[col]:
                f = row[col]
                row[:] = [a - f * p for a, p in zip(row, prow)]
        self.basis[r] = col

    def run(self, cost: Sequence[Fraction], allowed: int) -> Optional[int]:
        """Minimize; columns ``>= allowed`` never enter.  Returns an unbounded column or None."""
        while True:
            red = self.reduced_costs(cost)
            entering = next((k for k in range(allowed) if red[k] < 0), None)
            if entering is None:
                return None
            best = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    ratio = row[-1] / row[entering]
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return entering
            self.pivot(best[1], entering)

    def drive_out_artificials(self) -> None:
        for i in range(self.m):
            if self.basis[i] >= self.n:
                col = next((k for k in range(self.n) if self.rows[i][k] != 0), None)
                # no candidate means the row is redundant; the artificial stays basic at zero
                if col is not None:
                    self.pivot(i, col)

    def point(self) -> list[Fraction]:
        x = [Fraction(0)] * self.width
        for i, bi in enumerate(self.basis):
            x[bi] = self.rows[i][-1]
        return x

    def multipliers(self, cost: Sequence[Fraction]) -> list[Fraction]:
        # reduced cost of artificial i is cost_i - y'_i; undo the row sign flips
        red = self.reduced_costs(cost)
        return [self.sign[i] * (cost[self.n + i] - red[self.n + i]) for i in range(self.m)]

    def ray(self, col: int) -> list[Fraction]:
        d = [Fraction(0)] * self.n
        d[col] = Fraction(1)
        for i, bi in enumerate(self.basis):
            if bi < self.n:
                d[bi] = -self.rows[i][col]
        return d


def _phase_one(A, b) -> tuple[_Tableau, Fraction]:
    tab = _Tableau(A, b)
    cost = [Fraction(0)] * tab.n + [Fraction(1)] * tab.m
    tab.run(cost, tab.width)
    value = sum((tab.rows[i][-1] for i, bi in enumerate(tab.basis) if bi >= tab.n), Fraction(0))
    return tab, value


def _phase_two(tab: _Tableau, c: Sequence[Fraction]):
    tab.drive_out_artificials()
    cost = list(c) + [Fraction(0)] * tab.m
    unbounded = tab.run(cost, tab.n)
    return unbounded, cost


def simplex_solve(A: Sequence[Sequence], b: Sequence, c: Sequence, *, size_guard: bool = True) -> OracleVerdict:
    """Four-way classification of ``min c^T x, Ax = b, x >= 0`` for general rational data."""
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    c = [Fraction(v) for v in c]
    m, n = len(b), len(c)
    if any(len(row) != n for row in A) or len(A) != m:
        raise ValueError("dimension mismatch")
    if size_guard and (m > MAX_ROWS or n > MAX_COLS):
        raise OracleSizeError(f"oracle is limited to {MAX_ROWS} rows and {MAX_COLS} columns, got {m}x{n}")

    tab, infeasibility = _phase_one(A, b)
    if infeasibility == 0:
        unbounded, cost = _phase_two(tab, c)
        x = tuple(tab.point()[:n])
        if unbounded is None:
            return OracleVerdict(OPTIMAL, dot(c, x), x=x, y=tuple(tab.multipliers(cost)))
        return OracleVerdict(DUAL_INFEASIBLE, x=x, ray=tuple(tab.ray(unbounded)))

    phase_one_cost = [Fraction(0)] * n + [Fraction(1)] * m
    z = tuple(tab.multipliers(phase_one_cost))
    # the dual is feasible iff min c^T x over the cone {Ax = 0, x >= 0} is bounded
    cone, _ = _phase_one(A, [Fraction(0)] * m)
    unbounded, cost = _phase_two(cone, c)
    if unbounded is None:
        return OracleVerdict(PRIMAL_INFEASIBLE, z=z, y=tuple(cone.multipliers(cost)))
    return OracleVerdict(BOTH_INFEASIBLE, z=z, ray=tuple(cone.ray(unbounded)))


def classify(inst: Instance, **kwargs) -> OracleVerdict:
    return simplex_solve(inst.dense(), inst.b, inst.c, **kwargs)


@dataclass(frozen=True)
class Feasible:
    x: tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    z: tuple[Fraction, ...]


def auxiliary_instance(inst: Instance) -> Instance:
    """``min 1^T s + 1^T t  s.t.  Ax + s - t = b``, all variables nonnegative."""
    entries = dict(inst.entries)
    for i in range(inst.m):
        entries[(i, inst.n + i)] = Fraction(1)
        entries[(i, inst.n + inst.m + i)] = Fraction(-1)
    c = (Fraction(0),) * inst.n + (Fraction(1),) * (2 * inst.m)
    return Instance(inst.m, inst.n + 2 * inst.m, entries, inst.b, c)


def two_phase_primal_feasibility(inst: Instance) -> Union[Feasible, Infeasible]:
    """Decide ``Ax = b, x >= 0`` by minimizing the total residual with the main solver."""
    require_valid(inst)
    aux = auxiliary_instance(inst)
    if check_gainfree(build_hypergraph(normalize(aux)[0])) is not None:
        raise AssertionError("auxiliary instance lost gainfreeness")
    outcome = solve(aux)
    if not isinstance(outcome, Optimal):
        raise AssertionError(f"auxiliary problem must have an optimum, got {outcome.tag}")
    if dot(aux.c, outcome.x) == 0:
        return Feasible(tuple(outcome.x[: inst.n]))
    return Infeasible(tuple(outcome.y))
