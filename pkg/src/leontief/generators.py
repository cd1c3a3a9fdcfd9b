"""Deterministic instance generators.  Every generator is a pure function of its arguments."""

from __future__ import annotations

import random
from fractions import Fraction

from .model import Instance, build_hypergraph, check_gainfree, normalize

_GAIN_FACTORS = (Fraction(1), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3))
_SMALL = 9


def _small(q: Fraction) -> bool:
    return abs(q.numerator) <= _SMALL and q.denominator <= _SMALL


def gen_dc(num_vars: int, num_constraints: int, weights: tuple[int, int] = (-5, 10), seed: int = 0) -> Instance:
    """Difference-constraint system ``y_h - y_u <= w`` in primal Leontief form.

    Each constraint becomes a column with +1 at ``h`` and -1 at ``u``.  One
    extra column ``e_v`` with cost 0 per variable (``y_v <= 0``) gives every
    vertex an incoming arc.  All gains are 1.
    """
    if num_vars < 1 or num_constraints < 0:
        raise ValueError("sizes must be positive")
    if num_vars < 2 and num_constraints:
        raise ValueError("difference constraints need two variables")
    lo, hi = weights
    rng = random.Random(seed)
    entries = {}
    c = []
    for v in range(num_vars):
        entries[(v, v)] = Fraction(1)
        c.append(Fraction(0))
    for k in range(num_constraints):
        head, tail = rng.sample(range(num_vars), 2)
        j = num_vars + k
        entries[(head, j)] = Fraction(1)
        entries[(tail, j)] = Fraction(-1)
        c.append(Fraction(rng.randint(lo, hi)))
    b = [Fraction(rng.choice((0, 0, 1, 2))) for _ in range(num_vars)]
    return Instance(num_vars, num_vars + num_constraints, entries, b, c)


def gen_expfamily(a: int) -> Instance:
    """Two variables, four constraints, gains ``(a+1)/a`` and ``a/(a+1)``; ``b = (1, 1)``."""
    if a < 1:
        raise ValueError("a must be a positive integer")
    up = Fraction(a + 1, a)
    down = Fraction(a, a + 1)
    A = [
        [-up, 1, 1, 0],
        [1, -down, 0, 1],
    ]
    return Instance.from_dense(A, [1, 1], [1, -down, 0, 0])


def gen_random_gainfree(m: int, n: int, seed: int = 0, density: float = 0.35) -> Instance:
    """Random gainfree Leontief instance with small rational data.

    Gains are ``pi(head) / pi(tail) * f`` with vertex potentials ``pi`` and
    ``f >= 1``, so every cycle multiplies out to at least 1.  Columns are
    then rescaled by a small positive factor when the entries stay small.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be at least 1")
    rng = random.Random(seed)
    pi = [Fraction(rng.choice((1, 2, 3))) for _ in range(m)]
    entries = {}
    c = []
    for j in range(n):
        kind = rng.random()
        rows = list(range(m))
        rng.shuffle(rows)
        col: dict[int, Fraction] = {}
        if kind < 0.05:
            pass  # zero column
        elif kind < 0.17:
            # headless: only negative entries
            for u in rows[: max(1, sum(rng.random() < density for _ in rows))]:
                col[u] = -Fraction(rng.randint(1, 9), rng.randint(1, 3))
        else:
            head, others = rows[0], rows[1:]
            col[head] = Fraction(1)
            for u in others:
                if rng.random() < density:
                    g = pi[head] / pi[u] * rng.choice(_GAIN_FACTORS)
                    col[u] = -g
            scale = Fraction(rng.choice((1, 1, 1, 2, 3)), rng.choice((1, 1, 2)))
            if all(_small(v * scale) for v in col.values()):
                col = {i: v * scale for i, v in col.items()}
        for i, v in col.items():
            entries[(i, j)] = v
        c.append(Fraction(rng.randint(-4, 9), rng.choice((1, 1, 1, 2, 3))))
    b = [Fraction(rng.randint(1, 9), rng.choice((1, 2))) if rng.random() < 0.5 else Fraction(0) for _ in range(m)]
    inst = Instance(m, n, entries, b, c)
    assert check_gainfree(build_hypergraph(normalize(inst)[0])) is None
    return inst


def gen_integral_horn(m: int, n: int, seed: int = 0, density: float = 0.35) -> Instance:
    """Integral unit-positive Leontief instance with integral costs.

    Tail weights are integers >= 1, so every cycle gain is at most 1.  Most
    vertices get a bound column ``y_v <= c``; the others get a headless
    column ``-k y_v <= c`` instead, which leaves symbolic bounds behind and
    makes the choice of the value substituted for M matter.
    """
    if m < 1 or n < m:
        raise ValueError("need 1 <= m <= n")
    rng = random.Random(seed)
    entries = {}
    c = []
    for v in range(m):
        if rng.random() < 0.75:
            entries[(v, v)] = 1
            c.append(rng.randint(-3, 9))
        else:
            entries[(v, v)] = -rng.randint(2, 5)
            c.append(rng.randint(-7, 3))
    for j in range(m, n):
        rows = list(range(m))
        rng.shuffle(rows)
        head, others = rows[0], rows[1:]
        if rng.random() < 0.9:
            entries[(head, j)] = 1
        for u in others:
            if rng.random() < density:
                entries[(u, j)] = -rng.randint(1, 3)
        c.append(rng.randint(-2, 9))
    b = [rng.randint(0, 4) for _ in range(m)]
    return Instance(m, n, entries, tuple(b), tuple(c))
