"""Exact scalars: rationals and symbolic values ``alpha*M + beta``.

``Fraction`` from the standard library is the rational type throughout; it is
always kept in lowest terms with a positive denominator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

Rational = Fraction
RationalLike = Union[Fraction, int]

_RATIONAL_RE = re.compile(r"[+-]?[0-9]+(?:/[0-9]+)?\Z")


def parse_rational(text: str) -> Fraction:
    """Parse ``[sign]p`` or ``[sign]p/q`` with ASCII digits and ``q > 0``."""
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(q: RationalLike) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and rational literals; refuse floats."""
    if isinstance(value, str):
        return parse_rational(value.strip())
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, _RationalABC):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True, slots=True)
class MAffine:
    """The value ``alpha*M + beta`` where M is an arbitrarily large symbol.

    Ordered lexicographically on ``(alpha, beta)``.  Only addition and scaling
    by a positive rational are supported.
    """

    alpha: Fraction = Fraction(0)
    beta: Fraction = Fraction(0)

    def __post_init__(self):
        if type(self.alpha) is not Fraction:
            object.__setattr__(self, "alpha", as_rational(self.alpha))
        if type(self.beta) is not Fraction:
            object.__setattr__(self, "beta", as_rational(self.beta))

    @classmethod
    def big(cls) -> MAffine:
        return cls(Fraction(1), Fraction(0))

    @classmethod
    def const(cls, value: RationalLike) -> MAffine:
        return cls(Fraction(0), Fraction(value))

    @property
    def has_m(self) -> bool:
        return self.alpha != 0

    def key(self) -> tuple[Fraction, Fraction]:
        return (self.alpha, self.beta)

    def evaluate(self, m_value: RationalLike) -> Fraction:
        """Substitute a concrete rational for M."""
        return self.alpha * m_value + self.beta

    def __add__(self, other):
        if isinstance(other, MAffine):
            return MAffine(self.alpha + other.alpha, self.beta + other.beta)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MAffine(self.alpha, self.beta + other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> MAffine:
        return MAffine(-self.alpha, -self.beta)

    def __sub__(self, other):
        if isinstance(other, MAffine):
            return MAffine(self.alpha - other.alpha, self.beta - other.beta)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MAffine(self.alpha, self.beta - other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MAffine(-self.alpha, other - self.beta)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, MAffine):
            raise TypeError("product of two M-affine values is not supported")
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MAffine(self.alpha * other, self.beta * other)
        return NotImplemented

    __rmul__ = __mul__

    def _cmp_key(self, other):
        if isinstance(other, MAffine):
            return other.key()
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return (Fraction(0), Fraction(other))
        return None

    def __eq__(self, other):
        key = self._cmp_key(other)
        return NotImplemented if key is None else self.key() == key

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        key = self._cmp_key(other)
        return NotImplemented if key is None else self.key() < key

    def __le__(self, other):
        key = self._cmp_key(other)
        return NotImplemented if key is None else self.key() <= key

    def __gt__(self, other):
        key = self._cmp_key(other)
        return NotImplemented if key is None else self.key() > key

    def __ge__(self, other):
        key = self._cmp_key(other)
        return NotImplemented if key is None else self.key() >= key

    def __str__(self) -> str:
        if self.alpha == 0:
            return format_rational(self.beta)
        coef = "" if self.alpha == 1 else f"({format_rational(self.alpha)})"
        if self.beta == 0:
            return f"{coef}M"
        sign = "+" if self.beta > 0 else "-"
        return f"{coef}M{sign}{format_rational(abs(self.beta))}"


M = MAffine.big()


def maffine_add(a: MAffine, b: MAffine) -> MAffine:
    return a + b


def maffine_scale(g: RationalLike, a: MAffine) -> MAffine:
    """Scale by a strictly positive rational (a gain)."""
    g = as_rational(g)
    if g <= 0:
        raise ValueError(f"scale factor must be positive, got {g}")
    return MAffine(g * a.alpha, g * a.beta)


def maffine_cmp(a: MAffine, b: MAffine) -> int:
    """Three-way lexicographic comparison: -1, 0 or 1."""
    ka, kb = a.key(), b.key()
    return (ka > kb) - (ka < kb)
