"""Exact quadratic surds ``a + b*sqrt(d)`` used as irrational cut points.

All comparisons are decided exactly by sign analysis with squaring; no
floating point is involved except in :meth:`Surd.__float__`.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(r, m)`` with ``n == r*r*m`` and ``m`` square-free."""
    if n <= 0:
        raise ValueError(f"radicand must be positive, got {n}")
    r, m, f = 1, n, 2
    while f * f <= m:
        while m % (f * f) == 0:
            m //= f * f
            r *= f
        f += 1
    return r, m


def _sign_one(a: Fraction, b: Fraction, d: int) -> int:
    # sign of a + b*sqrt(d), d square-free
    if d == 1:
        return _sign(a + b)
    sa, sb = _sign(a), _sign(b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb if sa == 0 else sa
    lhs, rhs = a * a, b * b * d
    if lhs > rhs:
        return sa
    if lhs < rhs:
        return sb
    return 0


def sign_combo(a: Fraction, b: Fraction, p: int, c: Fraction, q: int) -> int:
    """Sign of ``a + b*sqrt(p) + c*sqrt(q)`` for square-free ``p`` and ``q``."""
    if p == q:
        return _sign_one(a, b + c, p)
    if b == 0:
        return _sign_one(a, c, q)
    if c == 0:
        return _sign_one(a, b, p)
    su = _sign_one(Fraction(0), b, p) if _sign(b) == _sign(c) else _cmp_sqrt(b, p, c, q)
    sa = _sign(a)
    if sa == 0:
        return su
    if su == 0 or sa == su:
        return sa
    # compare a^2 against (b*sqrt(p) + c*sqrt(q))^2
    r, m = squarefree_split(p * q)
    s = _sign_one(a * a - b * b * p - c * c * q, -2 * b * c * r, m)
    if s > 0:
        return sa
    if s < 0:
        return su
    return 0


def _cmp_sqrt(b: Fraction, p: int, c: Fraction, q: int) -> int:
    # sign of b*sqrt(p) + c*sqrt(q) when b and c have opposite signs
    lhs, rhs = b * b * p, c * c * q
    if lhs > rhs:
        return _sign(b)
    if lhs < rhs:
        return _sign(c)
    return 0


@total_ordering
class Surd:
    """The irrational number ``a + b*sqrt(d)``; ``b != 0`` and ``d`` square-free."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        a, b = Fraction(a), Fraction(b)
        r, m = squarefree_split(int(d))
        b = b * r
        if m == 1 or b == 0:
            raise ValueError("surd must be irrational")
        self.a, self.b, self.d = a, b, m

    def _diff_sign(self, other) -> int:
        if isinstance(other, Surd):
            return sign_combo(self.a - other.a, self.b, self.d, -other.b, other.d)
        if isinstance(other, (int, Fraction)):
            return _sign_one(self.a - Fraction(other), self.b, self.d)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Surd):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __lt__(self, other):
        s = self._diff_sign(other)
        if s is NotImplemented:
            return NotImplemented
        return s < 0

    def __gt__(self, other):
        s = self._diff_sign(other)
        if s is NotImplemented:
            return NotImplemented
        return s > 0

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"Surd({self})"

    def __str__(self):
        b = self.b
        coef = abs(b)
        term = f"sqrt({self.d})"
        if coef.numerator != 1:
            term = f"{coef.numerator}*{term}"
        if coef.denominator != 1:
            term = f"{term}/{coef.denominator}"
        if self.a == 0:
            return term if b > 0 else f"-{term}"
        return f"{self.a}{'+' if b > 0 else '-'}{term}"


_RAT = r"-?\d+(?:/\d+)?"
_SURD_RE = re.compile(
    rf"^\s*(?:(?P<a>{_RAT})\s*(?P<op>[+-])\s*)?(?P<neg>-)?(?:(?P<bn>\d+)\s*\*\s*)?"
    rf"sqrt\(\s*(?P<d>\d+)\s*\)(?:\s*/\s*(?P<bd>\d+))?\s*$"
)


def parse_number(text: str) -> Fraction | Surd:
    """Parse ``3/4``, ``-2``, ``sqrt(2)/2`` or ``1/3+2*sqrt(5)/7``."""
    text = text.strip()
    if re.fullmatch(_RAT, text):
        return Fraction(text)
    m = _SURD_RE.match(text)
    if not m:
        raise ValueError(f"not a rational or quadratic surd: {text!r}")
    b = Fraction(int(m["bn"] or 1), int(m["bd"] or 1))
    if m["neg"]:
        b = -b
    if m["op"] == "-":
        b = -b
    a = Fraction(m["a"]) if m["a"] else Fraction(0)
    r, d = squarefree_split(int(m["d"]))
    if d == 1:
        return a + b * r
    return Surd(a, b, int(m["d"]))


def format_number(x) -> str:
    return str(x)
