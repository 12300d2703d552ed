"""Rational intervals ``Q ∩ I`` with the Alexandroff or the Scott topology.

Sets are kept as finite unions of half-open intervals over *positions*: each
rational ``q`` splits into ``q-`` (just before q) and ``q+`` (just after q),
a quadratic surd is a single position, and the ends are ``-inf``/``+inf``.
The rational ``q`` lies in ``[L, R)`` iff ``L <= q- < R``.  Merging touching
intervals gives a canonical form, so set equality is structural equality.

On a chain the upper topology and every SI derivative coincide with Scott,
so only two topologies exist here: all upper sets, or Scott.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from ..surd import Surd, parse_number
from ..verdict import ParseError, PointNotInCarrier, ValidationError
from .base import ClosedIrreducible, IrrResult, Space, SupResult, WitnessFamily
from .presentation import SpacePresentation


@total_ordering
@dataclass(frozen=True)
class Pos:
    """A cut position: ``v`` is a Fraction or Surd, or None for an infinite end
    (``e == -1`` is ``-inf``, ``e == 2`` is ``+inf``)."""

    v: object
    e: int = 0

    def _rank(self):
        return 0 if self.e == -1 and self.v is None else (2 if self.v is None else 1)

    def __lt__(self, other):
        ra, rb = self._rank(), other._rank()
        if ra != rb or ra != 1:
            return ra < rb
        if self.v != other.v:
            return self.v < other.v
        return self.e < other.e


NEG = Pos(None, -1)
POS = Pos(None, 2)


def lo_pos(q) -> Pos:
    return Pos(q, 0) if isinstance(q, Surd) else Pos(Fraction(q), 0)


def hi_pos(q) -> Pos:
    return Pos(q, 0) if isinstance(q, Surd) else Pos(Fraction(q), 1)


def midpoint(a, b) -> Fraction:
    return (Fraction(a) + Fraction(b)) / 2


@dataclass(frozen=True)
class RSet:
    intervals: tuple = ()  # ((L, R), ...) sorted, disjoint, non-touching

    @property
    def empty(self) -> bool:
        return not self.intervals

    def has_pos(self, p: Pos) -> bool:
        return any(L <= p < R for L, R in self.intervals)

    def __contains__(self, q) -> bool:
        return self.has_pos(Pos(Fraction(q), 0))

    def _combine(self, other, op) -> "RSet":
        cuts = sorted({b for iv in self.intervals + other.intervals for b in iv})
        out: list[list] = []
        for a, b in zip(cuts, cuts[1:]):
            if op(self.has_pos(a), other.has_pos(a)):
                if out and out[-1][1] == a:
                    out[-1][1] = b
                else:
                    out.append([a, b])
        return RSet(tuple((a, b) for a, b in out))

    def __or__(self, other):
        return self._combine(other, lambda x, y: x or y)

    def __and__(self, other):
        return self._combine(other, lambda x, y: x and y)

    def __sub__(self, other):
        return self._combine(other, lambda x, y: x and not y)

    def bound(self) -> int:
        return 0


def _interval(L: Pos, R: Pos) -> RSet:
    return RSet(((L, R),)) if L < R else RSet()


def _split_interval(atom: str):
    """``(a,b]`` -> ("(", "a", "b", "]"), or None; endpoints may contain parens."""
    if len(atom) < 5 or atom[0] not in "[(" or atom[-1] not in "])":
        return None
    body, depth = atom[1:-1], 0
    for i, ch in enumerate(body):
        depth += (ch == "(") - (ch == ")")
        if ch == "," and depth == 0:
            return atom[0], body[:i], body[i + 1:], atom[-1]
    return None


class RationalSpace(Space):
    kind = "rational"

    def __init__(self, pres: SpacePresentation):
        super().__init__(pres)
        if pres.points or pres.chains or pres.relations or pres.sups:
            raise ValidationError("UnknownCell", "rational spaces have no named cells")
        if pres.interval is None:
            raise ValidationError("UnknownCell", "rational spaces need an interval")
        lo, lk, hi, hk = pres.interval
        self.lo, self.lo_kind, self.hi, self.hi_kind = lo, lk, hi, hk
        L = NEG if lk == "unbounded" else (Pos(lo, 0) if lk == "closed" else Pos(lo, 1))
        R = POS if hk == "unbounded" else (Pos(hi, 1) if hk == "closed" else Pos(hi, 0))
        self.cL, self.cR = L, R
        if lo is not None and hi is not None and lo >= hi:
            raise ValidationError("EmptyCarrier", "a rational chain must contain at least two rationals")
        self.scott = not (pres.topology.base == "alexandroff" and pres.topology.level == 0)

    # -- points and sets ------------------------------------------------------
    @property
    def whole(self):
        return RSet(((self.cL, self.cR),))

    @property
    def empty(self):
        return RSet()

    @property
    def minimum(self):
        return self.lo if self.lo_kind == "closed" else None

    def is_min(self, q) -> bool:
        return self.lo_kind == "closed" and q == self.lo

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction)) and not isinstance(x, bool) and self.cL <= Pos(Fraction(x), 0) < self.cR

    def _check(self, x):
        if not self.contains(x):
            raise PointNotInCarrier(str(x))

    def member(self, E, x) -> bool:
        return x in E

    def singleton(self, x):
        self._check(x)
        return RSet(((Pos(Fraction(x), 0), Pos(Fraction(x), 1)),))

    def is_empty(self, E) -> bool:
        return E.empty

    def leq(self, x, y) -> bool:
        self._check(x)
        self._check(y)
        return x <= y

    def up_set(self, E):
        return RSet() if E.empty else RSet(((E.intervals[0][0], self.cR),))

    def down_set(self, E):
        return RSet() if E.empty else RSet(((self.cL, E.intervals[-1][1]),))

    def interval(self, lo, lo_closed: bool, hi, hi_closed: bool) -> RSet:
        """``lo``/``hi`` may be Fraction, Surd or None (infinite)."""
        L = NEG if lo is None else (lo_pos(lo) if lo_closed else hi_pos(lo))
        R = POS if hi is None else (hi_pos(hi) if hi_closed else lo_pos(hi))
        return _interval(L, R) & self.whole

    def sample_rational(self) -> Fraction:
        if self.lo is not None and self.hi is not None:
            return midpoint(self.lo, self.hi)
        if self.lo is not None:
            return self.lo + 1
        if self.hi is not None:
            return self.hi - 1
        return Fraction(0)

    def surd_cut(self) -> Surd:
        if self.lo is not None and self.hi is not None:
            return Surd(self.lo, (self.hi - self.lo) / 2, 2)
        if self.lo is not None:
            return Surd(self.lo, 1, 2)
        if self.hi is not None:
            return Surd(self.hi, -1, 2)
        return Surd(0, 1, 2)

    # -- parsing / formatting -------------------------------------------------
    def parse_point(self, text: str):
        try:
            x = parse_number(text)
        except ValueError:
            raise PointNotInCarrier(text) from None
        if isinstance(x, Surd):
            raise PointNotInCarrier(text)
        self._check(x)
        return x

    def _endpoint(self, tok: str):
        tok = tok.strip()
        if tok in ("inf", "+inf", "-inf"):
            return None
        try:
            return parse_number(tok)
        except ValueError:
            raise ParseError(1, "rational, surd or inf endpoint", tok) from None

    def parse_set(self, text: str):
        acc = RSet()
        for atom in text.split("|"):
            atom = atom.strip()
            if atom in ("all", "X"):
                acc = acc | self.whole
            elif atom in ("empty", "∅", "{}"):
                continue
            elif atom.startswith("{") and atom.endswith("}"):
                for tok in atom[1:-1].split(","):
                    if tok.strip():
                        acc = acc | self.singleton(self.parse_point(tok))
            else:
                m = _split_interval(atom)
                if not m:
                    raise ParseError(1, "interval like (0,1/2] or {q, ...}", atom)
                lo, hi = self._endpoint(m[1]), self._endpoint(m[2])
                if lo is None and m[1].strip() != "-inf" or hi is None and m[2].strip() == "-inf":
                    raise ParseError(1, "-inf on the left, inf on the right", atom)
                acc = acc | self.interval(lo, m[0] == "[", hi, m[3] == "]")
        return acc

    def fmt_point(self, x) -> str:
        return str(x)

    def fmt_set(self, E) -> str:
        if E.empty:
            return "∅"
        atoms = []
        for L, R in E.intervals:
            if L.v is not None and L.v == R.v and L.e == 0 and R.e == 1:
                atoms.append(f"{{{L.v}}}")
                continue
            left = "(-inf" if L.v is None else (f"[{L.v}" if L.e == 0 and not isinstance(L.v, Surd) else f"({L.v}")
            right = "inf)" if R.v is None else (f"{R.v}]" if R.e == 1 else f"{R.v})")
            atoms.append(f"{left},{right}")
        return " | ".join(atoms)

    # -- topology -------------------------------------------------------------
    def _attained_non_min(self, p: Pos) -> bool:
        return p.v is not None and not isinstance(p.v, Surd) and p.e == 0 and self.cL < p < self.cR

    def is_open(self, U) -> bool:
        U = U & self.whole
        if not self.is_upper(U):
            return False
        if not self.scott or U.empty:
            return True
        return not self._attained_non_min(U.intervals[0][0])

    def closure(self, E):
        D = self.down_set(E & self.whole)
        if self.scott and not D.empty:
            R = D.intervals[0][1]
            if R.v is not None and not isinstance(R.v, Surd) and R.e == 0 and R < self.cR:
                D = RSet(((self.cL, Pos(R.v, 1)),))
        return D

    def derive(self) -> "RationalSpace":
        return RationalSpace(self.pres.with_topology(self.pres.topology.derived()))

    def fingerprint(self) -> tuple[str, ...]:
        if self.scott:
            return ("open sets: upper sets not of the form [q,..) with q above the minimum",)
        return ("open sets: all upper sets",)

    def _hi_text(self):
        if self.hi_kind == "unbounded":
            return "inf)"
        return f"{self.hi}]" if self.hi_kind == "closed" else f"{self.hi})"

    def open_schemas(self) -> list[str]:
        hi = self._hi_text()
        lo = "-inf" if self.lo is None else str(self.lo)
        cmp = "<=" if self.lo_kind == "closed" else "<"
        out = ["∅", f"(r,{hi} for real r with {lo} {cmp} r < {self.hi if self.hi is not None else 'inf'}"]
        if self.lo_kind == "closed":
            out.append(f"[{self.lo},{hi}")
        if not self.scott:
            out.append(f"[q,{hi} for rational q in carrier")
        return sorted(out)

    def open_candidates(self) -> list:
        out = [RSet(), self.whole]
        for q in self.grid():
            out.append(self.up_set(self.singleton(q)))
            out.append(_interval(Pos(q, 1), self.cR))
        return [U for U in dict.fromkeys(out) if self.is_open(U)]

    def si_violation(self, U):
        # closed irreducibles with a sup that are not point closures are the
        # sets [lo, q) of the Alexandroff topology, q above the minimum
        U = U & self.whole
        if self.scott or U.empty:
            return None
        L = U.intervals[0][0]
        if self._attained_non_min(L):
            return RSet(((self.cL, L),))
        return None

    def critical_open(self, y, hints=()):
        if not self.scott:
            return self.up_set(self.singleton(y))
        if self.is_min(y):
            return self.whole
        below = [Fraction(h) for h in hints if isinstance(h, (int, Fraction)) and h < y]
        if below:
            r = midpoint(max(below), y)
        elif self.lo is not None:
            r = midpoint(self.lo, y)
        else:
            r = y - 1
        return RSet(((Pos(r, 1), self.cR),))

    # -- irreducible sets -----------------------------------------------------
    def sup(self, E) -> SupResult:
        E = E & self.whole
        if E.empty:
            return SupResult(False, reason="NoUpperBound")
        R = E.intervals[-1][1]
        if R.v is None:
            return SupResult(False, reason="NoUpperBound")
        if isinstance(R.v, Surd):
            return SupResult(False, reason="NoLeastUpperBound")
        if R.e == 1 or self.contains(R.v):
            return SupResult(True, point=R.v)
        return SupResult(False, reason="NoUpperBound")

    def is_irreducible(self, E) -> IrrResult:
        E = E & self.whole
        if E.empty:
            return IrrResult(False, rule="Empty")
        L, R = E.intervals[0]
        if len(E.intervals) == 1 and L.v is not None and L.v == R.v and L.e == 0 and R.e == 1:
            return IrrResult(True, "Singleton", self.fmt_set(E))
        return IrrResult(True, "ChainNested", "opens are upper sets of a chain, hence nested")

    def closed_irreducibles(self) -> list[ClosedIrreducible]:
        q = self.sample_rational()
        lo_txt = "(-inf" if self.lo is None else ("[" if self.lo_kind == "closed" else "(") + str(self.lo)
        c = self.surd_cut()
        out = [
            ClosedIrreducible(f"{lo_txt},q] for q in carrier", self.down_set(self.singleton(q)),
                              SupResult(True, point="q"), point_closure="q"),
            ClosedIrreducible(f"{lo_txt},c) for irrational c in the interval",
                              RSet(((self.cL, Pos(c, 0)),)), SupResult(False, reason="NoLeastUpperBound"),
                              point_closure=None, bounded=True),
        ]
        if not self.scott:
            out.append(ClosedIrreducible(f"{lo_txt},q) for q in carrier above the minimum",
                                         RSet(((self.cL, Pos(q, 0)),)), SupResult(True, point=q),
                                         point_closure=None, bounded=True))
        if self.hi_kind != "closed":
            out.append(ClosedIrreducible("whole space", self.whole, SupResult(False, reason="NoUpperBound"),
                                         point_closure=None, bounded=False))
        return out

    def grid(self, den: int = 4, span: int = 2) -> list[Fraction]:
        lo = self.lo if self.lo is not None else (self.hi - span if self.hi is not None else Fraction(-span))
        hi = self.hi if self.hi is not None else lo + 2 * span
        steps = int((hi - lo) * den)
        pts = [lo + Fraction(k, den) for k in range(steps + 1)]
        return [p for p in pts if self.contains(p)]

    def witness_family(self) -> WitnessFamily:
        g = self.grid()
        members = [self.singleton(q) for q in g]
        members += [self.interval(a, False, q, False) for q in g for a in g if a < q]
        lo = "lo" if self.lo is not None else "-inf"
        return WitnessFamily(("{q} for q in carrier", f"(a,q) for {lo} <= a < q in carrier"), tuple(members))

    def approach_start(self, y) -> Fraction:
        return self.lo if self.lo is not None else y - 1

    def critical_family(self, y, x=None) -> list:
        out = [self.singleton(y)]
        if not self.is_min(y):
            out.append(self.interval(self.approach_start(y), False, y, False))
        elif x is not None and x > y:
            out.append(self.interval(y, False, midpoint(y, x), False))
        return out

    def below_set(self, y) -> RSet:
        self._check(y)
        if self.is_min(y):
            return self.singleton(y)
        return RSet(((self.cL, Pos(Fraction(y), 0)),))

    def above_set(self, x) -> RSet:
        self._check(x)
        if self.is_min(x):
            return self.whole
        return _interval(Pos(Fraction(x), 1), self.cR)

    def m_set(self, x) -> RSet:
        # the union of [lo, y) over y < x is [lo, x) again
        return self.below_set(x)

    def ascent_value(self, q, k: int) -> Fraction:
        """``q - 1/(k+1)``, pulled back into the carrier when it falls below."""
        v = Fraction(q) - Fraction(1, k + 1)
        if self.contains(v):
            return v
        if self.lo_kind == "closed":
            return self.lo
        return midpoint(self.lo, q)

    def point_schemas(self):
        return [("q", self.grid())]

    def _random_rational(self, rng) -> Fraction:
        while True:
            d = rng.randint(1, 12)
            if self.lo is not None and self.hi is not None:
                x = self.lo + (self.hi - self.lo) * Fraction(rng.randint(0, d), d)
            else:
                base = self.lo if self.lo is not None else (self.hi if self.hi is not None else 0)
                x = base + Fraction(rng.randint(-24, 24), d)
            if self.contains(x):
                return x

    def sample_points(self, rng, n: int) -> list:
        return [self._random_rational(rng) for _ in range(n)]

    def sample_sets(self, rng, n: int) -> list:
        out = []
        for _ in range(n):
            acc = RSet()
            for _ in range(rng.randint(0, 3)):
                a, b = sorted([self._random_rational(rng), self._random_rational(rng)])
                if rng.random() < 0.2:
                    b = Surd(b, Fraction(1, rng.randint(8, 40)), 2)
                acc = acc | self.interval(a, rng.random() < 0.5, b, rng.random() < 0.5)
            if rng.random() < 0.3:
                acc = acc | self.singleton(self._random_rational(rng))
            out.append(acc)
        return out
