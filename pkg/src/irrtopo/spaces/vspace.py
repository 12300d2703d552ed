"""Spaces built from finitely many omega-chains and finitely many points.

The order is stored as three threshold tables over the finite points:

* ``P[p, q]``  whether ``p <= q``;
* ``s[p, c]``  least ``k`` with ``p <= c@k`` (``inf`` if none);
* ``t[c, p]``  greatest ``k`` with ``c@k <= p`` (``-1`` if none, ``inf`` if all).

Every topology handled here consists of the upper sets ``U`` satisfying a
finite list of constraints ``(c, T)``: if ``U`` meets ``T`` then ``U`` meets
the chain ``c``.  Alexandroff has none; Scott and SI-derived topologies add
``(c, down(sup c))``; the upper topology adds ``(c, LB(UB(c)))``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import product
from typing import NamedTuple

from ..verdict import ParseError, PointNotInCarrier, ValidationError
from .base import ClosedIrreducible, IrrResult, Space, SupResult, WitnessFamily
from .presentation import SpacePresentation

INF = math.inf
SCHEMA_LIMIT = 20000


class ChainPoint(NamedTuple):
    cell: str
    index: int

    def __str__(self):
        return f"{self.cell}@{self.index}"


@dataclass(frozen=True)
class NatSet:
    """A subset of the naturals: finitely many indices plus an optional tail."""

    finite: frozenset = frozenset()
    tail: int | None = None

    @classmethod
    def make(cls, finite=(), tail=None) -> "NatSet":
        fin = {i for i in finite if tail is None or i < tail}
        if tail is not None:
            while tail - 1 in fin:
                tail -= 1
                fin.discard(tail)
        return cls(frozenset(fin), tail)

    @classmethod
    def upto(cls, b) -> "NatSet":
        if b == INF:
            return cls(frozenset(), 0)
        if b < 0:
            return cls()
        return cls.make(range(int(b) + 1))

    @classmethod
    def from_tail(cls, a) -> "NatSet":
        return cls() if a == INF else cls(frozenset(), int(a))

    def __contains__(self, i) -> bool:
        return i in self.finite or (self.tail is not None and i >= self.tail)

    def bound(self) -> int:
        vals = list(self.finite) + ([self.tail] if self.tail is not None else [])
        return max(vals, default=-1)

    def _combine(self, other, op) -> "NatSet":
        h = max(self.bound(), other.bound()) + 1
        fin = [i for i in range(h) if op(i in self, i in other)]
        tail = h if op(self.tail is not None, other.tail is not None) else None
        return NatSet.make(fin, tail)

    def __or__(self, other):
        return self._combine(other, lambda a, b: a or b)

    def __and__(self, other):
        return self._combine(other, lambda a, b: a and b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a and not b)

    def complement(self) -> "NatSet":
        return NatSet(frozenset(), 0) - self

    @property
    def empty(self) -> bool:
        return not self.finite and self.tail is None

    @property
    def infinite(self) -> bool:
        return self.tail is not None

    @property
    def full(self) -> bool:
        return self.tail == 0

    def min(self):
        vals = list(self.finite) + ([self.tail] if self.tail is not None else [])
        return min(vals) if vals else None

    def max(self):
        return None if self.tail is not None else max(self.finite, default=None)

    def runs(self) -> list[tuple[int, int]]:
        out: list[list[int]] = []
        for i in sorted(self.finite):
            if out and out[-1][1] == i - 1:
                out[-1][1] = i
            else:
                out.append([i, i])
        return [(a, b) for a, b in out]


@dataclass(frozen=True)
class VSet:
    """Definable subset: finite points plus one :class:`NatSet` per chain."""

    points: frozenset = frozenset()
    parts: tuple = ()  # sorted ((cell, NatSet), ...), non-empty parts only

    @classmethod
    def build(cls, points=(), parts=None) -> "VSet":
        parts = parts or {}
        return cls(frozenset(points), tuple(sorted((c, n) for c, n in parts.items() if not n.empty)))

    def part(self, cell) -> NatSet:
        for c, n in self.parts:
            if c == cell:
                return n
        return NatSet()

    def _combine(self, other, pop, nop) -> "VSet":
        cells = {c for c, _ in self.parts} | {c for c, _ in other.parts}
        return VSet.build(pop(self.points, other.points), {c: nop(self.part(c), other.part(c)) for c in cells})

    def __or__(self, other):
        return self._combine(other, frozenset.__or__, NatSet.__or__)

    def __and__(self, other):
        return self._combine(other, frozenset.__and__, NatSet.__and__)

    def __sub__(self, other):
        return self._combine(other, frozenset.__sub__, NatSet.__sub__)

    @property
    def empty(self) -> bool:
        return not self.points and not self.parts

    def __contains__(self, x) -> bool:
        if isinstance(x, ChainPoint):
            return x.index in self.part(x.cell)
        return x in self.points

    def bound(self) -> int:
        return max((n.bound() for _, n in self.parts), default=-1)


_ELEM = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:@(\d+))?$")


class VSpace(Space):
    kind = "vspace"

    def __init__(self, pres: SpacePresentation):
        super().__init__(pres)
        self.points = tuple(sorted(dict.fromkeys(pres.points)))
        self.chains = tuple(sorted(dict.fromkeys(pres.chains)))
        if len(self.points) != len(pres.points) or len(self.chains) != len(pres.chains):
            raise ValidationError("DuplicateName", "points and chains must be declared once")
        if set(self.points) & set(self.chains):
            raise ValidationError("DuplicateName", "a name is both a point and a chain")
        if not self.chains:
            raise ValidationError("UnknownCell", "a vspace needs at least one chain")
        self._saturate(pres.relations)
        self._check_sups(pres.sups)
        self.constraints = self._constraints()
        self._chain_sup = {c: self.sup(self.chain_set(c)) for c in self.chains}

    # -- order ----------------------------------------------------------------
    def _need_point(self, p):
        if p not in self.points:
            raise ValidationError("UnknownCell", p)

    def _need_chain(self, c):
        if c not in self.chains:
            raise ValidationError("UnknownCell", c)

    def _saturate(self, relations):
        P = {(p, q): p == q for p in self.points for q in self.points}
        s = {(p, c): INF for p in self.points for c in self.chains}
        t = {(c, p): -1 for c in self.chains for p in self.points}
        self._indices = [0]
        for rel in relations:
            tag = rel[0]
            if tag == "pp":
                self._need_point(rel[1]), self._need_point(rel[2])
                P[rel[1], rel[2]] = True
            elif tag == "pc":
                self._need_point(rel[1]), self._need_chain(rel[2])
                s[rel[1], rel[2]] = min(s[rel[1], rel[2]], rel[3])
                self._indices.append(rel[3])
            elif tag == "cp":
                self._need_chain(rel[1]), self._need_point(rel[3])
                t[rel[1], rel[3]] = max(t[rel[1], rel[3]], rel[2])
                self._indices.append(rel[2])
            elif tag == "chain_below":
                self._need_chain(rel[1]), self._need_point(rel[2])
                t[rel[1], rel[2]] = INF
            elif tag == "cc":
                self._need_chain(rel[1]), self._need_chain(rel[3])
                if rel[1] != rel[3]:
                    raise ValidationError("CrossChainRelation", "chains may only be related through points")
                if rel[2] > rel[4]:
                    raise ValidationError("NotAntisymmetric", f"{rel[1]}@{rel[4]} and {rel[1]}@{rel[2]}")
        changed = True
        while changed:
            changed = False
            for k in self.points:
                for i in self.points:
                    if P[i, k]:
                        for j in self.points:
                            if P[k, j] and not P[i, j]:
                                P[i, j] = changed = True
            for p in self.points:
                for q in self.points:
                    if not P[p, q]:
                        continue
                    for c in self.chains:
                        if s[q, c] < s[p, c]:
                            s[p, c] = s[q, c]
                            changed = True
                        if t[c, p] > t[c, q]:
                            t[c, q] = t[c, p]
                            changed = True
            for p in self.points:
                for q in self.points:
                    if not P[p, q] and any(s[p, c] != INF and s[p, c] <= t[c, q] for c in self.chains):
                        P[p, q] = changed = True
        for p in self.points:
            for q in self.points:
                if p < q and P[p, q] and P[q, p]:
                    raise ValidationError("NotAntisymmetric", f"{p} and {q}")
            for c in self.chains:
                if s[p, c] != INF and s[p, c] <= t[c, p]:
                    raise ValidationError("NotAntisymmetric", f"{p} and {c}@{s[p, c]}")
        self.P, self.s, self.t = P, s, t

    def _check_sups(self, sups):
        for c, p in sups:
            self._need_chain(c)
            self._need_point(p)
            if self.t[c, p] != INF:
                raise ValidationError("SupNotLUB", f"{p} is not an upper bound of chain {c}")
            res = self.sup(self.chain_set(c))
            if not res.exists or res.point != p:
                raise ValidationError("SupNotLUB", f"{p} is not the least upper bound of chain {c}")

    def cross(self, c, d, i):
        """Least ``j`` with ``c@i <= d@j`` for distinct chains (``inf`` if none)."""
        return min((self.s[p, d] for p in self.points if self.t[c, p] >= i), default=INF)

    def contains(self, x) -> bool:
        if isinstance(x, ChainPoint):
            return x.cell in self.chains and isinstance(x.index, int) and x.index >= 0
        return isinstance(x, str) and x in self.points

    def _check(self, x):
        if not self.contains(x):
            raise PointNotInCarrier(str(x))

    def leq(self, x, y) -> bool:
        self._check(x)
        self._check(y)
        if isinstance(x, ChainPoint):
            if isinstance(y, ChainPoint):
                if x.cell == y.cell:
                    return x.index <= y.index
                return self.cross(x.cell, y.cell, x.index) <= y.index
            return x.index <= self.t[x.cell, y]
        if isinstance(y, ChainPoint):
            return self.s[x, y.cell] <= y.index
        return self.P[x, y]

    # -- sets -----------------------------------------------------------------
    @property
    def whole(self):
        return VSet.build(self.points, {c: NatSet(frozenset(), 0) for c in self.chains})

    @property
    def empty(self):
        return VSet()

    def chain_set(self, c) -> VSet:
        return VSet.build((), {c: NatSet(frozenset(), 0)})

    def member(self, E, x) -> bool:
        return x in E

    def singleton(self, x):
        self._check(x)
        if isinstance(x, ChainPoint):
            return VSet.build((), {x.cell: NatSet.make([x.index])})
        return VSet.build([x])

    def is_empty(self, E) -> bool:
        return E.empty

    def up_point(self, x) -> VSet:
        if isinstance(x, ChainPoint):
            c, i = x
            pts = [q for q in self.points if self.t[c, q] >= i]
            parts = {c: NatSet.from_tail(i)}
            for d in self.chains:
                if d != c:
                    parts[d] = NatSet.from_tail(self.cross(c, d, i))
            return VSet.build(pts, parts)
        pts = [q for q in self.points if self.P[x, q]]
        return VSet.build(pts, {d: NatSet.from_tail(self.s[x, d]) for d in self.chains})

    def up_limit(self, c) -> VSet:
        """Intersection of ``up(c@j)`` over all j: the upper bounds of chain c."""
        gens = [p for p in self.points if self.t[c, p] == INF]
        return self.up_set(VSet.build(gens))

    def down_point(self, x) -> VSet:
        if isinstance(x, ChainPoint):
            c, i = x
            below = [q for q in self.points if self.s[q, c] <= i]
            parts = {c: NatSet.upto(i)}
            for d in self.chains:
                if d != c:
                    parts[d] = NatSet.upto(max((self.t[d, q] for q in below), default=-1))
            return VSet.build(below, parts)
        below = [q for q in self.points if self.P[q, x]]
        return VSet.build(below, {d: NatSet.upto(self.t[d, x]) for d in self.chains})

    def down_chain(self, c) -> VSet:
        below = [q for q in self.points if self.s[q, c] < INF]
        parts = {c: NatSet(frozenset(), 0)}
        for d in self.chains:
            if d != c:
                parts[d] = NatSet.upto(max((self.t[d, q] for q in below), default=-1))
        return VSet.build(below, parts)

    def up_set(self, E):
        acc = VSet()
        for p in E.points:
            acc = acc | self.up_point(p)
        for c, n in E.parts:
            acc = acc | self.up_point(ChainPoint(c, n.min()))
        return acc

    def down_set(self, E):
        acc = VSet()
        for p in E.points:
            acc = acc | self.down_point(p)
        for c, n in E.parts:
            acc = acc | (self.down_chain(c) if n.infinite else self.down_point(ChainPoint(c, n.max())))
        return acc

    def upper_bounds(self, E) -> VSet:
        acc = self.whole
        for p in E.points:
            acc = acc & self.up_point(p)
        for c, n in E.parts:
            acc = acc & (self.up_limit(c) if n.infinite else self.up_point(ChainPoint(c, n.max())))
        return acc

    # -- parsing / formatting -------------------------------------------------
    def parse_point(self, text: str):
        m = _ELEM.match(text.strip())
        if not m:
            raise PointNotInCarrier(text)
        x = ChainPoint(m[1], int(m[2])) if m[2] is not None else m[1]
        self._check(x)
        return x

    def parse_set(self, text: str):
        acc = VSet()
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
                m = re.fullmatch(r"(tail|seg|chain)\(\s*([A-Za-z_]\w*)\s*(?:,\s*(\d+))?\s*(?:,\s*(\d+))?\s*\)", atom)
                if not m or m[2] not in self.chains:
                    raise ParseError(1, "definable-set atom tail(C,k) | seg(C,a,b) | chain(C) | {..}", atom)
                c = m[2]
                if m[1] == "chain":
                    part = NatSet(frozenset(), 0)
                elif m[1] == "tail" and m[3] is not None and m[4] is None:
                    part = NatSet.from_tail(int(m[3]))
                elif m[1] == "seg" and m[4] is not None:
                    part = NatSet.make(range(int(m[3]), int(m[4]) + 1))
                else:
                    raise ParseError(1, "well-formed chain atom", atom)
                acc = acc | VSet.build((), {c: part})
        return acc

    def fmt_point(self, x) -> str:
        return str(x)

    def fmt_set(self, E) -> str:
        if E.empty:
            return "∅"
        if E == self.whole:
            return "X"
        atoms, singles = [], []
        for c, n in E.parts:
            if n.full:
                atoms.append(f"chain({c})")
                continue
            for a, b in n.runs():
                if a == b:
                    singles.append(f"{c}@{a}")
                else:
                    atoms.append(f"seg({c},{a},{b})")
            if n.tail is not None:
                atoms.append(f"tail({c},{n.tail})")
        singles.extend(sorted(E.points))
        if singles:
            atoms.append("{" + ", ".join(singles) + "}")
        return " | ".join(atoms)

    # -- topology -------------------------------------------------------------
    def _chain_closures(self, constraints):
        out = []
        for c in self.chains:
            out.append((c, self._close(self.chain_set(c), constraints)))
        return out

    def _constraints(self):
        topo = self.pres.topology
        raw = []
        if topo.base == "scott":
            for c in self.chains:
                res = self.sup(self.chain_set(c))
                if res.exists:
                    raw.append((c, self.down_point(res.point)))
        elif topo.base == "upper":
            for c in self.chains:
                gens = [p for p in self.points if self.t[c, p] == INF]
                trig = self.whole
                for g in gens:
                    trig = trig & self.down_point(g)
                raw.append((c, trig))
        cons = self._merge(raw)
        for _ in range(topo.level):
            cons = self._merge(list(cons) + self._si_constraints(cons))
        return cons

    def _si_constraints(self, constraints):
        # closed irreducibles with a sup are point closures or chain closures;
        # point closures impose nothing, chain closures give (c, down(sup)).
        out = []
        for c, F in self._chain_closures(constraints):
            res = self.sup(F)
            if res.exists:
                out.append((c, self.down_point(res.point)))
        return out

    def _merge(self, raw):
        acc: dict[str, VSet] = {}
        for c, T in raw:
            acc[c] = acc.get(c, VSet()) | T
        return tuple(sorted((c, T) for c, T in acc.items() if not T.empty))

    def is_open(self, U) -> bool:
        U = U & self.whole
        if not self.is_upper(U):
            return False
        return all(not self.meets(U, T) or not (U & self.chain_set(c)).empty for c, T in self.constraints)

    def _close(self, E, constraints):
        C = self.down_set(E)
        changed = True
        while changed:
            changed = False
            for c, T in constraints:
                if C.part(c).full and not self.subset(T, C):
                    C = C | T
                    changed = True
        return C

    def closure(self, E):
        return self._close(E, self.constraints)

    def derive(self) -> "VSpace":
        return VSpace(self.pres.with_topology(self.pres.topology.derived()))

    def horizon(self, *sets, points=()) -> int:
        vals = list(self._indices)
        for p in self.points:
            for c in self.chains:
                for v in (self.s[p, c], self.t[c, p]):
                    if v not in (INF, -INF):
                        vals.append(int(v))
        for _, T in self.constraints:
            vals.append(T.bound())
        for E in sets:
            vals.append(E.bound())
        for x in points:
            if isinstance(x, ChainPoint):
                vals.append(x.index)
        return 2 + max(vals, default=0)

    def neighbourhood(self, x, k: int) -> VSet:
        """Basic open ``N_k(x)``: the least upper set containing ``x`` that adds
        ``up(d@k)`` whenever a constraint on chain ``d`` is triggered."""
        U = self.up_point(x)
        while True:
            add = [c for c, T in self.constraints if self.meets(U, T)]
            V = U
            for c in add:
                V = V | self.up_point(ChainPoint(c, k))
            if V == U:
                return U
            U = V

    def forcing_set(self, c) -> VSet:
        """Points all of whose open neighbourhoods meet chain ``c``."""
        K = self.horizon()
        ch = self.chain_set(c)
        pts = [p for p in self.points if self.meets(self.neighbourhood(p, K), ch)]
        parts = {}
        for d in self.chains:
            hits = [i for i in range(K + 2) if self.meets(self.neighbourhood(ChainPoint(d, i), K), ch)]
            tail = K + 2 if K + 1 in hits else None
            parts[d] = NatSet.make(hits, tail)
        return VSet.build(pts, parts)

    def fingerprint(self) -> tuple[str, ...]:
        lines = ["open sets: upper sets U such that"]
        for c in self.chains:
            extra = self.forcing_set(c) - self.down_chain(c)
            if not extra.empty:
                lines.append(f"  U meets {self.fmt_set(extra)} => U meets chain({c})")
        return tuple(lines)

    def _upsets_by_schema(self):
        """Upper sets with chain parts ``tail(c, j)``, ``j <= H`` (or absent),
        grouped by the point set and the chains present; ``None`` if too many."""
        H = self.horizon()
        choices = [None] + list(range(H + 1))
        if (2 ** len(self.points)) * len(choices) ** len(self.chains) > SCHEMA_LIMIT:
            return None
        out = []
        for mask in range(2 ** len(self.points)):
            P = frozenset(p for i, p in enumerate(self.points) if mask >> i & 1)
            for vec in product(choices, repeat=len(self.chains)):
                U = VSet.build(P, {c: NatSet.from_tail(j) for c, j in zip(self.chains, vec) if j is not None})
                if self.is_upper(U):
                    out.append((P, vec, U))
        return out

    def open_candidates(self) -> list:
        gen = self._upsets_by_schema()
        if gen is None:
            return [VSet(), self.whole]
        return sorted((U for _, _, U in gen if self.is_open(U)), key=lambda U: (len(U.points) + len(U.parts), self.fmt_set(U)))

    def open_schemas(self) -> list[str]:
        H = self.horizon()
        gen = self._upsets_by_schema()
        if gen is None:
            return [f"<schema enumeration exceeds budget {SCHEMA_LIMIT}>"]
        groups: dict[tuple, list] = {}
        for P, vec, U in gen:
            if self.is_open(U):
                Z = tuple(c for c, j in zip(self.chains, vec) if j is not None)
                groups.setdefault((tuple(sorted(P)), Z), []).append(tuple(j for j in vec if j is not None))
        out = []
        for (P, Z), vecs in groups.items():
            if not Z:
                out.append(self.fmt_set(VSet.build(P)))
                continue
            names = [f"{c.lower()}{i}" for i, c in enumerate(Z)]
            atoms = [f"tail({c},{v})" for c, v in zip(Z, names)]
            if P:
                atoms.append("{" + ", ".join(P) + "}")
            lows = [min(v[i] for v in vecs) for i in range(len(Z))]
            box = set(product(*[range(lo, H + 1) for lo in lows]))
            if box == set(vecs):
                cond = ", ".join(f"{v}>={lo}" for v, lo in zip(names, lows))
            else:
                cond = f"({', '.join(names)}) in {sorted(vecs)} (index {H} stands for >= {H})"
            out.append(f"{' | '.join(atoms)}  [{cond}]")
        return sorted(out)

    def critical_open(self, y, hints=()):
        K = self.horizon(points=[y, *hints])
        return self.neighbourhood(y, K)

    # -- irreducible sets -----------------------------------------------------
    def maximum(self, E):
        cands = list(E.points) + [ChainPoint(c, n.max()) for c, n in E.parts if not n.infinite]
        for m in sorted(cands, key=str):
            if self.subset(E, self.down_point(m)):
                return m
        return None

    def sup(self, E) -> SupResult:
        ub = self.upper_bounds(E)
        if ub.empty:
            return SupResult(False, reason="NoUpperBound")
        cands = list(ub.points) + [ChainPoint(c, n.min()) for c, n in ub.parts]
        for m in sorted(cands, key=str):
            if self.subset(ub, self.up_point(m)):
                return SupResult(True, point=m)
        minimal = [m for m in sorted(cands, key=str) if not any(o != m and self.leq(o, m) for o in cands)]
        return SupResult(False, reason="NoLeastUpperBound", witness=tuple(minimal[:2]))

    def is_irreducible(self, E) -> IrrResult:
        E = E & self.whole
        if self.is_empty(E):
            return IrrResult(False, rule="Empty")
        cl = self.closure(E)
        if len(E.points) + sum(len(n.finite) + (n.tail is not None) * 2 for _, n in E.parts) == 1:
            return IrrResult(True, "Singleton", self.fmt_set(E))
        m = self.maximum(cl)
        if m is not None:
            return IrrResult(True, "DirectedWithMax", f"cl(E) = down({m})")
        for c in self.chains:
            if cl.part(c).full and self.closure(self.chain_set(c)) == cl:
                return IrrResult(True, "CofinalInChain", f"cl(E) = cl(chain({c}))")
        pieces = [self.closure(self.chain_set(c)) for c in self.chains if cl.part(c).full]
        pieces += [self.down_point(p) for p in cl.points]
        pieces += [self.down_point(ChainPoint(c, n.max())) for c, n in cl.parts if not n.infinite]
        return IrrResult(False, opens=self.split_witness(E, pieces))

    def closed_irreducibles(self) -> list[ClosedIrreducible]:
        first = self.points[0] if self.points else ChainPoint(self.chains[0], 0)
        out = [
            ClosedIrreducible(
                "down(x) for x in carrier", self.down_point(first), SupResult(True, point="x"), point_closure="x"
            )
        ]
        for c in self.chains:
            F = self.closure(self.chain_set(c))
            out.append(
                ClosedIrreducible(
                    f"cl(chain({c}))", F, self._chain_sup[c],
                    point_closure=self.maximum(F),
                    bounded=not self.up_limit(c).empty,
                )
            )
        return out

    def chains_with_sup(self):
        return [(c, self._chain_sup[c].point) for c in self.chains if self._chain_sup[c].exists]

    def witness_family(self) -> WitnessFamily:
        H = self.horizon()
        members = [self.singleton(p) for p in self.points]
        members += [self.singleton(ChainPoint(c, i)) for c in self.chains for i in range(H + 1)]
        members += [self.chain_set(c) for c, _ in self.chains_with_sup()]
        schemas = ["{x} for x in carrier"] + [f"chain({c}) (sup {s})" for c, s in self.chains_with_sup()]
        return WitnessFamily(tuple(schemas), tuple(members))

    def critical_family(self, y, x=None) -> list:
        out = [self.singleton(y)]
        out += [self.chain_set(c) for c, s in self.chains_with_sup() if self.leq(y, s)]
        return out

    def below_set(self, y) -> VSet:
        acc = self.down_point(y)
        for c, s in self.chains_with_sup():
            if self.leq(y, s):
                acc = acc & self.down_chain(c)
        return acc

    def above_set(self, x) -> VSet:
        acc = self.up_point(x)
        for c, s in self.chains_with_sup():
            if x not in self.down_chain(c):
                acc = acc - self.down_point(s)
        return acc

    def m_set(self, x) -> VSet:
        """Union of ``below_set(y)`` over ``y`` in ``below_set(x)``."""
        B = self.below_set(x)
        acc = VSet()
        for p in B.points:
            acc = acc | self.below_set(p)
        H = self.horizon(points=[x])
        for c, n in B.parts:
            top = max(n.bound(), H) + 1
            for i in range(top + 1):
                if i in n:
                    acc = acc | self.below_set(ChainPoint(c, i))
            if n.infinite:
                # past the horizon the chains with sup above c@i no longer change
                lim = self.down_chain(c)
                for d, s in self.chains_with_sup():
                    if self.leq(ChainPoint(c, top), s):
                        lim = lim & self.down_chain(d)
                acc = acc | lim
        return acc

    def point_schemas(self):
        H = self.horizon()
        out = [(p, [p]) for p in self.points]
        for c in self.chains:
            out.append((f"{c}@i", [ChainPoint(c, i) for i in range(H + 2)]))
        return out

    def sample_points(self, rng, n: int) -> list:
        H = self.horizon()
        pool = list(self.points) + [ChainPoint(c, i) for c in self.chains for i in range(H + 3)]
        return [rng.choice(pool) for _ in range(n)]

    def sample_sets(self, rng, n: int) -> list:
        H = self.horizon()
        out = []
        for _ in range(n):
            pts = [p for p in self.points if rng.random() < 0.4]
            parts = {}
            for c in self.chains:
                r = rng.random()
                if r < 0.3:
                    continue
                fin = [i for i in range(H + 2) if rng.random() < 0.3]
                tail = rng.randrange(H + 3) if r < 0.75 else None
                parts[c] = NatSet.make(fin, tail)
            out.append(VSet.build(pts, parts))
        return out
