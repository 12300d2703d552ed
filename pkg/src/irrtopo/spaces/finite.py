"""Finite posets with their Alexandroff topology.

In a finite space ``up(x)`` is the smallest open set containing ``x``, so the
topology is determined by the order: Alexandroff, Scott, upper and every SI
derivative coincide and all are normalised to the set of upper sets.
"""

from __future__ import annotations

from itertools import combinations

from ..verdict import PointNotInCarrier, ValidationError
from .base import ClosedIrreducible, IrrResult, Space, SupResult, WitnessFamily
from .presentation import SpacePresentation, Topology


class FiniteSpace(Space):
    kind = "finite"

    def __init__(self, pres: SpacePresentation):
        super().__init__(pres)
        pts = list(dict.fromkeys(pres.points))
        if not pts:
            raise ValidationError("EmptyCarrier", "a finite space needs at least one point")
        if len(pts) != len(pres.points):
            dup = sorted(p for p in pts if pres.points.count(p) > 1)
            raise ValidationError("DuplicateName", ", ".join(dup))
        self.points = tuple(sorted(pts))
        idx = {p: i for i, p in enumerate(self.points)}
        n = len(self.points)
        le = [[i == j for j in range(n)] for i in range(n)]
        for rel in pres.relations:
            if rel[0] != "pp":
                raise ValidationError("UnknownCell", f"relation {rel} needs chain cells")
            for p in rel[1:]:
                if p not in idx:
                    raise ValidationError("UnknownCell", p)
            le[idx[rel[1]]][idx[rel[2]]] = True
        if pres.sups or pres.chains:
            raise ValidationError("UnknownCell", "finite spaces have no chains")
        for k in range(n):
            for i in range(n):
                if le[i][k]:
                    for j in range(n):
                        if le[k][j]:
                            le[i][j] = True
        for i in range(n):
            for j in range(i + 1, n):
                if le[i][j] and le[j][i]:
                    raise ValidationError(
                        "NotAntisymmetric", f"{self.points[i]} and {self.points[j]}"
                    )
        self._le = {(self.points[i], self.points[j]) for i in range(n) for j in range(n) if le[i][j]}
        self._up = {p: frozenset(q for q in self.points if (p, q) in self._le) for p in self.points}
        self._down = {p: frozenset(q for q in self.points if (q, p) in self._le) for p in self.points}
        if pres.opens is not None:
            self._check_explicit_opens(pres.opens)

    def _check_explicit_opens(self, opens):
        listed = {frozenset(o) for o in opens} | {frozenset(), self.whole}
        for o in listed:
            if not o <= self.whole:
                raise ValidationError("UnknownCell", f"open set mentions {sorted(o - self.whole)}")
        if listed != set(self.upsets()):
            raise ValidationError(
                "OpensNotAlexandroff",
                "explicit opens must be exactly the upper sets of the specialization order",
            )

    # -- sets -----------------------------------------------------------------
    @property
    def whole(self):
        return frozenset(self.points)

    @property
    def empty(self):
        return frozenset()

    def contains(self, x) -> bool:
        return isinstance(x, str) and x in self._up

    def _check(self, x):
        if not self.contains(x):
            raise PointNotInCarrier(str(x))

    def member(self, E, x) -> bool:
        return x in E

    def singleton(self, x):
        self._check(x)
        return frozenset([x])

    def is_empty(self, E) -> bool:
        return not E

    def leq(self, x, y) -> bool:
        self._check(x)
        self._check(y)
        return (x, y) in self._le

    def up_set(self, E):
        return frozenset().union(*(self._up[x] for x in E)) if E else frozenset()

    def down_set(self, E):
        return frozenset().union(*(self._down[x] for x in E)) if E else frozenset()

    def parse_point(self, text: str):
        text = text.strip()
        self._check(text)
        return text

    def parse_set(self, text: str):
        text = text.strip()
        if text in ("empty", "{}", "∅"):
            return frozenset()
        if text in ("all", "X"):
            return self.whole
        out = set()
        for atom in text.split("|"):
            atom = atom.strip()
            if atom.startswith("{") and atom.endswith("}"):
                names = [t.strip() for t in atom[1:-1].split(",") if t.strip()]
            else:
                names = [atom]
            for nm in names:
                out.add(self.parse_point(nm))
        return frozenset(out)

    def fmt_point(self, x) -> str:
        return str(x)

    def fmt_set(self, E) -> str:
        if not E:
            return "∅"
        return "{" + ", ".join(sorted(E)) + "}"

    def upsets(self) -> list[frozenset]:
        out = []
        for r in range(len(self.points) + 1):
            for combo in combinations(self.points, r):
                s = frozenset(combo)
                if self.up_set(s) == s:
                    out.append(s)
        return out

    def subsets(self, nonempty: bool = True) -> list[frozenset]:
        start = 1 if nonempty else 0
        return [
            frozenset(c)
            for r in range(start, len(self.points) + 1)
            for c in combinations(self.points, r)
        ]

    # -- topology -------------------------------------------------------------
    def is_open(self, U) -> bool:
        return self.is_upper(frozenset(U))

    def closure(self, E):
        return self.down_set(E)

    def derive(self) -> "FiniteSpace":
        return FiniteSpace(self.pres.with_topology(self.pres.topology.derived()))

    def fingerprint(self) -> tuple[str, ...]:
        return tuple(f"up({p}) = {self.fmt_set(self._up[p])}" for p in self.points)

    def open_schemas(self) -> list[str]:
        return sorted(self.fmt_set(u) for u in self.upsets())

    def open_candidates(self) -> list:
        return self.upsets()

    def critical_open(self, y, hints=()):
        return self._up[y]

    # -- irreducible sets -----------------------------------------------------
    def maximum(self, E):
        for m in sorted(E):
            if E <= self._down[m]:
                return m
        return None

    def sup(self, E) -> SupResult:
        E = frozenset(E)
        ub = self.whole
        for e in E:
            ub &= self._up[e]
        if not ub:
            return SupResult(False, reason="NoUpperBound")
        for u in sorted(ub):
            if ub <= self._up[u]:
                return SupResult(True, point=u)
        minimal = sorted(u for u in ub if not any(v != u and (v, u) in self._le for v in ub))
        return SupResult(False, reason="NoLeastUpperBound", witness=tuple(minimal[:2]))

    def is_irreducible(self, E) -> IrrResult:
        E = frozenset(E)
        if not E:
            return IrrResult(False, rule="Empty")
        if len(E) == 1:
            (x,) = E
            return IrrResult(True, "Singleton", f"{{{x}}}")
        m = self.maximum(E)
        if m is not None:
            return IrrResult(True, "DirectedWithMax", f"max {m}; cl = down({m})")
        maxima = sorted(e for e in E if not any(f != e and (e, f) in self._le for f in E))
        pieces = [self._down[x] for x in maxima]
        return IrrResult(False, opens=self.split_witness(E, pieces))

    def is_directed(self, E) -> bool:
        E = frozenset(E)
        return bool(E) and all(self._up[a] & self._up[b] & E for a in E for b in E)

    def directed_subsets(self) -> list[frozenset]:
        if not hasattr(self, "_directed"):
            self._directed = [s for s in self.subsets() if self.is_directed(s)]
        return self._directed

    def closed_irreducibles(self) -> list[ClosedIrreducible]:
        return [
            ClosedIrreducible(f"down({p})", self._down[p], SupResult(True, point=p), point_closure=p)
            for p in self.points
        ]

    def witness_family(self) -> WitnessFamily:
        members = tuple(self.directed_subsets())
        return WitnessFamily(("all directed subsets (exhaustive)",), members)

    def critical_family(self, y, x=None) -> list:
        return [E for E in self.directed_subsets() if self.sup(E).exists and self.leq(y, self.sup(E).point)]

    def below_set(self, y):
        fam = self.critical_family(y)
        return frozenset(x for x in self.points if all(E & self._up[x] for E in fam))

    def above_set(self, x):
        return frozenset(y for y in self.points if x in self.below_set(y))

    def m_set(self, x):
        return frozenset().union(*(self.below_set(y) for y in self.below_set(x)))

    def point_schemas(self):
        return [(p, [p]) for p in self.points]

    def sample_points(self, rng, n: int) -> list:
        return [rng.choice(self.points) for _ in range(n)]

    def sample_sets(self, rng, n: int) -> list:
        out = []
        for _ in range(n):
            out.append(frozenset(p for p in self.points if rng.random() < 0.5))
        return out
