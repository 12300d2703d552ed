"""Interface shared by the space engines, plus kind-independent helpers."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Iterable

from .presentation import SpacePresentation, emit_presentation


@dataclass(frozen=True)
class SupResult:
    exists: bool
    point: Any = None
    reason: str = ""  # NoUpperBound | NoLeastUpperBound
    witness: tuple = ()

    def describe(self, fmt) -> str:
        if self.exists:
            return f"Exists({fmt(self.point)})"
        if self.witness:
            return f"NotExists({self.reason}: {', '.join(fmt(w) for w in self.witness)})"
        return f"NotExists({self.reason})"


@dataclass(frozen=True)
class IrrResult:
    """Outcome of an irreducibility decision.

    ``rule``/``trace`` form the certificate when irreducible; otherwise
    ``opens`` holds U1, U2 meeting the set separately but not jointly.
    """

    irreducible: bool
    rule: str = ""
    trace: str = ""
    opens: tuple = ()

    def __bool__(self):
        return self.irreducible


@dataclass(frozen=True)
class ClosedIrreducible:
    schema: str
    example: Any
    sup: SupResult
    point_closure: Any = None  # the generating point when the set is some cl({x})
    bounded: bool = True

    @property
    def is_point_closure(self) -> bool:
        return self.point_closure is not None


@dataclass(frozen=True)
class WitnessFamily:
    schemas: tuple[str, ...]
    members: tuple = field(default=(), repr=False)

    def instances(self, budget: int | None = None) -> list:
        return list(self.members if budget is None else self.members[:budget])


class Space(ABC):
    """A validated, immutable presentation together with its decision engine."""

    kind: str

    def __init__(self, pres: SpacePresentation):
        self.pres = pres

    # -- identity -----------------------------------------------------------
    @property
    def topology(self):
        return self.pres.topology

    def canonical_text(self) -> str:
        return emit_presentation(self.pres)

    # -- points and sets ----------------------------------------------------
    @property
    @abstractmethod
    def whole(self): ...

    @property
    @abstractmethod
    def empty(self): ...

    @abstractmethod
    def contains(self, x) -> bool: ...

    @abstractmethod
    def member(self, E, x) -> bool: ...

    @abstractmethod
    def singleton(self, x): ...

    @abstractmethod
    def is_empty(self, E) -> bool: ...

    @abstractmethod
    def leq(self, x, y) -> bool: ...

    @abstractmethod
    def up_set(self, E): ...

    @abstractmethod
    def down_set(self, E): ...

    @abstractmethod
    def parse_point(self, text: str): ...

    @abstractmethod
    def parse_set(self, text: str): ...

    @abstractmethod
    def fmt_point(self, x) -> str: ...

    @abstractmethod
    def fmt_set(self, E) -> str: ...

    def complement(self, E):
        return self.whole - E

    def subset(self, A, B) -> bool:
        return self.is_empty(A - B)

    def meets(self, A, B) -> bool:
        return not self.is_empty(A & B)

    def is_upper(self, E) -> bool:
        return self.up_set(E) == E

    def is_lower(self, E) -> bool:
        return self.down_set(E) == E

    # -- topology -----------------------------------------------------------
    @abstractmethod
    def is_open(self, U) -> bool: ...

    def is_closed(self, C) -> bool:
        return self.is_open(self.complement(C))

    @abstractmethod
    def closure(self, E): ...

    @abstractmethod
    def derive(self) -> "Space":
        """The same carrier carrying the SI-derived topology."""

    @abstractmethod
    def fingerprint(self) -> tuple[str, ...]:
        """Canonical description of the topology; equal iff topologies agree."""

    @abstractmethod
    def open_schemas(self) -> list[str]: ...

    @abstractmethod
    def critical_open(self, y, hints: Iterable = ()):
        """An open neighbourhood of ``y`` that every convergence question about
        the hinted points can be decided against (a smallest one when it exists)."""

    # -- irreducible sets ---------------------------------------------------
    @abstractmethod
    def sup(self, E) -> SupResult: ...

    @abstractmethod
    def is_irreducible(self, E) -> IrrResult: ...

    @abstractmethod
    def closed_irreducibles(self) -> list[ClosedIrreducible]: ...

    @abstractmethod
    def witness_family(self) -> WitnessFamily: ...

    @abstractmethod
    def critical_family(self, y, x=None) -> list:
        """Witness-family instances with sup >= y that decide every
        ``E meets up(x)`` quantifier over Irr+ with sup above y."""

    @abstractmethod
    def point_schemas(self) -> list[tuple[str, list]]:
        """Carrier schemas with representative points."""

    @abstractmethod
    def sample_points(self, rng, n: int) -> list: ...

    @abstractmethod
    def sample_sets(self, rng, n: int) -> list: ...

    @abstractmethod
    def open_candidates(self) -> list:
        """Concrete open sets of the base topology used to search for witnesses
        (all upper sets for finite spaces; a representative slice otherwise)."""

    def si_violation(self, U):
        """A closed irreducible set E with sup E in U and E missing U, if any.

        Point closures never violate the condition, so only the remaining
        closed irreducibles that have a supremum are inspected.
        """
        for ci in self.closed_irreducibles():
            if ci.is_point_closure or not ci.sup.exists:
                continue
            if self.member(U, ci.sup.point) and not self.meets(ci.example, U):
                return ci.example
        return None

    # -- shared helpers -----------------------------------------------------
    def split_witness(self, E, pieces: list) -> tuple:
        """Opens separating ``E`` given a cover of ``cl(E)`` by closed pieces,
        none of which equals ``cl(E)``."""
        pieces = list(dict.fromkeys(pieces))
        changed = True
        while changed and len(pieces) > 2:
            changed = False
            for i, p in enumerate(pieces):
                rest = self._union(pieces[:i] + pieces[i + 1:])
                if self.subset(p, rest):
                    pieces.pop(i)
                    changed = True
                    break
        g1, g2 = pieces[0], self._union(pieces[1:])
        return self.complement(g2), self.complement(g1)

    def _union(self, sets):
        acc = self.empty
        for s in sets:
            acc = acc | s
        return acc

    def fmt_opens(self, opens) -> list[str]:
        return [self.fmt_set(u) for u in opens]
