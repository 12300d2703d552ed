"""Irreducible sets, suprema and the witness families that make the
quantifiers over irreducible sets with a supremum decidable."""

from __future__ import annotations

from itertools import combinations

from .spaces import ClosedIrreducible, FiniteSpace, IrrResult, Space, SupResult, WitnessFamily
from .verdict import EmptySetError


def is_irreducible(S: Space, E) -> IrrResult:
    E = E & S.whole
    if S.is_empty(E):
        raise EmptySetError("irreducible sets are nonempty")
    return S.is_irreducible(E)


def sup(S: Space, E) -> SupResult:
    if S.is_empty(E & S.whole):
        raise EmptySetError("sup of the empty set is not considered")
    return S.sup(E)


def witness_family(S: Space) -> WitnessFamily:
    return S.witness_family()


def closed_irreducibles(S: Space) -> list[ClosedIrreducible]:
    return S.closed_irreducibles()


def separates(S: Space, E, opens) -> bool:
    """Do the opens U1, U2 each meet E while U1 ∩ U2 misses it?"""
    u1, u2 = opens
    return (
        S.is_open(u1) and S.is_open(u2)
        and S.meets(E, u1) and S.meets(E, u2) and not S.meets(E, u1 & u2)
    )


def brute_irreducible(S: FiniteSpace, E) -> bool:
    """Pairwise check over every pair of opens (finite spaces only)."""
    opens = S.upsets()
    hit = [u for u in opens if u & E]
    return all(u & v & E for u, v in combinations(hit, 2))
