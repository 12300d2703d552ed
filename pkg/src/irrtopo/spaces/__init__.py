"""Space presentations and their decision engines."""

from __future__ import annotations

from .base import ClosedIrreducible, IrrResult, Space, SupResult, WitnessFamily
from .finite import FiniteSpace
from .presentation import SpacePresentation, Topology, emit_presentation, parse_presentation_text
from .rational import RationalSpace, RSet
from .vspace import ChainPoint, NatSet, VSet, VSpace

_ENGINES = {"finite": FiniteSpace, "vspace": VSpace, "rational": RationalSpace}


def make_space(pres: SpacePresentation) -> Space:
    return _ENGINES[pres.kind](pres)


def load_space(text: str) -> Space:
    """Parse and validate a space file."""
    return make_space(parse_presentation_text(text))


def parse_presentation(text: str) -> SpacePresentation:
    """Parse a space file and validate it; returns the presentation."""
    return load_space(text).pres


__all__ = [
    "ChainPoint", "ClosedIrreducible", "FiniteSpace", "IrrResult", "NatSet", "RSet",
    "RationalSpace", "Space", "SpacePresentation", "SupResult", "Topology", "VSet",
    "VSpace", "WitnessFamily", "emit_presentation", "load_space", "make_space",
    "parse_presentation", "parse_presentation_text",
]
