"""Three-valued decision results and the package's exception types."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

PROVEN = "proven"
REFUTED = "refuted"
UNKNOWN = "unknown"


class IrrTopoError(Exception):
    pass


class ParseError(IrrTopoError):
    def __init__(self, line: int, expected: str, text: str = ""):
        self.line = line
        self.expected = expected
        self.text = text
        msg = f"line {line}: expected {expected}"
        if text:
            msg += f" (got {text!r})"
        super().__init__(msg)


class ValidationError(IrrTopoError):
    """Raised when a presentation parses but does not denote a T0 space."""

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}: {detail}" if detail else reason)


class PointNotInCarrier(IrrTopoError):
    pass


class EmptySetError(IrrTopoError):
    pass


class UnsupportedKind(IrrTopoError):
    pass


class IndexOutOfRange(IrrTopoError):
    pass


@dataclass(frozen=True)
class Verdict:
    status: str
    certificate: str = ""
    witness: Any = None
    bound: str = ""

    @property
    def proven(self) -> bool:
        return self.status == PROVEN

    @property
    def refuted(self) -> bool:
        return self.status == REFUTED

    def __str__(self) -> str:
        if self.status == PROVEN:
            return f"Proven({self.certificate})"
        if self.status == REFUTED:
            return f"Refuted(witness={self.witness})"
        return f"Unknown(bound={self.bound})"


def proven(certificate: str) -> Verdict:
    return Verdict(PROVEN, certificate=certificate)


def refuted(witness: Any, certificate: str = "") -> Verdict:
    return Verdict(REFUTED, certificate=certificate, witness=witness)


def unknown(bound: str) -> Verdict:
    return Verdict(UNKNOWN, bound=bound)


def from_bool(ok: bool, certificate: str, witness: Any = None) -> Verdict:
    return proven(certificate) if ok else refuted(witness, certificate)
