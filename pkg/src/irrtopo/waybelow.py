"""The Irr-way-below relation, continuity and interpolation."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .derive import sobriety_spectrum
from .spaces import RationalSpace, Space
from .spaces.rational import midpoint
from .verdict import Verdict, proven, refuted


@dataclass(frozen=True)
class WayBelowResult:
    holds: Verdict
    witness: object = None  # a set E with sup E >= y and E missing up(x)

    def __bool__(self):
        return self.holds.proven


def way_below(S: Space, x, y) -> WayBelowResult:
    """Decide ``x << y`` by quantifying over the critical witness sets for ``y``."""
    S.leq(x, x), S.leq(y, y)  # carrier checks
    up_x = S.up_set(S.singleton(x))
    for E in S.critical_family(y, x):
        s = S.sup(E)
        if s.exists and S.leq(y, s.point) and not S.meets(E, up_x):
            return WayBelowResult(
                refuted(S.fmt_set(E), f"sup {S.fmt_point(s.point)} >= {S.fmt_point(y)} but E misses up({S.fmt_point(x)})"),
                E,
            )
    return WayBelowResult(proven(f"every witness set with sup >= {S.fmt_point(y)} meets up({S.fmt_point(x)})"))


def below_set(S: Space, x):
    S.leq(x, x)
    return S.below_set(x)


def above_set(S: Space, x):
    S.leq(x, x)
    return S.above_set(x)


def m_set(S: Space, x):
    S.leq(x, x)
    return S.m_set(x)


@dataclass
class ContinuityReport:
    continuous: Verdict
    rows: list = field(default_factory=list)

    def as_dict(self) -> dict:
        d = {"status": self.continuous.status}
        if self.continuous.witness is not None:
            d["witness"] = self.continuous.witness
        if self.continuous.certificate:
            d["certificate"] = self.continuous.certificate
        return {"continuous": d, "schemas": self.rows}


def is_irr_continuous(S: Space) -> ContinuityReport:
    rows, failure = [], None
    for name, reps in S.point_schemas():
        row_ok = True
        shown = None
        for x in reps:
            B = S.below_set(x)
            irreducible = not S.is_empty(B) and S.is_irreducible(B).irreducible
            s = S.sup(B) if not S.is_empty(B) else None
            sup_ok = s is not None and s.exists and s.point == x
            if shown is None or not (irreducible and sup_ok):
                shown = {
                    "schema": name,
                    "point": S.fmt_point(x),
                    "below_set": S.fmt_set(B),
                    "irreducible": irreducible,
                    "sup": s.describe(S.fmt_point) if s is not None else "NotExists(EmptySet)",
                    "above_set_open": S.is_open(S.above_set(x)),
                }
            if not (irreducible and sup_ok):
                row_ok = False
                if failure is None:
                    failure = (x, B, irreducible, s)
                break
        shown["ok"] = row_ok
        rows.append(shown)
    if failure is None:
        return ContinuityReport(proven("each point is the sup of its irreducible way-below set"), rows)
    x, B, irreducible, s = failure
    why = "not irreducible" if not irreducible else f"sup is {s.describe(S.fmt_point)}"
    return ContinuityReport(
        refuted(f"x = {S.fmt_point(x)} with below set {S.fmt_set(B)}", why), rows
    )


@dataclass(frozen=True)
class Interpolation:
    point: object
    hypotheses_met: bool
    note: str = ""


def _hypotheses(S: Space, z, x) -> tuple[bool, str]:
    notes = []
    if not way_below(S, z, x):
        notes.append(f"{S.fmt_point(z)} is not way below {S.fmt_point(x)}")
    if not is_irr_continuous(S).continuous.proven:
        notes.append("space is not Irr-continuous")
    if not sobriety_spectrum(S).k_bounded_sober.proven:
        notes.append("space is not k-bounded sober")
    return (not notes), "; ".join(notes) or "hypotheses met"


def _candidates(S: Space, x) -> list:
    B = S.below_set(x)
    out = []
    for _, reps in S.point_schemas():
        out.extend(r for r in reps if S.member(B, r))
    return out


def interpolate(S: Space, z, x, check_hypotheses: bool = True) -> Interpolation:
    """Find y with ``z << y << x``; picks a maximal valid candidate (or a midpoint
    on rational chains), so the answer is deterministic."""
    ok, note = _hypotheses(S, z, x) if check_hypotheses else (True, "not checked")
    if isinstance(S, RationalSpace):
        y = z if z == x else midpoint(z, x)
        good = S.contains(y) and way_below(S, z, y) and way_below(S, y, x)
        return Interpolation(y if good else None, ok, note)
    valid = [y for y in _candidates(S, x) if way_below(S, z, y) and way_below(S, y, x)]
    maximal = [y for y in valid if not any(o != y and S.leq(y, o) for o in valid)]
    maximal.sort(key=S.fmt_point)
    return Interpolation(maximal[0] if maximal else None, ok, note)


def midpoint_rule(a: Fraction, b: Fraction) -> Fraction:
    return midpoint(a, b)
