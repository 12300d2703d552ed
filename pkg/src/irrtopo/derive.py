"""The SI derivative, its iteration, and the sobriety hierarchy."""

from __future__ import annotations

from dataclasses import dataclass, field

from .spaces import Space
from .verdict import Verdict, from_bool, proven, refuted

DEFAULT_BOUND = 8


def si_open(S: Space, U) -> Verdict:
    """Is ``U`` open in the SI derivative of ``S``?"""
    U = U & S.whole
    if not S.is_open(U):
        return refuted(S.fmt_set(U), "not open in the base topology")
    E = S.si_violation(U)
    if E is not None:
        return refuted(S.fmt_set(E), f"sup {S.fmt_point(S.sup(E).point)} lies in U but E misses U")
    return proven("every closed irreducible set with sup in U meets U")


def si_derivative(S: Space) -> Space:
    return S.derive()


@dataclass(frozen=True)
class Stage:
    level: int
    fingerprint: tuple
    schemas: tuple


@dataclass
class IterationTrace:
    stages: list = field(default_factory=list)
    gamma: int | str = 0
    fixpoint_reached: bool = True

    def as_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "fixpoint_reached": self.fixpoint_reached,
            "stages": [
                {"level": s.level, "fingerprint": list(s.fingerprint), "schemas": list(s.schemas)}
                for s in self.stages
            ],
        }


def si_iterate(S: Space, bound: int = DEFAULT_BOUND) -> IterationTrace:
    if bound < 1:
        raise ValueError("bound must be at least 1")
    trace = IterationTrace()
    cur = S
    for level in range(bound + 1):
        trace.stages.append(Stage(level, cur.fingerprint(), tuple(cur.open_schemas())))
        if level == bound:
            break
        nxt = cur.derive()
        if nxt.fingerprint() == cur.fingerprint():
            trace.gamma = level
            return trace
        cur = nxt
    trace.gamma = f"BoundHit({bound})"
    trace.fixpoint_reached = False
    return trace


def distinguishing_open(S: Space, T: Space):
    """An open set of ``S`` that is not open in ``T`` (searched among candidates)."""
    for U in S.open_candidates():
        if not T.is_open(U):
            return U
    return None


def has_si_infty_property(S: Space) -> Verdict:
    D = S.derive()
    if D.fingerprint() == S.fingerprint():
        return proven("the topology equals its SI derivative (gamma = 0)")
    U = distinguishing_open(S, D)
    return refuted(S.fmt_set(U) if U is not None else "<outside candidate slice>", "open but not SI-open")


@dataclass
class SobrietyReport:
    sober: Verdict
    bounded_sober: Verdict
    k_bounded_sober: Verdict
    witnesses: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "sober": _vd(self.sober),
            "bounded_sober": _vd(self.bounded_sober),
            "k_bounded_sober": _vd(self.k_bounded_sober),
            "witnesses": dict(sorted(self.witnesses.items())),
        }


def _vd(v: Verdict) -> dict:
    d = {"status": v.status}
    if v.certificate:
        d["certificate"] = v.certificate
    if v.witness is not None:
        d["witness"] = v.witness
    if v.bound:
        d["bound"] = v.bound
    return d


def sobriety_spectrum(S: Space) -> SobrietyReport:
    bad = [ci for ci in S.closed_irreducibles() if not ci.is_point_closure]
    levels = {
        "sober": ([ci for ci in bad], "every closed irreducible set"),
        "bounded_sober": ([ci for ci in bad if ci.bounded], "every bounded closed irreducible set"),
        "k_bounded_sober": ([ci for ci in bad if ci.sup.exists], "every closed irreducible set with a sup"),
    }
    verdicts, witnesses = {}, {}
    for key, (offenders, scope) in levels.items():
        if offenders:
            ci = offenders[0]
            w = S.fmt_set(ci.example)
            witnesses[key] = w
            verdicts[key] = refuted(w, f"{ci.schema}: {ci.sup.describe(S.fmt_point)}, not a point closure")
        else:
            verdicts[key] = proven(f"{scope} is a point closure")
    return SobrietyReport(verdicts["sober"], verdicts["bounded_sober"], verdicts["k_bounded_sober"], witnesses)


def thm23_crosscheck(S: Space) -> Verdict:
    kb = sobriety_spectrum(S).k_bounded_sober.proven
    si = has_si_infty_property(S).proven
    return from_bool(
        kb == si,
        f"k-bounded sober: {kb}; SI-infinity property: {si}",
        witness=None if kb == si else "k-bounded sobriety and the SI-infinity property disagree",
    )
