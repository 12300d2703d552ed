"""Generated net batteries, Kelley's axioms, and the main verdict."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .derive import sobriety_spectrum
from .nets import (
    Affine, ChainAscent, Composition, Const, Explicit, ExplicitMonotoneCofinal, FinitePreorder,
    Interleave, NetSpec, Omega, Parity, RationalAscent, apply_subnet, canonical_net,
    check_subnet, eventual_lower_bounds, eventually_in, format_net, format_subnet,
    irr_converges, judge_lower_bounds, top_class_subnet, topo_converges,
)
from .spaces import FiniteSpace, RationalSpace, Space, VSpace
from .verdict import Verdict
from .waybelow import is_irr_continuous

SIZES = {"small": (4, 6, 200), "large": (12, 20, 1000)}  # pair samples, explicit tables, iterated configs

OMEGA_SUBNETS = (
    Affine(1, 0), Affine(1, 1), Parity("even"), Parity("odd"), Affine(3, 2),
    Composition((Parity("odd"), Affine(2, 1))),
)

INDEX_SHAPES = (
    FinitePreorder.chain(["i0"]),
    FinitePreorder.chain(["i0", "i1"]),
    FinitePreorder.chain(["i0", "i1", "i2"]),
    FinitePreorder.chain(["i0", "i1", "i2", "i3"]),
    FinitePreorder.make(["i0", "i1", "i2", "i3"], [("i0", "i1"), ("i0", "i2"), ("i1", "i3"), ("i2", "i3")]),
    FinitePreorder.make(["i0", "i1", "i2"], [("i0", "i1"), ("i1", "i2"), ("i2", "i1")]),
)


@dataclass(frozen=True)
class Battery:
    nets: tuple
    points: tuple
    size: str
    seed: int
    budget: int = 0  # cap on sampled iterated-limit configurations


def battery_points(S: Space, size: str = "small") -> list:
    if isinstance(S, RationalSpace):
        return S.grid(den=4 if size == "small" else 8)
    pts = []
    for _, reps in S.point_schemas():
        pts.extend(reps)
    return pts


def battery(S: Space, size: str = "small", seed: int = 0, budget: int | None = None) -> Battery:
    if size not in SIZES:
        raise ValueError(f"battery size must be one of {sorted(SIZES)}")
    pairs, tables, _ = SIZES[size]
    rng = random.Random(seed)
    pts = battery_points(S, size)
    nets = [NetSpec(Omega(), Const(p)) for p in pts]
    for _ in range(pairs):
        nets.append(NetSpec(Omega(), Interleave(Const(rng.choice(pts)), Const(rng.choice(pts)))))
    if isinstance(S, VSpace):
        for c in S.chains:
            nets.append(NetSpec(Omega(), ChainAscent(c)))
            for d in S.chains:
                nets.append(NetSpec(Omega(), Interleave(ChainAscent(c), ChainAscent(d))))
            for _ in range(pairs):
                nets.append(NetSpec(Omega(), Interleave(Const(rng.choice(pts)), ChainAscent(c))))
    elif isinstance(S, RationalSpace):
        nets.extend(NetSpec(Omega(), RationalAscent(q)) for q in pts)
        for _ in range(pairs):
            a, b, p = rng.choice(pts), rng.choice(pts), rng.choice(pts)
            nets.append(NetSpec(Omega(), Interleave(RationalAscent(a), RationalAscent(b))))
            nets.append(NetSpec(Omega(), Interleave(Const(p), RationalAscent(a))))
    else:
        for shape in INDEX_SHAPES:
            for _ in range(tables):
                nets.append(NetSpec(shape, Explicit(tuple((i, rng.choice(pts)) for i in shape.elements))))
        for E in S.directed_subsets():
            s = S.sup(E)
            nets.append(canonical_net(S, E, s.point))
    cap = SIZES[size][2] if budget is None else budget
    return Battery(tuple(dict.fromkeys(nets)), tuple(pts), size, seed, cap)


def subnets_for(n: NetSpec) -> list:
    if isinstance(n.index, Omega):
        return list(OMEGA_SUBNETS)
    J = n.index
    ident = ExplicitMonotoneCofinal(J, tuple((j, j) for j in J.elements))
    out = [ident, top_class_subnet(n)]
    for j0 in J.elements:
        tail = tuple(j for j in J.elements if J.leq(j0, j))
        dom = FinitePreorder.make(tail, [(a, b) for a, b in J.le if a in tail and b in tail])
        out.append(ExplicitMonotoneCofinal(dom, tuple((j, j) for j in tail)))
    return list(dict.fromkeys(out))


@dataclass
class AxiomResult:
    status: str = "holds-on-battery"  # | violated | inconclusive
    checked: int = 0
    witness: str = ""

    def as_dict(self) -> dict:
        d = {"status": self.status, "checked": self.checked}
        if self.witness:
            d["witness"] = self.witness
        return d


@dataclass
class KelleyReport:
    constants: AxiomResult = field(default_factory=AxiomResult)
    subnets: AxiomResult = field(default_factory=AxiomResult)
    divergence: AxiomResult = field(default_factory=AxiomResult)
    iterated_limits: AxiomResult = field(default_factory=AxiomResult)

    def as_dict(self) -> dict:
        return {k: getattr(self, k).as_dict() for k in ("constants", "subnets", "divergence", "iterated_limits")}


class _Judge:
    """Memoised Irr-convergence on a fixed space."""

    def __init__(self, S: Space):
        self.S = S
        self.lower = {}
        self.memo = {}

    def L(self, n):
        if n not in self.lower:
            self.lower[n] = eventual_lower_bounds(self.S, n)
        return self.lower[n]

    def __call__(self, n, y) -> bool:
        key = (n, y)
        if key not in self.memo:
            self.memo[key] = judge_lower_bounds(self.S, self.L(n), y).verdict.proven
        return self.memo[key]


def _violate(res: AxiomResult, witness: str):
    if res.status != "violated":
        res.status = "violated"
        res.witness = witness


def kelley_check(S: Space, bat: Battery | None = None) -> KelleyReport:
    bat = bat or battery(S)
    judge = _Judge(S)
    rep = KelleyReport()
    fmt = S.fmt_point

    for p in bat.points:
        const = NetSpec(Omega(), Const(p))
        for q in bat.points:
            if S.leq(q, p):
                rep.constants.checked += 1
                if not judge(const, q):
                    _violate(rep.constants, f"const({fmt(p)}) does not converge to {fmt(q)}")

    for n in bat.nets:
        subs = [(s, apply_subnet(n, s)) for s in subnets_for(n)]
        for s, _ in subs:
            check_subnet(n, s)
        for y in bat.points:
            if judge(n, y):
                for s, m in subs:
                    rep.subnets.checked += 1
                    if not judge(m, y):
                        _violate(rep.subnets, f"{format_net(S, n)} -> {fmt(y)} but subnet {format_subnet(s)} does not")
            else:
                rep.divergence.checked += 1
                if not any(
                    not any(judge(apply_subnet(m, s2), y) for s2 in subnets_for(m)) for _, m in subs
                ):
                    _violate(
                        rep.divergence,
                        f"{format_net(S, n)} does not converge to {fmt(y)}, yet every battery subnet "
                        f"has a sub-subnet converging to {fmt(y)}",
                    )

    _iterated(S, bat, judge, rep.iterated_limits)
    return rep


def _iterated(S: Space, bat: Battery, judge: _Judge, res: AxiomResult):
    """Finite outer index I; inner nets from the battery.  The diagonal net over
    I x prod J(i) has eventual lower bounds equal to the intersection of the
    inner nets' eventual lower bounds over the top class of I."""
    rng = random.Random(bat.seed + 1)
    budget = bat.budget
    converging = {y: [n for n in bat.nets if judge(n, y)] for y in bat.points}
    shapes = [s for s in INDEX_SHAPES if len(s.elements) <= 3]
    configs = []
    for shape in shapes:
        space = list(product(bat.points, repeat=len(shape.elements)))
        configs.extend((shape, ys) for ys in space)
    if len(configs) > budget:
        configs = rng.sample(configs, budget)
    for shape, ys in configs:
        inner = []
        for y_i in ys:
            opts = converging[y_i]
            inner.append(opts[rng.randrange(len(opts))])
        outer = NetSpec(shape, Explicit(tuple(zip(shape.elements, ys))))
        diag_L = S.whole
        for t in shape.top():
            diag_L = diag_L & judge.L(inner[shape.elements.index(t)])
        for y in bat.points:
            if not judge(outer, y):
                continue
            res.checked += 1
            if not judge_lower_bounds(S, diag_L, y).verdict.proven:
                _violate(
                    res,
                    f"outer {format_net(S, outer)} -> {S.fmt_point(y)}, inner "
                    + "; ".join(format_net(S, m) for m in inner)
                    + ", diagonal does not converge",
                )


def _boundary_points(S: Space, U) -> list:
    if isinstance(S, VSpace):
        return list(U.points) + [(c, n.min()) for c, n in U.parts]
    if isinstance(S, RationalSpace):
        out = []
        for L, _ in U.intervals:
            if L.v is not None and not hasattr(L.v, "d") and S.contains(L.v):
                out.append(L.v)
        return out
    return list(U)


def induced_open(S: Space, U, bat: Battery | None = None) -> Verdict:
    """Is ``U`` open for the topology induced by Irr-convergence?  Tests every
    point of ``U`` in the battery against the battery nets and the canonical
    nets of its witness sets."""
    from .spaces import ChainPoint
    from .verdict import proven, refuted

    bat = bat or battery(S)
    U = U & S.whole
    fmt = S.fmt_point
    if not S.is_upper(U):
        for y in bat.points:
            if S.member(U, y):
                for p in bat.points:
                    if S.leq(y, p) and not S.member(U, p):
                        return refuted(f"const({fmt(p)}) -> {fmt(y)}", "U is not an upper set")
    cands = [ChainPoint(*b) if isinstance(b, tuple) and not isinstance(b, ChainPoint) else b
             for b in _boundary_points(S, U)]
    ys = [y for y in dict.fromkeys(list(bat.points) + cands) if S.member(U, y)]
    for y in ys:
        nets = list(bat.nets)
        for E in S.critical_family(y):
            s = S.sup(E)
            if s.exists and S.leq(y, s.point):
                nets.append(canonical_net(S, E, y))
        for n in nets:
            if irr_converges(S, n, y) and not eventually_in(S, n, U):
                return refuted(f"{format_net(S, n)} -> {fmt(y)}", "converging net never settles inside U")
    return proven("upper set; for upper sets the canonical-net test is the SI-openness condition, "
                  "and every battery net converging into U is eventually in U")


@dataclass
class MainVerdict:
    irr_continuous: Verdict
    k_bounded_sober: Verdict
    theorem_conclusion: str
    empirical: dict

    def as_dict(self) -> dict:
        def vd(v):
            d = {"status": v.status}
            if v.witness is not None:
                d["witness"] = v.witness
            return d

        return {
            "irr_continuous": vd(self.irr_continuous),
            "k_bounded_sober": vd(self.k_bounded_sober),
            "theorem_conclusion": self.theorem_conclusion,
            "empirical": self.empirical,
        }


def empirical_agreement(S: Space, bat: Battery, limit: int = 5) -> dict:
    agree = disagree = 0
    samples = []
    for n in bat.nets:
        for y in bat.points:
            a = irr_converges(S, n, y).verdict.proven
            b = topo_converges(S, n, y, 0).proven
            if a == b:
                agree += 1
            else:
                disagree += 1
                if len(samples) < limit:
                    samples.append({"net": format_net(S, n), "point": S.fmt_point(y), "irr": a, "topological": b})
    return {"pairs": agree + disagree, "agree": agree, "disagree": disagree, "disagreements": samples}


def main_verdict(S: Space, bat: Battery | None = None) -> MainVerdict:
    bat = bat or battery(S)
    cont = is_irr_continuous(S).continuous
    kb = sobriety_spectrum(S).k_bounded_sober
    if kb.refuted:
        concl = "OutOfTheoremScope"
    else:
        concl = "Topological" if cont.proven else "NotTopological"
    return MainVerdict(cont, kb, concl, empirical_agreement(S, bat))
