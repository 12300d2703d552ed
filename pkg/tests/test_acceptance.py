"""Acceptance criteria 1-8, each at zero tolerance.

Every test records a PASS/FAIL line that is printed in the terminal summary
(and to stdout, visible with ``-s``).
"""

from __future__ import annotations

import json
import os
import random
import subprocess
import sys
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from conftest import ACCEPTANCE, CORPUS, all_small_posets, corpus, poset_text
from irrtopo.derive import si_iterate, sobriety_spectrum, thm23_crosscheck
from irrtopo.kelley import battery, kelley_check, main_verdict
from irrtopo.nets import (
    ChainAscent, Interleave, NetSpec, Omega, canonical_net, irr_converges, topo_converges,
    way_below_via_nets,
)
from irrtopo.spaces import VSpace, load_space
from irrtopo.waybelow import interpolate, is_irr_continuous, way_below


def record(k: int, mismatches: list, checked: int, what: str):
    ok = not mismatches
    detail = f"{checked} {what}, {len(mismatches)} mismatches"
    if mismatches:
        detail += f"; first: {mismatches[0]}"
    ACCEPTANCE[k] = (ok, detail)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


# -- brute-force oracles for finite posets ------------------------------------

def _subsets(pts):
    for r in range(1, len(pts) + 1):
        yield from (frozenset(c) for c in combinations(pts, r))


def _brute_way_below(pts, le):
    """Classical way-below: every directed D whose sup exists and lies above y meets up(x)."""
    directed = [D for D in _subsets(pts)
                if all(any(le(a, c) and le(b, c) for c in D) for a in D for b in D)]
    sups = {}
    for D in directed:
        ub = [u for u in pts if all(le(d, u) for d in D)]
        least = [u for u in ub if all(le(u, v) for v in ub)]
        if least:
            sups[D] = least[0]
    return {
        (x, y)
        for x in pts for y in pts
        if all(any(le(x, d) for d in D) for D, s in sups.items() if le(y, s))
    }


def test_criterion_1_finite_posets():
    mismatches, checked = [], 0
    for n, less in all_small_posets(6):
        S = load_space(poset_text(n, less))
        pts = sorted(S.whole)
        oracle = _brute_way_below(pts, S.leq)
        for x in pts:
            for y in pts:
                checked += 1
                if bool(way_below(S, x, y)) != ((x, y) in oracle):
                    mismatches.append(("way_below", sorted(less), x, y))
        if si_iterate(S).gamma != 0 or S.derive().fingerprint() != S.fingerprint():
            mismatches.append(("gamma", sorted(less)))
        rep = sobriety_spectrum(S)
        if not (rep.sober.proven and rep.bounded_sober.proven and rep.k_bounded_sober.proven):
            mismatches.append(("sobriety", sorted(less)))
        mv = main_verdict(S)
        if mv.theorem_conclusion != "Topological" or mv.empirical["disagree"]:
            mismatches.append(("verdict", sorted(less), mv.theorem_conclusion, mv.empirical["disagree"]))
    record(1, mismatches, checked, "way-below pairs over 405 posets (<= 6 points)")


# -- criterion 2 --------------------------------------------------------------

def _is_principal_tail_or_empty(S, U) -> bool:
    """Brute force on the (points, parts) form: U is empty or U = up(N@n)."""
    if S.is_empty(U):
        return True
    ups = [S.up_set(S.singleton(S.parse_point(f"N@{n}"))) for n in range(S.horizon(U) + 2)]
    return any(U == V for V in ups)


def test_criterion_2_nat_inf_alexandroff():
    S = corpus("nat_inf")
    D = S.derive()
    mismatches, checked = [], 0
    if D.open_schemas() != ["tail(N,n0) | {inf}  [n0>=0]", "∅"]:
        mismatches.append(("schemas", D.open_schemas()))
    rng = random.Random(2)
    cands = list(S.open_candidates()) + [S.up_set(E) for E in S.sample_sets(rng, 500)]
    for U in cands:
        checked += 1
        if D.is_open(U) != _is_principal_tail_or_empty(S, U):
            mismatches.append(("open", S.fmt_set(U)))
    if si_iterate(S).gamma != 1:
        mismatches.append(("gamma", si_iterate(S).gamma))
    kb = sobriety_spectrum(S).k_bounded_sober
    if not kb.refuted or kb.witness != "chain(N)":
        mismatches.append(("kb", kb))
    if not thm23_crosscheck(S).proven:
        mismatches.append("crosscheck")
    record(2, mismatches, checked, "candidate opens checked against {∅, X} ∪ {↑n}")


# -- criterion 3 --------------------------------------------------------------

def _rational_oracle(x: Fraction, y: Fraction, grid) -> bool:
    """Bounded witness-family brute force on [0,1]: singletons {q} and open
    intervals (a,q) with sup q >= y must all reach up to x."""
    for q in grid:
        if q < y:
            continue
        if q < x:  # {q} and (a,q) both miss up(x)
            return False
        if q == x and any(a < q for a in grid):  # (a,x) misses up(x)
            return False
    return True


def test_criterion_3_rational_scott():
    S = corpus("rational01_scott")
    mismatches, checked = [], 0
    rep = sobriety_spectrum(S)
    status = (rep.sober.status, rep.bounded_sober.status, rep.k_bounded_sober.status)
    if status != ("refuted", "refuted", "proven"):
        mismatches.append(("spectrum", status))
    if not ("sqrt" in str(rep.sober.witness) and "sqrt" in str(rep.bounded_sober.witness)):
        mismatches.append(("surd witness", rep.sober.witness, rep.bounded_sober.witness))
    if not is_irr_continuous(S).continuous.proven:
        mismatches.append("continuity")

    rng = random.Random(3)
    dens = range(1, 13)
    grid = sorted({Fraction(k, d) for d in dens for k in range(d + 1)})
    pairs = []
    while len(pairs) < 1200:
        x, y = rng.choice(grid), rng.choice(grid)
        if rng.random() < 0.1:
            y = x
        pairs.append((x, y))
    proven_pairs = []
    for x, y in pairs:
        checked += 1
        got = bool(way_below(S, x, y))
        char = x < y or x == y == 0
        if got != char or got != _rational_oracle(x, y, grid):
            mismatches.append(("way_below", x, y, got))
        if got:
            proven_pairs.append((x, y))

    first = interpolate(S, *proven_pairs[0])
    if not first.hypotheses_met:
        mismatches.append(("hypotheses", first.note))
    while len(proven_pairs) < 1000:
        proven_pairs.append(tuple(sorted(rng.sample(grid, 2))))
    for z, x in proven_pairs:
        r = interpolate(S, z, x, check_hypotheses=False)
        y = r.point
        if y is None or not (way_below(S, z, y) and way_below(S, y, x)):
            mismatches.append(("interpolate", z, x, y))
    record(3, mismatches, checked, f"way-below pairs, {len(proven_pairs)} interpolations")


# -- criterion 4 --------------------------------------------------------------

def test_criterion_4_lambda():
    S = corpus("lambda")
    top = S.parse_point("top")
    mismatches = []
    cont = is_irr_continuous(S).continuous
    if not cont.refuted or "top" not in cont.witness or not S.is_empty(S.below_set(top)):
        mismatches.append(("continuity", cont))
    if not sobriety_spectrum(S).k_bounded_sober.proven:
        mismatches.append("kb")
    if main_verdict(S).theorem_conclusion != "NotTopological":
        mismatches.append("verdict")
    net = NetSpec(Omega(), Interleave(ChainAscent("A"), ChainAscent("B")))
    if not topo_converges(S, net, top, 0).proven:
        mismatches.append("topo")
    if not irr_converges(S, net, top).verdict.refuted:
        mismatches.append("irr")
    record(4, mismatches, 5, "checks on the two-chain space")


# -- criterion 5 --------------------------------------------------------------

def test_criterion_5_kelley_constants_subnets():
    mismatches, checked = [], 0
    for name in CORPUS:
        rep = kelley_check(corpus(name))
        for ax in (rep.constants, rep.subnets):
            checked += ax.checked
            if ax.status != "holds-on-battery":
                mismatches.append((name, ax.witness))
    record(5, mismatches, checked, f"constant/subnet configurations over {len(CORPUS)} exemplars")


# -- criterion 6 --------------------------------------------------------------

def test_criterion_6_irreducible_invariants():
    mismatches, checked = [], 0
    for name in CORPUS:
        S = corpus(name)
        D = S.derive()
        rng = random.Random(6)
        sets = S.sample_sets(rng, 500)
        for E in sets:
            checked += 1
            irr = S.is_irreducible(E).irreducible
            if irr != S.is_irreducible(S.closure(E)).irreducible:
                mismatches.append((name, "closure", S.fmt_set(E)))
            if irr and not D.is_irreducible(E).irreducible:
                mismatches.append((name, "coarser", S.fmt_set(E)))
            if (S.is_open(E) and S.is_closed(E)) != (D.is_open(E) and D.is_closed(E)):
                mismatches.append((name, "clopen", S.fmt_set(E)))
        for x in S.sample_points(rng, 100):
            c1, c2 = S.closure(S.singleton(x)), D.closure(D.singleton(x))
            if S.fmt_set(c1) != D.fmt_set(c2):
                mismatches.append((name, "point closure", S.fmt_point(x)))
    record(6, mismatches, checked, f"sampled sets over {len(CORPUS)} exemplars")


# -- criterion 7 --------------------------------------------------------------

def test_criterion_7_canonical_nets():
    mismatches, checked, nets_checked = [], 0, 0
    for name in CORPUS:
        S = corpus(name)
        bat = battery(S)
        ys = list(bat.points)
        family = list(S.witness_family().instances())
        for y in ys:
            family.extend(S.critical_family(y))
        for E in family:
            s = S.sup(E)
            if not s.exists:
                continue
            for y in ys:
                if S.leq(y, s.point):
                    nets_checked += 1
                    if not irr_converges(S, canonical_net(S, E, y), y).verdict.proven:
                        mismatches.append((name, "canonical", S.fmt_set(E), S.fmt_point(y)))
        rng = random.Random(7)
        pts = S.sample_points(rng, 60)
        for _ in range(1000):
            x, y = rng.choice(pts), rng.choice(pts)
            checked += 1
            v = way_below_via_nets(S, x, y, bat.nets if isinstance(S, VSpace) else ())
            if not v.proven:
                mismatches.append((name, "nets", S.fmt_point(x), S.fmt_point(y), v.witness))
    record(7, mismatches, checked, f"net/way-below pairs, {nets_checked} canonical nets")


# -- criterion 8 --------------------------------------------------------------

def test_criterion_8_determinism():
    script = Path(__file__).with_name("cli_runs.py")
    outs = []
    procs = []
    for hashseed in ("0", "12345"):
        env = dict(os.environ, PYTHONHASHSEED=hashseed)
        procs.append(subprocess.Popen([sys.executable, str(script), "2"], env=env,
                                      stdout=subprocess.PIPE, stderr=subprocess.PIPE))
    for p in procs:
        out, err = p.communicate(timeout=300)
        assert p.returncode == 0, err.decode()
        outs.append(json.loads(out))
    a, b = outs
    mismatches = [k for k in sorted(a) if a[k] != b.get(k) or a[k] == "NONDETERMINISTIC"]
    failed = [k for k in sorted(a) if not a[k].startswith("exit=0")]
    record(8, mismatches + failed, len(a), "CLI invocations run 4 times (2 processes x 2)")
