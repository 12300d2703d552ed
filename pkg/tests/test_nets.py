from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conftest import CORPUS, corpus
from irrtopo.kelley import battery
from irrtopo.nets import (
    Affine, ChainAscent, Composition, Const, Explicit, ExplicitMonotoneCofinal, FinitePreorder,
    Interleave, NetSpec, NotASubnet, NotInWitnessFamily, Omega, Parity, RationalAscent,
    apply_subnet, canonical_net, check_subnet, eventual_lower_bounds, eventually_in, format_net,
    irr_converges, net_value, parse_net, parse_subnet, subnet, topo_converges, way_below_via_nets,
)
from irrtopo.verdict import IndexOutOfRange, ParseError

F = Fraction


def test_values():
    L, R = corpus("lambda"), corpus("rational01_scott")
    assert net_value(L, NetSpec(Omega(), ChainAscent("A")), 7) == L.parse_point("A@7")
    inter = NetSpec(Omega(), Interleave(ChainAscent("A"), ChainAscent("B")))
    assert net_value(L, inter, 5) == L.parse_point("B@2")
    assert net_value(R, NetSpec(Omega(), RationalAscent(F(1, 2))), 3) == F(1, 4)
    with pytest.raises(IndexOutOfRange):
        net_value(L, inter, -1)


def test_ascent_clips_to_carrier():
    R = corpus("rational01_scott")
    assert net_value(R, NetSpec(Omega(), RationalAscent(F(1, 4))), 0) == 0


def test_subnet_checks():
    n = NetSpec(Omega(), ChainAscent("A"))
    assert apply_subnet(n, Parity("even")) == NetSpec(Omega(), ChainAscent("A"), 2, 0)
    assert apply_subnet(n, Composition((Parity("odd"), Affine(3, 1)))) == NetSpec(Omega(), ChainAscent("A"), 6, 3)
    with pytest.raises(NotASubnet):
        subnet(n, Affine(0, 1))
    J = FinitePreorder.chain(["i0", "i1"])
    m = NetSpec(J, Explicit((("i0", "a"), ("i1", "b"))))
    with pytest.raises(NotASubnet):
        check_subnet(m, ExplicitMonotoneCofinal(FinitePreorder.chain(["k"]), (("k", "i0"),)))
    check_subnet(m, ExplicitMonotoneCofinal(FinitePreorder.chain(["k"]), (("k", "i1"),)))
    with pytest.raises(NotASubnet):
        check_subnet(m, Affine(1, 0))


def test_finite_index_must_be_directed():
    C = corpus("chain3")
    with pytest.raises(IndexOutOfRange):
        parse_net(C, "explicit{i0:a, i1:b; i0<=i0}")


def _sample_values(S, n, lo=64, hi=128):
    return [net_value(S, n, i) for i in range(lo, hi)]


def _omega_nets(S, rng, k=40):
    bat = battery(S, "small", seed=rng.randrange(1000))
    nets = [n for n in bat.nets if isinstance(n.index, Omega)]
    extra = []
    for n in rng.sample(nets, min(k, len(nets))):
        extra.append(n)
        extra.append(apply_subnet(n, rng.choice([Affine(3, 2), Parity("odd"), Affine(2, 5)])))
    return extra


@pytest.mark.parametrize("name", [c for c in CORPUS if not c.startswith(("chain", "diamond", "antichain"))])
def test_eventual_lower_bounds_against_prefix(name):
    """Values 64..127 settle every net in the battery; rational test points
    have denominators <= 8, so the ascent schedule has passed them by then."""
    S = corpus(name)
    rng = random.Random(23)
    pts = [p for _, reps in S.point_schemas() for p in reps]
    if hasattr(S, "grid"):
        pts = S.grid(den=8)
    for n in _omega_nets(S, rng):
        vals = _sample_values(S, n)
        L = eventual_lower_bounds(S, n)
        for e in pts:
            assert S.member(L, e) == all(S.leq(e, v) for v in vals), (format_net(S, n), S.fmt_point(e))


@pytest.mark.parametrize("name", ["lambda", "nat_inf", "rational01_scott", "rational_line_scott"])
def test_eventually_in_against_prefix(name):
    S = corpus(name)
    rng = random.Random(29)
    opens = [S.up_set(E) for E in S.sample_sets(rng, 30)]
    for n in _omega_nets(S, rng, 20):
        vals = _sample_values(S, n)
        for U in opens:
            assert eventually_in(S, n, U) == all(S.member(U, v) for v in vals), (format_net(S, n), S.fmt_set(U))


def test_finite_index_lower_bounds():
    D = corpus("diamond")
    n = parse_net(D, "explicit{i0:a, i1:b, i2:top; i0<=i2, i1<=i2}")
    assert eventual_lower_bounds(D, n) == D.down_set({"top"})
    assert irr_converges(D, n, "top").verdict.proven


def test_irr_convergence_examples():
    N = corpus("nat_inf")
    j = irr_converges(N, NetSpec(Omega(), ChainAscent("N")), N.parse_point("inf"))
    assert j.verdict.proven and "chain(N)" in j.verdict.certificate
    L = corpus("lambda")
    top = L.parse_point("top")
    inter = NetSpec(Omega(), Interleave(ChainAscent("A"), ChainAscent("B")))
    j = irr_converges(L, inter, top)
    assert j.verdict.refuted and L.is_empty(j.lower_bounds)
    for name in CORPUS:
        S = corpus(name)
        for p in S.sample_points(random.Random(0), 5):
            assert irr_converges(S, NetSpec(Omega(), Const(p)), p).verdict.proven


def test_topological_convergence_examples():
    L = corpus("lambda")
    inter = NetSpec(Omega(), Interleave(ChainAscent("A"), ChainAscent("B")))
    assert topo_converges(L, inter, L.parse_point("top")).proven
    N = corpus("nat_inf")
    v = topo_converges(N, NetSpec(Omega(), ChainAscent("N")), N.parse_point("inf"))
    assert v.refuted and v.witness == "{inf}"
    # one derivative later the open {inf} is gone
    assert topo_converges(N, NetSpec(Omega(), ChainAscent("N")), N.parse_point("inf"), level=1).proven
    for name in CORPUS:
        S = corpus(name)
        for p in S.sample_points(random.Random(1), 4):
            for level in (0, 1):
                assert topo_converges(S, NetSpec(Omega(), Const(p)), p, level).proven


def test_divergence_stress_family():
    L = corpus("lambda")
    top = L.parse_point("top")
    inter = NetSpec(Omega(), Interleave(ChainAscent("A"), ChainAscent("B")))
    assert not irr_converges(L, inter, top).verdict.proven
    assert irr_converges(L, subnet(inter, Parity("even")), top).verdict.proven


def test_canonical_nets():
    L = corpus("lambda")
    top = L.parse_point("top")
    assert canonical_net(L, L.parse_set("chain(A)"), top) == NetSpec(Omega(), ChainAscent("A"))
    assert canonical_net(L, L.parse_set("{A@2}"), L.parse_point("A@1")) == NetSpec(Omega(), Const(L.parse_point("A@2")))
    R = corpus("rational01_scott")
    assert canonical_net(R, R.parse_set("(0,1/2)"), F(1, 2)) == NetSpec(Omega(), RationalAscent(F(1, 2)))
    with pytest.raises(NotInWitnessFamily):
        canonical_net(R, R.parse_set("(0,1/2)"), F(3, 4))
    with pytest.raises(NotInWitnessFamily):
        canonical_net(L, L.parse_set("{A@2, B@2}"), top)


def test_way_below_via_nets_examples():
    R = corpus("rational01_scott")
    assert way_below_via_nets(R, F(1, 3), F(1, 2)).proven
    L = corpus("lambda")
    assert way_below_via_nets(L, L.parse_point("A@3"), L.parse_point("top")).proven


@pytest.mark.parametrize(
    "text",
    ["const(top)", "chain(A)", "interleave(chain(A),chain(B))", "interleave(const(B@3),chain(A))",
     "chain(A) @affine(2,1)"],
)
def test_net_text_round_trip(text):
    L = corpus("lambda")
    n = parse_net(L, text)
    assert parse_net(L, format_net(L, n)) == n


def test_net_text_other_kinds():
    R = corpus("rational01_scott")
    n = parse_net(R, "interleave(ratascent(1/2),const(1))")
    assert parse_net(R, format_net(R, n)) == n
    D = corpus("diamond")
    n = parse_net(D, "explicit{i0:a, i1:b, i2:top; i0<=i2, i1<=i2}")
    assert parse_net(D, format_net(D, n)) == n
    with pytest.raises(ParseError):
        parse_net(D, "explicit{i0 a}")


def test_subnet_text():
    assert parse_subnet("affine(2,1)") == Affine(2, 1)
    assert parse_subnet("parity(odd)") == Parity("odd")
    assert parse_subnet("parity(even) then affine(3,0)") == Composition((Parity("even"), Affine(3, 0)))
    with pytest.raises(ParseError):
        parse_subnet("shift(1)")
