from __future__ import annotations

import random

import pytest

from conftest import CORPUS, all_small_posets, corpus, poset_text
from irrtopo.derive import (
    distinguishing_open, has_si_infty_property, si_derivative, si_iterate, si_open,
    sobriety_spectrum, thm23_crosscheck,
)
from irrtopo.spaces import load_space


def test_si_open_examples():
    N = corpus("nat_inf")
    v = si_open(N, N.parse_set("{inf}"))
    assert v.refuted and v.witness == "chain(N)"
    assert si_open(N, N.parse_set("tail(N,5) | {inf}")).proven
    for name in CORPUS:
        S = corpus(name)
        assert si_open(S, S.whole).proven
        assert si_open(S, S.empty).proven


def test_si_open_rejects_non_open():
    R = corpus("rational01_scott")
    v = si_open(R, R.parse_set("[1/2,1]"))
    assert v.refuted


@pytest.mark.parametrize("name", CORPUS)
def test_derived_topology_is_the_si_open_filter(name):
    S = corpus(name)
    D = si_derivative(S)
    rng = random.Random(11)
    cands = list(S.open_candidates()) + [S.up_set(E) for E in S.sample_sets(rng, 150)]
    for U in cands:
        assert D.is_open(U) == si_open(S, U).proven, S.fmt_set(U)


def test_nat_inf_derivative_is_scott():
    D = si_derivative(corpus("nat_inf"))
    T = corpus("nat_inf_scott")
    rng = random.Random(5)
    for E in T.sample_sets(rng, 300):
        U = T.up_set(E)
        assert D.is_open(U) == T.is_open(U), T.fmt_set(U)
    assert not D.is_open(D.parse_set("{inf}"))
    assert D.open_schemas() == ["tail(N,n0) | {inf}  [n0>=0]", "∅"]


def test_finite_derivative_is_identity():
    for n, less in all_small_posets(4):
        S = load_space(poset_text(n, less))
        assert si_derivative(S).fingerprint() == S.fingerprint()


@pytest.mark.parametrize(
    "name, gamma",
    [("chain3", 0), ("diamond", 0), ("nat_inf", 1), ("nat_inf_scott", 0), ("rational01_scott", 0),
     ("rational01_alexandroff", 1), ("lambda", 0)],
)
def test_gamma(name, gamma):
    t = si_iterate(corpus(name))
    assert t.gamma == gamma and t.fixpoint_reached
    assert [s.level for s in t.stages] == list(range(gamma + 1))


def test_gamma_at_most_one_on_corpus():
    for name in CORPUS:
        assert si_iterate(corpus(name)).gamma in (0, 1), name


def test_bound_hit():
    t = si_iterate(corpus("nat_inf"), bound=1)
    assert t.gamma == "BoundHit(1)" and not t.fixpoint_reached
    with pytest.raises(ValueError):
        si_iterate(corpus("nat_inf"), bound=0)


def test_iteration_trace_dict():
    d = si_iterate(corpus("nat_inf")).as_dict()
    assert d["gamma"] == 1
    assert d["stages"][0]["schemas"] == ["tail(N,n0) | {inf}  [n0>=0]", "{inf}", "∅"]


def test_si_infty_property():
    assert has_si_infty_property(corpus("rational01_scott")).proven
    v = has_si_infty_property(corpus("nat_inf"))
    assert v.refuted and v.witness == "{inf}"
    assert has_si_infty_property(corpus("diamond")).proven


def test_distinguishing_open():
    N = corpus("nat_inf")
    U = distinguishing_open(N, N.derive())
    assert N.fmt_set(U) == "{inf}"
    assert distinguishing_open(N.derive(), N) is None


def test_sobriety_examples():
    r = sobriety_spectrum(corpus("rational01_scott"))
    assert (r.sober.refuted, r.bounded_sober.refuted, r.k_bounded_sober.proven) == (True, True, True)
    assert r.sober.witness == r.bounded_sober.witness == "[0,sqrt(2)/2)"
    n = sobriety_spectrum(corpus("nat_inf"))
    assert n.k_bounded_sober.refuted and n.k_bounded_sober.witness == "chain(N)"
    f = sobriety_spectrum(corpus("diamond"))
    assert f.sober.proven and f.bounded_sober.proven and f.k_bounded_sober.proven
    # on the whole rational line some closed irreducibles are unbounded
    line = sobriety_spectrum(corpus("rational_line_scott"))
    assert line.sober.refuted and line.k_bounded_sober.proven


def test_sobriety_levels_are_nested():
    for name in CORPUS:
        r = sobriety_spectrum(corpus(name))
        if r.sober.proven:
            assert r.bounded_sober.proven
        if r.bounded_sober.proven:
            assert r.k_bounded_sober.proven


def test_crosscheck_on_corpus_and_small_posets():
    for name in CORPUS:
        assert thm23_crosscheck(corpus(name)).proven, name
    for n, less in all_small_posets(5):
        S = load_space(poset_text(n, less))
        assert thm23_crosscheck(S).proven
        assert has_si_infty_property(S).proven


def test_kb_sober_iff_si_infty_both_directions():
    assert not sobriety_spectrum(corpus("nat_inf")).k_bounded_sober.proven
    assert not has_si_infty_property(corpus("nat_inf")).proven
    assert sobriety_spectrum(corpus("rational01_scott")).k_bounded_sober.proven
    assert has_si_infty_property(corpus("rational01_scott")).proven
