from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CORPUS, corpus
from irrtopo.spaces import NatSet
from irrtopo.waybelow import way_below

SLOW = settings(max_examples=40, deadline=None)

# -- NatSet algebra against a bounded model -----------------------------------

nat_sets = st.builds(
    NatSet.make,
    st.frozensets(st.integers(0, 20), max_size=8),
    st.one_of(st.none(), st.integers(0, 25)),
)
HORIZON = range(60)


def model(n: NatSet) -> frozenset:
    return frozenset(i for i in HORIZON if i in n)


@given(nat_sets, nat_sets)
def test_natset_ops_match_model(a, b):
    assert model(a | b) == model(a) | model(b)
    assert model(a & b) == model(a) & model(b)
    assert model(a - b) == model(a) - model(b)
    assert model(a.complement()) == frozenset(HORIZON) - model(a)


@given(nat_sets, nat_sets)
def test_natset_normal_form(a, b):
    # normalisation makes equality semantic
    assert (a == b) == (model(a) == model(b))
    assert a.infinite == (a.tail is not None)
    assert a.empty == (not model(a) and not a.infinite)


# -- interval algebra on the rational chain -----------------------------------

R = corpus("rational01_scott")
GRID = sorted({Fraction(k, d) for d in range(1, 7) for k in range(d + 1)})
PROBES = sorted({Fraction(k, 48) for k in range(49)})


@st.composite
def interval_sets(draw):
    atoms = []
    for _ in range(draw(st.integers(0, 3))):
        a, b = sorted(draw(st.sampled_from(GRID)) for _ in range(2))
        if a == b:
            atoms.append(f"{{{a}}}")
        else:
            atoms.append(f"{draw(st.sampled_from('[('))}{a},{b}{draw(st.sampled_from('])'))}")
    return R.parse_set(" | ".join(atoms) or "empty")


def rmodel(E) -> frozenset:
    return frozenset(q for q in PROBES if q in E)


@given(interval_sets(), interval_sets())
def test_rset_ops_match_model(a, b):
    assert rmodel(a | b) == rmodel(a) | rmodel(b)
    assert rmodel(a & b) == rmodel(a) & rmodel(b)
    assert rmodel(a - b) == rmodel(a) - rmodel(b)


@given(interval_sets(), interval_sets(), interval_sets())
def test_rset_de_morgan_and_distributivity(a, b, c):
    X = R.whole
    assert X - (a | b) == (X - a) & (X - b)
    assert X - (a & b) == (X - a) | (X - b)
    assert a & (b | c) == (a & b) | (a & c)


@given(interval_sets())
def test_rset_text_round_trip(a):
    assert R.parse_set(R.fmt_set(a)) == a


# -- closure axioms on every exemplar -----------------------------------------

@SLOW
@given(st.sampled_from(CORPUS), st.integers(0, 10**6))
def test_closure_is_a_kuratowski_operator(name, seed):
    S = corpus(name)
    A, B = S.sample_sets(random.Random(seed), 2)
    cA, cB = S.closure(A), S.closure(B)
    assert S.subset(A, cA)
    assert S.closure(cA) == cA
    assert S.closure(A | B) == cA | cB
    assert S.is_closed(cA)
    assert S.is_open(S.complement(cA))


@SLOW
@given(st.sampled_from(CORPUS), st.integers(0, 10**6))
def test_text_round_trip_for_sets(name, seed):
    S = corpus(name)
    for E in S.sample_sets(random.Random(seed), 3):
        assert S.parse_set(S.fmt_set(E)) == E


@SLOW
@given(st.sampled_from(CORPUS), st.integers(0, 10**6))
def test_derived_opens_form_a_topology(name, seed):
    S = corpus(name)
    D = S.derive()
    opens = [S.up_set(E) for E in S.sample_sets(random.Random(seed), 6)]
    opens = [U for U in opens if D.is_open(U)]
    for U in opens:
        assert S.is_open(U)  # the derivative is coarser
        for V in opens:
            assert D.is_open(U & V) and D.is_open(U | V)


@SLOW
@given(st.sampled_from(CORPUS), st.integers(0, 10**6))
def test_way_below_order_properties(name, seed):
    S = corpus(name)
    pts = S.sample_points(random.Random(seed), 6)
    for x in pts:
        for y in pts:
            if not way_below(S, x, y):
                continue
            assert S.leq(x, y)
            for u in pts:
                for z in pts:
                    if S.leq(u, x) and S.leq(y, z):
                        assert way_below(S, u, z)


@SLOW
@given(st.sampled_from(CORPUS), st.integers(0, 10**6))
def test_irreducible_sets_and_closures(name, seed):
    S = corpus(name)
    D = S.derive()
    rng = random.Random(seed)
    pts = S.sample_points(rng, 8)
    for E in S.sample_sets(rng, 4):
        irr = S.is_irreducible(E).irreducible
        assert irr == S.is_irreducible(S.closure(E)).irreducible
        if irr:
            assert D.is_irreducible(E).irreducible
            # any set between E and cl(E) stays irreducible
            cl = S.closure(E)
            for x in pts:
                if S.member(cl, x):
                    assert S.is_irreducible(E | S.singleton(x)).irreducible
