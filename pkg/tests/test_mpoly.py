import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from hwlength.errors import OutOfMemoryBudget, ParseError, UnknownVariable, VanishesModP
from hwlength.mpoly import (
    MultiPolyP,
    parse_poly,
    poly_query,
    reduce_mod,
    simplex,
    simplex_rank,
    simplex_size,
    simplex_unrank,
)
from hwlength.polyparse import default_variables

from oracles import expand_power_naive

XYZ = ["x", "y", "z"]


def fermat(p):
    return reduce_mod(parse_poly("x^3 + y^3 + z^3", XYZ), p).poly


def test_parse_examples():
    g = parse_poly("x^3 + y^3 + z^3", XYZ)
    assert dict(g.terms) == {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1}
    g = parse_poly("2*x*y - 7*z^2", XYZ)
    assert dict(g.terms) == {(1, 1, 0): 2, (0, 0, 2): -7}
    with pytest.raises(ParseError) as err:
        parse_poly("x + $", ["x"])
    assert err.value.position == 4


@pytest.mark.parametrize("text,terms", [
    ("-x^2 + 3x y", {(2, 0, 0): -1, (1, 1, 0): 3}),
    ("+5", {(0, 0, 0): 5}),
    ("x y z", {(1, 1, 1): 1}),
    ("x*x*y^2 - x^2y^2", {}),
    ("  12 * x ^ 2 * z  ", {(2, 0, 1): 12}),
    ("x^10+1", {(10, 0, 0): 1, (0, 0, 0): 1}),
])
def test_parse_grammar(text, terms):
    assert dict(parse_poly(text, XYZ).terms) == terms


@pytest.mark.parametrize("text", ["", "x +", "x + -y", "x^0", "x^", "2 3", "x*", "x**y", "(x)", "x^-1"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_poly(text, XYZ)


def test_unknown_variable():
    with pytest.raises(UnknownVariable) as err:
        parse_poly("x + q", XYZ)
    assert err.value.name == "q"


def test_default_variables():
    assert default_variables("x^3+y^3+z^3") == XYZ
    assert default_variables("x^2+y^2+z^2+w^2") == ["x", "y", "z", "w"]
    assert default_variables("x0^5 + x4^5") == [f"x{i}" for i in range(5)]


def test_reduce_examples():
    r = reduce_mod(parse_poly("x^3 + y^3 + z^3", XYZ), 7)
    assert r.poly.terms == {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1}
    assert not r.support_dropped and not r.degree_dropped
    r = reduce_mod(parse_poly("7*x^3 + y^3", XYZ), 7)
    assert r.poly.terms == {(0, 3, 0): 1}
    assert r.support_dropped
    r = reduce_mod(parse_poly("7*x^4 + y^3", XYZ), 7)
    assert r.degree_dropped
    with pytest.raises(VanishesModP):
        reduce_mod(parse_poly("7*x^3", XYZ), 7)


def test_queries():
    g7, g3 = fermat(7), fermat(3)
    assert poly_query(g7, "degree") == 3
    assert poly_query(g7, "is_homogeneous")
    assert poly_query(g7, "partial_derivative", 0).terms == {(2, 0, 0): 3}
    assert poly_query(g3, "partial_derivative", 0).is_zero()
    assert poly_query(g7, "coeff", (3, 0, 0)) == 1
    assert poly_query(g7, "coeff", (1, 1, 1)) == 0


def test_pow_examples():
    # over F_2: p = 2 is excluded from fields but the polynomial layer takes any modulus
    g = MultiPolyP(2, 2, {(1, 0): 1, (0, 1): 1})
    assert g.pow(2).terms == {(2, 0): 1, (0, 2): 1}
    sq = fermat(7).pow(2)
    assert sq.terms == {(6, 0, 0): 1, (0, 6, 0): 1, (0, 0, 6): 1,
                        (3, 3, 0): 2, (3, 0, 3): 2, (0, 3, 3): 2}
    assert fermat(7).pow(0) == MultiPolyP.one(7, 3)


def random_homogeneous(rng, p, nvars, d, nterms):
    mons = simplex(nvars, d)
    return MultiPolyP(p, nvars, {rng.choice(mons): rng.randrange(1, p) for _ in range(nterms)})


@pytest.mark.parametrize("p,nvars,d,k", [(7, 3, 3, 6), (31, 3, 4, 30), (13, 4, 2, 12), (11, 3, 5, 10), (101, 3, 3, 100)])
def test_dense_matches_naive_expansion(p, nvars, d, k):
    rng = random.Random(p + d)
    g = random_homogeneous(rng, p, nvars, d, 6)
    dense = g.pow(k, method="dense")
    expected = expand_power_naive(g.terms, k, p)
    assert dense.terms == expected
    if simplex_size(nvars, d * k) < 20000:
        assert g.pow(k, method="schoolbook").terms == expected


def test_kronecker_path_is_exercised():
    rng = random.Random(5)
    g = random_homogeneous(rng, 499, 3, 5, 21)
    a = g.pow(20, method="dense")
    b = g.pow(20, method="schoolbook")
    assert a == b
    assert a.is_dense


def test_memory_budget():
    with pytest.raises(OutOfMemoryBudget) as err:
        fermat(499).pow(498, budget=1000)
    assert err.value.estimated_terms == comb(3 * 498 + 2, 2)


@st.composite
def small_homogeneous(draw):
    p = draw(st.sampled_from([3, 5, 7, 11]))
    nvars = draw(st.integers(2, 4))
    d = draw(st.integers(1, 4))
    mons = simplex(nvars, d)
    terms = draw(st.dictionaries(st.sampled_from(mons), st.integers(1, p - 1), min_size=1, max_size=5))
    return MultiPolyP(p, nvars, terms)


@settings(max_examples=60, deadline=None)
@given(small_homogeneous(), st.integers(0, 5), st.integers(0, 5))
def test_pow_adds_exponents(g, a, b):
    assert g.pow(a + b) == g.pow(a) * g.pow(b)


@settings(max_examples=60, deadline=None)
@given(small_homogeneous())
def test_frobenius_compatibility(g):
    p = g.p
    expected = {tuple(p * x for x in a): c for a, c in g.terms.items()}
    assert g.pow(p).terms == expected
    assert g.pow(p, method="dense").terms == expected


@settings(max_examples=60, deadline=None)
@given(small_homogeneous())
def test_euler_relation(g):
    d = g.degree
    if d % g.p == 0:
        return
    total = MultiPolyP(g.p, g.nvars)
    for i in range(g.nvars):
        xi = MultiPolyP.monomial(g.p, tuple(int(j == i) for j in range(g.nvars)))
        total = total + xi * g.partial_derivative(i)
    assert total == g.scale(d)


@pytest.mark.parametrize("nvars,d", [(1, 4), (2, 5), (3, 4), (4, 3), (5, 2)])
def test_simplex_rank_roundtrip(nvars, d):
    mons = simplex(nvars, d)
    assert len(mons) == simplex_size(nvars, d)
    assert mons == sorted(mons, key=lambda a: tuple(reversed(a)))
    for r, a in enumerate(mons):
        assert simplex_rank(a) == r
        assert simplex_unrank(r, nvars, d) == a
