from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qharmonic.polyspace import (
    MPoly,
    NotSingleSet,
    Shape,
    ShapeMismatch,
    count_monomials,
    en_valuation,
    inflate,
    inflate_dual,
    max_en_valuation,
    monomials_of_multidegree,
    multidegrees_upto,
)

S12 = Shape(1, 2)


def xy(a, b, c=1):
    return MPoly(S12, {(a, b): c})


def test_monomials_examples():
    assert monomials_of_multidegree((1, 2), (2,)) == [(2, 0), (1, 1), (0, 2)]
    assert len(monomials_of_multidegree((2, 2), (1, 1))) == 4
    assert monomials_of_multidegree((1, 3), (0,)) == [(0, 0, 0)]
    assert monomials_of_multidegree((1, 2), (-1,)) == []


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 2), st.integers(1, 3), st.lists(st.integers(0, 4), min_size=2, max_size=2))
def test_monomial_count_and_order(l, n, d):
    d = tuple(d[:l])
    monos = monomials_of_multidegree((l, n), d)
    assert len(set(monos)) == len(monos) == count_monomials((l, n), d)
    assert monos == sorted(monos, reverse=True)
    for e in monos:
        assert MPoly((l, n), {e: 1}).is_homogeneous(d)


def test_multidegree_order():
    assert multidegrees_upto(2, 2) == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]


def test_arithmetic_and_zero_terms():
    f = xy(1, 0) + xy(0, 1)
    g = xy(1, 0) - xy(0, 1)
    assert f * g == xy(2, 0) - xy(0, 2)
    assert (f - f).terms == {}
    assert MPoly(S12, {(1, 0): 0}).terms == {}
    with pytest.raises(ShapeMismatch):
        f + MPoly((1, 3), {(1, 0, 0): 1})
    with pytest.raises(ShapeMismatch):
        MPoly(S12, {(1, 0, 0): 1})


def test_inflate_examples():
    assert inflate(xy(1, 0) + xy(0, 1), 2) == xy(2, 0) + xy(0, 2)
    one = MPoly.one(S12)
    assert inflate(one, 5) == one
    assert inflate(xy(2, 1, 3), 3) == xy(6, 3, 3)


def test_inflate_dual_examples():
    x = MPoly((1, 1), {(1,): 1})
    assert inflate_dual(x, 2) == MPoly((1, 1), {(2,): Fraction(1, 2)})
    assert inflate_dual(MPoly.one(S12), 4) == MPoly.one(S12)
    half = Fraction(1, 2)
    assert inflate_dual(xy(1, 0) - xy(0, 1), 2) == xy(2, 0, half) - xy(0, 2, half)


polys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-5, 5), max_size=5
).map(lambda t: MPoly(S12, t))


@settings(max_examples=50, deadline=None)
@given(polys, polys, st.integers(1, 3))
def test_inflate_is_multiplicative(f, g, r):
    assert inflate(f * g, r) == inflate(f, r) * inflate(g, r)


@settings(max_examples=50, deadline=None)
@given(polys, st.integers(1, 3), st.integers(1, 3))
def test_inflate_dual_properties(f, r, s):
    img = inflate_dual(f, r)
    assert all(a % r == 0 for e in img.terms for a in e)
    assert len(img) == len(f)  # injective on the monomial basis
    assert inflate_dual(inflate_dual(f, r), s) == inflate_dual(f, r * s)
    for d in f.multidegrees():
        part = MPoly(S12, {e: c for e, c in f.terms.items() if sum(e) == d[0]})
        assert inflate_dual(part, r).is_homogeneous((r * d[0],))


def test_en_valuation():
    assert en_valuation((3, 1), S12) == 1
    assert en_valuation((2, 2), S12) == 2
    assert en_valuation((5, 0), S12) == 0
    with pytest.raises(NotSingleSet):
        en_valuation((1, 1, 1, 1), (2, 2))
    assert max_en_valuation(xy(3, 1) + xy(0, 4)) == 1
    assert max_en_valuation(MPoly(S12)) == -1


def test_json_round_trip(q):
    f = MPoly((2, 2), {(1, 0, 0, 1): 2 + q, (0, 1, 1, 0): Fraction(-1, 3), (2, 0, 0, 0): q / (1 + q)})
    s = f.to_json()
    g = MPoly.from_json(s)
    assert g == f
    assert g.to_json() == s
    exps = [t["exp"] for t in f.to_json_obj()["terms"]]
    assert exps == [[[2, 0], [0, 0]], [[1, 0], [0, 1]], [[0, 1], [1, 0]]]


def test_json_rejects_unsorted_terms():
    obj = {"l": 1, "n": 2, "terms": [{"exp": [[0, 1]], "coef": "(1)/(1)"},
                                     {"exp": [[1, 0]], "coef": "(1)/(1)"}]}
    with pytest.raises(ValueError):
        MPoly.from_json_obj(obj)


def test_pretty():
    assert (xy(1, 0) - xy(0, 1)).pretty() == "x - y"
    assert MPoly(S12).pretty() == "0"
