from fractions import Fraction

import pytest

from qharmonic.exactalg import RatFuncQ
from qharmonic.groups import GroupSpec, act, enumerate_group
from qharmonic.operators import (
    DegreeUnderflow,
    OpSpec,
    apply_D,
    apply_eps_power,
    apply_P,
    bracket_check,
    eps_shift_check,
    inflation_intertwining_check,
    operator_matrix,
    pochhammer_q,
)
from qharmonic.polyspace import MPoly, NotSingleSet, Shape, iter_monomials_upto


def mono(shape, e, c=1):
    return MPoly(shape, {tuple(e): c})


def test_pochhammer(q):
    assert pochhammer_q(1, 2) == 0
    assert pochhammer_q(3, 3) == 6
    assert pochhammer_q(4, 2) == 12 * (1 + 2 * q)
    assert pochhammer_q(4, 2, Fraction(-1, 2)) == 0


def test_apply_D_examples(q):
    s11 = Shape(1, 1)
    assert apply_D(mono(s11, (2,)), (1,)) == mono(s11, (1,), 2 * (1 + q))
    assert not apply_D(MPoly.one((2, 2)), (1, 1))
    s22 = Shape(2, 2)
    f = mono(s22, (1, 0, 1, 0)) + mono(s22, (0, 1, 0, 1))
    assert apply_D(f, (1, 1)) == MPoly.one(s22).scale(2)


def test_apply_D_two_variable_formula(q):
    # D_k(x^a y^b) = <a>_k x^(a-k) y^b + <b>_k x^a y^(b-k)
    s = Shape(1, 2)
    for a in range(6):
        for b in range(6):
            for k in (1, 2, 3):
                want = MPoly(s, {(a - k, b): pochhammer_q(a, k)} if a >= k else {})
                want = want + MPoly(s, {(a, b - k): pochhammer_q(b, k)} if b >= k else {})
                assert apply_D(mono(s, (a, b)), (k,)) == want


def test_apply_D_at_zero_is_classical():
    s = Shape(2, 2)
    for e in iter_monomials_upto(s, 4):
        f = mono(s, e)
        for d in [(1, 0), (0, 2), (1, 1)]:
            classical = MPoly(s)
            for j in range(2):
                coef = 1
                new = list(e)
                for i, di in enumerate(d):
                    a = e[2 * i + j]
                    for t in range(di):
                        coef *= a - t
                    new[2 * i + j] -= di
                if coef:
                    classical = classical + mono(s, new, coef)
            assert apply_D(f, d, 0) == classical


def test_apply_P_examples(q):
    s = Shape(1, 2)
    assert apply_P(MPoly.one(s), (1,)) == mono(s, (1, 0)) + mono(s, (0, 1))
    assert apply_P(mono(s, (1, 0)), (1,)) == mono(s, (2, 0), 1 + q) + mono(s, (1, 1))
    assert apply_P(MPoly.one((1, 1)), (2,)) == mono((1, 1), (2,))


def test_eps_examples():
    s = Shape(1, 2)
    assert apply_eps_power(mono(s, (1, 1)), 1) == MPoly.one(s)
    assert not apply_eps_power(mono(s, (2, 0)), 1)
    assert apply_eps_power(mono(s, (3, 2)), 2) == mono(s, (1, 0), 12)
    with pytest.raises(NotSingleSet):
        apply_eps_power(MPoly.one((2, 2)), 1)


def test_operator_matrix_examples():
    m = operator_matrix(OpSpec("D", (1,)), (1, 2), (1,))
    assert (m.rows, m.cols) == (1, 2)
    assert m.row(0) == (1 + 0 * RatFuncQ.q(), 1 + 0 * RatFuncQ.q())
    with pytest.raises(DegreeUnderflow):
        operator_matrix(OpSpec("D", (1,)), (1, 2), (0,))
    e = operator_matrix(OpSpec("eps", s=1), (1, 2), (2,))
    assert e.row_list() == [(0, 1, 0)]


def test_operator_matrix_matches_apply(q):
    s = Shape(2, 2)
    spec = OpSpec("D", (1, 1))
    mat = operator_matrix(spec, s, (2, 1))
    from qharmonic.polyspace import monomials_of_multidegree

    src = monomials_of_multidegree(s, (2, 1))
    tgt = monomials_of_multidegree(s, (1, 0))
    vec = [k + 1 for k in range(len(src))]
    f = MPoly(s, dict(zip(src, vec)))
    img = apply_D(f, (1, 1))
    assert mat.apply(vec) == [img.coefficient(e) for e in tgt]


def test_opspec_validation():
    with pytest.raises(ValueError):
        OpSpec("D", (0,))
    with pytest.raises(ValueError):
        OpSpec("X", (1,))


def test_bracket_examples():
    assert bracket_check((1,), (1,), (1, 3), 4)["holds"]
    assert bracket_check((1,), (2,), (1, 2), 6)["holds"]
    assert bracket_check((1, 0), (0, 2), (2, 2), 5)["holds"]


def test_bracket_detects_wrong_factor():
    # with a different q on one side the identity must break
    r = bracket_check((1,), (2,), (1, 2), 3, q=Fraction(1, 3))
    assert r["holds"]
    s = Shape(1, 2)
    f = mono(s, (3, 1))
    q = RatFuncQ.q()
    lhs = apply_D(apply_D(f, (2,)), (1,)) - apply_D(apply_D(f, (1,)), (2,))
    assert lhs != apply_D(f, (3,)).scale(q)


def test_eps_shift_identity():
    assert eps_shift_check(2, 6, [1, 2, 3])["holds"]
    assert eps_shift_check(3, 5, [1, 2])["holds"]


def test_inflation_intertwining():
    assert inflation_intertwining_check((1, 2), 2, [(1,), (2,)], 5)["holds"]
    assert inflation_intertwining_check((1, 3), 3, [(1,)], 4)["holds"]


@pytest.mark.parametrize("m,n", [(1, 3), (2, 2), (3, 2)])
def test_D_commutes_with_group(m, n, q):
    s = Shape(1, n)
    for w in enumerate_group(GroupSpec(m, 1, n)):
        for e in iter_monomials_upto(s, 4):
            f = mono(s, e, RatFuncQ(1))
            for d in (m, 2 * m):
                assert act(w, apply_D(f, (d,))) == apply_D(act(w, f), (d,))
