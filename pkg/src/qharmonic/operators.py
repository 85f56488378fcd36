"""The deformed power-sum operators acting on polynomials.

With E_j the column-j Euler operator (sum over the l rows of x_ij d/dx_ij)
and x_j^d the column monomial, the operators are

    D_{q,d} = sum_j (1 + q E_j) d_j^d        P_{q,d} = sum_j x_j^d (1 + q E_j)

and eps = d/dx_1 ... d/dx_n for one set of variables. They act monomial by
monomial through closed coefficient formulas; no operator algebra is built.

The parameter ``q`` is any coefficient value: a RatFuncQ (formal q or a
substitution such as q/(1+q)), a Fraction (a specialized q), or a QPoly
when only polynomial coefficients are needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exactalg import ExactMatrix, QPoly, RatFuncQ
from .polyspace import (
    MPoly,
    NotSingleSet,
    Shape,
    ShapeMismatch,
    check_shape,
    iter_monomials_upto,
    monomials_of_multidegree,
)


class DegreeUnderflow(ValueError):
    """The image component has a negative degree: the operator is zero there."""


FORMAL = "formal"


def qvalue(qmode=FORMAL):
    """Normalize a q mode: "formal"/None -> formal q, "a/b" or a number -> Fraction."""
    if qmode is None or qmode == FORMAL:
        return RatFuncQ.q()
    if isinstance(qmode, (RatFuncQ, QPoly, Fraction)):
        return qmode
    if isinstance(qmode, (int, str)):
        return Fraction(qmode)
    raise TypeError(f"unsupported q mode {qmode!r}")


def is_formal(q) -> bool:
    return not isinstance(q, (int, Fraction))


def falling(a: int, k: int) -> int:
    """a (a-1) ... (a-k+1); zero when 0 <= a < k."""
    if a < k:
        return 0
    return math.perm(a, k)


def pochhammer_q(dval: int, k: int, q=FORMAL):
    """<d>_k = d (d-1) ... (d-k+1) (1 + q (d-k))."""
    q = qvalue(q)
    ff = falling(dval, k)
    if not ff:
        return 0 * q
    return ff * (1 + q * (dval - k))


@dataclass(frozen=True)
class OpSpec:
    kind: str  # "D", "P" or "eps"
    d: tuple = ()
    s: int = 0
    q: object = FORMAL

    def __post_init__(self):
        if self.kind not in ("D", "P", "eps"):
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if self.kind in ("D", "P") and not any(self.d):
            raise ValueError("D and P need a nonzero multidegree")
        object.__setattr__(self, "d", tuple(self.d))

    def label(self) -> str:
        if self.kind == "eps":
            return f"eps^{self.s}"
        d = self.d[0] if len(self.d) == 1 else "(" + ",".join(map(str, self.d)) + ")"
        return f"{self.kind}_{d}"


class _Euler:
    """Memo of 1 + q*c for the column degrees c met during one application."""

    __slots__ = ("q", "cache")

    def __init__(self, q):
        self.q = q
        self.cache = {}

    def __call__(self, c: int):
        v = self.cache.get(c)
        if v is None:
            v = 1 + self.q * c
            self.cache[c] = v
        return v


def _check_d(f: MPoly, d) -> tuple:
    d = tuple(d)
    if len(d) != f.shape.l:
        raise ShapeMismatch(f"multidegree {d} does not match l = {f.shape.l}")
    return d


def d_monomial(exps: tuple, shape: Shape, d: tuple, euler) -> list:
    """Terms (exponent, coefficient) of D_{q,d} applied to one monomial."""
    l, n = shape
    dtot = sum(d)
    out = []
    for j in range(n):
        coef = 1
        for i in range(l):
            a = exps[i * n + j]
            di = d[i]
            if a < di:
                coef = 0
                break
            if di:
                coef *= math.perm(a, di)
        if not coef:
            continue
        colsum = sum(exps[j::n])
        w = euler(colsum - dtot)
        if not w:
            continue
        e = list(exps)
        for i in range(l):
            e[i * n + j] -= d[i]
        out.append((tuple(e), w * coef))
    return out


def p_monomial(exps: tuple, shape: Shape, d: tuple, euler) -> list:
    l, n = shape
    out = []
    for j in range(n):
        w = euler(sum(exps[j::n]))
        if not w:
            continue
        e = list(exps)
        for i in range(l):
            e[i * n + j] += d[i]
        out.append((tuple(e), w))
    return out


def eps_monomial(exps: tuple, s: int) -> list:
    coef = 1
    for a in exps:
        if a < s:
            return []
        coef *= math.perm(a, s)
    return [(tuple(a - s for a in exps), coef)]


def _accumulate(f: MPoly, fn) -> MPoly:
    out: dict = {}
    for e, c in f.terms.items():
        for e2, w in fn(e):
            t = out.get(e2)
            v = w * c
            t = v if t is None else t + v
            if t:
                out[e2] = t
            else:
                out.pop(e2, None)
    return MPoly._raw(f.shape, out)


def apply_D(f: MPoly, d, q=FORMAL) -> MPoly:
    """D_{q,d} f."""
    d = _check_d(f, d)
    euler = _Euler(qvalue(q))
    shape = f.shape
    return _accumulate(f, lambda e: d_monomial(e, shape, d, euler))


def apply_P(f: MPoly, d, q=FORMAL) -> MPoly:
    """P_{q,d} f: multiply column j by x_j^d after weighting with 1 + q E_j."""
    d = _check_d(f, d)
    euler = _Euler(qvalue(q))
    shape = f.shape
    return _accumulate(f, lambda e: p_monomial(e, shape, d, euler))


def apply_eps_power(f: MPoly, s: int) -> MPoly:
    """(d/dx_1 ... d/dx_n)^s f, one set of variables only."""
    if f.shape.l != 1:
        raise NotSingleSet("eps is only defined for one set of variables")
    if s == 0:
        return f
    return _accumulate(f, lambda e: eps_monomial(e, s))


def apply_op(spec: OpSpec, f: MPoly) -> MPoly:
    if spec.kind == "D":
        return apply_D(f, spec.d, spec.q)
    if spec.kind == "P":
        return apply_P(f, spec.d, spec.q)
    return apply_eps_power(f, spec.s)


def op_target(spec: OpSpec, shape: Shape, source: tuple) -> tuple:
    if spec.kind == "D":
        return tuple(a - b for a, b in zip(source, spec.d))
    if spec.kind == "P":
        return tuple(a + b for a, b in zip(source, spec.d))
    if shape.l != 1:
        raise NotSingleSet("eps is only defined for one set of variables")
    return (source[0] - spec.s * shape.n,)


def op_monomial_fn(spec: OpSpec, shape: Shape):
    """Per-monomial action of the operator, as a function exps -> [(exps, coef)]."""
    if spec.kind == "eps":
        if shape.l != 1:
            raise NotSingleSet("eps is only defined for one set of variables")
        s = spec.s
        return lambda e: eps_monomial(e, s)
    euler = _Euler(qvalue(spec.q))
    d = spec.d
    if len(d) != shape.l:
        raise ShapeMismatch(f"multidegree {d} does not match l = {shape.l}")
    if spec.kind == "D":
        return lambda e: d_monomial(e, shape, d, euler)
    return lambda e: p_monomial(e, shape, d, euler)


def operator_rows(spec: OpSpec, shape: Shape, source: tuple, monos: list[tuple]) -> list[dict]:
    """Sparse rows (column index -> coefficient) of the operator on a component."""
    fn = op_monomial_fn(spec, shape)
    rows: dict[tuple, dict] = {}
    for k, e in enumerate(monos):
        for e2, w in fn(e):
            rows.setdefault(e2, {})[k] = w
    return [rows[e] for e in sorted(rows, reverse=True)]


def operator_matrix(spec: OpSpec, shape, source) -> ExactMatrix:
    """Matrix of the operator from the ``source`` component to its image component."""
    shape = check_shape(shape)
    source = tuple(source)
    target = op_target(spec, shape, source)
    if any(v < 0 for v in target):
        raise DegreeUnderflow(f"{spec.label()} maps degree {source} to {target}")
    cols = monomials_of_multidegree(shape, source)
    rows = monomials_of_multidegree(shape, target)
    index = {e: i for i, e in enumerate(rows)}
    fn = op_monomial_fn(spec, shape)
    entries = [0] * (len(rows) * len(cols))
    for k, e in enumerate(cols):
        for e2, w in fn(e):
            entries[index[e2] * len(cols) + k] = w
    return ExactMatrix(len(rows), len(cols), entries)


def bracket_check(d, d2, shape, maxdeg: int, q=None) -> dict:
    """Check [D_{q,d}, D_{q,d2}] = q(|d| - |d2|) D_{q,d+d2} on every monomial of degree <= maxdeg.

    Coefficients stay polynomial in q, so by default q is the QPoly ``q``.
    """
    shape = check_shape(shape)
    q = QPoly.q() if q is None else qvalue(q)
    d, d2 = tuple(d), tuple(d2)
    dsum = tuple(a + b for a, b in zip(d, d2))
    factor = q * (sum(d) - sum(d2))
    bad = []
    count = 0
    for e in iter_monomials_upto(shape, maxdeg):
        f = MPoly._raw(shape, {e: 1})
        lhs = apply_D(apply_D(f, d2, q), d, q) - apply_D(apply_D(f, d, q), d2, q)
        rhs = apply_D(f, dsum, q).scale(factor)
        count += 1
        if lhs != rhs:
            bad.append(e)
    return {
        "d": list(d), "d2": list(d2), "shape": list(shape), "maxdeg": maxdeg,
        "monomials": count, "counterexamples": [list(e) for e in bad],
        "holds": not bad,
    }


def eps_shift_check(n: int, maxdeg: int, ks: Iterable[int]) -> dict:
    """Check eps o D_{q,k} = (1+q) D_{q/(1+q),k} o eps on one set of n variables."""
    shape = Shape(1, n)
    q = RatFuncQ.q()
    qq = q / (1 + q)
    bad = []
    count = 0
    for k in ks:
        for e in iter_monomials_upto(shape, maxdeg):
            f = MPoly._raw(shape, {e: 1})
            lhs = apply_eps_power(apply_D(f, (k,), q), 1)
            rhs = apply_D(apply_eps_power(f, 1), (k,), qq).scale(1 + q)
            count += 1
            if lhs != rhs:
                bad.append((k, list(e)))
    return {"n": n, "maxdeg": maxdeg, "checks": count, "counterexamples": bad, "holds": not bad}


def inflation_intertwining_check(shape, r: int, ds, maxdeg: int) -> dict:
    """Check D_{q/r, r d}(inflate_dual f) = inflate_dual(D_{q,d} f) on monomials."""
    from .polyspace import inflate_dual

    shape = check_shape(shape)
    q = RatFuncQ.q()
    qr = q / r
    bad = []
    count = 0
    for d in ds:
        d = tuple(d)
        rd = tuple(r * a for a in d)
        for e in iter_monomials_upto(shape, maxdeg):
            f = MPoly._raw(shape, {e: Fraction(1)})
            lhs = apply_D(inflate_dual(f, r), rd, qr)
            rhs = inflate_dual(apply_D(f, d, q), r)
            count += 1
            if lhs != rhs:
                bad.append((list(d), list(e)))
    return {"shape": list(shape), "r": r, "maxdeg": maxdeg, "checks": count,
            "counterexamples": bad, "holds": not bad}
