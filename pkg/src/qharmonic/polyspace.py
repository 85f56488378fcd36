"""Polynomials in an l x n matrix of variables.

A monomial is stored as the row-major flattening of its l x n exponent
matrix, so ``x_{ij}`` has flat index ``i * n + j``. Row ``i`` of the matrix
is the i-th set of variables, column ``j`` the j-th point.

The global monomial order is lexicographic on the flattened exponents,
largest first: ``x^2, xy, y^2`` for one set of two variables. Every
matrix column order and every serialized term list uses it.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, NamedTuple

from .exactalg import RatFuncQ, ratfunc_from_str, ratfunc_to_str


class NotSingleSet(ValueError):
    """An operation defined only for one set of variables got l != 1."""


class ShapeMismatch(ValueError):
    pass


class Shape(NamedTuple):
    l: int
    n: int

    @property
    def nvars(self) -> int:
        return self.l * self.n


def check_shape(shape) -> Shape:
    shape = Shape(*shape)
    if shape.l < 1 or shape.n < 1:
        raise ValueError(f"shape needs l >= 1 and n >= 1, got {tuple(shape)}")
    return shape


def multidegree(exps: tuple, shape: Shape) -> tuple:
    n = shape.n
    return tuple(sum(exps[i * n:(i + 1) * n]) for i in range(shape.l))


def column_degree(exps: tuple, shape: Shape, j: int) -> int:
    return sum(exps[j::shape.n])


def _compositions(total: int, parts: int) -> Iterator[tuple]:
    """All tuples of ``parts`` nonnegative ints summing to ``total``, lex-descending."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def monomials_of_multidegree(shape, d) -> list[tuple]:
    """Flat exponent tuples whose i-th row sums to d[i], in the global order."""
    shape = check_shape(shape)
    d = tuple(d)
    if len(d) != shape.l:
        raise ShapeMismatch(f"multidegree {d} has length {len(d)}, expected {shape.l}")
    if any(v < 0 for v in d):
        return []
    rows = [list(_compositions(di, shape.n)) for di in d]
    return [sum(choice, ()) for choice in product(*rows)]


def count_monomials(shape, d) -> int:
    shape = check_shape(shape)
    return math.prod(math.comb(di + shape.n - 1, shape.n - 1) for di in d)


def multidegrees_upto(l: int, bound: int) -> list[tuple]:
    """Multidegrees of total degree <= bound, ordered by (|d|, d)."""
    out = []
    for total in range(bound + 1):
        out.extend(sorted(_compositions(total, l)))
    return out


def multidegrees_of_total(l: int, total: int) -> list[tuple]:
    return sorted(_compositions(total, l))


def en_valuation(exps: tuple, shape) -> int:
    """Largest k such that (x_1 ... x_n)^k divides the monomial (one set only)."""
    shape = check_shape(shape)
    if shape.l != 1:
        raise NotSingleSet("e_n is only defined for one set of variables")
    return min(exps)


class MPoly:
    """Sparse polynomial: flat exponent tuple -> nonzero coefficient.

    Coefficients may be ints, Fractions, RatFuncQ, QPoly or CycElem; the
    class only needs ``+``, ``*`` and truth testing from them.
    """

    __slots__ = ("shape", "terms")

    def __init__(self, shape, terms=None):
        self.shape = check_shape(shape)
        out = {}
        if terms:
            nv = self.shape.nvars
            for e, c in dict(terms).items():
                e = tuple(e)
                if len(e) != nv:
                    raise ShapeMismatch(f"exponent {e} does not fit shape {tuple(self.shape)}")
                if c:
                    out[e] = c
        self.terms = out

    @classmethod
    def _raw(cls, shape: Shape, terms: dict) -> "MPoly":
        obj = object.__new__(cls)
        obj.shape = shape
        obj.terms = terms
        return obj

    @classmethod
    def monomial(cls, shape, exps, coef=1) -> "MPoly":
        return cls(shape, {tuple(exps): coef})

    @classmethod
    def one(cls, shape) -> "MPoly":
        shape = check_shape(shape)
        return cls(shape, {(0,) * shape.nvars: 1})

    @classmethod
    def var(cls, shape, i: int, j: int) -> "MPoly":
        shape = check_shape(shape)
        e = [0] * shape.nvars
        e[i * shape.n + j] = 1
        return cls(shape, {tuple(e): 1})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        if self.shape != other.shape or self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    def __hash__(self):
        return hash((self.shape, frozenset(self.terms)))

    def __repr__(self):
        return f"MPoly({tuple(self.shape)}, {self.pretty()})"

    def _same(self, other):
        if not isinstance(other, MPoly):
            return False
        if other.shape != self.shape:
            raise ShapeMismatch(f"shapes {tuple(self.shape)} and {tuple(other.shape)} differ")
        return True

    def __add__(self, other):
        if not self._same(other):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            t = out.get(e)
            t = c if t is None else t + c
            if t:
                out[e] = t
            else:
                out.pop(e, None)
        return MPoly._raw(self.shape, out)

    def __neg__(self):
        return MPoly._raw(self.shape, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not self._same(other):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "MPoly":
        if not c:
            return MPoly._raw(self.shape, {})
        out = {}
        for e, v in self.terms.items():
            t = v * c
            if t:
                out[e] = t
        return MPoly._raw(self.shape, out)

    def __mul__(self, other):
        if isinstance(other, MPoly):
            self._same(other)
            out: dict = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    t = out.get(e)
                    t = c1 * c2 if t is None else t + c1 * c2
                    if t:
                        out[e] = t
                    else:
                        out.pop(e, None)
            return MPoly._raw(self.shape, out)
        return self.scale(other)

    __rmul__ = scale

    def sorted_terms(self) -> list[tuple]:
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def leading_monomial(self) -> tuple:
        return max(self.terms)

    def coefficient(self, exps) -> object:
        return self.terms.get(tuple(exps), 0)

    def multidegrees(self) -> set:
        return {multidegree(e, self.shape) for e in self.terms}

    def is_homogeneous(self, d=None) -> bool:
        degs = self.multidegrees()
        if d is None:
            return len(degs) <= 1
        return degs <= {tuple(d)}

    def map_coeffs(self, fn) -> "MPoly":
        out = {}
        for e, c in self.terms.items():
            t = fn(c)
            if t:
                out[e] = t
        return MPoly._raw(self.shape, out)

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        names = _var_names(self.shape)
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[k] if a == 1 else f"{names[k]}^{a}" for k, a in enumerate(e) if a
            )
            cs = _coef_str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        out = parts[0]
        for t in parts[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def to_json_obj(self) -> dict:
        l, n = self.shape
        terms = []
        for e, c in self.sorted_terms():
            terms.append({
                "exp": [list(e[i * n:(i + 1) * n]) for i in range(l)],
                "coef": ratfunc_to_str(c),
            })
        return {"l": l, "n": n, "terms": terms}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> "MPoly":
        shape = check_shape((obj["l"], obj["n"]))
        terms = {}
        prev = None
        for t in obj["terms"]:
            rows = t["exp"]
            if len(rows) != shape.l or any(len(r) != shape.n for r in rows):
                raise ShapeMismatch(f"exponent matrix {rows} does not fit shape {tuple(shape)}")
            e = tuple(int(a) for r in rows for a in r)
            if prev is not None and not e < prev:
                raise ValueError("terms are not in the global monomial order")
            prev = e
            terms[e] = ratfunc_from_str(t["coef"])
        return cls(shape, terms)

    @classmethod
    def from_json(cls, s: str) -> "MPoly":
        return cls.from_json_obj(json.loads(s))


def _var_names(shape: Shape) -> list[str]:
    if shape.l == 1 and shape.n <= 3:
        return ["x", "y", "z"][:shape.n]
    if shape.l == 1:
        return [f"x{j + 1}" for j in range(shape.n)]
    return [f"x{i + 1}{j + 1}" for i in range(shape.l) for j in range(shape.n)]


def _coef_str(c) -> str:
    if isinstance(c, (int, Fraction)):
        return str(c)
    if isinstance(c, RatFuncQ):
        if c.is_const():
            return str(c.to_fraction())
        if c.den == 1:
            return f"({_plain(c.num)})"
        return f"({_plain(c.num)})/({_plain(c.den)})"
    return str(c)


def _plain(p) -> str:
    return str(p).replace("+-", "-")


def inflate(f: MPoly, r: int) -> MPoly:
    """Algebra morphism x^A -> x^(rA)."""
    if r < 1:
        raise ValueError("inflation factor must be positive")
    return MPoly._raw(f.shape, {tuple(r * a for a in e): c for e, c in f.terms.items()})


def _fact_ratio(e: tuple, r: int) -> Fraction:
    num = 1
    den = 1
    for a in e:
        num *= math.factorial(a)
        den *= math.factorial(r * a)
    return Fraction(num, den)


def inflate_dual(f: MPoly, r: int) -> MPoly:
    """Linear map on divided powers: x^(A)/A! -> x^(rA)/(rA)!.

    On plain monomials this is x^A -> (A!/(rA)!) x^(rA).
    """
    if r < 1:
        raise ValueError("inflation factor must be positive")
    out = {}
    for e, c in f.terms.items():
        out[tuple(r * a for a in e)] = c * _fact_ratio(e, r)
    return MPoly._raw(f.shape, out)


def poly_from_vector(shape: Shape, monos: list[tuple], vec: Iterable) -> MPoly:
    return MPoly._raw(shape, {e: c for e, c in zip(monos, vec) if c})


def max_en_valuation(f: MPoly) -> int:
    """Largest e_n-valuation among the monomials of f (-1 for zero)."""
    return max((en_valuation(e, f.shape) for e in f.terms), default=-1)


def iter_monomials_upto(shape, maxdeg: int) -> Iterator[tuple]:
    shape = check_shape(shape)
    for d in multidegrees_upto(shape.l, maxdeg):
        yield from monomials_of_multidegree(shape, d)
