"""The groups G(m,p,n) as monomial matrices acting diagonally on polynomials.

An element is a pair (perm, c): it sends x_ij to zeta^c_j x_{i perm(j)},
with zeta a primitive m-th root of unity, simultaneously on every set of
variables. Membership in G(m,p,n) means sum(c) = 0 mod p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

from .exactalg import CycElem
from .polyspace import MPoly, ShapeMismatch, column_degree


class TooLarge(ValueError):
    """The group is too large to enumerate within the given limit."""


class NotStable(ValueError):
    """A group element moved a basis element outside the span."""


@dataclass(frozen=True)
class GroupSpec:
    m: int
    p: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1 or self.p < 1:
            raise ValueError(f"G({self.m},{self.p},{self.n}) needs positive parameters")
        if self.m % self.p:
            raise ValueError(f"p = {self.p} does not divide m = {self.m}")

    @property
    def order(self) -> int:
        return self.m ** self.n * math.factorial(self.n) // self.p

    def __str__(self):
        return f"G({self.m},{self.p},{self.n})"


@dataclass(frozen=True)
class GroupElement:
    perm: tuple
    zeta_exps: tuple
    m: int

    def label(self) -> str:
        perm = "".join(str(j + 1) for j in self.perm) if len(self.perm) < 10 else \
            ",".join(str(j + 1) for j in self.perm)
        return f"({perm} | {','.join(map(str, self.zeta_exps))})"

    def is_identity(self) -> bool:
        return self.perm == tuple(range(len(self.perm))) and not any(self.zeta_exps)

    def belongs_to(self, spec: GroupSpec) -> bool:
        return spec.m == self.m and len(self.perm) == spec.n and sum(self.zeta_exps) % spec.p == 0


def identity(spec: GroupSpec) -> GroupElement:
    return GroupElement(tuple(range(spec.n)), (0,) * spec.n, spec.m)


def enumerate_group(spec: GroupSpec, limit: int = 10_000) -> list[GroupElement]:
    """All elements of G(m,p,n): permutations in lex order, then exponent tuples; identity first."""
    if spec.order > limit:
        raise TooLarge(f"{spec} has order {spec.order} > {limit}")
    out = []
    for perm in permutations(range(spec.n)):
        for c in product(range(spec.m), repeat=spec.n):
            if sum(c) % spec.p == 0:
                out.append(GroupElement(perm, c, spec.m))
    return out


def compose(w: GroupElement, v: GroupElement) -> GroupElement:
    """The element acting as ``act(w, act(v, f))``."""
    n = len(v.perm)
    perm = tuple(w.perm[v.perm[j]] for j in range(n))
    c = tuple((v.zeta_exps[j] + w.zeta_exps[v.perm[j]]) % v.m for j in range(n))
    return GroupElement(perm, c, v.m)


def act(w: GroupElement, f: MPoly) -> MPoly:
    """Diagonal action. Coefficients become CycElem for m >= 3 (m <= 2 stays rational)."""
    shape = f.shape
    l, n = shape
    if n != len(w.perm):
        raise ShapeMismatch(f"element of rank {len(w.perm)} acting on n = {n}")
    m = w.m
    out: dict = {}
    for e, coef in f.terms.items():
        new = [0] * len(e)
        k = 0
        for j in range(n):
            tj = w.perm[j]
            for i in range(l):
                new[i * n + tj] = e[i * n + j]
            if w.zeta_exps[j]:
                k += w.zeta_exps[j] * column_degree(e, shape, j)
        k %= m
        if m <= 2:
            val = -coef if k else coef
        elif isinstance(coef, CycElem):
            val = coef * CycElem.zeta_power(m, k) if k else coef
        else:
            val = CycElem.zeta_power(m, k, coef)
        key = tuple(new)
        t = out.get(key)
        t = val if t is None else t + val
        if t:
            out[key] = t
        else:
            out.pop(key, None)
    return MPoly._raw(shape, out)


def _as_cyc(m: int, v) -> CycElem:
    if isinstance(v, CycElem):
        return v
    return CycElem.scalar(m, v)


def graded_trace(w: GroupElement, basis: list[MPoly]) -> CycElem:
    """Trace of w on span(basis); the basis must be reduced (leading 1, zero at other leads)."""
    m = w.m
    if not basis:
        return CycElem.scalar(m, Fraction(0))
    leads = [b.leading_monomial() for b in basis]
    for k, b in enumerate(basis):
        if b.terms[leads[k]] != 1 or any(b.coefficient(leads[i]) for i in range(len(basis)) if i != k):
            raise ValueError("graded_trace needs a reduced echelon basis")
    trace = CycElem.scalar(m, Fraction(0))
    for k, b in enumerate(basis):
        img = act(w, b)
        coords = [img.coefficient(lead) for lead in leads]
        rest = img
        for c, bb in zip(coords, basis):
            if c:
                rest = rest - bb.map_coeffs(lambda v, c=c: _times(c, v, m))
        if rest:
            raise NotStable(f"{w.label()} moves a basis element outside the span")
        trace = trace + _as_cyc(m, coords[k])
    return trace


def _times(c, v, m):
    if m <= 2:
        return c * v
    return _as_cyc(m, c) * v
