"""Graded spaces of q-harmonic polynomials for G(m,p,n).

A homogeneous f is q-harmonic when D_{q,d} f = 0 for every multidegree d
with |d| in {m, 2m} (the bracket relation makes the other |d| = km
redundant) and, for p > 1, eps^(m/p) f = 0. Each multidegree component is
the joint kernel of the stacked operator matrices, solved exactly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .exactalg import RatFuncQ, nullspace_rows, nullspace_sparse
from .groups import GroupSpec
from .operators import (
    FORMAL,
    OpSpec,
    apply_eps_power,
    apply_op,
    is_formal,
    op_monomial_fn,
    op_target,
    pochhammer_q,
    qvalue,
)
from .polyspace import (
    MPoly,
    NotSingleSet,
    Shape,
    en_valuation,
    max_en_valuation,
    monomials_of_multidegree,
    multidegrees_of_total,
    multidegrees_upto,
    poly_from_vector,
)

log = logging.getLogger(__name__)


class BoundTooSmall(RuntimeError):
    """Raised by callers that refuse a truncated space."""


class SingularQ(ValueError):
    """The closed-form basis is not valid at this specialized q."""


def top_degree(m: int, p: int, n: int) -> int:
    """Top degree of the one-set harmonics: sum of (generator degree - 1)."""
    degs = [k * m for k in range(1, n)] + [n * m // p]
    return sum(d - 1 for d in degs)


@dataclass(frozen=True)
class HarmonicQuery:
    group: GroupSpec
    l: int = 1
    q: object = FORMAL
    degree_bound: int | None = None

    def __post_init__(self):
        if self.l < 1:
            raise ValueError("need at least one set of variables")
        if self.group.p > 1 and self.l != 1:
            raise NotSingleSet("G(m,p,n) with p > 1 is only defined for one set of variables")
        if self.degree_bound is None:
            if self.l != 1:
                raise ValueError("degree_bound is required when l >= 2 "
                                 "(a reasonable choice is the one-set top degree)")
            g = self.group
            object.__setattr__(self, "degree_bound", top_degree(g.m, g.p, g.n))
        if self.degree_bound < 0:
            raise ValueError("degree_bound must be nonnegative")
        object.__setattr__(self, "q", qvalue(self.q))

    @property
    def shape(self) -> Shape:
        return Shape(self.l, self.group.n)

    def with_q(self, q) -> "HarmonicQuery":
        return HarmonicQuery(self.group, self.l, q, self.degree_bound)

    def with_bound(self, bound: int) -> "HarmonicQuery":
        return HarmonicQuery(self.group, self.l, self.q, bound)

    def to_json_obj(self) -> dict:
        g = self.group
        return {"m": g.m, "p": g.p, "n": g.n, "sets": self.l,
                "q": q_label(self.q), "max_deg": self.degree_bound}


def q_label(q) -> str:
    if isinstance(q, Fraction):
        return str(q)
    if q == RatFuncQ.q():
        return "formal"
    return str(q)


def defining_ops(query: HarmonicQuery) -> list[OpSpec]:
    """D_{q,d} for |d| in {m, 2m} in the global multidegree order, then eps^(m/p) if p > 1.

    At q = 0 the bracket no longer generates D_{q,km} for k >= 3, so every
    multiple of m up to the degree bound is included.
    """
    m, p = query.group.m, query.group.p
    totals = [m, 2 * m]
    if not is_formal(query.q) and query.q == 0:
        totals = list(range(m, max(2 * m, query.degree_bound) + 1, m))
    ops = []
    for total in totals:
        for d in multidegrees_of_total(query.l, total):
            ops.append(OpSpec("D", d, q=query.q))
    if p > 1:
        ops.append(OpSpec("eps", s=m // p))
    return ops


def _kernel(shape: Shape, d: tuple, ops: list[OpSpec], monos: list[tuple]) -> list[tuple]:
    rows: dict[tuple, dict] = {}
    for spec in ops:
        target = op_target(spec, shape, d)
        if any(v < 0 for v in target):
            continue
        fn = op_monomial_fn(spec, shape)
        block: dict[tuple, dict] = {}
        for k, e in enumerate(monos):
            for e2, w in fn(e):
                block.setdefault(e2, {})[k] = w
        for e2 in sorted(block, reverse=True):
            rows[(spec.label(), e2)] = block[e2]
    return nullspace_sparse(rows.values(), len(monos))


def harmonic_component(query: HarmonicQuery, d, monomial_filter: Callable | None = None,
                       ops: list[OpSpec] | None = None) -> list[MPoly]:
    """Reduced echelon basis of the q-harmonics of multidegree d.

    ``monomial_filter`` restricts the ambient space to the monomials it
    accepts (used for subspaces such as K[X^r]).
    """
    d = tuple(d)
    shape = query.shape
    monos = monomials_of_multidegree(shape, d)
    if monomial_filter is not None:
        monos = [e for e in monos if monomial_filter(e)]
    if not monos:
        return []
    if ops is None:
        ops = defining_ops(query)
    ker = _kernel(shape, d, ops, monos)
    return [poly_from_vector(shape, monos, v) for v in ker]


@dataclass
class HarmonicSpace:
    query: HarmonicQuery
    components: dict = field(default_factory=dict)
    truncated: bool = False
    hbasis: str | None = None

    @property
    def hilbert(self) -> dict:
        return {d: len(b) for d, b in self.components.items()}

    @property
    def dimension(self) -> int:
        return sum(len(b) for b in self.components.values())

    def basis(self) -> list[MPoly]:
        return [f for b in self.components.values() for f in b]

    def series(self) -> list[int]:
        """Coefficients by total degree."""
        out = [0] * (self.query.degree_bound + 1)
        for d, b in self.components.items():
            out[sum(d)] += len(b)
        while len(out) > 1 and not out[-1]:
            out.pop()
        return out

    def to_json_obj(self) -> dict:
        comps = {}
        hil = {}
        for d, b in self.components.items():
            key = ",".join(map(str, d))
            comps[key] = {"dim": len(b), "basis": [f.to_json_obj() for f in b]}
            hil[key] = len(b)
        obj = {"query": self.query.to_json_obj(), "components": comps, "hilbert": hil,
               "total": self.dimension, "truncated": self.truncated}
        if self.hbasis is not None:
            obj["hbasis"] = self.hbasis
        return obj


def harmonic_space(query: HarmonicQuery, probe: bool = True) -> HarmonicSpace:
    """All components up to the degree bound.

    With ``probe`` the components one degree past the bound are solved too;
    if any is nonzero the result is flagged as truncated.
    """
    space = HarmonicSpace(query)
    ops = defining_ops(query)
    for d in multidegrees_upto(query.l, query.degree_bound):
        space.components[d] = harmonic_component(query, d, ops=ops)
        log.debug("degree %s: dim %d", d, len(space.components[d]))
    if probe:
        beyond = query.degree_bound + 1
        space.truncated = any(harmonic_component(query, d, ops=ops)
                              for d in multidegrees_of_total(query.l, beyond))
    return space


def annihilation_residues(space: HarmonicSpace, ops: Iterable[OpSpec] | None = None) -> list:
    """Re-apply operators to every basis element; returns (degree, index, op) of failures."""
    ops = list(defining_ops(space.query) if ops is None else ops)
    bad = []
    for d, basis in space.components.items():
        for i, f in enumerate(basis):
            for spec in ops:
                if apply_op(spec, f):
                    bad.append((d, i, spec.label()))
    return bad


# --------------------------------------------------------------------------
# Linear algebra on lists of polynomials
# --------------------------------------------------------------------------


def echelonize(polys: list[MPoly], shape: Shape | None = None) -> list[MPoly]:
    """Reduced echelon basis of span(polys) in the global monomial order."""
    polys = [f for f in polys if f]
    if not polys:
        return []
    shape = polys[0].shape if shape is None else shape
    monos = sorted({e for f in polys for e in f.terms}, reverse=True)
    rows = [[f.terms.get(e, 0) for e in monos] for f in polys]
    ker = nullspace_rows(rows, len(monos))
    rref = nullspace_rows(ker, len(monos))
    return [poly_from_vector(shape, monos, v) for v in rref]


def span_rank(polys: list[MPoly]) -> int:
    return len(echelonize(polys))


def same_span(a: list[MPoly], b: list[MPoly]) -> bool:
    return echelonize(a) == echelonize(b)


def subspace_where(basis: list[MPoly], vanish_on: Callable) -> list[MPoly]:
    """Elements of span(basis) whose coefficients vanish on every monomial accepted by ``vanish_on``."""
    if not basis:
        return []
    shape = basis[0].shape
    monos = sorted({e for f in basis for e in f.terms if vanish_on(e)}, reverse=True)
    if not monos:
        return echelonize(basis)
    rows = [[f.terms.get(e, 0) for f in basis] for e in monos]
    combos = nullspace_rows(rows, len(basis))
    out = []
    for c in combos:
        acc = MPoly(shape)
        for coef, f in zip(c, basis):
            if coef:
                acc = acc + f.scale(coef)
        out.append(acc)
    return echelonize(out, shape)


def complement(big: list[MPoly], small: list[MPoly]) -> list[MPoly]:
    """Canonical complement of span(small) inside span(big): reduced, zero at the leads of ``small``."""
    small = echelonize(small) if small else []
    leads = [f.leading_monomial() for f in small]
    reduced = []
    for f in big:
        for lead, g in zip(leads, small):
            c = f.coefficient(lead)
            if c:
                f = f - g.scale(c)
        reduced.append(f)
    return echelonize(reduced)


# --------------------------------------------------------------------------
# Closed form for n = 2
# --------------------------------------------------------------------------


def _singular_for_gm2(q0: Fraction) -> bool:
    # q0 = -a/b with 1 <= a <= 2 <= b
    if q0 >= 0:
        return False
    for a in (1, 2):
        b = -a / q0
        if b.denominator == 1 and b >= 2:
            return True
    return False


def _singular_for_dihedral(q0: Fraction, m: int) -> bool:
    if q0 >= 0:
        return False
    b = -1 / q0
    return b.denominator == 1 and 1 <= b <= m


def closed_form_n2(m: int, p: int = 1, q=FORMAL) -> list[MPoly]:
    """Explicit basis of the q-harmonics of G(m,p,2), one set of variables.

    Monomials x^a y^b (a, b < m) and binomials
    <b+m>_m x^(a+m) y^b - <a+m>_m x^a y^(b+m), keeping the elements that
    eps^(m/p) kills.
    """
    if m % p:
        raise ValueError(f"p = {p} does not divide m = {m}")
    q = qvalue(q)
    if not is_formal(q):
        bad = _singular_for_dihedral(q, m) if p == m else _singular_for_gm2(q)
        if bad:
            raise SingularQ(f"closed form does not hold at q = {q} for G({m},{p},2)")
    shape = Shape(1, 2)
    k = m // p
    out = []
    for a in range(m):
        for b in range(m):
            if min(a, b) < k:
                out.append(MPoly._raw(shape, {(a, b): Fraction(1)}))
    for a in range(k):
        for b in range(k):
            c1 = pochhammer_q(b + m, m, q)
            c2 = pochhammer_q(a + m, m, q)
            out.append(MPoly(shape, {(a + m, b): c1, (a, b + m): -c2}))
    return out


def closed_form_by_degree(polys: list[MPoly]) -> dict:
    out: dict = {}
    for f in polys:
        (d,) = f.multidegrees()
        out.setdefault(d, []).append(f)
    return out


# --------------------------------------------------------------------------
# Layers
# --------------------------------------------------------------------------


@dataclass
class LayerDecomposition:
    m: int
    n: int
    layers: list  # layers[k] = {degree: basis}
    filtration: list  # filtration[k] = {degree: basis of H ∩ Ker eps^(k+1)}
    eps_maps: list = field(default_factory=list)
    mixed: int = 0

    def sizes(self) -> list[int]:
        return [sum(len(b) for b in layer.values()) for layer in self.layers]


def eps_filtration(space: HarmonicSpace, kmax: int) -> list[dict]:
    """filtration[k][d]: basis of the part of component d killed by eps^(k+1)."""
    shape = space.query.shape
    out = []
    for k in range(kmax):
        level = {}
        for d, basis in space.components.items():
            level[d] = subspace_where(basis, lambda e, k=k: en_valuation(e, shape) > k)
        out.append(level)
    return out


def layer_decomposition(m: int, n: int, space: HarmonicSpace) -> LayerDecomposition:
    """Split the G(m,n) q-harmonics into layers L_0..L_{m-1} by the eps-kernel filtration.

    L_k collects the elements whose highest monomial e_n-valuation is k; it
    is realized as the canonical complement of H ∩ Ker eps^k inside
    H ∩ Ker eps^(k+1). For k >= 1 the map eps is checked to send L_k(q)
    onto L_{k-1}(q/(1+q)) modulo the lower filtration step.
    """
    query = space.query
    if query.l != 1:
        raise NotSingleSet("layers are defined for one set of variables")
    if not is_formal(query.q) or query.group.p != 1:
        raise ValueError("layer analysis expects G(m,n) at a non-specialized q")
    filt = eps_filtration(space, m)
    layers = []
    for k in range(m):
        layer = {}
        for d in space.components:
            lower = filt[k - 1][d] if k else []
            layer[d] = complement(filt[k][d], lower)
        layers.append(layer)
    mixed = sum(1 for f in space.basis()
                if len({en_valuation(e, f.shape) for e in f.terms}) > 1)
    dec = LayerDecomposition(m, n, layers, filt, mixed=mixed)

    q = query.q
    shifted = q / (1 + q)
    target_space = harmonic_space(query.with_q(shifted), probe=False)
    tfilt = eps_filtration(target_space, m)
    target_ops = defining_ops(target_space.query)
    for k in range(1, m):
        images = [apply_eps_power(f, 1) for b in layers[k].values() for f in b]
        harmonic = all(not apply_op(spec, g) for g in images for spec in target_ops)
        lower = [f for b in tfilt[k - 2].values() for f in b] if k >= 2 else []
        upper = [f for b in tfilt[k - 1].values() for f in b]
        rank = span_rank(images)
        joint = span_rank(images + lower)
        dec.eps_maps.append({
            "k": k,
            "source_dim": sum(len(b) for b in layers[k].values()),
            "image_rank": rank,
            "target_layer_dim": len(upper) - len(lower),
            "images_harmonic": harmonic,
            "onto": harmonic and joint == len(upper) and rank == joint - len(lower),
            "valuation_drop": all(max_en_valuation(g) == k - 1 for g in images),
        })
    return dec


# --------------------------------------------------------------------------
# Specialized q
# --------------------------------------------------------------------------


def dims_at(query: HarmonicQuery, q) -> dict:
    """Component dimensions at another value of q (no truncation probe)."""
    return harmonic_space(query.with_q(q), probe=False).hilbert


def singular_candidates(n: int, a_max: int, b_max: int) -> list[Fraction]:
    vals = {Fraction(-a, b) for a in range(1, a_max + 1) for b in range(n, b_max + 1)}
    return sorted(vals)


def singular_scan(n: int, l: int, group: GroupSpec, a_max: int, b_max: int,
                  degree_bound: int) -> list[Fraction]:
    """Values -a/b (1 <= a <= a_max, n <= b <= b_max) where some component outgrows the formal one."""
    if group.n != n:
        raise ValueError(f"rank mismatch: n = {n} but group is {group}")
    query = HarmonicQuery(group, l, FORMAL, degree_bound)
    formal = harmonic_space(query, probe=False).hilbert
    flagged = []
    for q0 in singular_candidates(n, a_max, b_max):
        dims = dims_at(query, q0)
        if any(dims[d] > formal[d] for d in dims):
            flagged.append(q0)
    return flagged


def extra_harmonics(query: HarmonicQuery, q0) -> dict:
    """Per degree, the q0-harmonics beyond the formal dimension (as the specialized basis)."""
    formal = harmonic_space(query, probe=False)
    special = harmonic_space(query.with_q(q0), probe=False)
    out = {}
    for d, basis in special.components.items():
        if len(basis) > len(formal.components[d]):
            out[d] = basis
    return out
