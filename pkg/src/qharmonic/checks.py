"""Verdict reports: {"check": name, "verdict": "PASS"|"FAIL", "details": [...]}."""

from __future__ import annotations

from fractions import Fraction

from .exactalg import CycElem, RatFuncQ
from .groups import GroupSpec, TooLarge, enumerate_group, graded_trace
from .harmonics import (
    HarmonicQuery,
    HarmonicSpace,
    annihilation_residues,
    closed_form_by_degree,
    closed_form_n2,
    defining_ops,
    echelonize,
    harmonic_component,
    harmonic_space,
    q_label,
    same_span,
)
from .operators import FORMAL, OpSpec, apply_op, bracket_check, is_formal
from .polyspace import Shape, en_valuation, inflate_dual, multidegrees_of_total, multidegrees_upto
from .series import format_series


def report(name: str, ok: bool, details: list, **extra) -> dict:
    out = {"check": name, "verdict": "PASS" if ok else "FAIL"}
    out.update(extra)
    out["details"] = details
    return out


def _cyc_str(c: CycElem) -> list[str]:
    return c.to_strings()


def graded_character(space: HarmonicSpace, elements) -> dict:
    """{degree: [trace of each element on that component]}."""
    return {d: [graded_trace(w, basis) for w in elements]
            for d, basis in space.components.items()}


def regular_character_check(char: dict, group: GroupSpec, elements) -> bool:
    """Summed over degrees, the character is |W| at the identity and 0 elsewhere."""
    m = group.m
    for k, w in enumerate(elements):
        total = CycElem.scalar(m, Fraction(0))
        for traces in char.values():
            total = total + traces[k]
        want = group.order if w.is_identity() else 0
        if total != CycElem.scalar(m, Fraction(want)):
            return False
    return True


def check_main_conjecture(query: HarmonicQuery, limit: int = 10_000) -> dict:
    """Formal q against q = 0: dimensions and graded characters, per multidegree."""
    if not is_formal(query.q):
        raise ValueError("check_main_conjecture needs formal q")
    formal = harmonic_space(query)
    classical = harmonic_space(query.with_q(0))
    try:
        elements = enumerate_group(query.group, limit)
        note = "computed"
    except TooLarge as exc:
        elements = None
        note = f"skipped: {exc}"
    details = []
    ok = True
    if elements is not None:
        cf = graded_character(formal, elements)
        c0 = graded_character(classical, elements)
    for d in formal.components:
        a, b = len(formal.components[d]), len(classical.components[d])
        entry = {"degree": list(d), "dim_formal": a, "dim_q0": b, "dims_equal": a == b}
        good = a == b
        if elements is not None:
            mism = [w.label() for w, x, y in zip(elements, cf[d], c0[d]) if x != y]
            entry["characters_equal"] = not mism
            if mism:
                entry["character_mismatch"] = mism
            good = good and not mism
        entry["verdict"] = "PASS" if good else "FAIL"
        ok = ok and good
        details.append(entry)
    extra = {"query": query.to_json_obj(),
             "series_formal": format_series(formal.series()),
             "series_q0": format_series(classical.series()),
             "total": formal.dimension, "character": note,
             "truncated": formal.truncated or classical.truncated}
    if elements is not None and query.l == 1:
        extra["regular_character_q0"] = regular_character_check(c0, query.group, elements)
    return report("main", ok, details, **extra)


def check_conjecture_e(m: int, n: int, degree_bound: int | None = None) -> dict:
    """No q-harmonic basis element of G(m,n) has a monomial divisible by e_n^m."""
    query = HarmonicQuery(GroupSpec(m, 1, n), 1, FORMAL, degree_bound)
    space = harmonic_space(query)
    shape = query.shape
    details = []
    ok = True
    for d, basis in space.components.items():
        hits = [i for i, f in enumerate(basis)
                if any(en_valuation(e, shape) >= m for e in f.terms)]
        ok = ok and not hits
        details.append({"degree": list(d), "dim": len(basis), "offending": hits})
    return report("e", ok, details, query=query.to_json_obj(), truncated=space.truncated)


def _divisible(r: int):
    return lambda e: all(a % r == 0 for a in e)


def check_inflation(m: int, r: int, n: int, degree_bound: int | None = None) -> dict:
    """Images of the S_n q-harmonics under inflate_dual(., r) are (q/r)-harmonic for G(m,n).

    For r = m the images must also span the (q/m)-harmonics of G(m,n)
    supported on exponents divisible by m.
    """
    if m % r:
        raise ValueError(f"r = {r} does not divide m = {m}")
    source = harmonic_space(HarmonicQuery(GroupSpec(1, 1, n), 1, FORMAL, degree_bound))
    q = RatFuncQ.q()
    target = HarmonicQuery(GroupSpec(m, 1, n), 1, q / r)
    ops = defining_ops(target)
    details = []
    ok = True
    by_degree: dict = {}
    for d, basis in source.components.items():
        for i, f in enumerate(basis):
            g = inflate_dual(f, r)
            bad = [spec.label() for spec in ops if _nonzero(spec, g)]
            ok = ok and not bad
            by_degree.setdefault(r * d[0], []).append(g)
            details.append({"degree": list(d), "index": i, "annihilated": not bad,
                            "failing_ops": bad})
    span_ok = None
    if r == m:
        span_ok = True
        for D in range(target.degree_bound + 1):
            sub = harmonic_component(target, (D,), monomial_filter=_divisible(m), ops=ops)
            images = by_degree.get(D, [])
            match = same_span(sub, images)
            span_ok = span_ok and match
            details.append({"target_degree": D, "divisible_dim": len(sub),
                            "image_dim": len(echelonize(images)), "span_equal": match})
        ok = ok and span_ok
    return report("inflate", ok, details, m=m, r=r, n=n, spans_divisible_subspace=span_ok)


def _nonzero(spec: OpSpec, g) -> bool:
    return bool(apply_op(spec, g))


def check_closed_form(m: int, p: int = 1, q=FORMAL) -> dict:
    """closed_form_n2 against the generic solver, span equality per degree."""
    query = HarmonicQuery(GroupSpec(m, p, 2), 1, q)
    space = harmonic_space(query)
    cf = closed_form_by_degree(closed_form_n2(m, p, q))
    details = []
    ok = not set(cf) - set(space.components)
    for d, basis in space.components.items():
        eq = same_span(cf.get(d, []), basis)
        ok = ok and eq
        details.append({"degree": list(d), "solver_dim": len(basis),
                        "closed_form_dim": len(cf.get(d, [])), "span_equal": eq})
    total = sum(len(b) for b in cf.values())
    ok = ok and total == 2 * m * m // p == space.dimension
    return report("n2closed", ok, details, m=m, p=p, q=q_label(query.q), dimension=total)


def check_prop1(query: HarmonicQuery, ks=(3,)) -> dict:
    """The kernel of the defining operators is also killed by D_{q,km}."""
    space = harmonic_space(query, probe=False)
    m = query.group.m
    extra = []
    for k in ks:
        extra += [OpSpec("D", d, q=query.q) for d in multidegrees_of_total(query.l, k * m)]
    bad = annihilation_residues(space, extra)
    details = [{"degree": list(d), "index": i, "op": op} for d, i, op in bad]
    return report("prop1", not bad, details, query=query.to_json_obj(),
                  extra_ops=[o.label() for o in extra], elements=space.dimension)


def check_bracket(l: int, n: int, maxdeg: int, dmax: int) -> dict:
    """Bracket identity for every pair of multidegrees with 1 <= |d|, |d'| <= dmax."""
    shape = Shape(l, n)
    degs = [d for d in multidegrees_upto(l, dmax) if any(d)]
    details = []
    ok = True
    for d in degs:
        for d2 in degs:
            if d > d2:
                continue
            r = bracket_check(d, d2, shape, maxdeg)
            ok = ok and r["holds"]
            details.append({"d": list(d), "d2": list(d2), "monomials": r["monomials"],
                            "counterexamples": r["counterexamples"]})
    return report("bracket", ok, details, l=l, n=n, maxdeg=maxdeg)


def dim_inequality_probe(query: HarmonicQuery, samples) -> dict:
    """Per degree: dim at formal q <= dim at q = 0, and dim at each sample equals the formal dim."""
    formal = harmonic_space(query, probe=False).hilbert
    zero = harmonic_space(query.with_q(0), probe=False).hilbert
    at = {Fraction(s): harmonic_space(query.with_q(Fraction(s)), probe=False).hilbert
          for s in samples}
    details = []
    ok = True
    for d in formal:
        entry = {"degree": list(d), "formal": formal[d], "q0": zero[d],
                 "samples": {str(s): h[d] for s, h in at.items()}}
        good = formal[d] <= zero[d] and all(h[d] == formal[d] for h in at.values())
        good = good and all(h[d] <= zero[d] for h in at.values())
        entry["verdict"] = "PASS" if good else "FAIL"
        ok = ok and good
        details.append(entry)
    return report("dims", ok, details, query=query.to_json_obj())


def character_report(query: HarmonicQuery, limit: int = 10_000) -> dict:
    elements = enumerate_group(query.group, limit)
    space = harmonic_space(query)
    char = graded_character(space, elements)
    rows = []
    for d, traces in char.items():
        rows.append({"degree": list(d),
                     "traces": {w.label(): _cyc_str(t) for w, t in zip(elements, traces)}})
    out = {"query": query.to_json_obj(), "elements": [w.label() for w in elements],
           "characters": rows, "truncated": space.truncated}
    if query.l == 1:
        z = harmonic_space(query.with_q(0), probe=False)
        out["regular_character_q0"] = regular_character_check(
            graded_character(z, elements), query.group, elements)
    return out
