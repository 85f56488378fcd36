"""Acceptance suite: one PASS/FAIL line per criterion.

The lines are printed in the pytest terminal summary (see conftest.py);
``python tests/test_acceptance.py`` runs the suite on its own.
"""

import math
import sys
from fractions import Fraction

import pytest

from qharmonic.checks import (
    check_bracket,
    check_closed_form,
    check_conjecture_e,
    check_inflation,
    check_main_conjecture,
    check_prop1,
    dim_inequality_probe,
)
from qharmonic.groups import GroupSpec
from qharmonic.harmonics import (
    HarmonicQuery,
    extra_harmonics,
    harmonic_space,
    layer_decomposition,
    same_span,
    singular_candidates,
    singular_scan,
)
from qharmonic.operators import eps_shift_check, inflation_intertwining_check
from qharmonic.polyspace import MPoly, Shape
from qharmonic.series import (
    evaluate_hbasis,
    format_hbasis,
    format_series,
    hbasis_expression,
    hilbert_product_formula,
)

_results = {}
LINES = []


def _emit(number: int, ok: bool, label: str, detail: str = "") -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {label}"
    if detail:
        line += f"  [{detail}]"
    _results[number] = ok
    LINES.append(line)


def Q(m, p, n, l=1, q="formal", bound=None):
    return HarmonicQuery(GroupSpec(m, p, n), l, q, bound)


def test_criterion_01_regular_series():
    bad = []
    for m, n in [(1, 2), (1, 3), (1, 4), (2, 2), (3, 2), (4, 2), (2, 3)]:
        space = harmonic_space(Q(m, 1, n))
        want = hilbert_product_formula(m, n)
        if space.series() != want or space.dimension != m ** n * math.factorial(n) \
                or space.truncated:
            bad.append((m, n))
    ok = not bad
    _emit(1, ok, "formal-q series equals prod (t^km - 1)/(t - 1), l=1",
          "7 groups" if ok else f"mismatch {bad}")
    assert ok


def test_criterion_02_series_strings():
    s3 = harmonic_space(Q(1, 1, 3))
    s3_two = harmonic_space(Q(1, 1, 3, 2, "formal", 3))
    g32_two = harmonic_space(Q(3, 1, 2, 2, "formal", 7))
    e3 = hbasis_expression(s3_two.hilbert, 2)
    e32 = hbasis_expression(g32_two.hilbert, 2)
    got = (format_series(s3.series()), format_hbasis(e3), format_hbasis(e32))
    want = ("1+2t+2t^2+t^3", "1+2h_1+h_{11}+h_2+h_3",
            "1+2h_1+h_{11}+2h_2+2h_{21}+h_3+h_{22}+2h_4+3h_5+2h_6+h_7")
    totals = (evaluate_hbasis(e3, 2), evaluate_hbasis(e32, 2),
              s3_two.dimension, g32_two.dimension)
    ok = got == want and totals == (16, 90, 16, 90) \
        and not s3_two.truncated and not g32_two.truncated
    _emit(2, ok, "S_3 and G(3,2) series and h-expansions", f"totals {totals[:2]}")
    assert ok


def test_criterion_03_bracket():
    count = 0
    bad = []
    for l in (1, 2):
        for n in (1, 2, 3):
            rep = check_bracket(l, n, 6, 4)
            count += sum(d["monomials"] for d in rep["details"])
            bad += [(l, n, d["d"], d["d2"]) for d in rep["details"] if d["counterexamples"]]
    ok = not bad
    _emit(3, ok, "bracket identity, l<=2, n<=3, |d|,|d'|<=4, degree<=6",
          f"{count} monomial checks, {len(bad)} counterexamples")
    assert ok


def test_criterion_04_reduction_to_two_operators():
    reps = [check_prop1(Q(1, 1, 2)), check_prop1(Q(1, 1, 3)), check_prop1(Q(2, 1, 2))]
    residues = sum(len(r["details"]) for r in reps)
    ok = all(r["verdict"] == "PASS" for r in reps)
    _emit(4, ok, "kernel of D_m, D_2m killed by D_3m (S_2, S_3, G(2,2))",
          f"{residues} residues")
    assert ok


def test_criterion_05_closed_forms():
    bad = []
    for m in range(1, 6):
        for p in sorted({1, m}):
            rep = check_closed_form(m, p)
            if rep["verdict"] != "PASS" or rep["dimension"] != 2 * m * m // p:
                bad.append((m, p))
    ok = not bad
    _emit(5, ok, "n=2 closed forms span the solver output, m<=5, p in {1,m}",
          "10 groups" if ok else f"mismatch {bad}")
    assert ok


def _dihedral_extras_ok(m: int) -> bool:
    s = Shape(1, 2)
    query = Q(m, m, 2, 1, "formal", 3 * m)
    for b in range(1, m + 1):
        extra = extra_harmonics(query, Fraction(-1, b))
        if list(extra) != [(b + m,)]:
            return False
        if b < m:
            want = [MPoly(s, {(b + m, 0): 1}), MPoly(s, {(0, b + m): 1})]
        else:
            want = [MPoly(s, {(2 * m, 0): 1, (0, 2 * m): -1})]
        if not same_span(extra[(b + m,)], want):
            return False
    return True


def test_criterion_06_singular_values():
    candidates = set(singular_candidates(2, 2, 6))
    flagged = set(singular_scan(2, 1, GroupSpec(1, 1, 2), 2, 6, 14))
    scan_ok = flagged == candidates
    dihedral_ok = all(_dihedral_extras_ok(m) for m in (2, 3, 4))
    ok = scan_ok and dihedral_ok
    # for m >= 2 only part of the candidate set is singular; record what the scan finds
    for m in (2, 3):
        got = singular_scan(2, 1, GroupSpec(m, 1, 2), 2, 6, 14)
        LINES.append(f"note 6: G({m},2) flags {', '.join(map(str, got))}; "
                     f"regular: {', '.join(str(v) for v in sorted(candidates - set(got)))}")
    _emit(6, ok, "singular scan n=2 (1<=a<=2<=b<=6) and dihedral extras at -1/b",
          f"{len(flagged)}/{len(candidates)} flagged, dihedral m<=4 {'ok' if dihedral_ok else 'bad'}")
    assert ok


def test_criterion_07_layers():
    space = harmonic_space(Q(4, 1, 2))
    dec = layer_decomposition(4, 2, space)
    sizes_ok = dec.sizes() == [8, 8, 8, 8]
    maps_ok = [e["k"] for e in dec.eps_maps if e["onto"] and e["image_rank"] == e["source_dim"]] \
        == [1, 2, 3]
    shift = eps_shift_check(2, 10, range(1, 11))
    ok = sizes_ok and maps_ok and shift["holds"]
    _emit(7, ok, "G(4,2) layers 8,8,8,8; eps onto L_(k-1)(q/(1+q)); eps-shift identity",
          f"sizes {dec.sizes()}, {shift['checks']} shift checks")
    assert ok


def test_criterion_08_no_en_power_m():
    cases = [(m, 2) for m in range(1, 5)] + [(2, 3)]
    verdicts = {c: check_conjecture_e(*c)["verdict"] for c in cases}
    ok = all(v == "PASS" for v in verdicts.values())
    _emit(8, ok, "no basis monomial divisible by e_n^m: G(m,2) m<=4 and G(2,3)",
          "G(2,3) " + verdicts[(2, 3)])
    assert ok


def test_criterion_09_inflation():
    bad = []
    pairs = 0
    for n in (2, 3):
        for m in range(1, 5):
            for r in range(1, m + 1):
                if m % r:
                    continue
                pairs += 1
                rep = check_inflation(m, r, n)
                if rep["verdict"] != "PASS":
                    bad.append((m, r, n))
    inter = [inflation_intertwining_check((1, n), r, [(k,) for k in range(1, 5)], 6)
             for n in (1, 2, 3) for r in (2, 3, 4)]
    inter.append(inflation_intertwining_check((2, 2), 2, [(1, 0), (0, 1), (1, 1), (2, 0)], 4))
    inter_ok = all(r["holds"] for r in inter)
    ok = not bad and inter_ok
    _emit(9, ok, "inflated S_2, S_3 harmonics are (q/r)-harmonic; r=m spans; intertwining",
          f"{pairs} (m,r,n) cases, {sum(r['checks'] for r in inter)} intertwining checks")
    assert ok


def test_criterion_10_graded_characters():
    reps = [check_main_conjecture(Q(*g)) for g in [(1, 1, 3), (2, 1, 2), (3, 1, 2)]]
    ok = all(r["verdict"] == "PASS" and r["character"] == "computed"
             and r["regular_character_q0"] for r in reps)
    _emit(10, ok, "graded character formal q = q=0 per element and degree; regular at q=0",
          "S_3, G(2,2), G(3,2)")
    assert ok


def test_criterion_11_specialization():
    samples = [Fraction(1), Fraction(1, 2), Fraction(-3), Fraction(-1, 5)]
    rep = dim_inequality_probe(Q(1, 1, 3, 2, "formal", 3), samples)
    ok = rep["verdict"] == "PASS"
    _emit(11, ok, "S_3 l=2: dim at q0 in {1,1/2,-3,-1/5} = formal <= q=0",
          f"{len(rep['details'])} components")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
