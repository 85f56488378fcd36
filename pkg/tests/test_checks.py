from fractions import Fraction

from qharmonic.checks import (
    check_bracket,
    check_closed_form,
    check_conjecture_e,
    check_inflation,
    check_main_conjecture,
    check_prop1,
    character_report,
    dim_inequality_probe,
)
from qharmonic.groups import GroupSpec
from qharmonic.harmonics import HarmonicQuery


def Q(m, p, n, l=1, q="formal", bound=None):
    return HarmonicQuery(GroupSpec(m, p, n), l, q, bound)


def test_main_s3():
    rep = check_main_conjecture(Q(1, 1, 3))
    assert rep["verdict"] == "PASS"
    assert rep["series_formal"] == rep["series_q0"] == "1+2t+2t^2+t^3"
    assert rep["regular_character_q0"]


def test_main_g32():
    rep = check_main_conjecture(Q(3, 1, 2))
    assert rep["verdict"] == "PASS" and rep["total"] == 18
    assert rep["regular_character_q0"]


def test_main_reports_skipped_characters():
    rep = check_main_conjecture(Q(2, 1, 3), limit=10)
    assert rep["verdict"] == "PASS"
    assert rep["character"].startswith("skipped")


def test_main_catches_dimension_drop_at_singular_value():
    rep = check_main_conjecture(Q(1, 1, 2))
    assert rep["verdict"] == "PASS"
    probe = dim_inequality_probe(Q(3, 1, 2, 1, "formal", 13), [Fraction(-1, 2)])
    assert probe["verdict"] == "FAIL"
    assert any(e["samples"]["-1/2"] > e["formal"] for e in probe["details"])


def test_dim_probe_regular():
    rep = dim_inequality_probe(Q(1, 1, 2), [1])
    assert rep["verdict"] == "PASS"
    assert [(e["formal"], e["q0"], e["samples"]["1"]) for e in rep["details"]] == [(1, 1, 1), (1, 1, 1)]


def test_conjecture_e():
    for m in (1, 2, 3):
        assert check_conjecture_e(m, 2)["verdict"] == "PASS"


def test_inflation_examples():
    for m, r in [(2, 2), (2, 1), (4, 4), (4, 2)]:
        rep = check_inflation(m, r, 2)
        assert rep["verdict"] == "PASS"
    assert check_inflation(4, 4, 2)["spans_divisible_subspace"]


def test_closed_form_report():
    rep = check_closed_form(3, 1)
    assert rep["verdict"] == "PASS" and rep["dimension"] == 18


def test_prop1():
    assert check_prop1(Q(1, 1, 3))["verdict"] == "PASS"


def test_bracket_report():
    rep = check_bracket(1, 2, 4, 3)
    assert rep["verdict"] == "PASS"
    assert len(rep["details"]) == 6


def test_character_report_labels():
    rep = character_report(Q(1, 1, 2))
    assert rep["elements"] == ["(12 | 0,0)", "(21 | 0,0)"]
    top = rep["characters"][1]["traces"]
    assert top["(21 | 0,0)"] == ["(-1)/(1)"]
    assert rep["regular_character_q0"]
