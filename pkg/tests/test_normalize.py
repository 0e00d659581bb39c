from fractions import Fraction

import pytest

from obf.errors import (
    IncompleteInput,
    InvalidComplex,
    Lemma42Violation,
    NotApplicable,
)
from obf.fixtures import fixture, load_data_movie
from obf.foliation import product_annulus, sl_difference, stabilization_ledger
from obf.generate import alternating_tiling, fan_disc
from obf.movie import interpret
from obf.normalize import (
    BraidData,
    OpenBook,
    check_degenerated_ac_pair,
    common_stabilization,
    format_report,
    normalize,
    split_at_c_circles,
    verdict_line,
    verify_jk,
)
from obf.page import new_page, parse_monodromy


def test_product_needs_no_moves():
    r = normalize(product_annulus())
    assert r.terminal == "product" and r.steps == ()
    assert r.balanced


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_alternating_tiling_is_terminal(k):
    f = alternating_tiling(k)
    r = normalize(f)
    assert r.terminal == "alternating-tiling"
    assert r.ledger == stabilization_ledger(f)
    led = r.ledger
    assert led.a_plus + led.a_minus == led.b_plus + led.b_minus == k
    assert r.balanced


def test_common_stabilization_matches_the_tiling():
    alpha, beta = common_stabilization(alternating_tiling(2))
    assert len(alpha) == len(beta) == 2
    assert all(line.startswith("move tile-stabilization") for line in alpha + beta)


def test_normalization_measure_drops(corpus):
    seen = 0
    for f in corpus[:80]:
        try:
            r = normalize(f, fdtc_value=2)
        except Lemma42Violation:
            continue
        seen += 1
        assert all(b < a for a, b in zip(r.measures, r.measures[1:])), r.measures
        assert r.balanced
    assert seen > 40


def test_normalize_refuses_discs():
    with pytest.raises(NotApplicable):
        normalize(fan_disc(2, 1))


def test_hypotheses_are_checked():
    f = alternating_tiling(2)
    with pytest.raises(NotApplicable) as info:
        normalize(f, fdtc_value=1)
    assert info.value.clause == "FDTC"
    with pytest.raises(NotApplicable) as info:
        normalize(f, C="C1")
    assert info.value.clause == "C-Top"
    r = normalize(f, fdtc_value=Fraction(3, 2))
    assert r.terminal == "alternating-tiling"


def test_genus_one_page_is_not_planar():
    f = fixture("lemma6_3").complex
    with pytest.raises(NotApplicable) as info:
        normalize(f)
    assert info.value.clause == "Planar"


def test_split_at_the_c_circle():
    f = fixture("lemma6_3_opposite").complex
    a_alpha, a_prime, a_beta = split_at_c_circles(f)
    assert a_alpha.n_alpha == f.n_alpha and a_beta.n_beta == f.n_beta
    assert len(a_prime.stack) == 1
    with pytest.raises(NotApplicable):
        split_at_c_circles(product_annulus())
    r = normalize(f)
    assert r.terminal == "split-recursion"


def test_degenerated_pairs():
    eq = check_degenerated_ac_pair(fixture("lemma6_3").complex)
    assert eq["sign_relation"] == "equal" and eq["sl_difference"] == 2
    op = check_degenerated_ac_pair(fixture("lemma6_3_opposite").complex)
    assert op["sign_relation"] == "opposite" and op["sl_difference"] == 0
    with pytest.raises(InvalidComplex) as info:
        check_degenerated_ac_pair(interpret(load_data_movie("lemma6_3_planar.obf")))
    assert "EqualSignsOnPlanarPage" in info.value.violations
    with pytest.raises(NotApplicable):
        check_degenerated_ac_pair(product_annulus())


def _book():
    page = new_page(0, 2)
    return OpenBook(page, parse_monodromy("T(C0)^3", page))


def test_verify_jk_arithmetic():
    a = BraidData("a", 3, -1, (1, 0))
    b = BraidData("b", 2, -5, (1, 0))
    rep = verify_jk(_book(), "C0", a, b, 1, "given")
    assert (rep.lhs, rep.rhs, rep.verdict) == (4, 4, "holds")
    assert rep.recheck()
    assert verdict_line(rep) == "HOLDS 4 <= 4"
    # C-isotopy stays unknown when every other linking number agrees
    assert rep.hypotheses["C-Top"] == (None, None)


def test_verify_jk_detects_failed_isotopy():
    a = BraidData("a", 2, 1, (1, 2))
    b = BraidData("b", 1, -3, (1, 0))
    rep = verify_jk(_book(), "C0", a, b, 1, "given")
    assert rep.verdict == "violated" and rep.margin == 2
    assert rep.failed_hypotheses() == ["C-Top"]
    assert not rep.inconsistent
    text = format_report(rep)
    assert "C-Top: fails" in text and "INEQUALITY" in text


def test_verify_jk_flags_inconsistency():
    a = BraidData("a", 2, 1)
    b = BraidData("b", 1, -3)
    rep = verify_jk(_book(), "C0", a, b, 1, "given", c_isotopic=True)
    assert rep.verdict == "violated" and rep.inconsistent


def test_verify_jk_needs_a_bound():
    a = BraidData("a", 1, -1)
    with pytest.raises(IncompleteInput):
        verify_jk(_book(), "C0", a, a, None)


def test_annulus_fixes_relative_sl():
    f = fixture("lemma6_3").complex
    b = BraidData("b", 1, 0)
    rep = verify_jk(_book(), "C0", BraidData("a", 1, 99), b, 1, "given", annulus=f)
    assert rep.alpha.sl == sl_difference(f) == 2
