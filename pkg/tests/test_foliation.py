from collections import Counter
from dataclasses import replace
from fractions import Fraction

import pytest

from obf.errors import EmptyDecomposition, NotApplicable, WrongSurfaceKind
from obf.fixtures import fixture
from obf.foliation import (
    ALPHA,
    BETA,
    BFlags,
    SingularityCounts,
    euler_audit,
    fdtc_interval,
    ledger_solutions,
    make_complex,
    product_annulus,
    region_decomposition,
    self_linking,
    singularity_counts,
    sl_difference,
    stabilization_ledger,
    validate,
)
from obf.generate import alternating_tiling, fan_disc
from obf.page import new_page


def test_ex2_2_complex_is_valid():
    assert validate(fixture("ex2_2").complex).ok


def test_product_annulus_is_valid_and_empty():
    f = product_annulus()
    assert validate(f).ok
    assert f.n_singular() == 0
    assert singularity_counts(f).as_tuple() == (0, 0, 0, 0)
    with pytest.raises(EmptyDecomposition):
        region_decomposition(f)


def test_valence_one_b_arc_is_forbidden():
    page = new_page(0, 2)
    f = make_complex("disc", page, {"m": (-1, "C0"), "u": (1, "C0"), "w": (1, "C0")},
                     [("h", ("m", "u", "m", "w"), 1, 1, ("e1", "e1", "e2", "e2"))])
    assert "ForbiddenDegeneration" in validate(f).codes()


def test_ex2_2_regions():
    regions = region_decomposition(fixture("ex2_2").complex)
    assert [r.kind for r in regions] == ["ab"] * 4
    assert [r.sign for r in regions] == [-1, -1, -1, 1]


def test_equal_sign_annulus_has_two_degenerated_ac_regions():
    regions = region_decomposition(fixture("lemma6_3").complex)
    assert [(r.kind, r.sign, r.degenerate) for r in regions] == [("ac", 1, True)] * 2


def test_counts_of_positive_fan():
    assert singularity_counts(fan_disc(3, 1)).as_tuple() == (3, 1, 3, 0)


@pytest.mark.parametrize("name,sl", [("ex2_2", -3), ("meridian", -1), ("ex6_2", -5)])
def test_self_linking(name, sl):
    assert self_linking(fixture(name).complex) == sl


def test_surface_kind_guards():
    with pytest.raises(WrongSurfaceKind):
        self_linking(product_annulus())
    with pytest.raises(WrongSurfaceKind):
        sl_difference(fixture("ex2_2").complex)


def test_sl_difference_examples():
    assert sl_difference(product_annulus()) == 0
    assert sl_difference(fixture("lemma6_3").complex) == 2
    assert sl_difference(fixture("lemma6_3_opposite").complex) == 0


def test_ledger_of_alternating_tiling():
    for k in (1, 2, 4):
        led = stabilization_ledger(alternating_tiling(k, 1))
        assert led.as_tuple() == (0, k, 0, k)


def test_ledger_of_empty_counts():
    assert [s.as_tuple() for s in ledger_solutions(SingularityCounts(0, 0, 0, 0))] == [(0, 0, 0, 0)]


def test_ledger_solutions_match_brute_force():
    c = SingularityCounts(1, 1, 1, 1)
    brute = sorted(
        (ap, am, bp, bm)
        for ap in range(3) for am in range(3) for bp in range(3) for bm in range(3)
        if am + ap == 1 and bp + bm == 1 and am + bp == 1 and ap + bm == 1)
    assert sorted(s.as_tuple() for s in ledger_solutions(c)) == brute


def _all_b_elliptic(f):
    for v in sorted(f.elliptics(), key=lambda v: v.id):
        if f.vertex_type(v.id)[0] == 0:
            return v
    return None


def test_fdtc_interval_reads_signs(corpus):
    seen = 0
    for f in corpus:
        v = _all_b_elliptic(f)
        if v is None:
            continue
        flags = {e: BFlags(True, True, True) for e in f.barc}
        g = replace(f, barc=flags)
        signs = Counter(g.signs_around(v.id))
        p, n = signs[1], signs[-1]
        want = (Fraction(-n), Fraction(p)) if v.sign > 0 else (Fraction(-p), Fraction(n))
        assert fdtc_interval(g, v.id) == want
        seen += 1
    assert seen > 5


def test_fdtc_interval_needs_strongly_essential_arcs(corpus):
    for f in corpus:
        v = _all_b_elliptic(f)
        if v is not None:
            with pytest.raises(NotApplicable):
                fdtc_interval(replace(f, barc={e: BFlags() for e in f.barc}), v.id)
            return
    pytest.fail("no all-b elliptic point in the corpus")


def _independent_types(f):
    """V(a, b) from the edge list alone."""
    table = Counter()
    for v in f.elliptics():
        a = b = 0
        for e in f.edges.values():
            for end, other in ((e.x, e.y), (e.y, e.x)):
                if end == v.id:
                    if other in (ALPHA, BETA):
                        a += 1
                    else:
                        b += 1
        table[(a, b)] += 1
    return table


def test_euler_audit_against_independent_count(corpus):
    for f in corpus:
        audit = euler_audit(f)
        t = _independent_types(f)
        assert dict(t) == {k: v for k, v in audit.table.items() if v}
        s = sum(1 for e in f.edges.values() if e.kind == "s")
        lhs = 2 * t[(1, 0)] + t[(1, 1)] + 2 * t[(0, 2)] + t[(0, 3)]
        rhs = 2 * s + t[(2, 1)] + 2 * t[(3, 0)] + sum(
            (2 * a + b - 4) * k for (a, b), k in t.items() if a + b >= 4)
        assert lhs == rhs == audit.lhs == audit.rhs
        assert len(f.vertices) - len(f.edges) + len(f.faces) == 2


def test_alternating_tiling_audit():
    audit = euler_audit(alternating_tiling(3))
    assert audit.lhs == audit.rhs == 0
    assert set(audit.table) <= {(1, 2), (0, 4)}


def test_audit_refuses_c_circles():
    with pytest.raises(NotApplicable):
        euler_audit(fixture("lemma6_3").complex)
