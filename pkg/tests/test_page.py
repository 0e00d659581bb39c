import math
from fractions import Fraction

import pytest

from obf.errors import InvalidPage, MissingAttributes, UnknownComponent, UnsupportedFDTC
from obf.page import (
    Leaf,
    SliceConfig,
    apply_monodromy,
    classify_b_arc,
    fdtc,
    new_page,
    parse_monodromy,
)


def test_new_page_shapes():
    a = new_page(0, 2)
    assert a.labels == ("C0", "C1") and a.planar and a.is_annulus
    d = new_page(0, 1)
    assert d.is_disc and d.boundary_count == 1
    t = new_page(1, 1)
    assert not t.planar and t.boundary_count == 1


def test_new_page_needs_boundary():
    with pytest.raises(InvalidPage):
        new_page(0, 0)


@pytest.mark.parametrize("word,component,expected", [
    ("T(core)^2", "C0", Fraction(2)),
    ("T(core)^2", "C1", Fraction(2)),
    ("T(core)^-1", "C0", Fraction(-1)),
    ("T(C0)^3 T(C1)^-1", "C0", Fraction(3)),
])
def test_fdtc_boundary_parallel_words(word, component, expected):
    page = new_page(0, 2)
    assert fdtc(parse_monodromy(word, page), page, component) == expected


def test_fdtc_identity_disc_is_infinite():
    page = new_page(0, 1)
    assert fdtc(parse_monodromy("Id", page), page, "C0") == math.inf


def test_fdtc_errors():
    page = new_page(0, 2)
    with pytest.raises(UnknownComponent):
        fdtc(parse_monodromy("T(core)", page), page, "C7")
    torus = new_page(1, 1)
    with pytest.raises(UnsupportedFDTC):
        fdtc(parse_monodromy("T(a)^1", torus), torus, "C0")


def _annulus_slice():
    page = new_page(0, 2)
    leaves = {"a0": Leaf("a0", "a", ("v", "p")), "b0": Leaf("b0", "b", ("w", "u"))}
    return SliceConfig(page, {"v": (1, "C0"), "u": (1, "C0"), "w": (-1, "C1")},
                       {"p": (1, None)}, leaves)


def test_identity_monodromy_fixes_slice():
    s = _annulus_slice()
    assert apply_monodromy(s, parse_monodromy("Id", s.page)) == s


def test_double_twist_is_two_single_twists():
    s = _annulus_slice()
    once = parse_monodromy("T(core)", s.page)
    twice = apply_monodromy(s, parse_monodromy("T(core)^2", s.page))
    assert twice == apply_monodromy(apply_monodromy(s, once), once)
    # arcs running across the core wind once per twist
    assert twice.leaves["b0"].wind == 2
    assert twice.leaves["a0"].wind == 2


def _three_holed(faces):
    page = new_page(0, 3)
    leaves = {"b": Leaf("b", "b", ("u", "w"))}
    s = SliceConfig(page, {"u": (1, "C0"), "w": (-1, "C0")}, {}, leaves,
                    {"C0": ("u", "w")}, faces)
    s.check()
    return s


def test_b_arc_with_a_hole_on_each_side_is_strongly_essential():
    s = _three_holed({"F1": frozenset({"b", "C1"}), "F2": frozenset({"b", "C2"})})
    c = classify_b_arc(s, s.page, "b")
    assert (c.separating, c.essential, c.strongly_essential) == (True, True, True)


def test_boundary_parallel_b_arc():
    s = _three_holed({"F1": frozenset({"b"}), "F2": frozenset({"b", "C1", "C2"})})
    c = classify_b_arc(s, s.page, "b")
    assert (c.separating, c.essential, c.strongly_essential) == (True, False, False)


def test_non_planar_b_arc_needs_attributes():
    page = new_page(1, 1)
    s = SliceConfig(page, {"u": (1, "C0"), "w": (-1, "C0")}, {},
                    {"b": Leaf("b", "b", ("u", "w"))})
    with pytest.raises(MissingAttributes):
        classify_b_arc(s, page, "b")
