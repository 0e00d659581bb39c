from dataclasses import replace

import pytest

from obf.errors import NotApplicable, ObstructedByIntersection
from obf.fixtures import fixture
from obf.foliation import BFlags, euler_audit, product_annulus, singularity_counts, validate
from obf.generate import alternating_tiling, stabilized_product
from obf.moves import (
    MoveSite,
    applicable_moves,
    apply_move,
    b_arc_foliation_change,
    boundary_shrinking_exchange,
    destabilize_tile,
    flip_edge,
    interior_exchange,
    microflype,
    stabilize_tile,
    swap_signs_exchange,
)


def _sites(f, kind):
    return [s for s in applicable_moves(f) if s.kind == kind]


def _first(corpus, kind, pred=lambda f, s: True):
    for f in corpus:
        for s in _sites(f, kind):
            if pred(f, s):
                return f, s
    pytest.skip(f"no {kind} site in the corpus")


def test_ex2_2_offers_stabilizations_at_negative_elliptics():
    f = fixture("ex2_2").complex
    at = {s.cells[1] for s in _sites(f, "tile-stabilization")}
    assert {"w1", "w2"} <= at


def test_alternating_tiling_has_no_foliation_change():
    assert not _sites(alternating_tiling(3), "b-arc-foliation-change")


def test_product_has_no_moves():
    assert applicable_moves(product_annulus()) == []


def test_foliation_change_keeps_counts_and_can_be_undone(corpus):
    f, s = _first(corpus, "b-arc-foliation-change")
    g = b_arc_foliation_change(f, s)
    assert validate(g).ok
    assert singularity_counts(g) == singularity_counts(f)
    # one of the hexagon's other diagonals brings the V table back
    back = [flip_edge(g, t.cells[2], k) for t in _sites(g, "b-arc-foliation-change")
            for k in (0, 1)]
    assert any(validate(h).ok and euler_audit(h).table == euler_audit(f).table for h in back)


def test_interior_exchange_drops_one_of_each(corpus):
    f, s = _first(corpus, "interior-exchange")
    g = interior_exchange(f, s)
    before, after = singularity_counts(f).as_tuple(), singularity_counts(g).as_tuple()
    assert tuple(a - b for a, b in zip(before, after)) == (1, 1, 1, 1)


def test_interior_exchange_refuses_strongly_essential_arcs(corpus):
    f, s = _first(corpus, "interior-exchange")
    g = replace(f, barc={e: BFlags(True, True, True) for e in f.barc})
    assert not _sites(g, "interior-exchange")
    with pytest.raises(NotApplicable):
        interior_exchange(g, s)


def test_boundary_shrinking_exchange(corpus):
    f, s = _first(corpus, "boundary-shrinking-exchange")
    g, _ = boundary_shrinking_exchange(f, s)
    assert s.cells[0] not in g.vertices
    assert validate(g).ok
    # the same point with both tiles of one sign is not a site
    F = [x for x in f.faces.values() if s.cells[0] in x.corners]
    same = replace(f, faces={**f.faces, **{x.id: replace(x, sign=1) for x in F}})
    with pytest.raises(NotApplicable):
        boundary_shrinking_exchange(same, s)


@pytest.mark.parametrize("sign,dsl", [(1, 0), (-1, 2)])
def test_destabilization_effect(sign, dsl):
    # a degenerated as-tile whose sign gives a destabilization of sign ``sign``
    for tile_sign in (1, -1):
        f = stabilized_product("alpha", tile_sign)
        sites = _sites(f, "tile-destabilization")
        if sites and sites[0].sign == sign:
            g, eff = destabilize_tile(f, sites[0])
            assert (eff.dn_alpha, eff.dsl_alpha) == (-1, dsl)
            assert g.n_singular() == 0
            return
    pytest.fail("no destabilization of the requested sign")


def test_destabilization_obstructed_by_the_other_braid():
    f = stabilized_product("alpha", 1)
    s = _sites(f, "tile-destabilization")[0]
    with pytest.raises(ObstructedByIntersection):
        destabilize_tile(replace(f, pierced=(s.cells[0],)), s)


def test_stabilization_effects():
    f = fixture("ex2_2").complex
    neg = [s for s in _sites(f, "tile-stabilization") if f.faces[s.cells[0]].sign < 0][0]
    g, eff = stabilize_tile(f, neg, neg.sign)
    assert neg.sign == 1 and (eff.dn_alpha, eff.dsl_alpha) == (1, 0)
    c0, c1 = singularity_counts(f), singularity_counts(g)
    assert (c0.e_minus - c1.e_minus, c0.h_minus - c1.h_minus) == (1, 1)
    pos = [s for s in _sites(f, "tile-stabilization") if f.faces[s.cells[0]].sign > 0][0]
    _, eff = stabilize_tile(f, pos, pos.sign)
    assert pos.sign == -1 and eff.dsl_alpha == -2


def test_stabilization_needs_an_ab_tile():
    f = stabilized_product("alpha", 1)
    fid = next(iter(f.faces))
    with pytest.raises(NotApplicable):
        stabilize_tile(f, MoveSite("tile-stabilization", (fid, "v"), "C0", "alpha", 1), 1)


def test_sign_swap_is_an_involution(corpus):
    f, s = _first(corpus, "sign-swap-exchange")
    v = s.cells[0]
    signs = sorted((x.id, x.sign) for x in f.faces.values() if v in x.corners)
    g = swap_signs_exchange(f, v)
    swapped = sorted((x.id, x.sign) for x in g.faces.values() if v in x.corners)
    assert [x[1] for x in swapped] == [x[1] for x in reversed(signs)]
    assert swap_signs_exchange(g, v) == f


def test_sign_swap_needs_opposite_signs(corpus):
    f, s = _first(corpus, "sign-swap-exchange")
    v = s.cells[0]
    same = replace(f, faces={k: replace(x, sign=1) if v in x.corners else x
                             for k, x in f.faces.items()})
    with pytest.raises(NotApplicable):
        swap_signs_exchange(same, v)


def test_microflype_moves_a_strand_to_the_other_braid(corpus):
    for f in corpus:
        for fid, F in sorted(f.faces.items()):
            if not (F.degenerate and f.face_kind(F) == "aa"):
                continue
            g = replace(f, pierced=(fid,))
            sites = _sites(g, "microflype")
            if sites:
                h, eff = microflype(g, sites[0])
                assert eff.dn_alpha + eff.dn_beta == -1 and eff.dn_pierce == 1
                assert eff.dsl_alpha == eff.dsl_beta == eff.dsl_pierce == 0
                assert validate(h).ok
                return
    pytest.skip("no pierced aa-tile site in the corpus")


def test_microflype_needs_an_intersection():
    f = stabilized_product("alpha", 1)
    fid, v = _sites(f, "tile-destabilization")[0].cells
    with pytest.raises(NotApplicable):
        microflype(f, MoveSite("microflype", (fid, v), "C0", "alpha", 1))


def test_every_listed_move_applies(corpus):
    for f in corpus[:60]:
        for s in applicable_moves(f):
            g, _ = apply_move(f, s)
            assert validate(g).ok, (f.name, s)
