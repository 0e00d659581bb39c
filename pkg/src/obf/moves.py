"""Rewrites of the tile complex: exchange moves, (de)stabilizations, flips.

Every move is a local rewrite of the quadrangulated sphere.  Three
primitives do all the work:

``_contract``
    collapse a tile along the diagonal joining two same-class corners;
    used for stabilizations and the second half of exchange moves.
``_remove_leaf``
    delete a valence-one elliptic point together with its degenerated tile
    (destabilization).
``_remove_valence_two``
    delete a valence-two elliptic point, merging its two tiles.

The b-arc foliation change is a diagonal flip in the hexagon formed by the
two tiles sharing the b-arc.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations

from .errors import NotApplicable, ObstructedByIntersection, Unsupported
from .foliation import (
    ALPHA,
    BETA,
    BFlags,
    Edge,
    Face,
    FoliationComplex,
    default_bflags,
    validate,
)

KINDS = (
    "tile-destabilization",
    "interior-exchange",
    "boundary-shrinking-exchange",
    "b-arc-foliation-change",
    "sign-swap-exchange",
    "tile-stabilization",
    "microflype",
)
PRIORITY = {k: i for i, k in enumerate(KINDS)}
# abs-tiles carry one b-arc and take part in foliation changes like ab-tiles
FLIP_KINDS = ("ab", "bb", "abs")


@dataclass(frozen=True)
class MoveSite:
    kind: str
    cells: tuple
    component: str | None = None
    side: str | None = None
    sign: int = 0  # sign of the (de)stabilization, when the move is one

    def sort_key(self):
        return (PRIORITY[self.kind], self.cells)

    def __str__(self):
        return f"{self.kind} site={','.join(self.cells)}"


@dataclass(frozen=True)
class MoveEffect:
    dn_alpha: int = 0
    dn_beta: int = 0
    dsl_alpha: int = 0
    dsl_beta: int = 0
    transverse_alpha: bool = True
    transverse_beta: bool = True
    braid_isotopy: bool = True
    component: str | None = None
    dn_pierce: int = 0
    dsl_pierce: int = 0

    def as_tuple(self):
        return (self.dn_alpha, self.dn_beta, self.dsl_alpha, self.dsl_beta)


@dataclass(frozen=True)
class StabRecord:
    side: str
    sign: int
    tile: str


def trace_line(site: MoveSite, effect: MoveEffect) -> str:
    eff = ",".join(f"{x:+d}" if x else "0" for x in effect.as_tuple())
    return f"move {site.kind} site={','.join(site.cells)} effect=<{eff}>"


# ---------------------------------------------------------------------------
# primitives on plain dicts


def _rotate(face: Face, i: int):
    return face.corners[i:] + face.corners[:i], face.edges[i:] + face.edges[:i]


def _parts(f):
    return dict(f.vertices), dict(f.edges), dict(f.faces), dict(f.barc)


def _rebuild(f, vertices, edges, faces, barc, **kw):
    tmp = replace(f, vertices=vertices)
    new_edges = {k: Edge(k, e.x, e.y, tmp.edge_kind(e.x, e.y)) for k, e in edges.items()}
    tmp = replace(tmp, edges=new_edges)
    flags = {}
    for k, e in new_edges.items():
        if e.kind == "b":
            flags[k] = barc.get(k) or default_bflags(tmp, e)
    pierced = tuple(p for p in f.pierced if p in faces)
    return replace(f, vertices=vertices, edges=new_edges, faces=faces, barc=flags,
                   pierced=pierced, **kw)


def _substitute(faces, skip, edge_map, vertex_map):
    for gid, g in list(faces.items()):
        if gid in skip:
            continue
        es = tuple(edge_map.get(e, e) for e in g.edges)
        cs = tuple(vertex_map.get(c, c) for c in g.corners)
        if es != g.edges or cs != g.corners:
            faces[gid] = replace(g, corners=cs, edges=es)


def _contract(parts, fid, u, target):
    """Collapse tile ``fid`` by merging corner ``u`` into the opposite corner ``target``."""
    vertices, edges, faces, barc = parts
    F = faces[fid]
    idx = [i for i in range(4) if F.corners[i] == target and F.corners[(i + 2) % 4] == u]
    if not idx or F.edges[(idx[0] + 1) % 4] == F.edges[(idx[0] + 2) % 4]:
        raise NotApplicable(f"{fid} cannot be collapsed from {u} onto {target}", clause="diagonal")
    _, (e0, e1, e2, e3) = _rotate(F, idx[0])
    del faces[fid]
    _substitute(faces, (), {e1: e0, e2: e3}, {u: target})
    for k in (e1, e2):
        del edges[k]
        barc.pop(k, None)
    for k, e in list(edges.items()):
        if u in (e.x, e.y):
            edges[k] = Edge(k, target if e.x == u else e.x, target if e.y == u else e.y, e.kind)
    del vertices[u]


def _remove_leaf(parts, v):
    """Delete a valence-one elliptic point ``v`` and its degenerated tile."""
    vertices, edges, faces, barc = parts
    at = [(g.id, i) for g in faces.values() for i, c in enumerate(g.corners) if c == v]
    if len(at) != 1:
        raise NotApplicable(f"{v} is not of valence one", clause="degenerated")
    fid, i = at[0]
    (x, _, x2, w), (ea, eb, f1, g1) = _rotate(faces[fid], (i - 1) % 4)
    if ea != eb or x != x2:
        raise NotApplicable(f"{fid} is not a degenerated tile at {v}", clause="degenerated")
    if f1 == g1:
        # the tile is the whole sphere; only a product may remain
        if vertices[w].kind == "elliptic":
            raise NotApplicable(f"removing {v} would strand {w}", clause="result")
        faces.clear()
        edges.clear()
        barc.clear()
        del vertices[v]
        return fid
    del faces[fid]
    _substitute(faces, (), {g1: f1}, {})
    for k in (ea, g1):
        del edges[k]
        barc.pop(k, None)
    del vertices[v]
    return fid


def _remove_valence_two(parts, v):
    """Delete valence-two ``v``; returns the id of the merged quad and the two
    far endpoints ``(u1, u2)`` of v's edges, which are opposite in it."""
    vertices, edges, faces, barc = parts
    at = [(g.id, i) for g in faces.values() for i, c in enumerate(g.corners) if c == v]
    if len(at) != 2 or at[0][0] == at[1][0]:
        raise NotApplicable(f"{v} is not in exactly two tiles", clause="two tiles")
    (fa, ia), (fb, ib) = at
    (_, u1, p, u2), (b1, c1, c2, bx) = _rotate(faces[fa], ia)
    (_, _, q, _), (by, d1, d2, bz) = _rotate(faces[fb], ib)
    if by != bx or bz != b1 or b1 == bx:
        raise NotApplicable(f"tiles at {v} do not close up", clause="two tiles")
    F = faces[fa]
    faces[fa] = Face(fa, F.sign, F.time, (u1, p, u2, q), (c1, c2, d1, d2))
    del faces[fb]
    for k in (b1, bx):
        del edges[k]
        barc.pop(k, None)
    del vertices[v]
    return fa, fb, b1, u1, u2


def _checked(f, what):
    rep = validate(f)
    if not rep.ok:
        raise NotApplicable(f"{what} leaves an invalid complex: {sorted(rep.codes())}",
                            clause="result")
    return f


# ---------------------------------------------------------------------------
# site predicates


def _degenerate_corner(f, face):
    for i in range(4):
        if face.edges[i - 1] == face.edges[i] and f.vertices[face.corners[i]].kind == "elliptic":
            return face.corners[i]
    return None


def _side_of(f, v):
    return ALPHA if f.vertices[v].sign > 0 else BETA


def _destab_sign(side, face_sign):
    return face_sign if side == ALPHA else -face_sign


def _two_tiles(f, v):
    at = f.corners_at(v)
    if len(at) != 2 or at[0][0] == at[1][0]:
        return None
    return f.faces[at[0][0]], f.faces[at[1][0]]


def applicable_moves(f: FoliationComplex) -> list[MoveSite]:
    if f.stacked or not f.faces:
        return []
    sites = []
    kind = {fid: f.face_kind(x) for fid, x in f.faces.items()}
    for fid, F in f.faces.items():
        if F.degenerate and kind[fid] in ("aa", "as"):
            v = _degenerate_corner(f, F)
            if v is None:
                continue
            side = _side_of(f, v)
            comp = f.vertices[v].component
            eps = _destab_sign(side, F.sign)
            if fid not in f.pierced:
                sites.append(MoveSite("tile-destabilization", (fid, v), comp, side, eps))
            elif kind[fid] == "aa" and eps > 0 and f.pierced.count(fid) == 1:
                sites.append(MoveSite("microflype", (fid, v), comp, side, eps))
        if kind[fid] in ("ab", "abs", "as"):
            for i in range(4):
                b, u = F.corners[i], F.corners[(i + 2) % 4]
                if f.vertices[u].kind != "elliptic" \
                        or F.edges[(i + 1) % 4] == F.edges[(i + 2) % 4]:
                    continue
                if b == ALPHA and f.vertices[u].sign < 0:
                    sites.append(MoveSite("tile-stabilization", (fid, u),
                                          f.vertices[u].component, ALPHA, -F.sign))
                elif b == BETA and f.vertices[u].sign > 0:
                    sites.append(MoveSite("tile-stabilization", (fid, u),
                                          f.vertices[u].component, BETA, F.sign))
    for v in f.elliptics():
        pair = _two_tiles(f, v.id)
        if pair is None:
            continue
        F1, F2 = pair
        k1, k2 = kind[F1.id], kind[F2.id]
        opposite = F1.sign != F2.sign
        if not opposite:
            continue
        if k1 in ("ab", "bb") and k2 in ("ab", "bb"):
            shared = set(F1.edges) & set(F2.edges)
            for e in sorted(shared):
                edge = f.edges[e]
                if v.id in (edge.x, edge.y) and edge.kind == "b" \
                        and not f.barc.get(e, BFlags()).strongly_essential \
                        and _collapsible(f, v.id, e):
                    sites.append(MoveSite("interior-exchange", (v.id, e), v.component))
        if k1 in ("ab", "abs") and k2 in ("ab", "abs") and f.vertex_type(v.id) == (1, 1):
            sites.append(MoveSite("boundary-shrinking-exchange", (v.id,), v.component,
                                  _side_of(f, v.id), 1))
        if k1 == "aa" and k2 == "aa" and v.sign > 0:
            sites.append(MoveSite("sign-swap-exchange", (v.id,), v.component))
    for (i1, F1), (i2, F2) in combinations(sorted(f.faces.items()), 2):
        if F1.sign != F2.sign or kind[i1] not in FLIP_KINDS or kind[i2] not in FLIP_KINDS:
            continue
        shared = [e for e in set(F1.edges) & set(F2.edges) if f.edges[e].kind == "b"]
        if len(shared) != 1:
            continue
        (e,) = shared
        if F1.edges.count(e) == 1 and f.barc.get(e, BFlags()).separating:
            sites.append(MoveSite("b-arc-foliation-change", (i1, i2, e)))
    return sorted(sites, key=MoveSite.sort_key)


def _collapsible(f, v, b):
    """Whether removing ``v`` leaves a tile whose diagonal through the far end of
    ``b`` can be collapsed (a b-arc loop counts: it is refused later, loudly)."""
    parts = _parts(f)
    edge = f.edges[b]
    far = edge.x if edge.y == v else edge.y
    try:
        fid, _, _, u1, u2 = _remove_valence_two(parts, v)
        if far != u1:
            u1, u2 = u2, u1
        if u1 != u2:
            _contract(parts, fid, u1, u2)
    except NotApplicable:
        return False
    return True


def _require(f, site, kind):
    if site.kind != kind:
        raise NotApplicable(f"{site} is not a {kind} site", clause="kind")
    if site not in applicable_moves(f):
        raise NotApplicable(f"{site} fails the {kind} predicate", clause="predicate")


# ---------------------------------------------------------------------------
# the moves


def flip_edge(f: FoliationComplex, e: str, option: int = 0) -> FoliationComplex:
    """Diagonal flip of edge ``e`` inside the hexagon of its two tiles.

    ``option`` picks one of the two other diagonals.  No validity check.
    """
    (i1, k1), (i2, k2) = f.edge_uses()[e]
    if i1 == i2:
        raise NotApplicable(f"{e} bounds a single tile", clause="two tiles")
    F1, F2 = f.faces[i1], f.faces[i2]
    (p0, p1, p2, p3), (_, r1, r2, r3) = _rotate(F1, k1)
    (_, _, q2, q3), (_, s1, s2, s3) = _rotate(F2, k2)
    ca, ea, cb, eb = (
        ((p2, p3, p0, q2), (r2, r3, s1), (q2, q3, p1, p2), (s2, s3, r1)),
        ((p3, p0, q2, q3), (r3, s1, s2), (q3, p1, p2, p3), (s3, r1, r2)),
    )[option]
    vertices, edges, faces, barc = _parts(f)
    x, y = (ca[3], ca[0]) if vertices[ca[3]].cls == "X" else (ca[0], ca[3])
    new = f"{e}'"
    while new in edges:
        new += "'"
    del edges[e]
    flags = barc.pop(e, None)
    edges[new] = Edge(new, x, y, "b")
    if flags is not None:
        barc[new] = flags
    faces[i1] = Face(i1, F1.sign, F1.time, ca, ea + (new,))
    faces[i2] = Face(i2, F2.sign, F2.time, cb, eb + (new,))
    return _rebuild(f, vertices, edges, faces, barc)


def b_arc_foliation_change(f: FoliationComplex, site: MoveSite) -> FoliationComplex:
    """Replace the shared b-arc of two same-sign tiles by another hexagon diagonal."""
    _require(f, site, "b-arc-foliation-change")
    g = None
    for option in (0, 1):
        g = flip_edge(f, site.cells[2], option)
        if validate(g).ok:
            return g
    return _checked(g, "foliation change")


def interior_exchange(f: FoliationComplex, site: MoveSite) -> FoliationComplex:
    """Remove an elliptic point and the far end of a boundary-parallel b-arc."""
    _require(f, site, "interior-exchange")
    v, b = site.cells
    parts = _parts(f)
    edge = f.edges[b]
    far = edge.x if edge.y == v else edge.y
    fid, _, _, u1, u2 = _remove_valence_two(parts, v)
    if far != u1:
        u1, u2 = u2, u1
    if u1 == u2:
        # the two b-arcs form a loop; removing v and u1 leaves a c-circle,
        # which a collapsed-sphere complex cannot carry
        raise Unsupported(f"{v}: both b-arcs end at {u1}; the exchange would create a c-circle")
    _contract(parts, fid, u1, u2)
    return _checked(_rebuild(f, *parts), "interior exchange")


def boundary_shrinking_exchange(f: FoliationComplex, site: MoveSite):
    """Remove a type (1,1) elliptic point and both of its ab-tiles.

    Returns the new complex and the pair (positive stabilization, positive
    destabilization) the move factors through.
    """
    _require(f, site, "boundary-shrinking-exchange")
    (v,) = site.cells
    F1, F2 = _two_tiles(f, v)
    if F1.id in f.pierced or F2.id in f.pierced:
        raise ObstructedByIntersection(f"a tile at {v} meets the other braid")
    side = _side_of(f, v)
    # the tile collapsed first is the one giving a positive stabilization
    stab_tile = next(F for F in (F1, F2) if (-F.sign if side == ALPHA else F.sign) > 0)
    rest = F2 if stab_tile is F1 else F1
    b = next(e for e in f.incident_edges(v) if e.kind == "b")
    u = b.x if b.y == v else b.y
    parts = _parts(f)
    _contract(parts, stab_tile.id, u, side)
    _remove_leaf(parts, v)
    g = _checked(_rebuild(f, *parts), "boundary-shrinking exchange")
    return g, (StabRecord(side, 1, stab_tile.id), StabRecord(side, 1, rest.id))


def _sl_step(eps):
    return 0 if eps > 0 else 2


def _effect(side, dn, dsl, preserved, comp, **kw):
    if side == ALPHA:
        return MoveEffect(dn_alpha=dn, dsl_alpha=dsl, transverse_alpha=preserved,
                          braid_isotopy=False, component=comp, **kw)
    return MoveEffect(dn_beta=dn, dsl_beta=dsl, transverse_beta=preserved,
                      braid_isotopy=False, component=comp, **kw)


def _shift_n(f, side, d):
    if side == ALPHA:
        return {"n_alpha": f.n_alpha + d}
    return {"n_beta": f.n_beta + d}


def destabilize_tile(f: FoliationComplex, site: MoveSite):
    if site.kind == "microflype" or (site.cells and site.cells[0] in f.pierced):
        raise ObstructedByIntersection(
            f"tile {site.cells[0]} meets the other braid; use a microflype")
    _require(f, site, "tile-destabilization")
    fid, v = site.cells
    parts = _parts(f)
    _remove_leaf(parts, v)
    g = _checked(_rebuild(f, *parts, **_shift_n(f, site.side, -1)), "destabilization")
    return g, _effect(site.side, -1, _sl_step(site.sign), site.sign > 0, site.component)


def stabilize_tile(f: FoliationComplex, site: MoveSite, eps: int):
    if site.kind != "tile-stabilization":
        raise NotApplicable(f"{site} is not a stabilization site", clause="kind")
    _require(f, site, "tile-stabilization")
    if eps != site.sign:
        raise NotApplicable(f"tile {site.cells[0]} only admits a stabilization of sign "
                            f"{site.sign:+d}", clause="sign")
    fid, u = site.cells
    parts = _parts(f)
    _contract(parts, fid, u, site.side)
    g = _checked(_rebuild(f, *parts, **_shift_n(f, site.side, 1)), "stabilization")
    return g, _effect(site.side, 1, -_sl_step(eps), eps > 0, site.component)


def swap_signs_exchange(f: FoliationComplex, elliptic: str) -> FoliationComplex:
    v = f.vertices.get(elliptic)
    site = MoveSite("sign-swap-exchange", (elliptic,), v.component if v else None)
    _require(f, site, "sign-swap-exchange")
    F1, F2 = _two_tiles(f, elliptic)
    faces = dict(f.faces)
    faces[F1.id] = replace(F1, sign=F2.sign)
    faces[F2.id] = replace(F2, sign=F1.sign)
    return replace(f, faces=faces)


def microflype(f: FoliationComplex, site: MoveSite):
    """Positive destabilization along a tile pierced once by an outside braid.

    The outside braid picks up a positive stabilization; its strand count
    is reported in ``dn_pierce``.
    """
    if site.kind != "microflype":
        raise NotApplicable(f"{site} is not a microflype site", clause="kind")
    if site.cells and site.cells[0] in f.faces and site.cells[0] not in f.pierced:
        raise NotApplicable("the tile is not pierced; destabilize it directly",
                            clause="meets the other braid")
    if f.pierced.count(site.cells[0]) > 1:
        raise Unsupported("the outside braid meets the tile more than once")
    _require(f, site, "microflype")
    if site.sign < 0:
        raise NotApplicable("only positive destabilizations induce a microflype",
                            clause="positive")
    fid, v = site.cells
    parts = _parts(f)
    _remove_leaf(parts, v)
    g = _checked(_rebuild(f, *parts, **_shift_n(f, site.side, -1)), "microflype")
    return g, _effect(site.side, -1, 0, True, site.component, dn_pierce=1, dsl_pierce=0)


def apply_move(f: FoliationComplex, site: MoveSite):
    """Apply any site; returns ``(complex, effect)``."""
    if site.kind == "b-arc-foliation-change":
        return b_arc_foliation_change(f, site), MoveEffect(component=site.component)
    if site.kind == "interior-exchange":
        return interior_exchange(f, site), MoveEffect(braid_isotopy=False, component=site.component)
    if site.kind == "boundary-shrinking-exchange":
        g, _ = boundary_shrinking_exchange(f, site)
        return g, MoveEffect(braid_isotopy=False, component=site.component)
    if site.kind == "sign-swap-exchange":
        return swap_signs_exchange(f, site.cells[0]), MoveEffect(braid_isotopy=False,
                                                                 component=site.component)
    if site.kind == "tile-destabilization":
        return destabilize_tile(f, site)
    if site.kind == "tile-stabilization":
        return stabilize_tile(f, site, site.sign)
    if site.kind == "microflype":
        return microflype(f, site)
    raise NotApplicable(f"unknown move kind {site.kind}", clause="kind")
