"""Families of tile complexes: alternating tilings, the disc family with
sl = -(n-1) + eps*n, and random annuli grown by inverse moves."""
from __future__ import annotations

import random
from dataclasses import replace

from .foliation import (
    ALPHA,
    BETA,
    Edge,
    Face,
    FoliationComplex,
    Vertex,
    make_complex,
    singularity_counts,
    validate,
)
from .errors import NotApplicable
from .moves import _parts, _rebuild, applicable_moves, b_arc_foliation_change
from .page import new_page


def alternating_tiling(k: int, eps: int = 1, page=None, component="C0", name=None):
    """Annulus tiled by k alpha-tiles of sign eps and k beta-tiles of sign -eps.

    Positive elliptics p_i and negative elliptics m_i alternate along the
    binding component; every elliptic point has type (1,2).
    """
    if k < 1:
        raise ValueError("k must be positive")
    page = page or new_page(0, 2)
    ell = {}
    for i in range(k):
        ell[f"p{i}"] = (1, component)
        ell[f"m{i}"] = (-1, component)
    faces = []
    for i in range(k):
        j = (i + 1) % k
        faces.append((f"ta{i}", (ALPHA, f"p{i}", f"m{i}", f"p{j}"), eps, 2 * i + 1,
                      (f"A{i}", f"L{i}", f"R{i}", f"A{j}")))
        faces.append((f"tb{i}", (BETA, f"m{j}", f"p{j}", f"m{i}"), -eps, 2 * i + 2,
                      (f"B{j}", f"L{j}", f"R{i}", f"B{i}")))
    return make_complex("annulus", page, ell, faces, n_alpha=k, n_beta=k,
                        name=name or f"alternating-{k}{'+' if eps > 0 else '-'}")


def fan_disc(n: int, eps: int, page=None, name=None, v_component=None, w_components=None):
    """Disc with one negative elliptic v and n positive ones, tiled by n ab-tiles of sign eps.

    Its boundary is an (n-1)-braid with sl = -(n-1) + eps*n.  Every elliptic
    point sits on the first binding component unless told otherwise.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    page = page or new_page(0, 2)
    w_components = list(w_components or [page.labels[0]] * n)
    ell = {"v": (-1, v_component or page.labels[0])}
    ell.update({f"w{i}": (1, w_components[i]) for i in range(n)})
    faces = []
    for i in range(n):
        j = (i + 1) % n
        faces.append((f"r{i}", (ALPHA, f"w{i}", "v", f"w{j}"), eps, i + 1,
                      (f"a{i}", f"b{i}", f"b{j}", f"a{j}")))
    return make_complex("disc", page, ell, faces,
                        name=name or f"fan-{n}{'+' if eps > 0 else '-'}")


def stabilized_product(side=ALPHA, sign=1, page=None, component="C0"):
    """One degenerated as-tile: a product annulus after a single stabilization."""
    page = page or new_page(0, 2)
    if side == ALPHA:
        ell = {"v": (1, component)}
        faces = [("h0", (ALPHA, "v", ALPHA, BETA), sign, 1, ("a", "a", "s", "s"))]
        n = (2, 1)
    else:
        ell = {"v": (-1, component)}
        faces = [("h0", (BETA, "v", BETA, ALPHA), sign, 1, ("a", "a", "s", "s"))]
        n = (1, 2)
    return make_complex("annulus", page, ell, faces, n_alpha=n[0], n_beta=n[1],
                        name=f"stabilized-{side}")


# ---------------------------------------------------------------------------
# random growth


def _fresh(pool, prefix):
    i = 0
    while f"{prefix}{i}" in pool:
        i += 1
    return f"{prefix}{i}"


def _next_time(f):
    return max((x.time for x in f.faces.values()), default=0) + 1


def insert_leaf(f, edge, sign, component="C0"):
    """Inverse destabilization: a new valence-one elliptic point next to ``edge``.

    ``edge`` must join a braid boundary to some vertex; the new point sits in
    a degenerated tile of sign ``sign`` between the two copies of ``edge``.
    """
    e = f.edges[edge]
    boundary = e.x if e.x in (ALPHA, BETA) else e.y if e.y in (ALPHA, BETA) else None
    if boundary is None:
        raise ValueError(f"{edge} does not reach a braid boundary")
    vertices, edges, faces, barc = _parts(f)
    v = _fresh(vertices, "e")
    vertices[v] = Vertex(v, "elliptic", 1 if boundary == ALPHA else -1, component)
    w = e.y if boundary == e.x else e.x
    # the face traversing edge from the boundary to w keeps it
    fid, k = next((g, k) for g, k in f.edge_uses()[edge] if f.faces[g].corners[k] == boundary)
    ea, g1 = _fresh(edges, "l"), None
    edges[ea] = Edge(ea, *((boundary, v) if boundary == ALPHA else (v, boundary)), "a")
    g1 = _fresh(edges, "l")
    edges[g1] = Edge(g1, e.x, e.y, e.kind)
    H = faces[fid]
    faces[fid] = replace(H, edges=H.edges[:k] + (g1,) + H.edges[k + 1:])
    d = _fresh(faces, "h")
    faces[d] = Face(d, sign, _next_time(f), (boundary, v, boundary, w), (ea, ea, edge, g1))
    return _rebuild(f, vertices, edges, faces, barc)


def split_vertex(f, t, j, m, sign, component="C0"):
    """Inverse stabilization/exchange: split ``t`` along fan positions ``j`` and ``m``.

    The corners of ``t`` strictly after position ``m`` up to ``j`` move to a
    new vertex ``u`` of the same class, and a new tile (t, y1, u, y2) of sign
    ``sign`` is inserted.
    """
    fan = f.fan(t)
    d = len(fan)
    if j == m or not (0 <= j < d and 0 <= m < d):
        raise ValueError("need two distinct fan positions")
    vertices, edges, faces, barc = _parts(f)
    cls = f.vertices[t].cls
    u = _fresh(vertices, "e")
    vertices[u] = Vertex(u, "elliptic", -1 if cls == "X" else 1,
                         component if f.vertices[t].kind != "elliptic" else f.vertices[t].component)
    out_edge = [f.faces[g].edges[k] for g, k in fan]
    e0, e3 = out_edge[j], out_edge[m]
    moving = []
    i = (m + 1) % d
    while True:
        moving.append(fan[i])
        if i == j:
            break
        i = (i + 1) % d
    inner = set()
    i = (m + 1) % d
    while i != j:
        inner.add(out_edge[i])
        i = (i + 1) % d
    e1, e2 = _fresh(edges, "s"), None
    y1 = edges[e0].y if edges[e0].x == t else edges[e0].x
    y2 = edges[e3].y if edges[e3].x == t else edges[e3].x
    edges[e1] = Edge(e1, *((u, y1) if cls == "X" else (y1, u)), "b")
    e2 = _fresh(edges, "s")
    edges[e2] = Edge(e2, *((u, y2) if cls == "X" else (y2, u)), "b")
    for k in inner:
        e = edges[k]
        edges[k] = Edge(k, u if e.x == t else e.x, u if e.y == t else e.y, e.kind)
    for g, k in moving:
        F = faces[g]
        cs = list(F.corners)
        es = list(F.edges)
        cs[k] = u
        if es[k] == e0:
            es[k] = e1
        if es[k - 1] == e3:
            es[k - 1] = e2
        faces[g] = replace(F, corners=tuple(cs), edges=tuple(es))
    nf = _fresh(faces, "h")
    faces[nf] = Face(nf, sign, _next_time(f), (t, y1, u, y2), (e0, e1, e2, e3))
    return _rebuild(f, vertices, edges, faces, barc)


def _renormalize_strands(f):
    c = singularity_counts(f)
    if f.surface == "disc":
        return replace(f, n_alpha=c.e_plus - c.e_minus, n_beta=None)
    return replace(f, n_alpha=1 + c.e_plus, n_beta=1 + c.e_minus)


def lemma42_ok(f) -> bool:
    """Every elliptic point meeting only b-arcs sees hyperbolic points of both signs."""
    for v in f.elliptics():
        if f.vertex_type(v.id)[0] == 0 and len(set(f.signs_around(v.id))) < 2:
            return False
    return True


def parallel_b_arcs(f) -> bool:
    """True when two b-arcs join the same pair of elliptic points."""
    seen = set()
    for e in f.edges.values():
        if e.kind != "b":
            continue
        key = frozenset((e.x, e.y))
        if key in seen:
            return True
        seen.add(key)
    return False


def twin_valence_two(f) -> bool:
    """True when two valence-two elliptic points have the same b-neighbours.

    Exchanging one of them turns the other's b-arcs into a loop.
    """
    seen = set()
    for v in f.elliptics():
        inc = f.incident_edges(v.id)
        if len(inc) != 2 or any(e.kind != "b" for e in inc):
            continue
        key = frozenset(e.x if e.y == v.id else e.y for e in inc)
        if key in seen:
            return True
        seen.add(key)
    return False


def random_annulus(rng: random.Random, max_singular: int = 12, steps: int | None = None,
                   page=None, component="C0", lemma42: bool = True, attempts: int = 200,
                   max_exchanges: int = 1, simple: bool = True):
    """A valid c-circle-free annulus complex grown from an alternating tiling.

    Growth steps are leaf insertions, vertex splits and diagonal flips, each
    kept only when the result validates.  All elliptic points lie on
    ``component``.  With ``lemma42`` the result also satisfies the sign
    condition around all-b-arc elliptic points that planar pages force.
    """
    page = page or new_page(0, 2)
    for _ in range(attempts):
        k = rng.choice((0, 0, 2, 2, 3))
        if k:
            f = alternating_tiling(k, rng.choice((1, -1)), page, component)
        else:
            f = stabilized_product(rng.choice((ALPHA, BETA)), rng.choice((1, -1)), page,
                                   component)
        target = rng.randint(min(2 * k, max_singular), max_singular)
        budget = steps if steps is not None else 4 * max_singular
        exchanges = 0
        for _ in range(budget):
            g = _random_step(f, rng, component, max_singular,
                             allow_exchange=exchanges < max_exchanges)
            if g is not None and g.n_singular() == f.n_singular() + 4:
                exchanges += 1
            if g is not None:
                g = _renormalize_strands(g)
                if validate(g).ok:
                    f = g
            if f.n_singular() >= target and rng.random() < 0.5:
                break
        f = _renormalize_strands(f)
        if not validate(f).ok:
            continue
        if lemma42 and not lemma42_ok(f):
            continue
        if simple and (parallel_b_arcs(f) or twin_valence_two(f)):
            continue
        return replace(f, name=f"random-{f.n_singular()}")
    raise RuntimeError("could not grow a valid annulus")


def insert_valence_two(f, fid, sign, component="C0"):
    """Split tile ``fid`` by a new elliptic point joined to corners 0 and 2.

    The two halves get signs ``sign`` and ``-sign``.
    """
    F = f.faces[fid]
    c0, c1, c2, c3 = F.corners
    e0, e1, e2, e3 = F.edges
    vertices, edges, faces, barc = _parts(f)
    cls = f.vertices[c1].cls
    v = _fresh(vertices, "e")
    vertices[v] = Vertex(v, "elliptic", -1 if cls == "X" else 1, component)
    bt, bu = _fresh(edges, "s"), None
    edges[bt] = Edge(bt, *((v, c0) if cls == "X" else (c0, v)), "b")
    bu = _fresh(edges, "s")
    edges[bu] = Edge(bu, *((v, c2) if cls == "X" else (c2, v)), "b")
    faces[fid] = Face(fid, sign, F.time, (c0, c1, c2, v), (e0, e1, bu, bt))
    nf = _fresh(faces, "h")
    faces[nf] = Face(nf, -sign, _next_time(f), (c2, c3, c0, v), (e2, e3, bt, bu))
    return _rebuild(f, vertices, edges, faces, barc)


def _random_step(f, rng, component, max_singular, allow_exchange=True):
    """One inverse move: destabilization, stabilization, interior exchange or a
    b-arc foliation change."""
    op = rng.random()
    sign = rng.choice((1, -1))
    grow = f.n_singular() + 2 <= max_singular
    try:
        if op < 0.25 and grow:
            cands = [e for e in sorted(f.edges) if ALPHA in (f.edges[e].x, f.edges[e].y)
                     or BETA in (f.edges[e].x, f.edges[e].y)]
            if not cands:
                return None
            return insert_leaf(f, rng.choice(cands), sign, component)
        if op < 0.55 and grow:
            t = rng.choice((ALPHA, BETA))
            d = len(f.fan(t))
            if d < 2:
                return None
            j, m = rng.sample(range(d), 2)
            return split_vertex(f, t, j, m, sign, component)
        if op < 0.8 and allow_exchange and f.n_singular() + 4 <= max_singular:
            ell = sorted(v.id for v in f.elliptics())
            if not ell:
                return None
            t = rng.choice(ell)
            d = len(f.fan(t))
            if d < 2:
                return None
            j, m = rng.sample(range(d), 2)
            g = split_vertex(f, t, j, m, sign, component)
            (nf,) = set(g.faces) - set(f.faces)
            return insert_valence_two(g, nf, rng.choice((1, -1)), component)
        sites = [s for s in applicable_moves(f) if s.kind == "b-arc-foliation-change"]
        if not sites:
            return None
        return b_arc_foliation_change(f, rng.choice(sites))
    except (NotApplicable, ValueError, KeyError):
        return None


def random_corpus(count: int, seed: int = 0, **kw):
    rng = random.Random(seed)
    return [random_annulus(rng, **kw) for _ in range(count)]
