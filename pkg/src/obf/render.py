"""Static drawings: DOT for region decompositions, SVG for graphs and movie filmstrips.

The DOT graph has one node per singular point.  Elliptic points are labelled
by their sign and binding component, hyperbolic points by their sign and the
kind of their region.  Every 1-cell becomes one edge:

* an arc between two elliptic points joins them directly;
* an arc from an elliptic point to a collapsed braid boundary joins the
  elliptic point to the hyperbolic point of the first tile using the arc;
* an s-arc (boundary to boundary) joins the hyperbolic points of the two
  tiles on either side of it.
"""
from __future__ import annotations

import math
from html import escape

from .foliation import CLayer, FoliationComplex
from .movie import Movie, movie_slices

_SIGN = {1: "+", -1: "-", 0: ""}


def _graph(f: FoliationComplex, prefix=""):
    """(nodes, edges): nodes are (id, label, shape), edges are (u, v, label, style)."""
    if f.stacked:
        nodes, edges = [], []
        for k, item in enumerate(f.stack):
            p = f"{prefix}{k}."
            if isinstance(item, CLayer):
                ha, hb = f"{p}{item.id}.alpha", f"{p}{item.id}.beta"
                nodes += [(f"{p}{item.v}", f"{item.v} +{item.v_component}", "circle"),
                          (f"{p}{item.w}", f"{item.w} -{item.w_component}", "circle"),
                          (ha, f"{_SIGN[item.sign_alpha]} ac", "box"),
                          (hb, f"{_SIGN[item.sign_beta]} ac", "box")]
                edges += [(f"{p}{item.v}", ha, "a", "dashed"), (ha, hb, "c", "dotted"),
                          (f"{p}{item.w}", hb, "a", "dashed")]
            else:
                n2, e2 = _graph(item, p)
                nodes += n2
                edges += e2
        return nodes, edges
    nodes = []
    for v in sorted(f.elliptics(), key=lambda v: v.id):
        nodes.append((prefix + v.id, f"{v.id} {_SIGN[v.sign]}{v.component}", "circle"))
    faces = sorted(f.faces.values(), key=lambda x: (x.time, x.id))
    for x in faces:
        nodes.append((prefix + "h:" + x.id, f"{_SIGN[x.sign]} {f.face_kind(x)}", "box"))
    users: dict = {}
    for x in faces:
        for e in x.edges:
            users.setdefault(e, []).append(x.id)
    elliptic = {v.id for v in f.elliptics()}
    edges = []
    for eid in sorted(f.edges):
        e = f.edges[eid]
        ends = [u for u in (e.x, e.y) if u in elliptic]
        touching = users.get(eid, [])
        if len(ends) == 2:
            edges.append((prefix + ends[0], prefix + ends[1], e.kind, "solid"))
        elif len(ends) == 1:
            edges.append((prefix + ends[0], prefix + "h:" + touching[0], e.kind, "dashed"))
        else:
            a, b = (touching + touching)[:2]
            edges.append((prefix + "h:" + a, prefix + "h:" + b, e.kind, "dotted"))
    return nodes, edges


def to_dot(f: FoliationComplex) -> str:
    nodes, edges = _graph(f)
    out = [f'graph "{f.name or "complex"}" {{', "  node [fontname=Helvetica];"]
    for nid, label, shape in nodes:
        out.append(f'  "{nid}" [label="{label}", shape={shape}];')
    for u, v, label, style in edges:
        out.append(f'  "{u}" -- "{v}" [label="{label}", style={style}];')
    out.append("}")
    return "\n".join(out) + "\n"


def _svg(width, height, body):
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">\n' + "\n".join(body) + "\n</svg>\n")


def _ring(ids, cx, cy, r):
    n = max(len(ids), 1)
    return {nid: (cx + r * math.cos(2 * math.pi * k / n - math.pi / 2),
                  cy + r * math.sin(2 * math.pi * k / n - math.pi / 2))
            for k, nid in enumerate(ids)}


def to_svg(f: FoliationComplex, color: bool = True) -> str:
    """The DOT graph laid out with every node on one circle."""
    nodes, edges = _graph(f)
    size = 160 + 40 * len(nodes)
    pos = _ring([n[0] for n in nodes], size / 2, size / 2, size / 2 - 60)
    dash = {"solid": "", "dashed": ' stroke-dasharray="6 3"', "dotted": ' stroke-dasharray="2 3"'}
    body = []
    for u, v, label, style in edges:
        (x1, y1), (x2, y2) = pos[u], pos[v]
        body.append(f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
                    f'stroke="black"{dash[style]}/>')
        body.append(f'<text x="{(x1 + x2) / 2:.1f}" y="{(y1 + y2) / 2:.1f}" '
                    f'font-size="10">{escape(label)}</text>')
    for nid, label, shape in nodes:
        x, y = pos[nid]
        fill = _fill(label, color)
        if shape == "box":
            body.append(f'<rect x="{x - 22:.1f}" y="{y - 10:.1f}" width="44" height="20" '
                        f'fill="{fill}" stroke="black"/>')
        else:
            body.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="14" fill="{fill}" stroke="black"/>')
        body.append(f'<text x="{x:.1f}" y="{y + 28:.1f}" font-size="11" '
                    f'text-anchor="middle">{escape(label)}</text>')
    return _svg(int(size), int(size), body)


def _fill(label, color):
    if not color:
        return "white"
    if " +" in f" {label}" or label.startswith("+"):
        return "#f4c7c3"
    if " -" in f" {label}" or label.startswith("-"):
        return "#c6dbef"
    return "white"


def movie_svg(m: Movie, color: bool = True) -> str:
    """Filmstrip: one panel per slice, points on a circle and leaves as chords."""
    s = m.slice0
    points = sorted(s.elliptics) + sorted(s.punctures)
    shots = movie_slices(m)
    panel = 220
    body = []
    for k, (ev, leaves) in enumerate(shots):
        ox = k * panel
        pos = _ring(points, ox + panel / 2, panel / 2 + 10, panel / 2 - 40)
        body.append(f'<rect x="{ox + 5}" y="5" width="{panel - 10}" height="{panel + 30}" '
                    f'fill="none" stroke="gray"/>')
        title = "t = 0" if ev is None else f"t = {ev.time} ({_SIGN[ev.sign]})"
        body.append(f'<text x="{ox + panel / 2}" y="22" font-size="12" '
                    f'text-anchor="middle">{escape(title)}</text>')
        for lid in sorted(leaves):
            leaf = leaves[lid]
            if leaf.kind == "c" or len(leaf.ends) != 2:
                cx, cy = ox + panel / 2, panel / 2 + 10
                body.append(f'<circle cx="{cx}" cy="{cy}" r="18" fill="none" stroke="green"/>')
                continue
            (x1, y1), (x2, y2) = pos[leaf.ends[0]], pos[leaf.ends[1]]
            stroke = {"a": "#b2182b", "b": "#2166ac", "s": "#4d4d4d"}.get(leaf.kind, "black") \
                if color else "black"
            body.append(f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
                        f'stroke="{stroke}"/>')
            body.append(f'<text x="{(x1 + x2) / 2:.1f}" y="{(y1 + y2) / 2 - 3:.1f}" '
                        f'font-size="9">{escape(lid)}</text>')
        for p in points:
            x, y = pos[p]
            sign = (s.elliptics.get(p) or s.punctures.get(p))[0]
            shape = "circle" if p in s.elliptics else "rect"
            fill = ("#f4c7c3" if sign > 0 else "#c6dbef") if color else "white"
            if shape == "circle":
                body.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="5" fill="{fill}" stroke="black"/>')
            else:
                body.append(f'<rect x="{x - 4:.1f}" y="{y - 4:.1f}" width="8" height="8" '
                            f'fill="{fill}" stroke="black"/>')
            body.append(f'<text x="{x:.1f}" y="{y - 8:.1f}" font-size="9" '
                        f'text-anchor="middle">{escape(p)}</text>')
    return _svg(panel * len(shots), panel + 40, body)
