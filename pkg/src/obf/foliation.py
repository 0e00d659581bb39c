"""Signed cell complexes of open book foliations.

An open book foliation of a disc or of cobounding annuli is stored as the
cell decomposition obtained by collapsing each braid boundary to a point.
Elliptic points and the collapsed boundaries are 0-cells, a/b/s-arcs are
1-cells and every hyperbolic point owns one quadrilateral 2-cell (tile).
Vertices split into two classes and every edge joins one of each:

* class X: the collapsed positive boundary ``alpha`` and negative elliptics;
* class Y: the collapsed negative boundary ``beta`` and positive elliptics.

Each face is an oriented closed walk of four (corner, edge) steps; an edge
occurs twice over all faces, once in each direction.

Annuli carrying core-parallel c-circles are stored as a stack of
c-circle-free pieces separated by layers, each layer being a pair of
degenerated ac-annuli glued along one c-circle.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping

from .errors import (
    EmptyDecomposition,
    InconsistentLedger,
    NotApplicable,
    WrongSurfaceKind,
)
from .page import Page, new_page

ALPHA = "alpha"
BETA = "beta"
TILE_KINDS = ("aa", "ab", "bb", "as", "abs")
ALL_REGION_KINDS = ("aa", "ab", "bb", "ac", "bc", "cc", "as", "abs", "cs")


@dataclass(frozen=True)
class Vertex:
    id: str
    kind: str  # "elliptic" | "alpha" | "beta"
    sign: int = 0
    component: str | None = None

    @property
    def cls(self) -> str:
        if self.kind == ALPHA or (self.kind == "elliptic" and self.sign < 0):
            return "X"
        return "Y"


@dataclass(frozen=True)
class Edge:
    id: str
    x: str
    y: str
    kind: str


@dataclass(frozen=True)
class Face:
    id: str
    sign: int
    time: float
    corners: tuple[str, str, str, str]
    edges: tuple[str, str, str, str]

    @property
    def degenerate(self) -> bool:
        return len(set(self.edges)) < 4


@dataclass(frozen=True)
class BFlags:
    separating: bool = True
    essential: bool = False
    strongly_essential: bool = False


@dataclass(frozen=True)
class CLayer:
    """Two degenerated ac-annuli sharing one c-circle.

    ``v`` is the positive elliptic point of the region next to the alpha
    side, ``w`` the negative one next to the beta side.
    """

    id: str
    sign_alpha: int
    sign_beta: int
    v: str
    w: str
    v_component: str
    w_component: str
    time_alpha: float = 0.25
    time_beta: float = 0.75
    core_parallel: bool = True
    circle_separating: bool = True


@dataclass(frozen=True)
class FoliationComplex:
    surface: str  # "annulus" | "disc"
    page: Page
    vertices: Mapping[str, Vertex] = field(default_factory=dict)
    edges: Mapping[str, Edge] = field(default_factory=dict)
    faces: Mapping[str, Face] = field(default_factory=dict)
    barc: Mapping[str, BFlags] = field(default_factory=dict)
    n_alpha: int = 1
    n_beta: int | None = 1
    pierced: tuple = ()
    stack: tuple = ()
    name: str = ""

    # -- basic queries ------------------------------------------------------

    @property
    def stacked(self) -> bool:
        return bool(self.stack)

    def pieces(self):
        return [p for p in self.stack if isinstance(p, FoliationComplex)]

    def layers(self):
        return [p for p in self.stack if isinstance(p, CLayer)]

    def elliptics(self):
        return [v for v in self.vertices.values() if v.kind == "elliptic"]

    def edge_kind(self, x: str, y: str) -> str:
        ell = sum(1 for v in (x, y) if self.vertices[v].kind == "elliptic")
        return {2: "b", 1: "a", 0: "s"}[ell]

    def face_kind(self, face: Face) -> str:
        c = Counter(self.edges[e].kind for e in face.edges)
        key = (c["a"], c["b"], c["s"])
        return {
            (4, 0, 0): "aa",
            (2, 2, 0): "ab",
            (0, 4, 0): "bb",
            (2, 0, 2): "as",
            (2, 1, 1): "abs",
            (0, 0, 4): "ss",
        }.get(key, "??")

    def edge_uses(self):
        """edge id -> list of (face id, position) where it is traversed."""
        uses = {e: [] for e in self.edges}
        for f in self.faces.values():
            for i, e in enumerate(f.edges):
                uses.setdefault(e, []).append((f.id, i))
        return uses

    def incident_edges(self, v: str):
        return [e for e in self.edges.values() if v in (e.x, e.y)]

    def vertex_type(self, v: str) -> tuple[int, int]:
        a = b = 0
        for e in self.incident_edges(v):
            if e.kind == "a":
                a += 1
            elif e.kind == "b":
                b += 1
        return a, b

    def degree(self, v: str) -> int:
        return len(self.incident_edges(v))

    def corners_at(self, v: str):
        """(face id, position) for every corner of every tile at ``v``."""
        return [(f.id, i) for f in self.faces.values() for i, c in enumerate(f.corners) if c == v]

    def fan(self, v: str):
        """Corners at ``v`` in rotation order, following shared edges around ``v``."""
        corners = self.corners_at(v)
        if not corners:
            return []
        uses = self.edge_uses()
        order = [min(corners)]
        seen = {order[0]}
        while True:
            fid, i = order[-1]
            out = self.faces[fid].edges[i]
            other = [u for u in uses.get(out, []) if u != (fid, i)]
            if len(other) != 1:
                break
            gid, k = other[0]
            nxt = (gid, (k + 1) % 4)
            if nxt in seen or self.faces[gid].corners[nxt[1]] != v:
                break
            order.append(nxt)
            seen.add(nxt)
        return order

    def signs_around(self, v: str):
        return [self.faces[fid].sign for fid, _ in self.fan(v)]

    def n_singular(self) -> int:
        c = singularity_counts(self)
        return c.e_plus + c.e_minus + c.h_plus + c.h_minus

    def with_(self, **kw) -> "FoliationComplex":
        return replace(self, **kw)


# ---------------------------------------------------------------------------
# construction helpers


def make_complex(surface, page, elliptics, faces, *, n_alpha=None, n_beta=None,
                 barc=None, pierced=(), name=""):
    """Build a complex from tile corner lists.

    ``elliptics`` maps id -> (sign, component).  ``faces`` is a list of
    ``(face id, corners, sign, time)`` or ``(face id, corners, sign, time,
    edges)``; without explicit edge ids, an edge is named after the sorted
    pair of its endpoints, so multi-edges need explicit ids.
    """
    vertices = {ALPHA: Vertex(ALPHA, ALPHA)}
    if surface == "annulus":
        vertices[BETA] = Vertex(BETA, BETA)
    for vid, (sign, comp) in elliptics.items():
        vertices[vid] = Vertex(vid, "elliptic", sign, comp)
    edges: dict[str, Edge] = {}
    out_faces = {}
    tmp = FoliationComplex(surface, page, vertices)
    for spec in faces:
        fid, corners, sign, time = spec[:4]
        given = spec[4] if len(spec) > 4 else None
        eids = []
        for i in range(4):
            u, w = corners[i], corners[(i + 1) % 4]
            x, y = (u, w) if vertices[u].cls == "X" else (w, u)
            eid = given[i] if given else f"{x}~{y}"
            if eid not in edges:
                edges[eid] = Edge(eid, x, y, tmp.edge_kind(x, y))
            eids.append(eid)
        out_faces[fid] = Face(fid, sign, time, tuple(corners), tuple(eids))
    fc = FoliationComplex(surface, page, vertices, edges, out_faces,
                          pierced=tuple(sorted(pierced)), name=name)
    flags = {}
    for e in edges.values():
        if e.kind == "b":
            flags[e.id] = (barc or {}).get(e.id, default_bflags(fc, e))
    counts = singularity_counts(fc)
    if n_alpha is None:
        if surface == "disc":
            n_alpha = counts.e_plus - counts.e_minus
        else:
            n_alpha = max(1, counts.e_plus - counts.e_minus + 1)
    if surface == "annulus" and n_beta is None:
        n_beta = n_alpha - (counts.e_plus - counts.e_minus)
    if surface == "disc":
        n_beta = None
    return replace(fc, barc=flags, n_alpha=n_alpha, n_beta=n_beta)


def default_bflags(fc: FoliationComplex, e: Edge) -> BFlags:
    cx = fc.vertices[e.x].component
    cy = fc.vertices[e.y].component
    if fc.page.planar and cx != cy:
        return BFlags(False, True, True)
    return BFlags(True, False, False)


def product_annulus(page=None, n=1, name="product") -> FoliationComplex:
    page = page or new_page(0, 2)
    return FoliationComplex("annulus", page, {ALPHA: Vertex(ALPHA, ALPHA), BETA: Vertex(BETA, BETA)},
                            n_alpha=n, n_beta=n, name=name)


def stacked_annulus(page, items, name="") -> FoliationComplex:
    items = tuple(items)
    first = items[0]
    last = items[-1]
    n_a = first.n_alpha if isinstance(first, FoliationComplex) else 1
    n_b = last.n_beta if isinstance(last, FoliationComplex) else 1
    return FoliationComplex("annulus", page, n_alpha=n_a, n_beta=n_b, stack=items, name=name)


# ---------------------------------------------------------------------------
# validity


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def __str__(self):
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class ValidityReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self):
        return {v.code for v in self.violations}

    def __bool__(self):
        return self.ok


def validate(f: FoliationComplex) -> ValidityReport:
    out: list[Violation] = []
    if f.stacked:
        _validate_stack(f, out)
    else:
        _validate_quad(f, out)
    return ValidityReport(tuple(out))


def _validate_stack(f, out):
    if f.surface != "annulus":
        out.append(Violation("WrongSurface", "c-circle layers only occur on annuli"))
    times = []
    prev = None
    for item in f.stack:
        if isinstance(item, FoliationComplex):
            if item.stacked:
                out.append(Violation("NestedStack", f"piece {item.name} is itself stacked"))
            sub = validate(item)
            out.extend(Violation(v.code, f"{item.name}: {v.message}") for v in sub.violations)
            times.extend(fc.time for fc in item.faces.values())
            if isinstance(prev, FoliationComplex):
                out.append(Violation("MalformedStack", "two pieces without a separating layer"))
            if isinstance(prev, CLayer) and item.n_alpha != 1:
                out.append(Violation("StrandMismatch", f"{item.name} must start from a 1-braid"))
        else:
            times.extend((item.time_alpha, item.time_beta))
            if isinstance(prev, FoliationComplex) and prev.n_beta != 1:
                out.append(Violation("StrandMismatch", f"{prev.name} must end on a 1-braid"))
            for sgn in (item.sign_alpha, item.sign_beta):
                if sgn not in (1, -1):
                    out.append(Violation("BadSign", f"layer {item.id}"))
            if f.page.planar and item.core_parallel and item.circle_separating \
                    and item.sign_alpha == item.sign_beta:
                out.append(Violation(
                    "EqualSignsOnPlanarPage",
                    f"layer {item.id}: a separating c-circle forces opposite signs"))
            if not f.page.planar and item.circle_separating is None:
                out.append(Violation("MissingAttributes", f"layer {item.id}"))
            for vid, comp in ((item.v, item.v_component), (item.w, item.w_component)):
                if comp not in f.page.labels:
                    out.append(Violation("UnknownComponent", f"{vid} on {comp}"))
        prev = item
    if len(times) != len(set(times)):
        out.append(Violation("DuplicateTime", "two hyperbolic points share a page"))


def _validate_quad(f, out):
    V = f.vertices
    if ALPHA not in V:
        out.append(Violation("MissingBoundary", "alpha vertex missing"))
    if f.surface == "annulus" and BETA not in V:
        out.append(Violation("MissingBoundary", "beta vertex missing"))
    if f.surface == "disc" and BETA in V:
        out.append(Violation("WrongSurface", "a disc has a single braid boundary"))
    for v in V.values():
        if v.kind == "elliptic":
            if v.sign not in (1, -1):
                out.append(Violation("BadSign", f"elliptic {v.id}"))
            if v.component not in f.page.labels:
                out.append(Violation("UnknownComponent", f"elliptic {v.id} on {v.component}"))
    for e in f.edges.values():
        if e.x not in V or e.y not in V:
            out.append(Violation("DanglingEdge", e.id))
            continue
        if V[e.x].cls != "X" or V[e.y].cls != "Y":
            out.append(Violation("OrientationViolation",
                                 f"edge {e.id} joins {e.x} and {e.y} against the leaf orientation"))
        if e.kind != f.edge_kind(e.x, e.y):
            out.append(Violation("EdgeKind", f"edge {e.id} declared {e.kind}"))
    uses = f.edge_uses()
    for f_ in f.faces.values():
        if len(f_.corners) != 4 or len(f_.edges) != 4:
            out.append(Violation("MalformedRegion", f"{f_.id} is not a quadrilateral"))
            continue
        if f_.sign not in (1, -1):
            out.append(Violation("BadSign", f"region {f_.id}"))
        for i in range(4):
            e = f.edges.get(f_.edges[i])
            if e is None:
                out.append(Violation("MalformedRegion", f"{f_.id}: unknown edge {f_.edges[i]}"))
                continue
            if {e.x, e.y} != {f_.corners[i], f_.corners[(i + 1) % 4]}:
                out.append(Violation("MalformedRegion", f"{f_.id}: edge {e.id} does not match corners"))
        kind = f.face_kind(f_)
        if kind not in TILE_KINDS:
            out.append(Violation("MalformedRegion", f"{f_.id} has boundary pattern {kind}"))
    for eid, u in uses.items():
        if len(u) != 2:
            out.append(Violation("MalformedRegion", f"edge {eid} bounds {len(u)} tile sides"))
            continue
        dirs = []
        for fid, i in u:
            fc = f.faces[fid]
            dirs.append((fc.corners[i], fc.corners[(i + 1) % 4]))
        if dirs[0] != dirs[1][::-1]:
            out.append(Violation("NonOrientable", f"edge {eid} traversed twice in one direction"))
    times = [fc.time for fc in f.faces.values()]
    if len(times) != len(set(times)):
        out.append(Violation("DuplicateTime", "two hyperbolic points share a page"))
    if f.faces:
        used = {v for e in f.edges.values() for v in (e.x, e.y)}
        for v in V:
            if v not in used:
                out.append(Violation("IsolatedVertex", v))
        chi = len(V) - len(f.edges) + len(f.faces)
        if chi != 2:
            out.append(Violation("EulerCharacteristic", f"collapsed sphere has chi = {chi}"))
        for v in V.values():
            if v.kind != "elliptic":
                continue
            if f.vertex_type(v.id) == (0, 1):
                out.append(Violation("ForbiddenDegeneration",
                                     f"{v.id}: a single b-arc cannot sweep around an elliptic point"))
            if len(f.fan(v.id)) != len(f.corners_at(v.id)):
                out.append(Violation("NonManifold", f"tiles around {v.id} do not close up"))
    else:
        # without hyperbolic points only the meridian disc (a single
        # positive elliptic point) or a product annulus remains
        ell = [v for v in V.values() if v.kind == "elliptic"]
        ok = (f.surface == "disc" and len(ell) == f.n_alpha == 1 and ell[0].sign > 0
              ) or not ell
        if not ok:
            out.append(Violation("IsolatedVertex", "elliptic points without tiles"))
    for eid, fl in f.barc.items():
        if fl.strongly_essential and not fl.essential:
            out.append(Violation("BArcFlags", f"{eid}: strongly essential but not essential"))
        e = f.edges.get(eid)
        if e and f.page.planar:
            same = V[e.x].component == V[e.y].component
            if same and not fl.separating:
                out.append(Violation("BArcFlags", f"{eid}: planar b-arc on one component must separate"))
    c = singularity_counts(f)
    if f.surface == "disc":
        if f.n_alpha != c.e_plus - c.e_minus or f.n_alpha < 1:
            out.append(Violation("StrandCount", f"disc boundary must have e+ - e- = {f.n_alpha} strands"))
    else:
        if f.n_alpha is None or f.n_beta is None or f.n_alpha < 1 or f.n_beta < 1:
            out.append(Violation("StrandCount", "both braids need at least one strand"))
        elif f.n_alpha - f.n_beta != c.e_plus - c.e_minus:
            out.append(Violation("StrandCount", "n(alpha) - n(beta) must equal e+ - e-"))
    for fid in f.pierced:
        if fid not in f.faces:
            out.append(Violation("DanglingEdge", f"pierced tile {fid} does not exist"))


# ---------------------------------------------------------------------------
# counts and formulas


@dataclass(frozen=True)
class SingularityCounts:
    e_plus: int
    e_minus: int
    h_plus: int
    h_minus: int

    def as_tuple(self):
        return (self.e_plus, self.e_minus, self.h_plus, self.h_minus)


def singularity_counts(f: FoliationComplex) -> SingularityCounts:
    if f.stacked:
        tot = [0, 0, 0, 0]
        for item in f.stack:
            if isinstance(item, CLayer):
                sub = (1, 1, (item.sign_alpha > 0) + (item.sign_beta > 0),
                       (item.sign_alpha < 0) + (item.sign_beta < 0))
            else:
                sub = singularity_counts(item).as_tuple()
            tot = [a + b for a, b in zip(tot, sub)]
        return SingularityCounts(*tot)
    ep = sum(1 for v in f.elliptics() if v.sign > 0)
    em = sum(1 for v in f.elliptics() if v.sign < 0)
    hp = sum(1 for x in f.faces.values() if x.sign > 0)
    hm = sum(1 for x in f.faces.values() if x.sign < 0)
    return SingularityCounts(ep, em, hp, hm)


def _sl_formula(c: SingularityCounts) -> int:
    return -(c.e_plus - c.e_minus) + (c.h_plus - c.h_minus)


def self_linking(f: FoliationComplex) -> int:
    """Self-linking number of the boundary of a disc (or Seifert surface)."""
    if f.surface != "disc":
        raise WrongSurfaceKind("surface has two braid boundaries; use sl_difference")
    return _sl_formula(singularity_counts(f))


def sl_difference(f: FoliationComplex) -> int:
    """sl(alpha) - sl(beta) for cobounding annuli."""
    if f.surface != "annulus":
        raise WrongSurfaceKind("sl_difference needs cobounding annuli")
    return _sl_formula(singularity_counts(f))


@dataclass(frozen=True)
class Region:
    id: str
    kind: str
    sign: int
    corners: tuple
    degenerate: bool


def region_decomposition(f: FoliationComplex) -> list[Region]:
    if f.stacked:
        out = []
        for item in f.stack:
            if isinstance(item, CLayer):
                out.append(Region(f"{item.id}.alpha", "ac", item.sign_alpha, (ALPHA, item.v), True))
                out.append(Region(f"{item.id}.beta", "ac", item.sign_beta, (item.w, BETA), True))
            elif item.faces:
                out.extend(region_decomposition(item))
        return out
    if not f.faces:
        raise EmptyDecomposition("no hyperbolic points: the surface is a product")
    return [Region(x.id, f.face_kind(x), x.sign, x.corners, x.degenerate)
            for x in sorted(f.faces.values(), key=lambda r: r.time)]


# ---------------------------------------------------------------------------
# stabilization ledger


@dataclass(frozen=True)
class Ledger:
    a_plus: int
    a_minus: int
    b_plus: int
    b_minus: int

    def as_tuple(self):
        return (self.a_plus, self.a_minus, self.b_plus, self.b_minus)


def ledger_solutions(c: SingularityCounts):
    """Every non-negative (a+, a-, b+, b-) solving the stabilization identities."""
    sols = []
    for ap in range(0, c.e_minus + 1):
        am = c.e_minus - ap
        bm = c.h_minus - ap
        bp = c.h_plus - am
        if min(am, bm, bp) < 0 or bp + bm != c.e_plus:
            continue
        sols.append(Ledger(ap, am, bp, bm))
    return sols


def stabilization_ledger(f: FoliationComplex) -> Ledger:
    """Counts of stabilizations of each sign on both sides reaching a common stabilization.

    The solution is read off the stabilization trace that removes all
    elliptic points (tile by tile); when no trace can be completed the
    solution with fewest positive stabilizations of alpha is returned.
    """
    if f.surface != "annulus":
        raise WrongSurfaceKind("ledger needs cobounding annuli")
    c = singularity_counts(f)
    sols = ledger_solutions(c)
    if not sols:
        raise InconsistentLedger(f"no non-negative solution for counts {c.as_tuple()}")
    from .normalize import stabilization_trace  # local: normalize builds on moves

    trace = stabilization_trace(f)
    if trace is not None:
        led = trace
        if led in sols:
            return led
    return sols[0]


# ---------------------------------------------------------------------------
# FDTC estimate


def fdtc_interval(f: FoliationComplex, elliptic: str) -> tuple[Fraction, Fraction]:
    v = f.vertices.get(elliptic)
    if v is None or v.kind != "elliptic":
        raise NotApplicable(f"{elliptic} is not an elliptic point")
    a, _ = f.vertex_type(elliptic)
    if a:
        raise NotApplicable(f"{elliptic} has a-arcs around it", clause="no a-arc or s-arc")
    for e in f.incident_edges(elliptic):
        if not f.barc.get(e.id, BFlags()).strongly_essential:
            raise NotApplicable(f"b-arc {e.id} is boundary-parallel", clause="strongly essential")
    signs = f.signs_around(elliptic)
    p = sum(1 for s in signs if s > 0)
    n = sum(1 for s in signs if s < 0)
    if v.sign > 0:
        return Fraction(-n), Fraction(p)
    return Fraction(-p), Fraction(n)


# ---------------------------------------------------------------------------
# Euler characteristic audit


@dataclass(frozen=True)
class EulerAudit:
    table: Mapping[tuple[int, int], int]
    E_a: int
    E_b: int
    E_s: int
    V: int
    E: int
    R: int
    lhs: int
    rhs: int
    valence: Mapping[int, int]
    sphere_lhs: int
    sphere_rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    @property
    def sphere_holds(self) -> bool:
        return self.sphere_lhs == self.sphere_rhs

    def V_of(self, a, b):
        return self.table.get((a, b), 0)


def euler_audit(f: FoliationComplex, variant: str = "annulus") -> EulerAudit:
    """Cell counts of the collapsed sphere and both sides of the Euler equality.

    ``variant="annulus"`` evaluates the equality for c-circle-free annuli;
    ``variant="sphere"`` only checks the valence form, which applies to any
    quadrangulated sphere without valence-one vertices.
    """
    if f.stacked:
        raise NotApplicable("c-circles present", clause="no c-circles")
    if not f.faces:
        raise EmptyDecomposition("product surface: nothing to audit")
    if variant == "annulus" and f.surface != "annulus":
        raise WrongSurfaceKind("the annulus variant needs cobounding annuli")
    table: Counter = Counter()
    for v in f.elliptics():
        table[f.vertex_type(v.id)] += 1
    kinds = Counter(e.kind for e in f.edges.values())
    V, E, R = len(f.vertices), len(f.edges), len(f.faces)
    lhs = 2 * table[(1, 0)] + table[(1, 1)] + 2 * table[(0, 2)] + table[(0, 3)]
    rhs = 2 * kinds["s"] + table[(2, 1)] + 2 * table[(3, 0)]
    for (a, b), cnt in table.items():
        if a + b >= 4:
            rhs += (a + b + a - 4) * cnt
    if variant == "sphere":
        lhs = rhs = 0
    valence: Counter = Counter(f.degree(v) for v in f.vertices)
    s_lhs = 2 * valence[2] + valence[3]
    s_rhs = 8 + sum((i - 4) * k for i, k in valence.items() if i >= 4)
    return EulerAudit(dict(table), kinds["a"], kinds["b"], kinds["s"], V, E, R,
                      lhs, rhs, dict(valence), s_lhs, s_rhs)
