"""Pages, monodromies and curve systems on a single page.

A page is an abstract compact surface with labelled boundary components.
Curve systems (slices) are encoded combinatorially: leaves are named by
their endpoints, every binding component carries the cyclic order of the
elliptic points on it, and a face certificate records which holes,
punctures and leaves bound each complementary region.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    InvalidPage,
    InvalidSlice,
    MissingAttributes,
    UnknownComponent,
    UnsupportedAction,
    UnsupportedFDTC,
)

__all__ = [
    "Page",
    "new_page",
    "TwistCurve",
    "Monodromy",
    "parse_monodromy",
    "Leaf",
    "SliceConfig",
    "BArcClass",
    "classify_b_arc",
    "fdtc",
    "apply_monodromy",
]


@dataclass(frozen=True)
class Page:
    genus: int
    labels: tuple[str, ...]

    def __post_init__(self):
        if self.genus < 0:
            raise InvalidPage("genus must be non-negative")
        if len(self.labels) < 1:
            raise InvalidPage("a page needs at least one boundary component")
        if len(set(self.labels)) != len(self.labels):
            raise InvalidPage("boundary labels must be unique")

    @property
    def planar(self) -> bool:
        return self.genus == 0

    @property
    def boundary_count(self) -> int:
        return len(self.labels)

    @property
    def is_disc(self) -> bool:
        return self.genus == 0 and len(self.labels) == 1

    @property
    def is_annulus(self) -> bool:
        return self.genus == 0 and len(self.labels) == 2

    def check_label(self, label: str) -> None:
        if label not in self.labels:
            raise UnknownComponent(label)


def new_page(genus: int, boundary_count: int, labels: Iterable[str] | None = None) -> Page:
    """Build a page with boundary labels ``C0 .. C{r-1}`` (or the given labels)."""
    if boundary_count < 1:
        raise InvalidPage("boundary_count must be >= 1")
    if labels is None:
        labels = tuple(f"C{i}" for i in range(boundary_count))
    labels = tuple(labels)
    if len(labels) != boundary_count:
        raise InvalidPage("label count does not match boundary_count")
    return Page(genus, labels)


# ---------------------------------------------------------------------------
# monodromy


@dataclass(frozen=True)
class TwistCurve:
    """``kind`` is ``boundary`` (parallel to ``label``), ``core`` or ``named``."""

    kind: str
    label: str = ""
    attrs: tuple[tuple[str, str], ...] = ()

    def __str__(self):
        if self.kind == "boundary":
            return f"T({self.label})"
        if self.kind == "core":
            return "T(core)"
        return f"T({self.label})"


@dataclass(frozen=True)
class Monodromy:
    page: Page
    word: tuple[tuple[TwistCurve, int], ...] = ()
    fdtc_override: Mapping[str, Fraction] | None = None

    def __post_init__(self):
        for curve, exp in self.word:
            if exp == 0:
                raise InvalidPage("twist exponents must be nonzero")
            if curve.kind == "boundary":
                self.page.check_label(curve.label)
            if curve.kind == "core" and not self.page.is_annulus:
                raise InvalidPage("T(core) only makes sense on an annulus page")

    @property
    def is_identity(self) -> bool:
        return not self.word

    def letters(self):
        for curve, exp in self.word:
            yield curve, exp

    def __str__(self):
        if not self.word:
            return "Id"
        return " ".join(f"{c}^{k}" for c, k in self.word)


_LETTER = re.compile(r"T\(([A-Za-z_][\w]*)\)(?:\^(-?\d+))?")


def parse_monodromy(text: str, page: Page) -> Monodromy:
    text = text.strip()
    if text in ("", "Id", "id"):
        return Monodromy(page, ())
    word = []
    for token in text.split():
        m = _LETTER.fullmatch(token)
        if not m:
            raise InvalidPage(f"bad monodromy letter {token!r}")
        name, exp = m.group(1), int(m.group(2) or 1)
        if name == "core":
            curve = TwistCurve("core")
        elif name in page.labels:
            curve = TwistCurve("boundary", name)
        else:
            curve = TwistCurve("named", name)
        word.append((curve, exp))
    return Monodromy(page, tuple(word))


def fdtc(monodromy: Monodromy, page: Page, component: str):
    """Fractional Dehn twist coefficient along ``component``.

    Only words made of boundary-parallel twists are computed; the annulus
    core is parallel to both boundary components.  The identity on the disc
    is +infinity by convention.  Anything else needs an author override.
    """
    page.check_label(component)
    override = monodromy.fdtc_override or {}
    if page.is_disc and monodromy.is_identity:
        return math.inf
    total = 0
    for curve, exp in monodromy.letters():
        if curve.kind == "core" or (curve.kind == "boundary" and curve.label == component):
            total += exp
        elif curve.kind == "boundary":
            continue
        else:
            if component in override:
                return Fraction(override[component])
            raise UnsupportedFDTC(f"twist about {curve.label} is not boundary-parallel")
    if component in override:
        return Fraction(override[component])
    return Fraction(total)


# ---------------------------------------------------------------------------
# slices

KINDS = ("a", "b", "s", "c")


@dataclass(frozen=True)
class Leaf:
    id: str
    kind: str
    ends: tuple[str, ...]
    wind: int = 0
    attrs: tuple[tuple[str, bool], ...] = ()

    def attr(self, name):
        return dict(self.attrs).get(name)


@dataclass(frozen=True)
class SliceConfig:
    page: Page
    elliptics: Mapping[str, tuple[int, str]]
    punctures: Mapping[str, tuple[int, str]]
    leaves: Mapping[str, Leaf]
    orders: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    faces: Mapping[str, frozenset[str]] = field(default_factory=dict)

    # -- structural checks -------------------------------------------------

    def check(self) -> None:
        """Raise InvalidSlice unless the slice is a consistent disjoint curve system."""
        used = {}
        for leaf in self.leaves.values():
            if leaf.kind not in KINDS:
                raise InvalidSlice(f"leaf {leaf.id}: unknown kind {leaf.kind}")
            for end in leaf.ends:
                if end in used:
                    raise InvalidSlice(f"endpoint {end} used by {used[end]} and {leaf.id}")
                used[end] = leaf.id
            self._check_leaf_shape(leaf)
        for e in self.elliptics:
            if e not in used:
                raise InvalidSlice(f"elliptic point {e} is not the endpoint of a leaf")
        for p in self.punctures:
            if p not in used:
                raise InvalidSlice(f"puncture {p} is not the endpoint of a leaf")
        for e, (_, comp) in self.elliptics.items():
            self.page.check_label(comp)
        if self.orders:
            seen = []
            for comp, order in self.orders.items():
                self.page.check_label(comp)
                for e in order:
                    if self.elliptics.get(e, (0, None))[1] != comp:
                        raise InvalidSlice(f"{e} listed on {comp} but does not lie there")
                seen.extend(order)
            if sorted(seen) != sorted(self.elliptics):
                raise InvalidSlice("cyclic orders must list every elliptic point exactly once")
        if self.page.planar and self.faces:
            self._check_certificate()

    def _check_leaf_shape(self, leaf: Leaf) -> None:
        ell, pun = self.elliptics, self.punctures
        if leaf.kind == "a":
            e, p = leaf.ends
            if e not in ell or p not in pun:
                raise InvalidSlice(f"a-arc {leaf.id} must join an elliptic point and a puncture")
            if ell[e][0] != pun[p][0]:
                raise InvalidSlice(f"a-arc {leaf.id}: elliptic and puncture orientations differ")
        elif leaf.kind == "b":
            e1, e2 = leaf.ends
            if e1 not in ell or e2 not in ell:
                raise InvalidSlice(f"b-arc {leaf.id} must join two elliptic points")
            if ell[e1][0] == ell[e2][0]:
                raise InvalidSlice(f"b-arc {leaf.id} must join elliptic points of opposite sign")
        elif leaf.kind == "s":
            p1, p2 = leaf.ends
            if p1 not in pun or p2 not in pun or pun[p1][0] == pun[p2][0]:
                raise InvalidSlice(f"s-arc {leaf.id} must join a +puncture and a -puncture")
        elif leaf.ends:
            raise InvalidSlice(f"c-circle {leaf.id} has no endpoints")

    def component_of(self, end: str):
        if end in self.elliptics:
            return self.elliptics[end][1]
        return None

    def _separates(self, leaf: Leaf) -> bool:
        # on a planar page closed curves and arcs with both ends on one
        # boundary component separate; every other proper arc does not
        if leaf.kind == "c":
            return True
        if leaf.kind == "b":
            c1, c2 = (self.component_of(e) for e in leaf.ends)
            return c1 == c2
        return False

    def _face_graph(self):
        incid: dict[str, list[str]] = {lid: [] for lid in self.leaves}
        for fid, members in self.faces.items():
            for m in members:
                if m in incid:
                    incid[m].append(fid)
        return incid

    def _check_certificate(self) -> None:
        holes = set(self.page.labels)
        members_seen: dict[str, str] = {}
        for fid, members in self.faces.items():
            for m in members:
                if m in self.leaves:
                    continue
                if m not in holes and m not in self.punctures:
                    raise InvalidSlice(f"face {fid}: unknown member {m}")
                if m in self.punctures:
                    if m in members_seen:
                        raise InvalidSlice(f"puncture {m} assigned to two faces")
                    members_seen[m] = fid
        for p in self.punctures:
            if p not in members_seen:
                raise InvalidSlice(f"puncture {p} has no face")
        incid = self._face_graph()
        edges = []
        for lid, fs in incid.items():
            leaf = self.leaves[lid]
            sep = self._separates(leaf)
            if sep:
                if len(fs) != 2 or fs[0] == fs[1]:
                    raise InvalidSlice(f"separating leaf {lid} must bound two distinct faces")
                edges.append((fs[0], fs[1]))
            elif len(fs) not in (0, 1):
                raise InvalidSlice(f"non-separating leaf {lid} must lie in a single face")
        # faces joined by separating leaves must form a tree
        parent = {f: f for f in self.faces}

        def root(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in edges:
            ru, rv = root(u), root(v)
            if ru == rv:
                raise InvalidSlice("face certificate contains a cycle of separating curves")
            parent[ru] = rv
        if len({root(f) for f in self.faces}) != 1:
            raise InvalidSlice("face certificate is disconnected")
        self._check_chords()

    def _check_chords(self) -> None:
        # two separating arcs on one component must not interleave
        for comp, order in self.orders.items():
            pos = {e: i for i, e in enumerate(order)}
            chords = []
            for leaf in self.leaves.values():
                if leaf.kind == "b" and all(self.component_of(e) == comp for e in leaf.ends):
                    i, j = sorted(pos[e] for e in leaf.ends)
                    chords.append((i, j, leaf.id))
            for i1, j1, l1 in chords:
                for i2, j2, l2 in chords:
                    if i1 < i2 < j1 < j2:
                        raise InvalidSlice(f"b-arcs {l1} and {l2} cross")

    # -- side computation --------------------------------------------------

    def sides(self, leaf_id: str):
        """Members on each side of a separating leaf: two sets of holes/punctures."""
        incid = self._face_graph()
        f1, f2 = incid[leaf_id]
        adj: dict[str, list[str]] = {f: [] for f in self.faces}
        for lid, fs in incid.items():
            if lid != leaf_id and len(fs) == 2:
                adj[fs[0]].append(fs[1])
                adj[fs[1]].append(fs[0])
        result = []
        for start in (f1, f2):
            seen, stack = {start}, [start]
            while stack:
                f = stack.pop()
                for g in adj[f]:
                    if g not in seen:
                        seen.add(g)
                        stack.append(g)
            holes, punct = set(), set()
            home = self.component_of(self.leaves[leaf_id].ends[0])
            for f in seen:
                for m in self.faces[f]:
                    if m in self.punctures:
                        punct.add(m)
                    elif m in self.page.labels and m != home:
                        holes.add(m)
                    elif m in self.leaves and m != leaf_id:
                        for end in self.leaves[m].ends:
                            c = self.component_of(end)
                            if c is not None and c != home:
                                holes.add(c)
            result.append((frozenset(holes), frozenset(punct)))
        return tuple(result)

    # -- canonical form ----------------------------------------------------

    def leaf_key(self, leaf: Leaf):
        if leaf.kind == "c":
            return ("c", leaf.id)
        return (leaf.kind, tuple(sorted(leaf.ends)))

    def canonical(self):
        """Label-independent encoding used for closure checks."""
        leaves = tuple(sorted((self.leaf_key(l), l.wind) for l in self.leaves.values()))
        orders = []
        for comp in sorted(self.orders):
            order = self.orders[comp]
            rots = [order[i:] + order[:i] for i in range(len(order))] or [()]
            orders.append((comp, min(rots)))
        faces = []
        for members in self.faces.values():
            key = []
            for m in members:
                key.append(repr(self.leaf_key(self.leaves[m])) if m in self.leaves else m)
            faces.append(tuple(sorted(key)))
        return (leaves, tuple(orders), tuple(sorted(faces)))


@dataclass(frozen=True)
class BArcClass:
    separating: bool
    essential: bool
    strongly_essential: bool

    def __post_init__(self):
        if self.strongly_essential and not self.essential:
            raise InvalidSlice("strongly essential b-arcs are essential")


def classify_b_arc(slice_: SliceConfig, page: Page, leaf_id: str) -> BArcClass:
    leaf = slice_.leaves.get(leaf_id)
    if leaf is None or leaf.kind != "b":
        raise InvalidSlice(f"{leaf_id} is not a b-arc of the slice")
    if not page.planar:
        attrs = dict(leaf.attrs)
        needed = ("separating", "essential", "strongly_essential")
        if not all(k in attrs for k in needed):
            raise MissingAttributes(f"b-arc {leaf_id} on a non-planar page needs attributes")
        return BArcClass(attrs["separating"], attrs["essential"], attrs["strongly_essential"])
    c1, c2 = (slice_.component_of(e) for e in leaf.ends)
    if c1 != c2:
        # joins two holes: never boundary-parallel
        return BArcClass(False, True, True)
    (h1, p1), (h2, p2) = slice_.sides(leaf_id)
    strongly = bool(h1) and bool(h2)
    essential = bool(h1 | p1) and bool(h2 | p2)
    return BArcClass(True, essential, strongly)


# ---------------------------------------------------------------------------
# monodromy action on slices


def _side(slice_: SliceConfig, end: str) -> str:
    if end in slice_.elliptics:
        return slice_.elliptics[end][1]
    return slice_.punctures[end][1]


def apply_monodromy(slice_: SliceConfig, monodromy: Monodromy) -> SliceConfig:
    """Act on the slice by the twist word, letter by letter.

    Boundary and core twists leave endpoint data fixed and change winding:
    on the annulus every leaf running from one side of the core to the other
    picks up the exponent; elsewhere a boundary twist winds each endpoint
    lying on its component.
    """
    page = slice_.page
    leaves = dict(slice_.leaves)
    for curve, exp in monodromy.letters():
        if curve.kind == "named":
            if dict(curve.attrs).get("disjoint") == "true":
                continue
            raise UnsupportedAction(f"action of twist about {curve.label} is not modelled")
        for lid, leaf in list(leaves.items()):
            if leaf.kind == "c":
                if dict(leaf.attrs).get("null_homotopic") is False and not page.is_annulus:
                    raise UnsupportedAction(f"twist crosses c-circle {lid}")
                continue
            if page.is_annulus:
                a, b = (_side(slice_, e) for e in leaf.ends)
                if a != b:
                    leaves[lid] = replace(leaf, wind=leaf.wind + exp)
            else:
                hits = sum(1 for e in leaf.ends if _side(slice_, e) == curve.label)
                if hits:
                    leaves[lid] = replace(leaf, wind=leaf.wind + hits * exp)
    return replace(slice_, leaves=leaves)
