"""Movie presentations: the ``.obf`` text format and its interpretation.

A movie lists the first slice of the surface (leaves in the page ``S_0``)
followed by the saddle events, in time order.  An event joins two leaves
along a describing arc and names the leaves it produces in a trailing
``result:`` clause::

    obf-movie v1
    name ex2_2
    page planar boundaries=2
    monodromy T(core)^1
    slice0
      elliptic v0 + C0
      elliptic w1 - C1
      ...
      puncture p +
      a a0 v0 p
      b b11 w1 v1
      order C0: v0 v1 v2
    events
      event 1 sign=- join a0@v0 b11@w1 face=F0 result: b01 a1

Joining ``l1 = (x1, y1)`` and ``l2 = (x2, y2)`` (``x`` the end on the alpha
side of the quadrangulation) produces the crossed pair ``(x1, y2)`` and
``(x2, y1)``, listed in that order in ``result:``.  The interpreter turns
each event into one tile with corners ``(x1, y1, x2, y2)``; the leaves
alive at ``t = 1`` are glued back to the first slice by the monodromy.

c-circles are supported in the one shape cobounding annuli need: a
self-saddle of an alpha-side a-arc splits off a circle, and a later saddle
merges it into a beta-side a-arc.  Such a pair is a layer of two
degenerated ac-annuli.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import (
    IllegalSurgery,
    InvalidSlice,
    MalformedMovie,
    NotClosed,
    ParseError,
    Unsupported,
    UnknownLeaf,
)
from .foliation import (
    ALPHA,
    BETA,
    BFlags,
    CLayer,
    FoliationComplex,
    default_bflags,
    make_complex,
    product_annulus,
    stacked_annulus,
)
from .page import (
    Leaf,
    Monodromy,
    Page,
    SliceConfig,
    apply_monodromy,
    classify_b_arc,
    new_page,
    parse_monodromy,
)

__all__ = [
    "Event",
    "Movie",
    "parse_movie",
    "load_movie",
    "serialize_movie",
    "interpret",
    "braid_boundary",
    "BraidBoundary",
    "linking_with_binding",
    "movie_slices",
]

HEADER = "obf-movie v1"
FLAG_NAMES = ("separating", "essential", "strongly_essential", "null_homotopic",
              "boundary_parallel")


@dataclass(frozen=True)
class Event:
    """One hyperbolic point: ``leaf1`` and ``leaf2`` collide inside ``face``."""

    time: Fraction
    sign: int
    leaf1: str
    at1: str
    leaf2: str
    at2: str
    face: str
    results: tuple[str, ...]
    result_attrs: tuple[tuple[str, tuple[tuple[str, bool], ...]], ...] = ()

    def attrs_for(self, leaf_id):
        return dict(self.result_attrs).get(leaf_id, ())


@dataclass(frozen=True)
class Movie:
    page: Page
    monodromy: Monodromy
    slice0: SliceConfig
    events: tuple[Event, ...] = ()
    name: str = ""
    surface: str | None = None
    require_closure: bool = True
    comments: tuple[str, ...] = field(default=(), compare=False)

    @property
    def kind(self) -> str:
        if self.surface:
            return self.surface
        signs = {s for s, _ in self.slice0.punctures.values()}
        return "annulus" if signs == {1, -1} else "disc"


# ---------------------------------------------------------------------------
# parsing

_SIGN = {"+": 1, "-": -1}
_TOKEN = re.compile(r"\S+")


def _fail(msg, lineno, col=1):
    raise ParseError(msg, lineno, col)


def _parse_attrs(tokens, lineno):
    attrs = []
    wind = 0
    for tok in tokens:
        key, eq, value = tok.partition("=")
        if not eq:
            _fail(f"expected key=value, got {tok!r}", lineno)
        if key == "wind":
            try:
                wind = int(value)
            except ValueError:
                _fail(f"wind must be an integer, got {value!r}", lineno)
            continue
        if key not in FLAG_NAMES:
            _fail(f"unknown leaf attribute {key!r}", lineno)
        if value not in ("true", "false"):
            _fail(f"attribute {key} must be true or false", lineno)
        attrs.append((key, value == "true"))
    return tuple(sorted(attrs)), wind


def _parse_page(rest, lineno):
    genus, count, labels = 0, None, None
    for tok in rest:
        if tok == "planar":
            genus = 0
        elif tok.startswith("genus="):
            genus = int(tok[6:])
        elif tok.startswith("boundaries="):
            count = int(tok[11:])
        elif tok.startswith("labels="):
            labels = tuple(tok[7:].split(","))
        else:
            _fail(f"unexpected page token {tok!r}", lineno)
    if count is None:
        count = len(labels) if labels else 1
    return new_page(genus, count, labels)


def parse_movie(data) -> Movie:
    """Parse ``.obf`` text (``str`` or UTF-8 ``bytes``) into a Movie."""
    if isinstance(data, (bytes, bytearray)):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    else:
        text = data
    lines = text.splitlines()
    page = monodromy = None
    mono_text, mono_line = "", 0
    name, surface, closure = "", None, True
    section = None
    elliptics, punctures, leaves, orders, faces = {}, {}, {}, {}, {}
    raw_events = []
    comments = []
    seen_header = False
    for lineno, raw in enumerate(lines, 1):
        body, _, comment = raw.partition("#")
        if comment.strip():
            comments.append(comment.strip())
        line = body.strip()
        if not line:
            continue
        if not seen_header:
            if line != HEADER:
                _fail(f"expected header {HEADER!r}", lineno)
            seen_header = True
            continue
        toks = line.split()
        head = toks[0]
        if head == "name":
            name = " ".join(toks[1:])
        elif head == "surface":
            if len(toks) != 2 or toks[1] not in ("disc", "annulus"):
                _fail("surface must be disc or annulus", lineno)
            surface = toks[1]
        elif head == "closure":
            closure = toks[1:] != ["off"]
        elif head == "page":
            page = _parse_page(toks[1:], lineno)
        elif head == "monodromy":
            mono_text, mono_line = " ".join(toks[1:]), lineno
        elif head == "slice0":
            section = "slice"
        elif head == "events":
            section = "events"
        elif head == "slice":
            # redundant display slices are kept for renderers only
            section = "display"
        elif section == "display":
            continue
        elif section == "slice":
            _slice_line(toks, lineno, elliptics, punctures, leaves, orders, faces)
        elif section == "events":
            if head != "event":
                _fail(f"expected an event line, got {head!r}", lineno)
            raw_events.append((lineno, toks))
        else:
            _fail(f"unexpected line {head!r}", lineno)
    if not seen_header:
        _fail(f"expected header {HEADER!r}", 1)
    if page is None:
        _fail("missing page line", len(lines))
    try:
        monodromy = parse_monodromy(mono_text, page)
    except Exception as exc:  # page errors carry no position
        raise ParseError(str(exc), mono_line, 1) from None
    for e, (_, comp) in elliptics.items():
        if comp not in page.labels:
            _fail(f"elliptic point {e} lies on unknown component {comp}", 0)
    slice0 = SliceConfig(page, elliptics, punctures, leaves, orders, faces)
    events = _parse_events(raw_events, leaves)
    try:
        slice0.check()
    except InvalidSlice as exc:
        raise ParseError(f"invalid first slice: {exc}") from None
    return Movie(page, monodromy, slice0, tuple(events), name, surface, closure,
                 tuple(comments))


def _slice_line(toks, lineno, elliptics, punctures, leaves, orders, faces):
    head = toks[0]
    if head == "elliptic":
        if len(toks) != 4 or toks[2] not in _SIGN:
            _fail("usage: elliptic <id> <+|-> <component>", lineno)
        elliptics[toks[1]] = (_SIGN[toks[2]], toks[3])
    elif head == "puncture":
        if len(toks) not in (3, 4) or toks[2] not in _SIGN:
            _fail("usage: puncture <id> <+|-> [side=<component>]", lineno)
        side = toks[3][5:] if len(toks) == 4 and toks[3].startswith("side=") else ""
        punctures[toks[1]] = (_SIGN[toks[2]], side)
    elif head in ("a", "b", "s"):
        if len(toks) < 4:
            _fail(f"usage: {head} <id> <end> <end> [attributes]", lineno)
        attrs, wind = _parse_attrs(toks[4:], lineno)
        leaves[toks[1]] = Leaf(toks[1], head, (toks[2], toks[3]), wind, attrs)
    elif head == "c":
        if len(toks) < 2:
            _fail("usage: c <id> [attributes]", lineno)
        attrs, wind = _parse_attrs(toks[2:], lineno)
        leaves[toks[1]] = Leaf(toks[1], "c", (), wind, attrs)
    elif head == "order":
        comp = toks[1].rstrip(":")
        orders[comp] = tuple(toks[2:])
    elif head == "face":
        fid = toks[1].rstrip(":")
        faces[fid] = frozenset(toks[2:])
    else:
        _fail(f"unknown slice line {head!r}", lineno)


def _parse_events(raw_events, leaves):
    known = set(leaves)
    events = []
    last = None
    for lineno, toks in raw_events:
        try:
            time = Fraction(toks[1])
        except (IndexError, ValueError):
            _fail("event needs a time", lineno)
        if last is not None and time <= last:
            _fail(f"event times must increase ({time} after {last})", lineno, 7)
        last = time
        sign = None
        joins, face, results, attrs = [], "", [], []
        i = 2
        while i < len(toks):
            tok = toks[i]
            if tok.startswith("sign="):
                if tok[5:] not in _SIGN:
                    _fail("sign must be + or -", lineno)
                sign = _SIGN[tok[5:]]
            elif tok == "join":
                joins = toks[i + 1:i + 3]
                i += 2
            elif tok.startswith("face="):
                face = tok[5:]
            elif tok == "result:":
                for r in toks[i + 1:]:
                    rid, _, rest = r.partition("[")
                    results.append(rid)
                    if rest:
                        parsed, _ = _parse_attrs(rest.rstrip("]").split(","), lineno)
                        attrs.append((rid, parsed))
                break
            else:
                _fail(f"unexpected event token {tok!r}", lineno)
            i += 1
        if sign is None:
            _fail("event needs sign=+ or sign=-", lineno)
        if len(joins) != 2 or any("@" not in j for j in joins):
            _fail("event needs join <leaf>@<point> <leaf>@<point>", lineno)
        (l1, p1), (l2, p2) = (j.split("@", 1) for j in joins)
        for leaf in (l1, l2):
            if leaf not in known:
                raise UnknownLeaf(leaf, lineno, 1)
        if not results:
            _fail("event needs a result: clause naming the new leaves", lineno)
        for r in results:
            if r in known:
                _fail(f"result leaf {r} is already defined", lineno)
            known.add(r)
        events.append(Event(time, sign, l1, p1, l2, p2, face, tuple(results), tuple(attrs)))
    return events


def load_movie(path) -> Movie:
    with open(path, "rb") as fh:
        return parse_movie(fh.read())


# ---------------------------------------------------------------------------
# serialization


def _sign_char(s):
    return "+" if s > 0 else "-"


def _attr_text(attrs, wind=0):
    out = [f"{k}={'true' if v else 'false'}" for k, v in attrs]
    if wind:
        out.append(f"wind={wind}")
    return out


def _min_rotation(seq):
    seq = tuple(seq)
    if not seq:
        return seq
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


def serialize_movie(m: Movie) -> str:
    """Canonical text: ids sorted, cyclic orders rotated to their minimum."""
    page = m.page
    out = [HEADER]
    if m.name:
        out.append(f"name {m.name}")
    if m.surface:
        out.append(f"surface {m.surface}")
    if not m.require_closure:
        out.append("closure off")
    default_labels = tuple(f"C{i}" for i in range(page.boundary_count))
    head = "planar" if page.planar else f"genus={page.genus}"
    line = f"page {head} boundaries={page.boundary_count}"
    if page.labels != default_labels:
        line += " labels=" + ",".join(page.labels)
    out.append(line)
    out.append(f"monodromy {m.monodromy}")
    out.append("slice0")
    s = m.slice0
    for e in sorted(s.elliptics):
        sign, comp = s.elliptics[e]
        out.append(f"  elliptic {e} {_sign_char(sign)} {comp}")
    for p in sorted(s.punctures):
        sign, side = s.punctures[p]
        out.append(f"  puncture {p} {_sign_char(sign)}" + (f" side={side}" if side else ""))
    for lid in sorted(s.leaves):
        leaf = s.leaves[lid]
        parts = [leaf.kind, lid, *leaf.ends, *_attr_text(leaf.attrs, leaf.wind)]
        out.append("  " + " ".join(parts))
    for comp in sorted(s.orders):
        out.append(f"  order {comp}: " + " ".join(_min_rotation(s.orders[comp])))
    for fid in sorted(s.faces):
        out.append(f"  face {fid}: " + " ".join(sorted(s.faces[fid])))
    out.append("events")
    for ev in m.events:
        res = []
        attrs = dict(ev.result_attrs)
        for r in ev.results:
            extra = _attr_text(attrs.get(r, ()))
            res.append(r + (f"[{','.join(extra)}]" if extra else ""))
        t = str(ev.time)
        face = f" face={ev.face}" if ev.face else ""
        out.append(f"  event {t} sign={_sign_char(ev.sign)} join {ev.leaf1}@{ev.at1} "
                   f"{ev.leaf2}@{ev.at2}{face} result: " + " ".join(res))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# interpretation


def _end_class(s: SliceConfig, end):
    """X for the alpha side of the quadrangulation, Y for the beta side."""
    if end in s.elliptics:
        return "X" if s.elliptics[end][0] < 0 else "Y"
    if end in s.punctures:
        return "X" if s.punctures[end][0] > 0 else "Y"
    raise MalformedMovie(f"unknown leaf endpoint {end}")


def _vertex_of(s: SliceConfig, end):
    if end in s.punctures:
        return ALPHA if s.punctures[end][0] > 0 else BETA
    return end


def _oriented(s, leaf: Leaf):
    x, y = leaf.ends
    if _end_class(s, x) == "Y":
        x, y = y, x
    return x, y


def _leaf_kind(s, ends):
    pun = sum(1 for e in ends if e in s.punctures)
    return {0: "b", 1: "a", 2: "s"}[pun]


def _match_key(s, leaf: Leaf):
    # punctures travel with the braid; only their orientation is intrinsic
    ends = tuple(sorted(e if e in s.elliptics else _sign_char(s.punctures[e][0])
                        for e in leaf.ends))
    return leaf.kind, ends


def _run_events(m: Movie, snapshots=None):
    """Replay the events; returns (alive leaves, creation records, tiles)."""
    s = m.slice0
    alive = dict(s.leaves)
    tiles = []
    circles = []
    for k, ev in enumerate(m.events):
        if snapshots is not None and k:
            snapshots.append((m.events[k - 1], dict(alive)))
        for lid in (ev.leaf1, ev.leaf2):
            if lid not in alive:
                raise IllegalSurgery(f"event at t={ev.time}: leaf {lid} no longer exists")
        l1, l2 = alive[ev.leaf1], alive[ev.leaf2]
        if "c" in (l1.kind, l2.kind) or ev.leaf1 == ev.leaf2:
            circles.append(_circle_event(s, ev, l1, l2, alive))
            continue
        if len(ev.results) != 2:
            raise IllegalSurgery(f"event at t={ev.time}: a saddle of two arcs yields two arcs")
        x1, y1 = _oriented(s, l1)
        x2, y2 = _oriented(s, l2)
        r1, r2 = ev.results
        del alive[ev.leaf1], alive[ev.leaf2]
        for rid, ends in ((r1, (x1, y2)), (r2, (x2, y1))):
            alive[rid] = Leaf(rid, _leaf_kind(s, ends), ends, 0, ev.attrs_for(rid))
        tiles.append((k, ev, (x1, y1, x2, y2), (ev.leaf1, r2, ev.leaf2, r1)))
    if snapshots is not None and m.events:
        snapshots.append((m.events[-1], dict(alive)))
    return alive, tiles, circles


def movie_slices(m: Movie):
    """Leaves alive at t = 0 and just after each event, as (event or None, leaves)."""
    shots = [(None, dict(m.slice0.leaves))]
    _run_events(m, shots)
    return shots


def _circle_event(s, ev, l1, l2, alive):
    if ev.leaf1 == ev.leaf2:
        if l1.kind != "a" or len(ev.results) != 2:
            raise IllegalSurgery(
                f"event at t={ev.time}: a self-saddle must split an a-arc into an a-arc "
                f"and a c-circle")
        new_arc, circle = ev.results
        del alive[ev.leaf1]
        alive[new_arc] = replace(l1, id=new_arc)
        alive[circle] = Leaf(circle, "c", (), 0, ev.attrs_for(circle))
        return ("split", ev, l1, circle)
    arc, circ = (l1, l2) if l2.kind == "c" else (l2, l1)
    if arc.kind != "a" or circ.kind != "c" or len(ev.results) != 1:
        raise IllegalSurgery(
            f"event at t={ev.time}: a c-circle can only merge into an a-arc")
    del alive[arc.id], alive[circ.id]
    alive[ev.results[0]] = replace(arc, id=ev.results[0])
    return ("merge", ev, arc, circ.id)


def _close(m: Movie, alive):
    """Map each leaf alive at t = 1 to the first-slice leaf it is glued to."""
    s = m.slice0
    final = replace(s, leaves=alive)
    mapped = apply_monodromy(final, m.monodromy)
    declared_wind = any(l.wind for l in s.leaves.values())
    pool: dict = {}
    for lid in sorted(s.leaves):
        leaf = s.leaves[lid]
        if leaf.kind == "c":
            continue
        pool.setdefault(_match_key(s, leaf), []).append(lid)
    glue = {}
    for lid in sorted(mapped.leaves):
        leaf = mapped.leaves[lid]
        if leaf.kind == "c":
            if m.require_closure:
                raise NotClosed(f"c-circle {lid} survives to t = 1")
            continue
        key = _match_key(s, leaf)
        cands = pool.get(key, [])
        if not cands:
            if m.require_closure:
                raise NotClosed(f"leaf {lid} {key} at t = 1 has no partner in the first slice")
            glue[lid] = lid
            continue
        # prefer the leaf with the same puncture labels, then the first
        exact = [c for c in cands if sorted(s.leaves[c].ends) == sorted(leaf.ends)]
        target = (exact or cands)[0]
        if declared_wind and m.require_closure and s.leaves[target].wind != leaf.wind:
            raise NotClosed(f"leaf {lid} winds {leaf.wind} times, {target} winds "
                            f"{s.leaves[target].wind}")
        cands.remove(target)
        glue[lid] = target
    if m.require_closure and any(pool.values()):
        left = sorted(x for v in pool.values() for x in v)
        raise NotClosed(f"first-slice leaves {left} are not reached at t = 1")
    return glue


def _b_flags(m: Movie, leaf: Leaf, page: Page, comp_of):
    attrs = dict(leaf.attrs)
    keys = ("separating", "essential", "strongly_essential")
    if all(k in attrs for k in keys):
        return BFlags(attrs["separating"], attrs["essential"], attrs["strongly_essential"])
    if leaf.id in m.slice0.leaves and m.slice0.faces:
        c = classify_b_arc(m.slice0, page, leaf.id)
        return BFlags(c.separating, c.essential, c.strongly_essential)
    if not page.planar:
        c = classify_b_arc(SliceConfig(page, m.slice0.elliptics, m.slice0.punctures,
                                       {leaf.id: leaf}), page, leaf.id)
        return BFlags(c.separating, c.essential, c.strongly_essential)
    c1, c2 = (comp_of(e) for e in leaf.ends)
    if c1 != c2:
        return BFlags(False, True, True)
    return BFlags(True, attrs.get("essential", False), attrs.get("strongly_essential", False))


def interpret(m: Movie) -> FoliationComplex:
    """The foliation complex of the surface swept out by the movie."""
    s = m.slice0
    surface = m.kind
    n_alpha = sum(1 for sg, _ in s.punctures.values() if sg > 0)
    n_beta = sum(1 for sg, _ in s.punctures.values() if sg < 0)
    if surface == "disc" and n_beta:
        raise MalformedMovie("a disc movie has punctures of one orientation only")
    if surface == "annulus" and not (n_alpha and n_beta):
        raise MalformedMovie("an annulus movie needs punctures of both orientations")
    alive, tiles, circles = _run_events(m)
    if circles:
        if tiles:
            raise Unsupported("movies mixing c-circle events with ordinary saddles")
        return _interpret_layers(m, circles, alive)
    glue = _close(m, alive)
    if not tiles:
        if surface == "disc":
            return make_complex("disc", m.page, {e: v for e, v in s.elliptics.items()}, [],
                                n_alpha=n_alpha, name=m.name)
        return replace(product_annulus(m.page, n_alpha, name=m.name or "product"),
                       n_beta=n_beta)
    used = {lid for *_, edges in tiles for lid in edges}
    for lid in s.leaves:
        if lid not in used and lid not in glue.values():
            raise MalformedMovie(f"leaf {lid} never meets a hyperbolic point")
    all_leaves = dict(s.leaves)
    for _, ev, corners, edges in tiles:
        for lid in edges:
            if lid not in all_leaves:
                all_leaves[lid] = alive.get(lid) or _created_leaf(s, ev, corners, lid)
    faces = []
    for k, ev, corners, edges in tiles:
        verts = tuple(_vertex_of(s, c) for c in corners)
        eids = tuple(glue.get(e, e) for e in edges)
        faces.append((f"h{k + 1}", verts, ev.sign, float(ev.time), eids))
    comp_of = lambda e: s.elliptics[e][1] if e in s.elliptics else None  # noqa: E731
    barc = {}
    for lid, leaf in all_leaves.items():
        if leaf.kind == "b" and glue.get(lid, lid) == lid:
            barc[lid] = _b_flags(m, leaf, m.page, comp_of)
    fc = make_complex(surface, m.page, dict(s.elliptics), faces, n_alpha=n_alpha,
                      n_beta=n_beta if surface == "annulus" else None, barc=barc,
                      name=m.name)
    return fc


def _created_leaf(s, ev, corners, lid):
    x1, y1, x2, y2 = corners
    r1, r2 = ev.results
    ends = (x1, y2) if lid == r1 else (x2, y1)
    return Leaf(lid, _leaf_kind(s, ends), ends, 0, ev.attrs_for(lid))


def _interpret_layers(m: Movie, circles, alive):
    s = m.slice0
    if m.kind != "annulus":
        raise Unsupported("c-circle layers only occur in cobounding annuli")
    if len(circles) % 2:
        raise NotClosed("a c-circle is created but never merged")
    layers = []
    for split, merge in zip(circles[::2], circles[1::2]):
        (k1, ev1, arc_v, circle), (k2, ev2, arc_w, circle2) = split, merge
        if k1 != "split" or k2 != "merge" or circle != circle2:
            raise Unsupported("c-circle events must come as split-then-merge pairs")
        v = next(e for e in arc_v.ends if e in s.elliptics)
        w = next(e for e in arc_w.ends if e in s.elliptics)
        if s.elliptics[v][0] < 0 or s.elliptics[w][0] > 0:
            raise IllegalSurgery("the circle splits off the alpha side and merges into the "
                                 "beta side")
        attrs = dict(ev1.attrs_for(circle))
        layers.append(CLayer(
            id=circle, sign_alpha=ev1.sign, sign_beta=ev2.sign, v=v, w=w,
            v_component=s.elliptics[v][1], w_component=s.elliptics[w][1],
            time_alpha=float(ev1.time), time_beta=float(ev2.time),
            core_parallel=not attrs.get("null_homotopic", False),
            circle_separating=attrs.get("separating", m.page.planar)))
    _close(m, alive)
    return stacked_annulus(m.page, tuple(layers), name=m.name)


# ---------------------------------------------------------------------------
# boundary braids


@dataclass(frozen=True)
class BraidBoundary:
    side: str
    n: int
    linking: tuple[tuple[str, int], ...]
    core_winding: int | None

    def lk(self, component):
        return dict(self.linking)[component]


def braid_boundary(m: Movie, side: str = ALPHA) -> BraidBoundary:
    """Strand count and winding of one boundary braid.

    Winding is recorded as the linking number with every binding component.
    On an annulus page the winding around the core is ``lk(C0) - n``: each
    strand passes once through every page, and every turn around the core
    links the first component once more.
    """
    s = m.slice0
    want = 1 if side == ALPHA else -1
    n = sum(1 for sg, _ in s.punctures.values() if sg == want)
    if n == 0:
        raise MalformedMovie(f"no punctures on the {side} side")
    _check_constant_strands(m)
    linking = ()
    core = None
    if m.kind == "disc" and m.page.planar:
        linking = tuple((c, linking_with_binding(m, c)) for c in m.page.labels)
        if m.page.is_annulus:
            core = dict(linking)[m.page.labels[0]] - n
    return BraidBoundary(side, n, linking, core)


def _check_constant_strands(m: Movie):
    s = m.slice0
    alive = dict(s.leaves)
    before = sorted(p for l in alive.values() for p in l.ends if p in s.punctures)
    for ev in m.events:
        l1, l2 = alive.get(ev.leaf1), alive.get(ev.leaf2)
        if l1 is None or l2 is None:
            raise IllegalSurgery(f"event at t={ev.time} uses a leaf that no longer exists")
        ends = [p for l in {l1.id: l1, l2.id: l2}.values() for p in l.ends if p in s.punctures]
        for lid in {ev.leaf1, ev.leaf2}:
            del alive[lid]
        if ev.leaf1 == ev.leaf2 or "c" in (l1.kind, l2.kind):
            keep = l1 if l1.kind != "c" else l2
            alive[ev.results[0]] = replace(keep, id=ev.results[0])
            if len(ev.results) > 1:
                alive[ev.results[1]] = Leaf(ev.results[1], "c", ())
            continue
        x1, y1 = _oriented(s, l1)
        x2, y2 = _oriented(s, l2)
        for rid, e in zip(ev.results, ((x1, y2), (x2, y1))):
            alive[rid] = Leaf(rid, _leaf_kind(s, e), e)
        after = [p for rid in ev.results for p in alive[rid].ends if p in s.punctures]
        if sorted(ends) != sorted(after):
            raise MalformedMovie(f"event at t={ev.time} changes the punctures")
    now = sorted(p for l in alive.values() for p in l.ends if p in s.punctures)
    if now != before:
        raise MalformedMovie("the number of punctures changes across the movie")


def linking_with_binding(m: Movie, component: str) -> int:
    """Linking number of the alpha-side braid with a binding component.

    A disc bounded by the braid meets the binding exactly at its elliptic
    points, with the elliptic point's sign as intersection sign, so the
    linking number is their signed count on ``component``.  This counts the
    full winding, monodromy included, without tracking strands.
    """
    if not m.page.planar:
        raise Unsupported("linking numbers are computed on planar pages only")
    m.page.check_label(component)
    if m.kind != "disc":
        raise Unsupported("linking numbers need a disc movie (a Seifert surface)")
    return sum(sg for sg, comp in m.slice0.elliptics.values() if comp == component)
