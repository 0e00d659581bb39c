"""Normalization of cobounding annuli and the generalized Jones-Kawamuro check.

``normalize`` runs the induction on singular points: c-circle layers are
split off, otherwise the Euler characteristic equality points at an
elliptic point of type (1,0), (1,1), (0,2) or (0,3), which is removed
by destabilization or exchange (after foliation changes when needed).  When
no such point exists, the tiling is either rewired by foliation changes or
it already alternates in sign, and then both braids need the same number of
stabilizations of the same sign.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import (
    FDTCContradiction,
    IncompleteInput,
    InvalidComplex,
    Lemma42Violation,
    Lemma43Violation,
    NoProgress,
    NotApplicable,
    Unsupported,
    UnsupportedFDTC,
)
from .foliation import (
    ALPHA,
    BETA,
    BFlags,
    CLayer,
    FoliationComplex,
    Ledger,
    euler_audit,
    product_annulus,
    singularity_counts,
    sl_difference,
    stacked_annulus,
    validate,
)
from .moves import (
    MoveEffect,
    MoveSite,
    _parts,
    _rebuild,
    _remove_leaf,
    applicable_moves,
    apply_move,
    trace_line,
)
from .page import Monodromy, Page, fdtc


@dataclass(frozen=True)
class OpenBook:
    page: Page
    monodromy: Monodromy

    def fdtc(self, component):
        return fdtc(self.monodromy, self.page, component)


@dataclass(frozen=True)
class NormalizationResult:
    terminal: str  # "product" | "alternating-tiling" | "split-recursion"
    steps: tuple = ()
    n_alpha0: int = 0
    n_beta0: int = 0
    sl_alpha0: int = 0
    sl_beta0: int = 0
    destabilizations: int = 0
    exchanges: int = 0
    foliation_changes: int = 0
    certificates: tuple = ()
    measures: tuple = ()
    ledger: Ledger | None = None
    final: FoliationComplex | None = None
    children: tuple = ()

    @property
    def trace(self):
        return [trace_line(s, e) for s, e in self.steps]

    def trace_for(self, side):
        """Moves that change the braid on ``side`` (exchanges count for both)."""
        out = []
        for s, e in self.steps:
            if s.side in (None, side):
                out.append(trace_line(s, e))
        return out

    @property
    def balanced(self):
        return self.n_alpha0 == self.n_beta0 and self.sl_alpha0 == self.sl_beta0


# ---------------------------------------------------------------------------
# c-circles


def split_at_c_circles(f: FoliationComplex):
    """Split a stacked annulus at its first layer: (A_alpha, A', A_beta)."""
    if not f.stacked or not f.layers():
        raise NotApplicable("no c-circle in the foliation", clause="c-circle")
    for layer in f.layers():
        if not layer.core_parallel:
            raise Lemma43Violation(
                f"layer {layer.id}: a null-homotopic c-circle cannot occur in cobounding annuli")
    i = next(k for k, item in enumerate(f.stack) if isinstance(item, CLayer))
    layer = f.stack[i]
    before, after = f.stack[:i], f.stack[i + 1:]
    a_alpha = _sub_annulus(f, before, f.n_alpha, 1, "A_alpha")
    a_beta = _sub_annulus(f, after, 1, f.n_beta, "A_beta")
    a_prime = stacked_annulus(f.page, (layer,), name=f"{f.name}:{layer.id}")
    return a_alpha, a_prime, a_beta


def _sub_annulus(f, items, n_a, n_b, label):
    name = f"{f.name}:{label}"
    if not items:
        return replace(product_annulus(f.page, n_a, name=name), n_beta=n_b)
    if len(items) == 1 and isinstance(items[0], FoliationComplex):
        return replace(items[0], name=name)
    return stacked_annulus(f.page, items, name=name)


def check_degenerated_ac_pair(f: FoliationComplex, page: Page | None = None):
    """Facts about an annulus made of exactly two degenerated ac-annuli."""
    page = page or f.page
    layers = f.layers() if f.stacked else []
    if len(f.stack) != 1 or len(layers) != 1:
        raise NotApplicable("the annulus is not a single pair of degenerated ac-annuli",
                            clause="region inventory")
    layer = layers[0]
    equal = layer.sign_alpha == layer.sign_beta
    if page.planar and equal and layer.circle_separating:
        raise InvalidComplex(
            "a separating c-circle forces opposite signs on the two ac-annuli",
            violations=("EqualSignsOnPlanarPage",))
    return {
        "n_alpha": 1,
        "n_beta": 1,
        "sl_equal": not equal,
        "sign_relation": "equal" if equal else "opposite",
        "sl_difference": layer.sign_alpha + layer.sign_beta,
    }


# ---------------------------------------------------------------------------
# the normalization loop


class _Run:
    def __init__(self, f, fdtc_value):
        self.f = f
        self.fdtc_value = fdtc_value
        self.steps = []
        self.n = {ALPHA: f.n_alpha, BETA: f.n_beta}
        self.dsl = {ALPHA: 0, BETA: 0}
        self.counts = {"destab": 0, "exchange": 0, "flip": 0}
        self.certs = []
        self.measures = []

    def snapshot(self):
        return (self.f, len(self.steps), dict(self.n), dict(self.dsl), dict(self.counts),
                len(self.certs))

    def restore(self, saved):
        self.f, k, self.n, self.dsl, self.counts, c = saved
        del self.steps[k:]
        del self.certs[c:]

    def apply(self, site):
        g, eff = apply_move(self.f, site)
        self.record(site, eff)
        self.f = g
        return g

    def record(self, site, eff: MoveEffect):
        self.steps.append((site, eff))
        self.n[ALPHA] += eff.dn_alpha
        self.n[BETA] += eff.dn_beta
        self.dsl[ALPHA] += eff.dsl_alpha
        self.dsl[BETA] += eff.dsl_beta
        if site.kind == "tile-destabilization":
            self.counts["destab"] += 1
            self.certs.append(("destabilization", site.component))
        elif site.kind in ("interior-exchange", "boundary-shrinking-exchange"):
            self.counts["exchange"] += 1
            self.certs.append(("exchange", site.component))
        elif site.kind == "b-arc-foliation-change":
            self.counts["flip"] += 1


def _sites(f, kind, **match):
    out = []
    for s in applicable_moves(f):
        if s.kind != kind:
            continue
        if all(_site_matches(s, k, v) for k, v in match.items()):
            out.append(s)
    return out


def _site_matches(site, key, value):
    if key == "vertex":
        return value in site.cells
    if key == "edge":
        return site.cells[-1] == value
    return getattr(site, key) == value


def _try(run, sites):
    for s in sites:
        try:
            run.apply(s)
            return True
        except NotApplicable:
            continue
    return False


def _flip_at(run, v, same_sign_only=True):
    """Foliation change on two adjacent same-sign tiles around ``v``."""
    f = run.f
    fan = f.fan(v)
    cands = []
    for k in range(len(fan)):
        (g1, i1), (g2, i2) = fan[k], fan[(k + 1) % len(fan)]
        e = f.faces[g1].edges[i1]
        if f.edges[e].kind != "b":
            continue
        if same_sign_only and f.faces[g1].sign != f.faces[g2].sign:
            continue
        cands.extend(_sites(f, "b-arc-foliation-change", edge=e))
    return _try(run, cands)


def _all_b(f, v):
    return f.vertex_type(v)[0] == 0


def _check_lemma42(f, v):
    if _all_b(f, v) and len(set(f.signs_around(v))) < 2:
        raise Lemma42Violation(
            f"{v}: every leaf at {v} is a b-arc but all hyperbolic points around it "
            f"have sign {f.signs_around(v)[0]:+d}")


def _eliminate(run, v):
    """Apply moves at ``v`` until it is gone (case analysis by type)."""
    for _ in range(4 * len(run.f.faces) + 8):
        f = run.f
        if v not in f.vertices:
            return
        typ = f.vertex_type(v)
        _check_lemma42(f, v)
        if typ == (1, 0):
            if not _try(run, _sites(f, "tile-destabilization", vertex=v)):
                raise NoProgress(f"{v}: destabilization is obstructed")
        elif typ == (1, 1):
            if not _try(run, _sites(f, "boundary-shrinking-exchange", vertex=v)):
                if not _flip_at(run, v):
                    raise NoProgress(f"{v}: neither exchange nor foliation change applies")
        elif typ == (0, 2):
            sites = _sites(f, "interior-exchange", vertex=v)
            if not sites:
                flags = [f.barc.get(e.id, BFlags()) for e in f.incident_edges(v)]
                if all(fl.strongly_essential for fl in flags):
                    if run.fdtc_value is not None and abs(run.fdtc_value) > 1:
                        raise FDTCContradiction(
                            f"{v} is strongly essential, so |c(phi, C)| <= 1, "
                            f"against c = {run.fdtc_value}")
                raise NoProgress(f"{v}: no boundary-parallel b-arc for an interior exchange")
            if not _try(run, sites):
                raise NoProgress(f"{v}: interior exchange leaves an invalid complex")
        else:
            if not _flip_at(run, v):
                raise NoProgress(f"{v} of type {typ}: no foliation change applies")
    raise NoProgress(f"{v}: elimination did not terminate")


def _rewiring_vertices(f):
    """(0,4)/(1,2) elliptic points whose tile signs do not alternate."""
    out = []
    for v in sorted(x.id for x in f.elliptics()):
        typ = f.vertex_type(v)
        fan = f.fan(v)
        if typ not in ((0, 4), (1, 2)):
            continue
        for k in range(len(fan)):
            (g1, i1), (g2, _) = fan[k], fan[(k + 1) % len(fan)]
            e = f.faces[g1].edges[i1]
            if f.edges[e].kind == "b" and f.faces[g1].sign == f.faces[g2].sign:
                out.append(v)
                break
    return out


CASE_ORDER = ((1, 0), (1, 1), (0, 2), (0, 3))


def _check_hypotheses(f, C, fdtc_value):
    if not f.page.planar:
        raise NotApplicable("the page is not planar", clause="Planar")
    for item in (f.pieces() if f.stacked else [f]):
        for v in item.elliptics():
            if v.component != C:
                raise NotApplicable(f"elliptic point {v.id} lies on {v.component}, not {C}",
                                    clause="C-Top")
    if fdtc_value is not None and abs(fdtc_value) <= 1:
        raise NotApplicable(f"|c(phi, {C})| = {abs(fdtc_value)} is not > 1", clause="FDTC")


def normalize(f: FoliationComplex, open_book: OpenBook | None = None, C: str | None = None,
              *, sl_beta: int = 0, fdtc_value=None, check_hypotheses: bool = True):
    """Reduce cobounding annuli until both braids have equal n and sl.

    ``sl_beta`` fixes the (otherwise relative) self-linking numbers;
    ``fdtc_value`` overrides the coefficient computed from ``open_book``.
    """
    if f.surface != "annulus":
        raise NotApplicable("normalization needs cobounding annuli", clause="annulus")
    rep = validate(f)
    if not rep.ok:
        raise InvalidComplex(f"invalid complex {f.name}: {sorted(rep.codes())}", rep.violations)
    C = C or f.page.labels[0]
    if fdtc_value is None and open_book is not None:
        fdtc_value = open_book.fdtc(C)
    if check_hypotheses:
        _check_hypotheses(f, C, fdtc_value)
    sl_alpha = sl_beta + sl_difference(f)
    if f.stacked:
        return _normalize_stacked(f, C, sl_alpha, sl_beta, fdtc_value)
    run = _Run(f, fdtc_value)
    terminal, ledger = _descend(run, [0])
    n_a, n_b = run.n[ALPHA], run.n[BETA]
    sl_a0 = sl_alpha + run.dsl[ALPHA]
    sl_b0 = sl_beta + run.dsl[BETA]
    if terminal == "alternating-tiling":
        # both sides need the same stabilizations to become braid isotopic
        if ledger.a_plus + ledger.a_minus != ledger.b_plus + ledger.b_minus:
            raise NoProgress("terminal tiling does not balance the two braids")
    return NormalizationResult(
        terminal, tuple(run.steps), n_a, n_b, sl_a0, sl_b0,
        run.counts["destab"], run.counts["exchange"], run.counts["flip"],
        tuple(run.certs), tuple(run.measures), ledger, run.f)


SEARCH_BUDGET = 400
_DEAD_ENDS = (NoProgress, Lemma42Violation, FDTCContradiction, NotApplicable, Unsupported)


def _targets(g):
    if euler_audit(g).lhs > 0:
        targets = [v for typ in CASE_ORDER
                   for v in sorted(x.id for x in g.elliptics() if g.vertex_type(x.id) == typ)]
        if not targets:
            raise NoProgress("Euler equality is positive but no reducible elliptic point")
        return targets
    return _rewiring_vertices(g)


def _descend(run, spent):
    """Eliminate elliptic points until a terminal form, backtracking over the
    choice of elliptic point when a branch gets stuck."""
    g = run.f
    run.measures.append(g.n_singular())
    if not g.faces:
        return "product", Ledger(0, 0, 0, 0)
    for v in g.elliptics():
        _check_lemma42(g, v.id)
    targets = _targets(g)
    if not targets:
        return "alternating-tiling", _alternating_ledger(g)
    before = g.n_singular()
    errors = []
    for target in targets:
        if spent[0] >= SEARCH_BUDGET:
            break
        spent[0] += 1
        saved = run.snapshot()
        n_measures = len(run.measures)
        try:
            _eliminate(run, target)
            if run.f.n_singular() >= before:
                raise NoProgress("singular-point count did not decrease")
            return _descend(run, spent)
        except _DEAD_ENDS as exc:
            run.restore(saved)
            del run.measures[n_measures:]
            errors.append(exc)
    if not errors:
        raise NoProgress("search budget exhausted")
    # a contradiction certificate outranks a model limit, which outranks a dead end
    for kind in (FDTCContradiction, Unsupported):
        for exc in errors:
            if isinstance(exc, kind):
                raise exc
    raise errors[0]


def _alternating_ledger(f):
    c = singularity_counts(f)
    bad = []
    for v in f.elliptics():
        typ = f.vertex_type(v.id)
        if typ not in ((0, 4), (1, 2)):
            bad.append((v.id, typ))
    if bad or c.e_plus != c.e_minus or c.h_plus != c.h_minus:
        raise NoProgress(f"terminal tiling is not sign-alternating: counts {c.as_tuple()}, "
                         f"unexpected types {bad}")
    led = stabilization_ledger_for(f)
    return led


def _normalize_stacked(f, C, sl_alpha, sl_beta, fdtc_value):
    a_alpha, a_prime, a_beta = split_at_c_circles(f)
    info = check_degenerated_ac_pair(a_prime)
    total = f.n_singular()
    children = []
    # the layer's braids have one strand and never destabilize
    sl_mid_alpha = sl_alpha - (sl_difference(a_alpha) if a_alpha.faces or a_alpha.stacked else 0)
    for sub, sl_b in ((a_alpha, sl_mid_alpha),
                      (a_beta, sl_beta)):
        if sub.n_singular() >= total:
            raise NoProgress("split did not reduce the singular-point count")
        children.append(normalize(sub, None, C, sl_beta=sl_b, fdtc_value=fdtc_value,
                                  check_hypotheses=False))
    if not info["sl_equal"]:
        raise NoProgress("layer braids differ in sl")
    ra, rb = children
    return NormalizationResult(
        "split-recursion", ra.steps + rb.steps, 1, 1, ra.sl_alpha0, rb.sl_beta0,
        ra.destabilizations + rb.destabilizations, ra.exchanges + rb.exchanges,
        ra.foliation_changes + rb.foliation_changes, ra.certificates + rb.certificates,
        (total,) + ra.measures + rb.measures, None, None, tuple(children))


# ---------------------------------------------------------------------------
# common stabilization


def _stabilize_all(f):
    """Stabilize both braids until no singular point is left.

    Collapsible tiles are stabilizations of the braid on their boundary
    corner.  A valence-one elliptic point next to one braid is read as a
    stabilization of the other braid (the destabilization run backwards).
    Returns the list of (side, sign, site) or None when stuck.
    """
    steps = []
    while f.faces:
        done = False
        for s in applicable_moves(f):
            if s.kind != "tile-stabilization":
                continue
            try:
                f, _ = apply_move(f, s)
            except NotApplicable:
                continue
            steps.append((s.side, s.sign, s))
            done = True
            break
        if done:
            continue
        for s in applicable_moves(f):
            if s.kind not in ("tile-destabilization", "microflype"):
                continue
            parts = _parts(f)
            try:
                _remove_leaf(parts, s.cells[1])
            except NotApplicable:
                continue
            other = BETA if s.side == ALPHA else ALPHA
            n = {"n_alpha": f.n_alpha, "n_beta": f.n_beta}
            n["n_" + other] += 1
            g = _rebuild(f, *parts, **n)
            if not validate(g).ok:
                continue
            f = g
            # removing a leaf of sign s from alpha equals stabilizing beta with sign s
            steps.append((other, s.sign, replace(s, side=other)))
            done = True
            break
        if not done:
            return None
    return steps


def stabilization_trace(f: FoliationComplex):
    """Ledger (a+, a-, b+, b-) read off a complete stabilization sequence, or None."""
    if f.stacked:
        return None
    steps = _stabilize_all(f)
    if steps is None:
        return None
    led = [0, 0, 0, 0]
    for side, sign, _ in steps:
        led[(0 if side == ALPHA else 2) + (0 if sign > 0 else 1)] += 1
    return Ledger(*led)


def stabilization_ledger_for(f):
    from .foliation import stabilization_ledger

    return stabilization_ledger(f)


def common_stabilization(f: FoliationComplex):
    """Stabilization traces for alpha and beta ending at braid-isotopic braids."""
    if f.surface != "annulus":
        raise NotApplicable("common stabilization needs cobounding annuli", clause="annulus")
    if f.stacked:
        raise NotApplicable("c-circles present", clause="no c-circles")
    steps = _stabilize_all(f)
    if steps is None:
        raise NoProgress("no stabilization sequence removes every singular point")
    alpha, beta = [], []
    for side, sign, site in steps:
        dn = MoveEffect(dn_alpha=1, dsl_alpha=0 if sign > 0 else -2) if side == ALPHA \
            else MoveEffect(dn_beta=1, dsl_beta=0 if sign > 0 else -2)
        line = trace_line(MoveSite("tile-stabilization", site.cells, site.component,
                                   side, sign), dn)
        (alpha if side == ALPHA else beta).append(line)
    return alpha, beta


# ---------------------------------------------------------------------------
# the inequality


@dataclass(frozen=True)
class BraidData:
    name: str
    n: int
    sl: int
    lk: tuple | None = None  # linking numbers with binding components, in label order


@dataclass(frozen=True)
class InequalityReport:
    alpha: BraidData
    beta: BraidData
    b_C: int
    provenance: str
    lhs: int
    rhs: int
    verdict: str  # "holds" | "violated"
    hypotheses: dict = field(default_factory=dict)
    inconsistent: bool = False
    classical: dict | None = None

    def recheck(self) -> bool:
        lhs = abs(self.alpha.sl - self.beta.sl)
        rhs = 2 * (max(self.alpha.n, self.beta.n) - self.b_C)
        return lhs == self.lhs and rhs == self.rhs and \
            self.verdict == ("holds" if lhs <= rhs else "violated")

    @property
    def margin(self):
        return self.lhs - self.rhs

    def failed_hypotheses(self):
        return [k for k, (_, ok) in self.hypotheses.items() if ok is False]


def verify_jk(open_book: OpenBook, C: str, alpha: BraidData, beta: BraidData,
              b_C_bound: int | None, provenance: str = "", *, c_isotopic: bool | None = None,
              annulus: FoliationComplex | None = None, fdtc_value=None) -> InequalityReport:
    """Evaluate |sl(a) - sl(b)| <= 2(max(n(a), n(b)) - b_C(L)) and report hypotheses."""
    if b_C_bound is None:
        raise IncompleteInput("an upper bound for the minimal C-braid index is required")
    page = open_book.page
    page.check_label(C)
    if annulus is not None:
        # the annulus fixes sl(alpha) relative to sl(beta)
        alpha = replace(alpha, sl=beta.sl + sl_difference(annulus))
    try:
        c = fdtc_value if fdtc_value is not None else open_book.fdtc(C)
    except UnsupportedFDTC as exc:  # reported, not refused
        c = None
        c_note = str(exc)
    else:
        c_note = ""
    hyp = {
        "Planar": (page.planar, page.planar),
        "FDTC": (c if c is not None else c_note, None if c is None else abs(c) > 1),
    }
    if annulus is not None:
        on_c = all(v.component == C for p in (annulus.pieces() or [annulus])
                   for v in p.elliptics())
        c_isotopic = on_c if c_isotopic is None else (c_isotopic and on_c)
    if c_isotopic is None and alpha.lk is not None and beta.lk is not None:
        # crossing C changes only the linking number with C itself
        others = [i for i, lab in enumerate(page.labels) if lab != C]
        if any(alpha.lk[i] != beta.lk[i] for i in others):
            c_isotopic = False
    hyp["C-Top"] = (c_isotopic, c_isotopic)
    lhs = abs(alpha.sl - beta.sl)
    rhs = 2 * (max(alpha.n, beta.n) - b_C_bound)
    verdict = "holds" if lhs <= rhs else "violated"
    inconsistent = verdict == "violated" and all(ok is True for _, ok in hyp.values())
    return InequalityReport(alpha, beta, b_C_bound, provenance, lhs, rhs, verdict, hyp,
                            inconsistent)


# ---------------------------------------------------------------------------
# report text


def verdict_line(report: InequalityReport) -> str:
    op = "<=" if report.verdict == "holds" else ">"
    return f"{report.verdict.upper()} {report.lhs} {op} {report.rhs}"


def format_report(report: InequalityReport | None = None,
                  result: NormalizationResult | None = None) -> str:
    lines = []
    if report is not None:
        lines.append("HYPOTHESES")
        for name, (value, ok) in report.hypotheses.items():
            state = "unknown" if ok is None else ("holds" if ok else "fails")
            if name == "FDTC" and not isinstance(value, str):
                value = f"c={value}, |c|={abs(value)}"
            lines.append(f"  {name}: {state} ({value})")
    if result is not None:
        lines.append("TRACE")
        lines.extend(f"  {line}" for line in result.trace)
        lines.append("TERMINAL")
        lines.append(f"  kind: {result.terminal}")
        lines.append(f"  n_alpha0: {result.n_alpha0}")
        lines.append(f"  n_beta0: {result.n_beta0}")
        lines.append(f"  sl_alpha0: {result.sl_alpha0}")
        lines.append(f"  sl_beta0: {result.sl_beta0}")
        if result.ledger is not None:
            lines.append(f"  ledger: a+={result.ledger.a_plus} a-={result.ledger.a_minus} "
                         f"b+={result.ledger.b_plus} b-={result.ledger.b_minus}")
    if report is not None:
        lines.append("INEQUALITY")
        lines.append(f"  sl_alpha: {report.alpha.sl}")
        lines.append(f"  sl_beta: {report.beta.sl}")
        lines.append(f"  n_alpha: {report.alpha.n}")
        lines.append(f"  n_beta: {report.beta.n}")
        lines.append(f"  b_C: {report.b_C} ({report.provenance or 'given'})")
        lines.append(f"  lhs: {report.lhs}")
        lines.append(f"  rhs: {report.rhs}")
        lines.append(f"  verdict: {verdict_line(report)}")
        if report.classical:
            for k, v in report.classical.items():
                lines.append(f"  {k}: {v}")
    return "\n".join(lines) + "\n"
