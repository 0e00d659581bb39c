"""Command-line front end: ``obf <verb> ...``.

Exit codes: 0 success or inequality holds, 1 violated or invalid input,
2 inconclusive (search bounds exhausted, unsupported input), 3 usage error.
Set ``OBF_COLOR=1`` to colour verdicts on the terminal; ``OBF_COLOR=0`` also
turns SVG output monochrome.
"""
from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import errors
from .braids import markov_search, parse_braid
from .fixtures import data_text, fixture, fixture_names
from .foliation import (
    euler_audit,
    self_linking,
    singularity_counts,
    sl_difference,
    validate,
)
from .movie import braid_boundary, interpret, load_movie, parse_movie
from .normalize import (
    BraidData,
    OpenBook,
    format_report,
    normalize,
    verdict_line,
    verify_jk,
)
from .render import movie_svg, to_dot, to_svg

OK, VIOLATED, INCONCLUSIVE, USAGE = 0, 1, 2, 3

_INCONCLUSIVE = (errors.NotFoundWithinBounds, errors.Unsupported, errors.UnsupportedFDTC,
                 errors.UnsupportedAction, errors.NoProgress, errors.IncompleteInput)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _color() -> bool:
    return os.environ.get("OBF_COLOR", "") == "1"


def _paint(text: str, ok: bool) -> str:
    if not _color():
        return text
    return f"\033[{32 if ok else 31}m{text}\033[0m"


def _load(path: str):
    p = Path(path)
    if not p.exists():
        # fall back on the packaged copy of a fixture file, e.g. ``fixtures/ex2_2.obf``
        try:
            return parse_movie(data_text(p.name))
        except (FileNotFoundError, OSError):
            raise errors.OBFError(f"{path}: no such file") from None
    return load_movie(p)


# ---------------------------------------------------------------------------
# verbs


def cmd_validate(args, out):
    f = interpret(_load(args.file))
    rep = validate(f)
    if rep.ok:
        out.write(_paint("valid", True) + "\n")
        return OK
    out.write(_paint("invalid", False) + "\n")
    for v in rep.violations:
        out.write(f"  {v}\n")
    return VIOLATED


def cmd_sl(args, out):
    m = _load(args.file)
    f = interpret(m)
    c = singularity_counts(f)
    if f.surface == "disc":
        out.write(f"sl = {self_linking(f)}\n")
        out.write(f"n = {braid_boundary(m).n}\n")
    else:
        out.write(f"sl(alpha) - sl(beta) = {sl_difference(f)}\n")
    out.write(f"counts: e+={c.e_plus} e-={c.e_minus} h+={c.h_plus} h-={c.h_minus}\n")
    return OK


def cmd_euler(args, out):
    f = interpret(_load(args.file))
    variant = "annulus" if f.surface == "annulus" else "sphere"
    a = euler_audit(f, variant)
    out.write(f"V = {a.V}  E = {a.E}  R = {a.R}\n")
    out.write(f"V - E + R = {a.V - a.E + a.R}\n")
    for (i, j), k in sorted(a.table.items()):
        out.write(f"V({i},{j}) = {k}\n")
    ok = a.sphere_holds and a.V - a.E + a.R == 2 and 2 * a.R == a.E
    if variant == "annulus":
        out.write(f"annulus equality: {a.lhs} = {a.rhs}\n")
        ok = ok and a.holds
    out.write(f"valence form: {a.sphere_lhs} = {a.sphere_rhs}\n")
    out.write(_paint("HOLDS" if ok else "FAILS", ok) + "\n")
    return OK if ok else VIOLATED


def cmd_normalize(args, out):
    m = _load(args.file)
    f = interpret(m)
    ob = OpenBook(m.page, m.monodromy)
    q = Fraction(args.fdtc_override) if args.fdtc_override is not None else None
    result = normalize(f, ob, args.component, fdtc_value=q)
    out.write(format_report(result=result))
    return OK if result.balanced else VIOLATED


def _braid_data(m, label):
    f = interpret(m)
    if f.surface != "disc":
        raise errors.WrongSurfaceKind(f"{label}: jk needs a disc movie on each side")
    b = braid_boundary(m)
    lk = tuple(v for _, v in b.linking) if m.page.planar else None
    return BraidData(m.name or label, b.n, self_linking(f), lk)


def cmd_jk(args, out):
    left, right = _load(args.left), _load(args.right)
    if left.page != right.page or left.monodromy != right.monodromy:
        raise errors.InvalidPage("the two movies live in different open books")
    alpha, beta = _braid_data(left, "left"), _braid_data(right, "right")
    q = Fraction(args.fdtc_override) if args.fdtc_override is not None else None
    c_top = {"yes": True, "no": False, None: None}[args.c_isotopic]
    report = verify_jk(OpenBook(left.page, left.monodromy), args.component, alpha, beta,
                       args.bC, args.provenance, c_isotopic=c_top, fdtc_value=q)
    out.write(_paint(verdict_line(report), report.verdict == "holds") + "\n")
    out.write(format_report(report))
    return OK if report.verdict == "holds" else VIOLATED


def cmd_markov(args, out):
    a = parse_braid(args.a, args.na)
    b = parse_braid(args.b, args.nb)
    try:
        path = markov_search(a, b, args.max_len, args.max_n, args.max_depth)
    except errors.NotFoundWithinBounds as exc:
        out.write(f"NOT FOUND within bounds: {exc}\n")
        return INCONCLUSIVE
    out.write(f"FOUND {len(path.moves)} moves ({len(path.steps)} steps)\n")
    for s in path.steps:
        out.write(f"  {s}\n")
    return OK


def cmd_fixture(args, out):
    if args.list:
        for name in fixture_names():
            out.write(f"{name}\n")
        return OK
    if not args.name:
        raise UsageError("fixture: give a name or --list")
    fx = fixture(args.name)
    if args.emit:
        if not fx.movies:
            raise errors.Unsupported(f"fixture {fx.name} is generated, it has no movie text")
        out.write(fx.emit())
        return OK
    out.write(f"{fx.name}: {fx.description}\n")
    for k in sorted(fx.expected):
        out.write(f"  {k}: {fx.expected[k]}\n")
    for flag in fx.flags:
        out.write(f"  flag: {flag}\n")
    if fx.report is not None:
        out.write(format_report(fx.report))
    return OK


def cmd_render(args, out):
    m = _load(args.file)
    f = interpret(m)
    color = os.environ.get("OBF_COLOR", "1") != "0"
    if args.format == "dot":
        text = to_dot(f)
    elif args.graph:
        text = to_svg(f, color)
    else:
        text = movie_svg(m, color)
    if args.output in (None, "-"):
        out.write(text)
    else:
        Path(args.output).write_text(text)
        out.write(f"wrote {args.output}\n")
    return OK


# ---------------------------------------------------------------------------
# parser


def build_parser():
    p = _Parser(prog="obf", description="Open book foliation engine.")
    sub = p.add_subparsers(dest="verb", parser_class=_Parser)

    for verb, fn, help_ in (("validate", cmd_validate, "check a movie's foliation complex"),
                            ("sl", cmd_sl, "self-linking number from the singular points"),
                            ("euler", cmd_euler, "Euler characteristic audit")):
        s = sub.add_parser(verb, help=help_)
        s.add_argument("file")
        s.set_defaults(fn=fn)

    s = sub.add_parser("normalize", help="normalize cobounding annuli")
    s.add_argument("file")
    s.add_argument("--component", default="C0")
    s.add_argument("--fdtc-override", dest="fdtc_override")
    s.set_defaults(fn=cmd_normalize)

    s = sub.add_parser("jk", help="evaluate the braid-index inequality for two discs")
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.add_argument("--bC", type=int, required=True)
    s.add_argument("--component", default="C0")
    s.add_argument("--provenance", default="given on the command line")
    s.add_argument("--c-isotopic", dest="c_isotopic", choices=("yes", "no"))
    s.add_argument("--fdtc-override", dest="fdtc_override")
    s.set_defaults(fn=cmd_jk)

    s = sub.add_parser("markov", help="search for a Markov path between braid words")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--na", type=int, help="strand count of --a (default: from its letters)")
    s.add_argument("--nb", type=int, help="strand count of --b (default: from its letters)")
    s.add_argument("--max-len", dest="max_len", type=int, default=8)
    s.add_argument("--max-n", dest="max_n", type=int, default=4)
    s.add_argument("--max-depth", dest="max_depth", type=int, default=10)
    s.set_defaults(fn=cmd_markov)

    s = sub.add_parser("fixture", help="show or emit a registered fixture")
    s.add_argument("name", nargs="?")
    s.add_argument("--emit", action="store_true")
    s.add_argument("--list", action="store_true")
    s.set_defaults(fn=cmd_fixture)

    s = sub.add_parser("render", help="draw a movie as DOT or SVG")
    s.add_argument("file")
    s.add_argument("--format", choices=("dot", "svg"), default="dot")
    s.add_argument("--graph", action="store_true", help="SVG of the graph instead of a filmstrip")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_render)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "fn", None):
            raise UsageError("obf: choose a verb: " + ", ".join(
                ("validate", "sl", "euler", "normalize", "jk", "markov", "fixture", "render")))
        return args.fn(args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        err.write(parser.format_usage())
        return USAGE
    except errors.UnknownFixture as exc:
        err.write(f"error: {exc}\n")
        return USAGE
    except _INCONCLUSIVE as exc:
        err.write(f"inconclusive: {type(exc).__name__}: {exc}\n")
        return INCONCLUSIVE
    except errors.OBFError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return VIOLATED


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
