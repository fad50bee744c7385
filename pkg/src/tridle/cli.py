"""Command-line front end: ``tridle VERB [INPUT | --catalog NAME] [options]``.

Exit status 0 on success, 1 on a domain error (the error class is named on
stderr), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import catalog as cat
from .delta import (DEFAULT_GRID, colorings_mod_p, default_workers, delta,
                    invariant_profile, xy_form)
from .diagram import Unknot0, load_diagram, regions
from .errors import TridleError
from .finite import (FiniteTridle, affine_tridle, check_r3, enumerate_tridles,
                     linear_tridle)
from .matrix import alexander_polynomial, build_matrix, region_name, simplify
from .moves import apply, enumerate_sites, fuzz_steps

__all__ = ["main", "run", "build_parser"]

FORMATS = ("text", "json", "structured", "latex")

DIAGRAM_VERBS = ("validate", "regions", "matrix", "delta", "alexander", "colorings",
                 "moves", "fuzz")


class UsageError(Exception):
    pass


def _env_int(name: str, default: int) -> int:
    v = os.environ.get(name)
    if v is None or v == "":
        return default
    try:
        return int(v)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {v!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tridle", description="Regional knot invariants from PD codes.")
    p.add_argument("--format", choices=FORMATS, default="text")
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")

    def diagram_cmd(name, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("input", nargs="?", help="diagram file (JSON document or PD text)")
        s.add_argument("--catalog", metavar="NAME", help="use a built-in diagram")
        s.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
        return s

    diagram_cmd("validate", "check a diagram and report its shape")
    diagram_cmd("regions", "list the planar regions")
    s = diagram_cmd("matrix", "linear-tridle presentation matrix")
    s.add_argument("--simplify", action="store_true", help="apply M1-M3 reductions")
    s = diagram_cmd("delta", "the two-variable invariant Delta")
    s.add_argument("--reduce", action="store_true", help="simplify the matrix before taking minors")
    s.add_argument("--workers", type=int, default=None)
    diagram_cmd("alexander", "classical Alexander polynomial (knots)")
    s = diagram_cmd("colorings", "number of colorings over a prime field")
    s.add_argument("--prime", type=int, required=True)
    s.add_argument("--x", type=int, required=True)
    s.add_argument("--y", type=int, required=True)
    s = diagram_cmd("moves", "list applicable Reidemeister moves")
    s.add_argument("--apply", type=int, metavar="INDEX", help="apply the INDEX-th move and print the result")
    s = diagram_cmd("fuzz", "seeded random Reidemeister walk with invariants")
    s.add_argument("--length", type=int, default=8)
    s.add_argument("--seed", type=int, default=None)

    s = sub.add_parser("tridle-check", help="check a finite tridle against the third-move equations")
    s.add_argument("input", nargs="?", help="tridle file {k, f4}")
    s.add_argument("--linear", metavar="P,X,Y", help="linear tridle over Z/P at units X, Y")
    s.add_argument("--affine", metavar="K,A,B,C,D[,E]", help="A*a+B*b+C*c+D*d+E over Z/K")
    s.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)

    s = sub.add_parser("tridle-enum", help="enumerate compliant finite tridles")
    s.add_argument("--family", choices=("affine", "general"), default="affine")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)

    s = sub.add_parser("catalog", help="list built-in diagrams or show one")
    s.add_argument("name", nargs="?")
    s.add_argument("--self-test", action="store_true", help="validate every entry")
    s.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)

    s = sub.add_parser("report", help="Delta, its xy-form and Alexander for every catalog knot")
    s.add_argument("--max-crossings", type=int, default=8)
    s.add_argument("--workers", type=int, default=None)
    s.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    return p


# ---------------------------------------------------------------------------
# verbs

def _load(args):
    if args.catalog and args.input:
        raise UsageError("give either an input file or --catalog, not both")
    if args.catalog:
        return cat.catalog(args.catalog)
    if not args.input:
        raise UsageError("an input file or --catalog NAME is required")
    path = Path(args.input)
    if not path.is_file():
        raise UsageError(f"no such file: {args.input}")
    return load_diagram(path.read_text(), name=None)


def _poly_t(p):
    return p.to_string(("t", "_"))


def _cmd_validate(d, args):
    doc = d.to_document()
    doc["n"] = d.n
    doc["regions"] = len(regions(d).regions) if d.n else 2
    doc["valid"] = True
    text = (f"{d.name or 'diagram'}: {d.n} crossings, {d.components} component(s), "
            f"{doc['regions']} regions\nsigns: {' '.join(f'{s:+d}' for s in d.signs)}")
    return doc, text


def _cmd_regions(d, args):
    rm = regions(d)
    regs = [{"id": region_name(i), "corners": [list(c) for c in r]} for i, r in enumerate(rm.regions)]
    doc = {"count": len(regs) if d.n else 2, "regions": regs}
    lines = [f"{doc['count']} regions"]
    for r in regs:
        lines.append(f"  {r['id']}: " + " ".join(f"({c},{k})" for c, k in r["corners"]))
    return doc, "\n".join(lines)


def _cmd_matrix(d, args):
    m = build_matrix(d)
    if args.simplify:
        m = simplify(m)
    if args.format == "latex":
        return m.to_document(), m.to_latex()
    return m.to_document(), m.to_text() or "(empty matrix)"


def _cmd_delta(d, args):
    workers = args.workers if args.workers is not None else _env_int("TRIDLE_WORKERS", default_workers())
    r = delta(d, reduce=args.reduce, workers=workers)
    doc = r.to_document()
    if args.format == "latex":
        return doc, r"\Delta(D) = " + r.delta.to_latex()
    lines = [f"Delta = {r.delta}", f"minors: {r.minor_count}",
             f"xy-form: {_poly_t(r.xy_form) if r.xy_form is not None else 'none'}",
             "up to units ±x^l y^m"]
    return doc, "\n".join(lines)


def _cmd_alexander(d, args):
    a = alexander_polynomial(d)
    if args.format == "latex":
        return {"alexander": _poly_t(a)}, r"\Delta_K(t) = " + a.to_latex(("t", "_"))
    return {"alexander": _poly_t(a)}, _poly_t(a)


def _cmd_colorings(d, args):
    n = colorings_mod_p(d, args.prime, args.x, args.y)
    doc = {"prime": args.prime, "x": args.x, "y": args.y, "colorings": n}
    return doc, str(n)


def _cmd_moves(d, args):
    sites = enumerate_sites(d)
    if args.apply is not None:
        if not 0 <= args.apply < len(sites):
            raise UsageError(f"move index {args.apply} out of range 0..{len(sites) - 1}")
        site = sites[args.apply]
        nd = apply(d, site)
        doc = {"move": site.to_document(), "diagram": nd.to_document()}
        text = f"{site.kind} {list(site.anchors)} {site.variant}".rstrip() + "\n" + json.dumps(nd.to_document())
        return doc, text
    doc = {"count": len(sites), "moves": [s.to_document() for s in sites]}
    lines = [f"{len(sites)} moves"]
    lines += [f"  {i}: {s.kind} {list(s.anchors)} {s.variant}".rstrip() for i, s in enumerate(sites)]
    return doc, "\n".join(lines)


def _cmd_fuzz(d, args):
    seed = args.seed if args.seed is not None else _env_int("TRIDLE_SEED", 0)
    if args.length < 0:
        raise UsageError("--length must be non-negative")
    steps = fuzz_steps(d, seed, args.length)
    out = []
    lines = []
    base = None
    for i, st in enumerate(steps):
        prof = invariant_profile(st.diagram)
        base = base or prof
        out.append({"diagram": st.diagram.to_document(),
                    "move": None if st.move is None else st.move.to_document(),
                    "delta": prof.delta.to_string()})
        mv = "start" if st.move is None else f"{st.move.kind} {list(st.move.anchors)} {st.move.variant}".rstrip()
        lines.append(f"{i:3d}  n={st.diagram.n:<3d} {mv:<32s} Delta = {prof.delta}")
    same = all(invariant_profile(s.diagram) == base for s in steps)
    doc = {"seed": seed, "length": args.length, "steps": out, "invariant": same}
    lines.append(f"invariants constant: {'yes' if same else 'NO'}")
    return doc, "\n".join(lines)


def _tridle_from_args(args) -> FiniteTridle:
    given = [v for v in (args.input, args.linear, args.affine) if v]
    if len(given) != 1:
        raise UsageError("give exactly one of a tridle file, --linear or --affine")
    try:
        if args.linear:
            p, x, y = (int(v) for v in args.linear.split(","))
            return linear_tridle(p, x, y)
        if args.affine:
            vals = [int(v) for v in args.affine.split(",")]
            if len(vals) not in (5, 6):
                raise ValueError
            return affine_tridle(*vals)
    except ValueError:
        raise UsageError("malformed tridle parameters") from None
    path = Path(args.input)
    if not path.is_file():
        raise UsageError(f"no such file: {args.input}")
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.input}: not a JSON document ({exc})") from None
    return FiniteTridle.from_document(doc)


def _cmd_tridle_check(args):
    t = _tridle_from_args(args)
    rep = check_r3(t)
    doc = {"tridle": t.to_document(), "report": rep.to_document()}
    if rep.r3_ok:
        text = f"k={t.k}: solvable, third-move equations hold"
    else:
        text = (f"k={t.k}: solvable, third-move equation {rep.equation} fails at "
                f"(X,Y,Z,W) = {rep.counterexample}")
    return doc, text


def _cmd_tridle_enum(args):
    ts = enumerate_tridles(args.k, args.family)
    doc = {"family": args.family, "k": args.k, "count": len(ts), "tridles": [t.to_document() for t in ts]}
    lines = [f"{len(ts)} compliant {args.family} tridles with k={args.k}"]
    lines += [f"  {t.label or 'table'}: f4 = {''.join(map(str, t.f4)) if t.k <= 10 else list(t.f4)}"
              for t in ts]
    return doc, "\n".join(lines)


def _cmd_catalog(args):
    if args.self_test:
        names = cat.self_test()
        return {"checked": names, "ok": True}, f"{len(names)} catalog entries validate"
    if args.name:
        d = cat.catalog(args.name)
        doc = d.to_document()
        doc["n"] = d.n
        text = (f"{args.name}: {d.n} crossings, {d.components} component(s)\n"
                + (str(d.pd) if not isinstance(d, Unknot0) else "(no crossings)"))
        return doc, text
    names = cat.catalog_names()
    return {"names": names}, "\n".join(names)


def _cmd_report(args):
    workers = args.workers if args.workers is not None else _env_int("TRIDLE_WORKERS", default_workers())
    rows = []
    forms = {}
    for name in cat.knot_names():
        d = cat.catalog(name)
        if d.n > args.max_crossings:
            continue
        r = delta(d, workers=workers)
        a = alexander_polynomial(d)
        a_xy = type(a)({(l, l): c for (l, _), c in a.items()})
        forms[name] = r.xy_form
        rows.append({
            "name": name, "n": d.n, "delta": r.delta.to_string(),
            "in_Z_xy": r.xy_form is not None,
            "xy_form": None if r.xy_form is None else _poly_t(r.xy_form),
            "alexander": _poly_t(a),
            "delta_is_alexander_of_xy": r.delta == a_xy,
        })
    doc = {"rows": rows}
    if args.format == "latex":
        lines = [r"\begin{tabular}{llll}", r"knot & $n$ & $\Delta \in \mathbb{Z}[xy]$ & form \\ \hline"]
        for row in rows:
            form = forms[row["name"]]
            form = "-" if form is None else form.to_latex(("t", "_"))
            lines.append(f"{row['name']} & {row['n']} & {'yes' if row['in_Z_xy'] else 'no'} & "
                         f"${form}$ \\\\")
        lines.append(r"\end{tabular}")
        return doc, "\n".join(lines)
    w = max(len(r["xy_form"] or "-") for r in rows) if rows else 4
    lines = [f"{'knot':<14s} {'n':>2s}  {'in Z[xy]':<8s}  {'form (t = xy)':<{w}s}  alexander(xy)?"]
    for r in rows:
        lines.append(f"{r['name']:<14s} {r['n']:>2d}  {'yes' if r['in_Z_xy'] else 'no':<8s}  "
                     f"{r['xy_form'] or '-':<{w}s}  {'yes' if r['delta_is_alexander_of_xy'] else 'no'}")
    return doc, "\n".join(lines)


_DIAGRAM = {
    "validate": _cmd_validate, "regions": _cmd_regions, "matrix": _cmd_matrix,
    "delta": _cmd_delta, "alexander": _cmd_alexander, "colorings": _cmd_colorings,
    "moves": _cmd_moves, "fuzz": _cmd_fuzz,
}
_OTHER = {
    "tridle-check": _cmd_tridle_check, "tridle-enum": _cmd_tridle_enum,
    "catalog": _cmd_catalog, "report": _cmd_report,
}


def run(argv=None, out=None, err=None) -> int:
    """Run one command; returns the exit status."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.verb in _DIAGRAM:
            d = _load(args)
            doc, text = _DIAGRAM[args.verb](d, args)
        else:
            doc, text = _OTHER[args.verb](args)
    except UsageError as exc:
        print(f"tridle: usage error: {exc}", file=err)
        return 2
    except TridleError as exc:
        print(f"tridle: {type(exc).__name__}: {exc}", file=err)
        return 1
    if args.format in ("json", "structured"):
        out.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(text + "\n")
    return 0


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
