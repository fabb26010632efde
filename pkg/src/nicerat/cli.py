"""Command line front end: ``nicerat analyze | family ... | ec ...``."""
from __future__ import annotations

import argparse
import logging
import os
import sys
import warnings
from fractions import Fraction

from . import __version__, families, rusin
from .exact import AssumptionError, PoleError, assumption_problems, format_poly, parse_poly, ratfunc_new
from .report import (
    describe_analysis,
    describe_check,
    describe_points,
    envelope,
    render_csv,
    render_table,
    search_table,
    to_json_text,
)

log = logging.getLogger("nicerat")


class UsageError(Exception):
    """Bad input detected after argparse; carries the parser whose help to show."""

    def __init__(self, message: str, parser: argparse.ArgumentParser | None = None):
        super().__init__(message)
        self.parser = parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, self)


def _configure_logging():
    level = os.environ.get("NICERAT_LOG", "").strip().upper()
    if not level:
        return
    if level.isdigit():
        lvl = int(level)
    else:
        lvl = getattr(logging, level, logging.INFO)
    logging.basicConfig(level=lvl, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def _rat(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _output_flags(p, csv: bool = False, latex: bool = False):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true", help="emit a JSON report envelope")
    if csv:
        g.add_argument("--csv", action="store_true", help="emit the result table as CSV")
    if latex:
        g.add_argument("--latex", action="store_true", help="emit the displayed fraction in LaTeX")


def build_parser() -> _Parser:
    top = _Parser(prog="nicerat", description="Find and verify rational functions with nice critical points.")
    top.add_argument("--version", action="version", version=f"nicerat {__version__}")
    sub = top.add_subparsers(dest="command", parser_class=_Parser)

    a = sub.add_parser("analyze", help="classify zeros, poles, critical and inflexion points")
    a.add_argument("--num", required=True, help='numerator, e.g. "[4, -5, 1]" or "x^2-5x+4"')
    a.add_argument("--den", required=True, help="denominator, same formats")
    a.add_argument("--precision", type=_nonneg, default=6, help="decimal digits for irrational points")
    a.add_argument("--strict", action="store_true", help="reject inputs breaking the standing assumptions")
    _output_flags(a)

    fam = sub.add_parser("family", help="the catalogue of families")
    fsub = fam.add_subparsers(dest="action", parser_class=_Parser)
    fsub.add_parser("list", help="list family ids and shapes")

    fc = fsub.add_parser("check", help="evaluate the printed conditions and analyze")
    fc.add_argument("family")
    fc.add_argument("--params", required=True, help="e.g. a=1,b=5,c=21")
    fc.add_argument("--precision", type=_nonneg, default=6)
    _output_flags(fc)

    fs = fsub.add_parser("search", help="exhaustive scan of the parameter box")
    fs.add_argument("family")
    fs.add_argument("--bound", type=_positive, required=True)
    fs.add_argument("--require", default=None,
                    help="e.g. 3-rational-inflexions, integer-inflexion, all-rational-critical, conditions")
    fs.add_argument("--jobs", type=_positive, default=1)
    _output_flags(fs, csv=True)

    fe = fsub.add_parser("emit", help="the shifted (parametric) form")
    fe.add_argument("family")
    fe.add_argument("--params", required=True)
    g = fe.add_mutually_exclusive_group()
    g.add_argument("--shift", default="n", help="symbol for the shift (default n)")
    g.add_argument("--numeric", type=int, default=None, help="instantiate the shift at this integer")
    _output_flags(fe, latex=True)

    fa = fsub.add_parser("audit", help="compare printed conditions with exact analysis on random tuples")
    fa.add_argument("family")
    fa.add_argument("--samples", type=_nonneg, default=200)
    fa.add_argument("--seed", type=int, default=0)
    fa.add_argument("--max-abs", type=_positive, default=40)
    _output_flags(fa)

    ec = sub.add_parser("ec", help="elliptic-curve search for four rational critical points")
    esub = ec.add_subparsers(dest="action", parser_class=_Parser)

    es = esub.add_parser("search", help="integer points, generators, combinations, filter")
    es.add_argument("--y", type=int, required=True)
    es.add_argument("--z", type=int, required=True)
    es.add_argument("--coeff-range", type=_positive, default=3)
    es.add_argument("--point-bound", type=_nonneg, default=100000)
    es.add_argument("--max-generators", type=_positive, default=5)
    es.add_argument("--filter", choices=rusin.FILTERS, default="any-nice")
    es.add_argument("--jobs", type=_positive, default=1)
    es.add_argument("--present", choices=("offset", "compact"), default="offset")
    _output_flags(es)

    ep = esub.add_parser("pq", help="the (p, q) parametrized quadruple and its function")
    ep.add_argument("--p", type=int, required=True)
    ep.add_argument("--q", type=int, required=True)
    _output_flags(ep)

    ev = esub.add_parser("verify", help="analyze (x^3+bx+c)/(x^2-1) and a presented form")
    ev.add_argument("--b", type=_rat, required=True)
    ev.add_argument("--c", type=_rat, required=True)
    ev.add_argument("--precision", type=_nonneg, default=6)
    _output_flags(ev)
    return top


# ------------------------------------------------------------------ commands

def _emit(args, text_lines, doc):
    if getattr(args, "json", False):
        print(to_json_text(doc))
    else:
        print("\n".join(text_lines))


def cmd_analyze(args) -> int:
    num, den = parse_poly(args.num), parse_poly(args.den)
    if den.is_zero():
        raise ValueError("denominator is the zero polynomial")
    problems = assumption_problems(num, den)
    if args.strict:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            R = ratfunc_new(num, den, strict=True)
    else:
        R = ratfunc_new(num, den)
    rep = families.analyze(R, args.precision)
    notes = [f"warning: {p}" for p in problems]
    doc = envelope("analyze", {"num": args.num, "den": args.den, "precision": args.precision},
                   rep.to_json(), notes)
    _emit(args, notes + describe_analysis(rep), doc)
    return 0


def cmd_family_list(args) -> int:
    for fid, fam in families.FAMILIES.items():
        print(f"{fid:11s} {fam.shape:26s} params {','.join(fam.params)}")
    return 0


def cmd_family_check(args) -> int:
    params = families.FamilyParams.parse(args.family, args.params)
    rep = families.check(params, args.precision)
    doc = envelope("family check", {"family": params.family, "params": args.params}, rep.to_json())
    _emit(args, describe_check(rep), doc)
    return 0


def cmd_family_search(args) -> int:
    fam = families.get_family(args.family)
    req = args.require or fam.default_requirement()
    results = families.search(fam.id, args.bound, req, jobs=args.jobs)
    header, rows = search_table(results, fam.id)
    if args.csv:
        sys.stdout.write(render_csv(header, rows))
        return 0
    doc = envelope(
        "family search",
        {"family": fam.id, "bound": args.bound, "require": req},
        {"columns": header, "rows": rows, "count": len(rows)},
    )
    text = [f"{fam.id} {fam.shape}, box [-{args.bound}, {args.bound}], require {req}: {len(rows)} hits"]
    if rows:
        text.append(render_table(header, rows))
    _emit(args, text, doc)
    return 0


def cmd_family_emit(args) -> int:
    params = families.FamilyParams.parse(args.family, args.params)
    if not (args.shift.isidentifier() and args.shift.isascii()) or args.shift == "z":
        raise ValueError(f"--shift takes a symbol name other than z, got {args.shift!r}; use --numeric for an integer")
    sf = families.emit_parametric(params, args.shift)
    if args.numeric is not None:
        R = sf.instantiate(args.numeric)
        payload = {"n": args.numeric, "function": str(R),
                   "numerator": [str(c) for c in R.num.coeffs], "denominator": [str(c) for c in R.den.coeffs]}
        num_z, den_z = format_poly(R.num, "z"), format_poly(R.den, "z")
        if args.latex:
            print(rf"\frac{{{num_z}}}{{{den_z}}}")
            return 0
        text = [f"{params} at {sf.symbol}={args.numeric}: ({num_z})/({den_z})"]
    else:
        if args.latex:
            print(sf.latex())
            return 0
        payload = {"symbol": sf.symbol, "text": sf.text(), "latex": sf.latex(),
                   "numerator": sf.numerator_text(), "denominator": sf.denominator_text()}
        rep = families.analyze(sf.base)
        text = [f"{params}, {sf.substitution}:", f"  {sf.text()}"]
        for kind in ("zeros", "poles", "critical", "inflexion"):
            text.append("  " + describe_points(getattr(rep, kind), kind, "z", sf.symbol))
    doc = envelope("family emit", {"family": params.family, "params": args.params}, payload)
    _emit(args, text, doc)
    return 0


def cmd_family_audit(args) -> int:
    rep = families.audit_conditions(args.family, args.samples, args.seed, args.max_abs)
    doc = envelope("family audit", {"family": rep.family, "samples": args.samples, "seed": args.seed},
                   rep.to_json())
    text = [
        f"{rep.family}: {rep.samples} tuples, {rep.checked_critical} critical and "
        f"{rep.checked_inflexion} inflexion verdicts compared, {len(rep.discrepancies)} disagreements"
    ]
    text += [f"  {d}" for d in rep.discrepancies]
    _emit(args, text, doc)
    return 0


def _candidate_record(cand: rusin.Candidate, strategy: str) -> tuple[dict, list[str]]:
    pres = rusin.present(cand.form, strategy=strategy)
    rep = families.analyze(pres.function)
    rec = cand.to_json()
    rec["presented"] = pres.to_json()
    rec["analysis"] = rep.to_json()
    lines = [
        f"candidate n={list(cand.coefficients)} T{cand.torsion_index}: X={cand.X}, W={cand.W}, b={cand.form.b}, c={cand.form.c}",
    ]
    lines += ["  " + s for s in describe_analysis(rep)]
    return rec, lines


def cmd_ec_search(args) -> int:
    c = rusin.curve(args.y, args.z)
    pts = rusin.integer_point_search(c, args.point_bound, jobs=args.jobs)
    seeds = rusin.seed_points(c)
    gens = rusin.select_generators(c, pts + seeds, args.max_generators, args.coeff_range)
    text = [
        f"curve V^2 = U(U+{c.k})(U+{c.m})  (Y,Z)=({c.Y},{c.Z})",
        f"  {len(pts)} integer points with |U| <= {args.point_bound}; {gens.candidates} non-torsion candidates "
        f"incl. seeds; {len(gens.generators)} generators cover {gens.covered}/{gens.candidates}",
    ]
    text += [f"  generator {P}" for P in gens.generators]
    if gens.uncovered:
        text.append(f"  {len(gens.uncovered)} points outside the span of the kept generators")
    notes = [rusin.CURVE_NOTE]
    if not gens.generators:
        notes.append("no point of infinite order found: raise --point-bound")
        res = rusin.SweepResult([])
    else:
        res = rusin.combine_and_filter(c, gens.generators, args.coeff_range, args.filter, jobs=args.jobs)
    text.append(f"  {res.examined} combinations examined; skipped: {res.skipped}")
    records = []
    for cand in res.candidates:
        rec, lines = _candidate_record(cand, args.present)
        records.append(rec)
        text += lines
    if not res.candidates:
        text.append("  no candidate passed the filter")
    payload = {
        "curve": c.to_json(),
        "integer_points": len(pts),
        "generator_coverage": gens.to_json(),
        "examined": res.examined,
        "skipped": res.skipped,
        "candidates": records,
    }
    inputs = {"Y": args.y, "Z": args.z, "coeff_range": args.coeff_range, "point_bound": args.point_bound,
              "filter": args.filter, "max_generators": args.max_generators}
    _emit(args, text, envelope("ec search", inputs, payload, notes))
    return 0


def cmd_ec_pq(args) -> int:
    quad = rusin.pq_parametrize(args.p, args.q)
    form = quad.rusin_form()
    pres = rusin.present(form)
    rep = families.analyze(pres.function)
    payload = {"quadruple": quad.to_json(), "residue": str(quad.residue), "b": str(form.b), "c": str(form.c),
               "presented": pres.to_json(), "analysis": rep.to_json()}
    text = [f"(X,Y,Z,W) = {quad.as_tuple()}, W-quartic residue {quad.residue}",
            f"critical points of the normal form: {', '.join(str(x) for x in quad.points)}",
            f"b = {form.b}, c = {form.c}; presented with x -> {pres.scale}x{pres.shift:+d}:"]
    text += ["  " + s for s in describe_analysis(rep)]
    _emit(args, text, envelope("ec pq", {"p": args.p, "q": args.q}, payload, [rusin.CURVE_NOTE]))
    return 0


def cmd_ec_verify(args) -> int:
    form = rusin.RusinForm(args.b, args.c)
    rep = families.analyze(form.function(), args.precision)
    payload = {"b": str(form.b), "c": str(form.c), "analysis": rep.to_json()}
    text = [f"normal form (b, c) = ({form.b}, {form.c})"] + ["  " + s for s in describe_analysis(rep)]
    crit = rep.critical.rationals
    if len(crit) == 4:
        pres = rusin.present(form)
        prep = families.analyze(pres.function, args.precision)
        payload["presented"] = pres.to_json()
        payload["presented_analysis"] = prep.to_json()
        text.append(f"presented with x -> {pres.scale}x{pres.shift:+d}, w = {pres.scale}y:")
        text += ["  " + s for s in describe_analysis(prep)]
    sextic = families.r23_inflexion_poly(form.b, form.c)
    payload["r23_inflexion_rational_roots"] = [str(q) for q in families.isolate_real_roots(sextic).rationals]
    text.append(f"(x^2-1)/(x^3+bx+c) rational inflexions: {payload['r23_inflexion_rational_roots'] or 'none'}")
    _emit(args, text, envelope("ec verify", {"b": str(args.b), "c": str(args.c)}, payload))
    return 0


_DISPATCH = {
    ("analyze", None): cmd_analyze,
    ("family", "list"): cmd_family_list,
    ("family", "check"): cmd_family_check,
    ("family", "search"): cmd_family_search,
    ("family", "emit"): cmd_family_emit,
    ("family", "audit"): cmd_family_audit,
    ("ec", "search"): cmd_ec_search,
    ("ec", "pq"): cmd_ec_pq,
    ("ec", "verify"): cmd_ec_verify,
}


def _subparser(top: argparse.ArgumentParser, names: list[str]) -> argparse.ArgumentParser:
    p = top
    for name in names:
        acts = [a for a in p._actions if isinstance(a, argparse._SubParsersAction)]
        if not acts or name not in acts[0].choices:
            break
        p = acts[0].choices[name]
    return p


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    argv = list(sys.argv[1:] if argv is None else argv)
    top = build_parser()
    try:
        args = top.parse_args(argv)
    except UsageError as exc:
        parser = exc.parser or top
        print(f"error: {exc}", file=sys.stderr)
        print(parser.format_help(), file=sys.stderr)
        return 1
    key = (args.command, getattr(args, "action", None))
    handler = _DISPATCH.get(key)
    if handler is None:
        print(f"error: {args.command} needs a subcommand", file=sys.stderr)
        _subparser(top, [a for a in key if a]).print_help(sys.stderr)
        return 1
    try:
        return handler(args)
    except (ValueError, ZeroDivisionError, PoleError, AssumptionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(_subparser(top, [a for a in key if a]).format_help(), file=sys.stderr)
        return 1
    except AssertionError as exc:
        log.exception("internal invariant failed")
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
