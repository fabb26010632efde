"""Rendering of analysis and search results as text, JSON, CSV and LaTeX."""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from . import __version__
from .families import AnalysisReport, ConditionReport, FamilyParams, get_family
from .rootkit import RootSet

SCHEMA_VERSION = 1

_NOUNS = {
    "zeros": ("zero", "zeros"),
    "poles": ("pole", "poles"),
    "critical": ("critical point", "critical points"),
    "inflexion": ("point of inflexion", "points of inflexion"),
}


def envelope(command: str, inputs: dict, payload, notes=()) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "nicerat",
        "version": __version__,
        "command": command,
        "input": inputs,
        "notes": list(notes),
        "payload": payload,
    }


def to_json_text(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False, ensure_ascii=False)


def _place(q: Fraction, var: str, symbol: str | None) -> str:
    if symbol is None:
        return f"{var}={q}"
    if q == 0:
        return f"{var}={symbol}"
    sign = "+" if q > 0 else "-"
    return f"{var}={symbol}{sign}{abs(q)}"


def describe_points(rs: RootSet, kind: str, var: str = "x", symbol: str | None = None) -> str:
    one, many = _NOUNS[kind]
    n = rs.distinct_real_count
    if n == 0:
        return f"no real {many}"
    exact = [_place(q, var, symbol) for q in rs.rationals]
    approx = [f"{var}≈{d}" if symbol is None else f"{var}≈{symbol}{'+' if not d.startswith('-') else ''}{d}"
              for d in rs.decimal_approx]
    noun = one if n == 1 else many
    parts = []
    if exact:
        parts.append(("at " if not approx else "exactly at ") + ",".join(exact))
    if approx:
        parts.append("at " + ", ".join(approx))
    return f"{n} real {noun} " + " and ".join(parts)


def describe_analysis(rep: AnalysisReport, var: str = "x", symbol: str | None = None) -> list[str]:
    lines = [f"R({var}) = {rep.function}"]
    for kind in ("zeros", "poles", "critical", "inflexion"):
        lines.append("  " + describe_points(getattr(rep, kind), kind, var, symbol))
    lines.append(f"  critical equation:  {rep.critical_poly} = 0")
    lines.append(f"  inflexion equation: {rep.inflexion_poly} = 0")
    lines.append(f"  grade (rational inflexions, critical, zeros+poles) = {rep.grade}")
    return lines


def describe_check(rep: ConditionReport) -> list[str]:
    fam = get_family(rep.params.family)
    lines = [f"{rep.params}   shape {fam.shape}"]
    for c in rep.conditions:
        mark = "yes" if c.satisfied else "no"
        wit = "" if c.witness is None else f" (witness {c.witness})"
        lines.append(f"  condition {c.name}: value {c.value} -> {mark}{wit}")
    for f in rep.facts:
        extra = ", ".join(f"{k}={v}" for k, v in f.items() if k not in ("name", "holds"))
        lines.append(f"  fact {f['name']}: {f.get('holds')}" + (f" [{extra}]" if extra else ""))
    lines += describe_analysis(rep.analysis)
    for cat in rep.disagreements():
        lines.append(f"  DISAGREEMENT: printed {cat} condition and exact analysis differ")
    return lines


def search_table(results: list[FamilyParams], family: str) -> tuple[list[str], list[list]]:
    fam = get_family(family)
    header = list(fam.params)
    extras = [fam.table_extras(p.as_dict()) for p in results]
    extra_cols = sorted({k for e in extras for k in e})
    rows = [[str(v) for v in p.values] + [str(e.get(k, "")) for k in extra_cols] for p, e in zip(results, extras)]
    return header + extra_cols, rows


def render_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def render_table(header: list[str], rows: list[list]) -> str:
    widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(header)]
    out = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    out += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(out)
