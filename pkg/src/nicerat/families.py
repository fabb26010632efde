"""The catalogue of nice rational-function families.

Every family fixes a shape (e.g. ``(x-a)(x-b)/(x(x-c))``) and the meaning of
its integer parameters.  Each family knows its closed-form critical and
inflexion numerators, the perfect-power conditions for rational points, and
how to scan a parameter box.  :func:`analyze` is the ground truth that every
condition is checked against.
"""
from __future__ import annotations

import logging
import random
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Iterator

from .exact import (
    Poly,
    RatFunc,
    ShiftedFamily,
    deriv_numerator,
    ratfunc_new,
    second_deriv_numerator,
)
from .rootkit import (
    RootSet,
    _distinct_rational_roots_int,
    _real_count_int,
    cardano,
    count_real_roots,
    integer_root,
    isolate_real_roots,
    rational_root_count_at_least,
)

log = logging.getLogger(__name__)


class DomainError(ValueError):
    """Parameters outside the family's domain (coincident roots, c^2 >= 4d, ...)."""


# ----------------------------------------------------------------- analysis

@dataclass(frozen=True)
class AnalysisReport:
    function: RatFunc
    zeros: RootSet
    poles: RootSet
    critical: RootSet
    inflexion: RootSet
    critical_poly: Poly
    inflexion_poly: Poly

    @property
    def real_counts(self) -> dict[str, int]:
        return {k: getattr(self, k).distinct_real_count for k in ("zeros", "poles", "critical", "inflexion")}

    @property
    def rational_counts(self) -> dict[str, int]:
        return {k: len(getattr(self, k).rational_roots) for k in ("zeros", "poles", "critical", "inflexion")}

    @property
    def grade(self) -> tuple[int, int, int]:
        """(rational inflexions, rational criticals, rational zeros + poles)."""
        c = self.rational_counts
        return (c["inflexion"], c["critical"], c["zeros"] + c["poles"])

    @property
    def parametric(self) -> ShiftedFamily:
        return ShiftedFamily(self.function)

    def to_json(self) -> dict:
        return {
            "numerator": [str(c) for c in self.function.num.coeffs],
            "denominator": [str(c) for c in self.function.den.coeffs],
            "function": str(self.function),
            "zeros": self.zeros.to_json(),
            "poles": self.poles.to_json(),
            "critical": self.critical.to_json(),
            "inflexion": self.inflexion.to_json(),
            "critical_equation": str(self.critical_poly),
            "inflexion_equation": str(self.inflexion_poly),
            "real_counts": self.real_counts,
            "rational_counts": self.rational_counts,
            "grade": list(self.grade),
            "parametric": self.parametric.text(),
        }

    @classmethod
    def from_json(cls, d: dict) -> "AnalysisReport":
        from .exact import parse_poly

        return cls(
            function=RatFunc(Poly(Fraction(c) for c in d["numerator"]), Poly(Fraction(c) for c in d["denominator"])),
            zeros=RootSet.from_json(d["zeros"]),
            poles=RootSet.from_json(d["poles"]),
            critical=RootSet.from_json(d["critical"]),
            inflexion=RootSet.from_json(d["inflexion"]),
            critical_poly=parse_poly(d["critical_equation"]),
            inflexion_poly=parse_poly(d["inflexion_equation"]),
        )


def _roots_or_empty(p: Poly, precision: int) -> RootSet:
    if p.is_zero():
        raise ValueError("derivative numerator vanishes identically: R is constant or linear")
    return isolate_real_roots(p, precision)


def analyze(R: RatFunc, precision: int = 6) -> AnalysisReport:
    """Exact zeros, poles, critical points and inflexion points of R."""
    crit = deriv_numerator(R).primitive()
    infl = second_deriv_numerator(R).primitive()
    return AnalysisReport(
        function=R,
        zeros=_roots_or_empty(R.num, precision),
        poles=_roots_or_empty(R.den, precision),
        critical=_roots_or_empty(crit, precision),
        inflexion=_roots_or_empty(infl, precision),
        critical_poly=crit,
        inflexion_poly=infl,
    )


# --------------------------------------------------------------- conditions

SQUARE, CUBE = "□", "f^3"


@dataclass(frozen=True)
class Condition:
    name: str
    governs: str  # critical | inflexion | both
    value: int
    exponent: int
    witness: object
    satisfied: bool

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "governs": self.governs,
            "value": str(self.value),
            "exponent": self.exponent,
            "witness": self.witness,
            "satisfied": self.satisfied,
        }


def power_condition(name: str, governs: str, value: int, k: int) -> Condition:
    r = integer_root(value, k)
    return Condition(name, governs, value, k, r, r is not None)


def sixth_power_form(a: int, b: int) -> tuple[int, int, int] | None:
    """(alpha, s, t) with a = alpha*s^6, b = alpha*t^6, or None."""
    if a == 0 or b == 0 or (a > 0) != (b > 0):
        return None
    alpha = gcd(a, b) * (1 if a > 0 else -1)
    s, t = integer_root(a // alpha, 6), integer_root(b // alpha, 6)
    if s is None or t is None:
        return None
    return alpha, s, t


@dataclass(frozen=True)
class FamilyParams:
    family: str
    values: tuple

    @classmethod
    def of(cls, family: str, **kw) -> "FamilyParams":
        fam = get_family(family)
        missing = [n for n in fam.params if n not in kw]
        extra = [n for n in kw if n not in fam.params]
        if missing or extra:
            raise ValueError(f"{family} takes parameters {','.join(fam.params)}; got {','.join(kw)}")
        vals = tuple(_param_value(kw[n], fam.rational_params) for n in fam.params)
        return cls(family, fam.canonical(vals))

    @classmethod
    def parse(cls, family: str, text: str) -> "FamilyParams":
        kw = {}
        for item in filter(None, (t.strip() for t in text.split(","))):
            if "=" not in item:
                raise ValueError(f"expected name=value, got {item!r}")
            k, v = (s.strip() for s in item.split("=", 1))
            kw[k] = v
        return cls.of(family, **kw)

    def as_dict(self) -> dict:
        return dict(zip(get_family(self.family).params, self.values))

    def __getitem__(self, name: str):
        return self.as_dict()[name]

    def __str__(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in self.as_dict().items())
        return f"{self.family}({inner})"

    def to_json(self) -> dict:
        return {"family": self.family, "params": {k: str(v) for k, v in self.as_dict().items()}}


def _param_value(v, rational: bool):
    if isinstance(v, str):
        v = Fraction(v.strip())
    v = Fraction(v)
    if v.denominator != 1 and not rational:
        raise ValueError(f"parameter must be an integer, got {v}")
    return int(v) if v.denominator == 1 else v


@dataclass
class ConditionReport:
    params: FamilyParams
    conditions: list[Condition]
    facts: list[dict]
    analysis: AnalysisReport
    critical_verdict: bool | None
    inflexion_verdict: bool | None

    @property
    def computed_critical(self) -> bool:
        return self.analysis.critical.all_real_rational

    @property
    def computed_inflexion(self) -> bool:
        return self.analysis.inflexion.all_real_rational

    @property
    def grade(self) -> tuple[int, int, int]:
        return self.analysis.grade

    @property
    def all_satisfied(self) -> bool:
        return all(c.satisfied for c in self.conditions)

    def disagreements(self) -> list[str]:
        out = []
        if self.critical_verdict is not None and self.critical_verdict != self.computed_critical:
            out.append("critical")
        if self.inflexion_verdict is not None and self.inflexion_verdict != self.computed_inflexion:
            out.append("inflexion")
        return out

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "conditions": [c.to_json() for c in self.conditions],
            "facts": self.facts,
            "critical_verdict": self.critical_verdict,
            "inflexion_verdict": self.inflexion_verdict,
            "computed": {"critical_rational": self.computed_critical, "inflexion_rational": self.computed_inflexion},
            "grade": list(self.grade),
            "analysis": self.analysis.to_json(),
        }


# -------------------------------------------------------------- requirements

_CLAUSE = re.compile(r"^(?:(\d+|all)-)?(rational|integer)-(critical|inflexions?|zeros?)$")


@dataclass(frozen=True)
class Clause:
    category: str  # critical | inflexion | zero | conditions
    kind: str = "rational"
    count: int | str = 1  # int or "all"


@dataclass(frozen=True)
class Requirement:
    clauses: tuple[Clause, ...]
    text: str = ""

    def min_count(self, category: str) -> int:
        best = 0
        for c in self.clauses:
            if c.category == category:
                best = max(best, 2 if c.count == "all" else c.count)
        return best

    def needs_all(self, category: str) -> bool:
        return any(c.category == category and c.count == "all" for c in self.clauses)


def parse_requirement(text: str) -> Requirement:
    """Parse e.g. ``3-rational-inflexions``, ``integer-inflexion+conditions``.

    ``N-`` asks for at least N distinct points, ``all-`` for every real point
    (and at least one); no prefix means at least one.
    """
    clauses = []
    for tok in filter(None, re.split(r"[+,\s]+", text.strip().lower())):
        if tok == "conditions":
            clauses.append(Clause("conditions"))
            continue
        m = _CLAUSE.match(tok)
        if not m:
            raise ValueError(
                f"unknown requirement {tok!r}; use conditions or [N-|all-](rational|integer)-(critical|inflexions|zeros)"
            )
        count = m.group(1) or "1"
        cat = m.group(3).rstrip("s")
        clauses.append(Clause(cat, m.group(2), "all" if count == "all" else int(count)))
    if not clauses:
        raise ValueError("empty requirement")
    return Requirement(tuple(clauses), text)


# ------------------------------------------------------------------ families

def _poly(*coeffs_high_to_low) -> list[int]:
    return list(reversed(coeffs_high_to_low))


def _prod(*roots: int) -> Poly:
    return Poly.from_roots(roots)


def _quad(c, d) -> Poly:
    return Poly((d, c, 1))


def _rng(bound: int, skip_zero: bool = True) -> range | list[int]:
    r = range(-bound, bound + 1)
    return [v for v in r if v] if skip_zero else r


def _complex_pairs(bound: int) -> Iterator[tuple[int, int]]:
    """(c, d) with c^2 < 4d inside the box."""
    for d in range(1, bound + 1):
        for c in range(-bound, bound + 1):
            if c * c < 4 * d:
                yield c, d


def _rational_inflexion_square_class(c: int, d: int) -> bool:
    """For a complex-denominator cubic, 3 rational inflexions need 3(4d - c^2) = square."""
    return integer_root(3 * (4 * d - c * c), 2) is not None


class Family:
    id: str = ""
    params: tuple[str, ...] = ()
    shape: str = ""
    symmetric: tuple[str, ...] = ()
    rational_params = False
    inflexion_real_count: int | None = None  # from the sign of D when fixed
    complex_den = False

    # shape
    def validate(self, v: dict) -> list[str]:
        return []

    def num(self, v: dict) -> Poly:
        raise NotImplementedError

    def den(self, v: dict) -> Poly:
        raise NotImplementedError

    # closed forms (integer coefficients, low to high)
    def critical(self, v: dict) -> list[int]:
        raise NotImplementedError

    def inflexion(self, v: dict) -> list[int]:
        raise NotImplementedError

    def closed_D(self, v: dict) -> Fraction | None:
        """Closed-form Cardano D of the inflexion cubic, where one is printed."""
        return None

    def conditions(self, v: dict) -> list[Condition]:
        return []

    def facts(self, v: dict) -> list[dict]:
        return []

    def table_extras(self, v: dict) -> dict:
        return {}

    def canonical(self, vals: tuple) -> tuple:
        if not self.symmetric:
            return vals
        idx = [self.params.index(n) for n in self.symmetric]
        sorted_vals = sorted(vals[i] for i in idx)
        out = list(vals)
        for i, s in zip(idx, sorted_vals):
            out[i] = s
        return tuple(out)

    # search
    def outer(self, bound: int) -> list:
        raise NotImplementedError

    def inner(self, o, bound: int, req: Requirement) -> Iterator[tuple]:
        raise NotImplementedError

    def default_requirement(self) -> str:
        return "conditions" if self.has_conditions else "all-rational-critical"

    has_conditions = True


def _sq_or_none(v):
    return integer_root(v, 2)


class R21Int(Family):
    id, params, shape, symmetric = "R21_INT", ("a", "b"), "(x-a)(x-b)/x", ("a", "b")
    inflexion_real_count = 0

    def validate(self, v):
        a, b = v["a"], v["b"]
        out = []
        if a == 0 or b == 0:
            out.append("roots must differ from the pole x=0")
        if a == b:
            out.append("repeated root a=b")
        return out

    def num(self, v):
        return _prod(v["a"], v["b"])

    def den(self, v):
        return Poly.x()

    def critical(self, v):
        return _poly(1, 0, -v["a"] * v["b"])

    def inflexion(self, v):
        return [2 * v["a"] * v["b"]]

    def conditions(self, v):
        return [power_condition("ab=□", "critical", v["a"] * v["b"], 2)]

    def facts(self, v):
        return [{"name": "R''=2ab/x^3", "holds": True, "detail": "no points of inflexion"}]

    def outer(self, bound):
        return _rng(bound)

    def inner(self, a, bound, req):
        for b in range(a + 1, bound + 1):
            if b:
                yield (a, b)


class R21Cplx(Family):
    id, params, shape = "R21_CPLX", ("c", "d"), "(x^2+cx+d)/x"
    inflexion_real_count = 0
    complex_den = False

    def validate(self, v):
        return [] if v["c"] ** 2 < 4 * v["d"] else ["need c^2 < 4d"]

    def num(self, v):
        return _quad(v["c"], v["d"])

    def den(self, v):
        return Poly.x()

    def critical(self, v):
        return _poly(1, 0, -v["d"])

    def inflexion(self, v):
        return [2 * v["d"]]

    def conditions(self, v):
        return [power_condition("d=□", "critical", v["d"], 2)]

    def outer(self, bound):
        return list(range(-bound, bound + 1))

    def inner(self, c, bound, req):
        for d in range(c * c // 4 + 1, bound + 1):
            yield (c, d)


class R12Int(R21Int):
    id, shape = "R12_INT", "x/((x-a)(x-b))"
    inflexion_real_count = 1

    def num(self, v):
        return Poly.x()

    def den(self, v):
        return _prod(v["a"], v["b"])

    def critical(self, v):
        return _poly(-1, 0, v["a"] * v["b"])

    def inflexion(self, v):
        a, b = v["a"], v["b"]
        return _poly(1, 0, -3 * a * b, a * b * (a + b))

    def closed_D(self, v):
        a, b = v["a"], v["b"]
        return Fraction(a * a * b * b * (a - b) ** 2, 4)

    def conditions(self, v):
        a, b = v["a"], v["b"]
        six = sixth_power_form(a, b)
        return [
            power_condition("ab=f^2", "critical", a * b, 2),
            power_condition("a^2b=g^3", "inflexion", a * a * b, 3),
            Condition("a=αs^6, b=αt^6", "both", a * b, 6, list(six) if six else None, six is not None),
        ]

    def facts(self, v):
        D = cardano(Poly(self.inflexion(v))).D
        return [{"name": "D>0: one real point of inflexion", "holds": D > 0, "D": str(D)}]


class R12Cplx(Family):
    id, params, shape = "R12_CPLX", ("c", "d"), "x/(x^2+cx+d)"
    inflexion_real_count = 3
    complex_den = True

    def validate(self, v):
        return [] if v["c"] ** 2 < 4 * v["d"] else ["need c^2 < 4d"]

    def num(self, v):
        return Poly.x()

    def den(self, v):
        return _quad(v["c"], v["d"])

    def critical(self, v):
        return _poly(-1, 0, v["d"])

    def inflexion(self, v):
        c, d = v["c"], v["d"]
        return _poly(1, 0, -3 * d, -c * d)

    def closed_D(self, v):
        c, d = v["c"], v["d"]
        return Fraction(d * d * (c * c - 4 * d), 4)

    def conditions(self, v):
        return [power_condition("d=e^2", "critical", v["d"], 2)]

    def facts(self, v):
        d = v["d"]
        k = integer_root(d, 6)
        D = cardano(Poly(self.inflexion(v))).D
        return [
            {"name": "D<0: three real points of inflexion", "holds": D < 0, "D": str(D)},
            {"name": "d=k^6", "holds": k is not None, "k": k},
        ]

    def table_extras(self, v):
        e = integer_root(v["d"], 2)
        k = integer_root(v["d"], 6)
        return {"e": "" if e is None else e, "k": "" if k is None else k}

    # the box runs over (c, e) with d = e^2
    def outer(self, bound):
        return list(range(1, bound + 1))

    def inner(self, e, bound, req):
        d = e * e
        for c in range(-bound, bound + 1):
            if c * c >= 4 * d:
                continue
            if req.min_count("inflexion") >= 2 and not _rational_inflexion_square_class(c, d):
                continue
            yield (c, d)


class R22Int(Family):
    id, params, shape, symmetric = "R22_INT", ("a", "b", "c"), "(x-a)(x-b)/(x(x-c))", ("a", "b")
    inflexion_real_count = 1

    def validate(self, v):
        a, b, c = v["a"], v["b"], v["c"]
        out = []
        if 0 in (a, b, c):
            out.append("a, b, c must be nonzero")
        if len({a, b, c}) < 3:
            out.append("need a, b, c distinct")
        if a + b == c:
            out.append("need a+b != c")
        return out

    def num(self, v):
        return _prod(v["a"], v["b"])

    def den(self, v):
        return _prod(0, v["c"])

    def critical(self, v):
        a, b, c = v["a"], v["b"], v["c"]
        return _poly(a + b - c, -2 * a * b, a * b * c)

    def inflexion(self, v):
        a, b, c = v["a"], v["b"], v["c"]
        return _poly(a + b - c, -3 * a * b, 3 * a * b * c, -a * b * c * c)

    def closed_D(self, v):
        a, b, c = v["a"], v["b"], v["c"]
        return Fraction((a * b * c * (c - a) * (c - b)) ** 2, 4 * (a + b - c) ** 4)

    def conditions(self, v):
        a, b, c = v["a"], v["b"], v["c"]
        return [
            power_condition("ab(c-a)(c-b)=□", "critical", a * b * (c - a) * (c - b), 2),
            power_condition("a^2b^2(c-a)(c-b)=f^3", "inflexion", a * a * b * b * (c - a) * (c - b), 3),
        ]

    def facts(self, v):
        D = cardano(Poly(self.inflexion(v))).D
        return [{"name": "D>0: one real point of inflexion", "holds": D > 0, "D": str(D)}]

    def outer(self, bound):
        return _rng(bound)

    def inner(self, a, bound, req):
        if req.min_count("inflexion") >= 2:
            return
        for b in range(a + 1, bound + 1):
            if not b:
                continue
            for c in range(-bound, bound + 1):
                if c and c != a and c != b and a + b != c:
                    yield (a, b, c)


class _R22Mixed(Family):
    params = ("a", "c", "d")

    def validate(self, v):
        a, c, d = v["a"], v["c"], v["d"]
        out = []
        if a == 0:
            out.append("need a != 0")
        if c * c >= 4 * d:
            out.append("need c^2 < 4d")
        if a + c == 0:
            out.append("need a+c != 0")
        return out

    def critical(self, v):
        a, c, d = v["a"], v["c"], v["d"]
        return _poly(a + c, 2 * d, -a * d)

    def outer(self, bound):
        return list(range(1, bound + 1))

    def _pairs_for(self, d, bound, req):
        for c in range(-bound, bound + 1):
            if c * c >= 4 * d:
                continue
            yield c

    def inner(self, d, bound, req):
        need = req.min_count("inflexion")
        if self.inflexion_real_count is not None and need > self.inflexion_real_count:
            return
        for c in self._pairs_for(d, bound, req):
            if self.complex_den and need >= 2 and not _rational_inflexion_square_class(c, d):
                continue
            for a in range(-bound, bound + 1):
                if a and a + c:
                    yield (a, c, d)


class R22NumInt(_R22Mixed):
    id, shape = "R22_NUMINT", "x(x-a)/(x^2+cx+d)"
    inflexion_real_count = 3
    complex_den = True

    def num(self, v):
        return _prod(0, v["a"])

    def den(self, v):
        return _quad(v["c"], v["d"])

    def inflexion(self, v):
        a, c, d = v["a"], v["c"], v["d"]
        return _poly(a + c, 3 * d, -3 * a * d, -d * (a * c + d))

    def closed_D(self, v):
        a, c, d = v["a"], v["c"], v["d"]
        return Fraction(d * d * (a * a + a * c + d) ** 2 * (c * c - 4 * d), 4 * (a + c) ** 4)

    def conditions(self, v):
        a, c, d = v["a"], v["c"], v["d"]
        return [power_condition("d(a^2+ac+d)=e^2", "critical", d * (a * a + a * c + d), 2)]

    def facts(self, v):
        D = cardano(Poly(self.inflexion(v))).D
        c, d = v["c"], v["d"]
        return [
            {"name": "D<0: three real points of inflexion", "holds": D < 0, "D": str(D)},
            {
                "name": "3(4d-c^2)=□ (needed for 3 rational inflexions)",
                "holds": _rational_inflexion_square_class(c, d),
            },
        ]


class R22DenInt(_R22Mixed):
    id, shape = "R22_DENINT", "(x^2+cx+d)/(x(x-a))"
    inflexion_real_count = 1

    def num(self, v):
        return _quad(v["c"], v["d"])

    def den(self, v):
        return _prod(0, v["a"])

    def inflexion(self, v):
        a, c, d = v["a"], v["c"], v["d"]
        return _poly(a + c, 3 * d, -3 * a * d, a * a * d)

    def closed_D(self, v):
        a, c, d = v["a"], v["c"], v["d"]
        return Fraction(a * a * d * d * (a * a + a * c + d) ** 2, 4 * (a + c) ** 4)

    def conditions(self, v):
        a, c, d = v["a"], v["c"], v["d"]
        q = a * a + a * c + d
        return [
            power_condition("d(a^2+ac+d)=e^2", "critical", d * q, 2),
            power_condition("d^2(a^2+ac+d)=f^3", "inflexion", d * d * q, 3),
        ]

    def facts(self, v):
        D = cardano(Poly(self.inflexion(v))).D
        return [{"name": "D>0: one real point of inflexion", "holds": D > 0, "D": str(D)}]


class R22Cplx(Family):
    id, params, shape = "R22_CPLX", ("a", "b", "c", "d"), "(x^2+ax+b)/(x^2+cx+d)"
    inflexion_real_count = 3
    complex_den = True

    def validate(self, v):
        a, b, c, d = v["a"], v["b"], v["c"], v["d"]
        out = []
        if a * a >= 4 * b:
            out.append("need a^2 < 4b")
        if c * c >= 4 * d:
            out.append("need c^2 < 4d")
        if a == c:
            out.append("need a != c")
        return out

    def num(self, v):
        return _quad(v["a"], v["b"])

    def den(self, v):
        return _quad(v["c"], v["d"])

    def critical(self, v):
        a, b, c, d = v["a"], v["b"], v["c"], v["d"]
        return _poly(a - c, 2 * (b - d), b * c - a * d)

    def inflexion(self, v):
        a, b, c, d = v["a"], v["b"], v["c"], v["d"]
        return _poly(a - c, 3 * (b - d), 3 * (b * c - a * d), -a * c * d + b * (c * c - d) + d * d)

    def _cq(self, v):
        a, b, c, d = v["a"], v["b"], v["c"], v["d"]
        return (a - c) * (a * d - b * c) + (b - d) ** 2

    def closed_D(self, v):
        a, c, d = v["a"], v["c"], v["d"]
        return Fraction((c * c - 4 * d) * self._cq(v) ** 2, 4 * (a - c) ** 4)

    def conditions(self, v):
        return [power_condition("(a-c)(ad-bc)+(b-d)^2=□", "critical", self._cq(v), 2)]

    def facts(self, v):
        D = cardano(Poly(self.inflexion(v))).D
        c, d = v["c"], v["d"]
        return [
            {"name": "D<0: three real points of inflexion", "holds": D < 0, "D": str(D)},
            {
                "name": "3(4d-c^2)=□ (needed for 3 rational inflexions)",
                "holds": _rational_inflexion_square_class(c, d),
            },
        ]

    def outer(self, bound):
        return list(range(1, bound + 1))

    def inner(self, d, bound, req):
        need = req.min_count("inflexion")
        for c in range(-bound, bound + 1):
            if c * c >= 4 * d:
                continue
            if need >= 2 and not _rational_inflexion_square_class(c, d):
                continue
            for b in range(1, bound + 1):
                for a in range(-bound, bound + 1):
                    if a * a < 4 * b and a != c:
                        yield (a, b, c, d)


class R31Int(Family):
    id, params, shape, symmetric = "R31_INT", ("a", "b", "c"), "(x-a)(x-b)(x-c)/x", ("a", "b", "c")
    inflexion_real_count = 1

    def validate(self, v):
        a, b, c = v["a"], v["b"], v["c"]
        out = []
        if 0 in (a, b, c):
            out.append("roots must differ from the pole x=0")
        if len({a, b, c}) < 3:
            out.append("need a, b, c distinct")
        return out

    def num(self, v):
        return _prod(v["a"], v["b"], v["c"])

    def den(self, v):
        return Poly.x()

    def critical(self, v):
        a, b, c = v["a"], v["b"], v["c"]
        return _poly(2, -(a + b + c), 0, a * b * c)

    def inflexion(self, v):
        return _poly(1, 0, 0, -v["a"] * v["b"] * v["c"])

    def critical_closed_D(self, v) -> Fraction:
        a, b, c = v["a"], v["b"], v["c"]
        p = a * b * c
        return Fraction(p * (27 * p - (a + b + c) ** 3), 2**4 * 3**3)

    def conditions(self, v):
        return [power_condition("abc=f^3", "inflexion", v["a"] * v["b"] * v["c"], 3)]

    def facts(self, v):
        a, b, c = v["a"], v["b"], v["c"]
        D = cardano(Poly(self.critical(v))).D
        ratio = Fraction((a + b + c) ** 3, a * b * c)
        return [
            {"name": "critical cubic D", "D": str(D), "holds": D == self.critical_closed_D(v)},
            {"name": "(a+b+c)^3/(abc)>27: three real critical points", "holds": ratio > 27, "ratio": str(ratio)},
        ]

    def outer(self, bound):
        return _rng(bound)

    def inner(self, a, bound, req):
        for b in range(a + 1, bound + 1):
            if not b:
                continue
            for c in range(b + 1, bound + 1):
                if c:
                    yield (a, b, c)


class R31Cplx(Family):
    id, params, shape = "R31_CPLX", ("a", "c", "d"), "(x-a)(x^2+cx+d)/x"
    inflexion_real_count = 1

    def validate(self, v):
        out = []
        if v["a"] == 0:
            out.append("need a != 0")
        if v["c"] ** 2 >= 4 * v["d"]:
            out.append("need c^2 < 4d")
        return out

    def num(self, v):
        return _prod(v["a"]) * _quad(v["c"], v["d"])

    def den(self, v):
        return Poly.x()

    def critical(self, v):
        a, c, d = v["a"], v["c"], v["d"]
        return _poly(2, c - a, 0, a * d)

    def inflexion(self, v):
        return _poly(1, 0, 0, -v["a"] * v["d"])

    def conditions(self, v):
        return [power_condition("ad=f^3", "inflexion", v["a"] * v["d"], 3)]

    def outer(self, bound):
        return list(range(1, bound + 1))

    def inner(self, d, bound, req):
        for c in range(-bound, bound + 1):
            if c * c < 4 * d:
                for a in range(-bound, bound + 1):
                    if a:
                        yield (a, c, d)


class R32Int(Family):
    id, params, shape, symmetric = "R32_INT", ("a", "b", "c", "d"), "(x-a)(x-b)(x-c)/(x(x-d))", ("a", "b", "c")
    inflexion_real_count = 1
    has_conditions = False

    def validate(self, v):
        a, b, c, d = v["a"], v["b"], v["c"], v["d"]
        out = []
        if d == 0:
            out.append("need d != 0")
        if len({a, b, c}) < 3:
            out.append("need a, b, c distinct")
        if {a, b, c} & {0, d}:
            out.append("roots must differ from the poles 0 and d")
        return out

    def num(self, v):
        return _prod(v["a"], v["b"], v["c"])

    def den(self, v):
        return _prod(0, v["d"])

    def critical(self, v):
        a, b, c, d = v["a"], v["b"], v["c"], v["d"]
        return _poly(1, -2 * d, -(a * (b + c - d) + b * (c - d) - c * d), 2 * a * b * c, -a * b * c * d)

    def inflexion(self, v):
        a, b, c, d = v["a"], v["b"], v["c"], v["d"]
        return _poly(a * (b + c - d) + (b - d) * (c - d), -3 * a * b * c, 3 * a * b * c * d, -a * b * c * d * d)

    def facts(self, v):
        return [
            {
                "name": "ordering guarantees 4 real critical points",
                "holds": r32_ordering_guarantee(v),
                "real_critical_count": count_real_roots(Poly(self.critical(v))),
            }
        ]

    def outer(self, bound):
        return _rng(bound)

    def inner(self, d, bound, req):
        vals = [v for v in range(-bound, bound + 1) if v and v != d]
        for i, a in enumerate(vals):
            for j in range(i + 1, len(vals)):
                b = vals[j]
                for c in vals[j + 1:]:
                    yield (a, b, c, d)


class R23Rusin(Family):
    id, params, shape = "R23_RUSIN", ("b", "c"), "(x^2-1)/(x^3+bx+c)"
    rational_params = True
    has_conditions = False

    def validate(self, v):
        b, c = v["b"], v["c"]
        out = []
        if b + c + 1 == 0:
            out.append("b+c+1=0 (x=1 cancels)")
        if c - b - 1 == 0:
            out.append("c-b-1=0 (x=-1 cancels)")
        return out

    def num(self, v):
        return Poly((-1, 0, 1))

    def den(self, v):
        return Poly((v["c"], v["b"], 0, 1))

    def _ints(self, p: Poly) -> list[int]:
        return p.int_coeffs()

    def critical(self, v):
        b, c = Fraction(v["b"]), Fraction(v["c"])
        return self._ints(Poly((b, 2 * c, b + 3, 0, -1)))

    def inflexion(self, v):
        return self._ints(r23_inflexion_poly(v["b"], v["c"]))

    def outer(self, bound):
        return list(range(-bound, bound + 1))

    def inner(self, b, bound, req):
        for c in range(-bound, bound + 1):
            if b + c + 1 and c - b - 1:
                yield (b, c)


FAMILIES: dict[str, Family] = {
    f.id: f
    for f in (
        R21Int(), R21Cplx(), R12Int(), R12Cplx(), R22Int(), R22NumInt(), R22DenInt(), R22Cplx(),
        R31Int(), R31Cplx(), R32Int(), R23Rusin(),
    )
}


def get_family(fid: str) -> Family:
    try:
        return FAMILIES[fid.upper()]
    except KeyError:
        raise ValueError(f"unknown family {fid!r}; valid ids: {', '.join(FAMILIES)}") from None


# ---------------------------------------------------------------- operations

def build(params: FamilyParams) -> RatFunc:
    fam = get_family(params.family)
    v = params.as_dict()
    problems = fam.validate(v)
    if problems:
        raise DomainError(f"{params}: " + "; ".join(problems))
    return ratfunc_new(fam.num(v), fam.den(v), strict=True)


def check(params: FamilyParams, precision: int = 6) -> ConditionReport:
    fam = get_family(params.family)
    R = build(params)
    v = params.as_dict()
    conds = fam.conditions(v)

    def verdict(category):
        relevant = [c for c in conds if c.governs == category]
        return all(c.satisfied for c in relevant) if relevant else None

    return ConditionReport(
        params=params,
        conditions=conds,
        facts=fam.facts(v),
        analysis=analyze(R, precision),
        critical_verdict=verdict("critical"),
        inflexion_verdict=verdict("inflexion"),
    )


def emit_parametric(params: FamilyParams, symbol: str = "n") -> ShiftedFamily:
    return ShiftedFamily(build(params), symbol)


def _category_poly(fam: Family, v: dict, category: str) -> list[int]:
    if category == "critical":
        return fam.critical(v)
    if category == "inflexion":
        return fam.inflexion(v)
    return fam.num(v).int_coeffs()


def _clause_holds(fam: Family, v: dict, clause: Clause) -> bool:
    if clause.category == "conditions":
        return all(c.satisfied for c in fam.conditions(v))
    f = _category_poly(fam, v, clause.category)
    if len(f) <= 1:
        return False
    if clause.count == "all":
        if not rational_root_count_at_least(f, 1):
            return False
        roots = _distinct_rational_roots_int(f)
        real = _real_count_int(f)
        if real is None:
            real = count_real_roots(Poly(f))
        if clause.kind == "integer" and any(r.denominator != 1 for r in roots):
            return False
        return len(roots) == real
    if clause.kind == "rational":
        return rational_root_count_at_least(f, clause.count)
    if not rational_root_count_at_least(f, clause.count):
        return False
    return sum(1 for r in _distinct_rational_roots_int(f) if r.denominator == 1) >= clause.count


def satisfies(params: FamilyParams, req: Requirement | str) -> bool:
    if isinstance(req, str):
        req = parse_requirement(req)
    fam = get_family(params.family)
    v = params.as_dict()
    return all(_clause_holds(fam, v, cl) for cl in req.clauses)


def _order_clauses(req: Requirement) -> tuple[Clause, ...]:
    # cheap integer conditions first, then by category
    rank = {"conditions": 0, "critical": 1, "inflexion": 2, "zero": 3}
    return tuple(sorted(req.clauses, key=lambda c: rank[c.category]))


def _search_chunk(fid: str, bound: int, req_text: str, outers: list) -> list[tuple]:
    fam = get_family(fid)
    req = parse_requirement(req_text)
    clauses = _order_clauses(req)
    out = []
    for o in outers:
        for vals in fam.inner(o, bound, req):
            v = dict(zip(fam.params, vals))
            if all(_clause_holds(fam, v, cl) for cl in clauses):
                out.append(vals)
    return out


def search(family: str, bound: int, require: str | None = None, jobs: int = 1) -> list[FamilyParams]:
    """Exhaustive scan of the parameter box, ascending and deduplicated.

    The box is [-bound, bound] in every parameter, except R12_CPLX where it
    runs over (c, e) with d = e^2.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    fam = get_family(family)
    req_text = require or fam.default_requirement()
    parse_requirement(req_text)
    outers = list(fam.outer(bound))
    if jobs <= 1 or len(outers) < 2:
        found = _search_chunk(fam.id, bound, req_text, outers)
    else:
        chunks = [outers[i::jobs * 4] for i in range(jobs * 4)]
        found = []
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for part in ex.map(_search_chunk, [fam.id] * len(chunks), [bound] * len(chunks),
                               [req_text] * len(chunks), chunks):
                found.extend(part)
    uniq = sorted(set(fam.canonical(v) for v in found))
    log.info("search %s bound=%d require=%s: %d hits", fam.id, bound, req_text, len(uniq))
    return [FamilyParams(fam.id, v) for v in uniq]


# ----------------------------------------------------- special constructions

_THREE_INFLEXION = {
    # (numerator, denominator) at parameter 0; the families are shifts x -> x + m
    1: ((26, 0, 1), (333, -30, 1)),
    2: ((168, 1, 1), (301, -23, 1)),
    3: ((76, 0, 1), (381, -18, 1)),
}


def three_inflexion_family(which: int, param: int) -> RatFunc:
    """Member ``param`` of one of the three R22 families with 3 rational inflexions."""
    if which not in _THREE_INFLEXION:
        raise ValueError("which must be 1, 2 or 3")
    num, den = _THREE_INFLEXION[which]
    m = Fraction(param)
    # x -> x + m
    return ratfunc_new(Poly(num).shift(-m), Poly(den).shift(-m), strict=True)


def r32_ordering_guarantee(v: dict | FamilyParams) -> bool:
    """True when 0<d<a<b<c, 0<a<b<c<d or a<b<c<d<0 (four real critical points)."""
    if isinstance(v, FamilyParams):
        v = v.as_dict()
    a, b, c, d = sorted((v["a"], v["b"], v["c"])) + [v["d"]]
    return 0 < d < a < b < c or 0 < a < b < c < d or a < b < c < d < 0


def r32_real_critical_guarantee(params: FamilyParams) -> bool:
    return r32_ordering_guarantee(params)


def r32_critical_real_count(params: FamilyParams) -> int:
    fam = get_family("R32_INT")
    return count_real_roots(Poly(fam.critical(params.as_dict())))


def r23_inflexion_poly(b, c) -> Poly:
    """x^6 - 3(b+2)x^4 - 7cx^3 - 3bx^2 + 3cx + c^2 - b^2 for (x^2-1)/(x^3+bx+c)."""
    b, c = Fraction(b), Fraction(c)
    if b + c + 1 == 0 or c - b - 1 == 0:
        raise DomainError("need b+c+1 != 0 and c-b-1 != 0")
    return Poly((c * c - b * b, 3 * c, -3 * b, -7 * c, -3 * (b + 2), 0, 1))


# ------------------------------------------------------------------- audit

@dataclass
class AuditReport:
    family: str
    samples: int
    checked_critical: int = 0
    checked_inflexion: int = 0
    discrepancies: list[dict] = field(default_factory=list)

    @property
    def unexplained(self) -> list[dict]:
        return [d for d in self.discrepancies if not d.get("explained_by")]

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "samples": self.samples,
            "checked_critical": self.checked_critical,
            "checked_inflexion": self.checked_inflexion,
            "discrepancies": self.discrepancies,
        }


def random_params(family: str, rng: random.Random, max_abs: int = 40) -> FamilyParams:
    fam = get_family(family)
    while True:
        vals = tuple(rng.randint(-max_abs, max_abs) for _ in fam.params)
        v = dict(zip(fam.params, vals))
        if not fam.validate(v):
            return FamilyParams(fam.id, fam.canonical(vals))


def audit_conditions(family: str, samples: int = 200, seed: int = 0, max_abs: int = 40,
                     extra: list[FamilyParams] = ()) -> AuditReport:
    """Compare each printed condition's verdict with exact analysis."""
    rng = random.Random(seed)
    rep = AuditReport(family, 0)
    cases = [random_params(family, rng, max_abs) for _ in range(samples)] + list(extra)
    for p in cases:
        r = check(p)
        rep.samples += 1
        rep.checked_critical += r.critical_verdict is not None
        rep.checked_inflexion += r.inflexion_verdict is not None
        for cat in r.disagreements():
            rep.discrepancies.append({
                "params": str(p),
                "category": cat,
                "condition_verdict": r.critical_verdict if cat == "critical" else r.inflexion_verdict,
                "analysis_verdict": r.computed_critical if cat == "critical" else r.computed_inflexion,
                "explained_by": None,
            })
    return rep
