"""Four rational critical points for R32 via an elliptic curve.

Any R32 with two distinct rational poles can be moved by affine changes of
x and y to the normal form

    y = (x^3 + b x + c) / (x^2 - 1),

whose critical points are the roots of x^4 - (b+3)x^2 - 2cx - b.  Writing
three of them as Y/W, Z/W, X/W gives a quartic in W; for fixed (Y, Z) the
condition that W be rational is a quartic in X that is birational to

    V^2 = U (U + 3(Y-Z)^2) (U + (3Y+Z)(Y+3Z)).

Rational points on that curve give candidate functions.  This module holds the
normal form, the curve and its group law, a naive integer-point search, the
linear-combination sweep and the back transformation to a presentable monic
integer R32.
"""
from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, lcm

import numpy as np

from .exact import Poly, RatFunc, as_rat, ratfunc_new
from .rootkit import (
    _distinct_rational_roots_int,
    integer_root,
    rational_root,
    rational_root_count_at_least,
)

log = logging.getLogger(__name__)

CURVE_NOTE = (
    "curve uses 3(Y-Z)^2 in the first factor: the seed points and the reverse "
    "map for X satisfy the exponent-2 curve identically, not the exponent-3 one"
)


class RusinError(ValueError):
    """Invalid input to the normal-form / elliptic-curve machinery."""


# ---------------------------------------------------------------- normal form

@dataclass(frozen=True)
class RusinForm:
    """y = (x^3 + b x + c) / (x^2 - 1) with b + c + 1 != 0 and c - b - 1 != 0."""

    b: Fraction
    c: Fraction

    def __post_init__(self):
        b, c = as_rat(self.b), as_rat(self.c)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        if b + c + 1 == 0:
            raise RusinError(f"b+c+1 = 0 for (b, c) = ({b}, {c}): x = 1 cancels")
        if c - b - 1 == 0:
            raise RusinError(f"c-b-1 = 0 for (b, c) = ({b}, {c}): x = -1 cancels")

    @property
    def key(self) -> tuple[Fraction, Fraction]:
        return (self.b, self.c)

    def function(self) -> RatFunc:
        return ratfunc_new(Poly((self.c, self.b, 0, 1)), Poly((-1, 0, 1)), strict=True)

    def inflexion_cubic(self) -> Poly:
        """(b+1)x^3 + 3cx^2 + 3(b+1)x + c, the reduced R'' numerator / 2."""
        b, c = self.b, self.c
        return Poly((c, 3 * (b + 1), 3 * c, b + 1))

    def __str__(self) -> str:
        return f"b={self.b}, c={self.c}"


@dataclass(frozen=True)
class AffineMap:
    """z = scale*x + offset on inputs, w = w_scale*y + w_offset on outputs."""

    scale: Fraction
    offset: Fraction
    w_scale: Fraction
    w_offset: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("scale", "offset", "w_scale", "w_offset"):
            object.__setattr__(self, name, as_rat(getattr(self, name)))
        if self.scale == 0 or self.w_scale == 0:
            raise RusinError("affine map needs nonzero scales")

    def forward(self, x) -> Fraction:
        return self.scale * as_rat(x) + self.offset

    def inverse(self, z) -> Fraction:
        return (as_rat(z) - self.offset) / self.scale

    def forward_w(self, y) -> Fraction:
        return self.w_scale * as_rat(y) + self.w_offset

    def inverse_w(self, w) -> Fraction:
        return (as_rat(w) - self.w_offset) / self.w_scale

    def apply(self, R: RatFunc) -> RatFunc:
        """The function z -> w_scale * R((z - offset)/scale) + w_offset."""
        inner = Poly((-self.offset / self.scale, 1 / self.scale))
        num = R.num.compose(inner).scale(self.w_scale) + R.den.compose(inner).scale(self.w_offset)
        return ratfunc_new(num, R.den.compose(inner))

    def to_json(self) -> dict:
        return {k: str(getattr(self, k)) for k in ("scale", "offset", "w_scale", "w_offset")}


def normalize(d, e, r, s, t) -> tuple[RusinForm, AffineMap]:
    """Normal form of (z^3 + r z^2 + s z + t) / ((z-d)(z-e)).

    The returned map sends the normal form back to the input: z = map.forward(x)
    and w = map.forward_w(y).
    """
    d, e, r, s, t = (as_rat(v) for v in (d, e, r, s, t))
    if d == e:
        raise RusinError("poles must be distinct (d != e)")
    alpha, beta = (d - e) / 2, (d + e) / 2
    k = 3 * beta + r
    N = Poly((t, s, r, 1))
    top = N.compose(Poly((beta, alpha))) - Poly((-1, 0, 1)).scale(k * alpha * alpha)
    top = top.scale(1 / alpha**3)
    # the x^2 term cancels by the choice of the output offset
    assert top.degree == 3 and top[3] == 1 and top[2] == 0
    return RusinForm(top[1], top[0]), AffineMap(alpha, beta, alpha, k)


def critical_quartic(f: RusinForm) -> Poly:
    """x^4 - (b+3)x^2 - 2cx - b."""
    return Poly((-f.b, -2 * f.c, -(f.b + 3), 0, 1))


def recover_bc(x1, x2) -> RusinForm:
    """The unique (b, c) making x1 and x2 critical points.

    Each root gives b(x^2+1) + 2cx = x^4 - 3x^2; the 2x2 system has
    determinant 2(x1 - x2)(x1 x2 - 1).
    """
    x1, x2 = as_rat(x1), as_rat(x2)
    det = 2 * (x1 - x2) * (x1 * x2 - 1)
    if det == 0:
        raise RusinError(f"singular system for x1={x1}, x2={x2} (need x1 != x2 and x1*x2 != 1)")
    r1, r2 = x1**4 - 3 * x1**2, x2**4 - 3 * x2**2
    b = (r1 * 2 * x2 - r2 * 2 * x1) / det
    c = ((x1**2 + 1) * r2 - (x2**2 + 1) * r1) / det
    return RusinForm(b, c)


# ------------------------------------------------------------ W-quartic

def w_quartic(X, Y, Z, W) -> Fraction:
    """3W^4 - (X^2+Y^2+Z^2+XY+XZ+YZ)W^2 + XYZ(X+Y+Z); zero on solutions."""
    X, Y, Z, W = (as_rat(v) for v in (X, Y, Z, W))
    S = X * X + Y * Y + Z * Z + X * Y + X * Z + Y * Z
    return 3 * W**4 - S * W * W + X * Y * Z * (X + Y + Z)


def w_quartic_solve(X, Y, Z) -> list[Fraction]:
    """All nonzero rational W with w_quartic(X, Y, Z, W) = 0, descending."""
    X, Y, Z = (as_rat(v) for v in (X, Y, Z))
    S = X * X + Y * Y + Z * Z + X * Y + X * Z + Y * Z
    P = X * Y * Z * (X + Y + Z)
    disc = S * S - 12 * P
    if disc < 0:
        return []
    root = rational_root(disc, 2)
    if root is None:
        return []
    out = set()
    for w2 in {(S + root) / 6, (S - root) / 6}:
        if w2 <= 0:
            continue
        w = rational_root(w2, 2)
        if w is not None:
            out.update((w, -w))
    return sorted(out, reverse=True)


@dataclass(frozen=True)
class CriticalQuadruple:
    """Integers with x1 = Y/W, x2 = Z/W, x3 = X/W critical and x4 = -(X+Y+Z)/W."""

    X: int
    Y: int
    Z: int
    W: int

    def __post_init__(self):
        if self.W == 0:
            raise RusinError("W must be nonzero")
        if len(set(self.points)) < 4:
            raise RusinError(f"critical points not distinct for {self.as_tuple()}")

    @classmethod
    def from_points(cls, x1, x2, x3) -> "CriticalQuadruple":
        xs = [as_rat(v) for v in (x1, x2, x3)]
        L = lcm(*(q.denominator for q in xs))
        Y, Z, X = (int(q * L) for q in xs)
        g = gcd(X, Y, Z, L)
        return cls(X // g, Y // g, Z // g, L // g)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.X, self.Y, self.Z, self.W)

    @property
    def points(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        W = self.W
        return (Fraction(self.Y, W), Fraction(self.Z, W), Fraction(self.X, W), Fraction(-(self.X + self.Y + self.Z), W))

    @property
    def residue(self) -> Fraction:
        return w_quartic(self.X, self.Y, self.Z, self.W)

    def rusin_form(self) -> RusinForm:
        x1, x2, x3, _ = self.points
        f = recover_bc(x1, x2)
        if critical_quartic(f)(x3) != 0:
            raise RusinError(f"x3 = {x3} is not a critical point of the recovered form")
        return f

    def to_json(self) -> dict:
        return {"X": self.X, "Y": self.Y, "Z": self.Z, "W": self.W, "points": [str(p) for p in self.points]}


def pq_parametrize(p: int, q: int) -> CriticalQuadruple:
    """The (p, q) family solving W^2 = Y^2 + 3YZ + Z^2 on the seed-3 line."""
    h = p * p - 2 * p * q + 2 * q * q
    X = p**4 - 8 * p**3 * q + 14 * p * p * q * q - 4 * p * q**3 - 2 * q**4
    Y = (3 * q * q - 2 * p * q) * h
    Z = (p * p - q * q) * h
    W = (p * p - 3 * p * q + q * q) * h
    if W == 0:
        raise RusinError(f"(p, q) = ({p}, {q}) gives W = 0")
    try:
        quad = CriticalQuadruple(X, Y, Z, W)
    except RusinError as exc:
        raise RusinError(f"(p, q) = ({p}, {q}) is degenerate: {exc}") from None
    if W * W != Y * Y + 3 * Y * Z + Z * Z:
        raise AssertionError("W^2 = Y^2 + 3YZ + Z^2 failed")
    if quad.residue != 0:
        raise AssertionError("W-quartic residue is nonzero")
    return quad


# --------------------------------------------------------------- the curve

@dataclass(frozen=True)
class CurvePoint:
    U: Fraction | None = None
    V: Fraction | None = None

    @property
    def is_infinity(self) -> bool:
        return self.U is None

    @classmethod
    def at(cls, U, V) -> "CurvePoint":
        return cls(as_rat(U), as_rat(V))

    def __neg__(self) -> "CurvePoint":
        return self if self.is_infinity else CurvePoint(self.U, -self.V)

    def to_json(self):
        return "infinity" if self.is_infinity else [str(self.U), str(self.V)]

    def __str__(self) -> str:
        return "O" if self.is_infinity else f"({self.U}, {self.V})"


INFINITY = CurvePoint()


@dataclass(frozen=True)
class CurveSpec:
    """V^2 = U(U + k)(U + m), k = 3(Y-Z)^2, m = (3Y+Z)(Y+3Z)."""

    Y: int
    Z: int

    def __post_init__(self):
        if self.Y == self.Z:
            raise RusinError("degenerate curve: Y = Z")
        if self.m == 0:
            raise RusinError("degenerate curve: (3Y+Z)(Y+3Z) = 0")
        if self.m == self.k:
            raise RusinError("degenerate curve: (3Y+Z)(Y+3Z) = 3(Y-Z)^2")

    @property
    def k(self) -> int:
        return 3 * (self.Y - self.Z) ** 2

    @property
    def m(self) -> int:
        return (3 * self.Y + self.Z) * (self.Y + 3 * self.Z)

    @property
    def a2(self) -> int:
        return self.k + self.m

    @property
    def a4(self) -> int:
        return self.k * self.m

    def rhs(self, U):
        """U^3 + a2 U^2 + a4 U (exact for int or Fraction U)."""
        return U * (U * (U + self.a2) + self.a4)

    def rhs_poly(self) -> Poly:
        return Poly((0, self.a4, self.a2, 1))

    def contains(self, P: CurvePoint) -> bool:
        return P.is_infinity or P.V * P.V == self.rhs(P.U)

    def torsion(self) -> list[CurvePoint]:
        """Infinity and the three points of order 2."""
        return [INFINITY] + [CurvePoint.at(u, 0) for u in sorted((0, -self.k, -self.m))]

    def to_json(self) -> dict:
        return {"Y": self.Y, "Z": self.Z, "rhs": [str(c) for c in self.rhs_poly().coeffs], "note": CURVE_NOTE}


def curve(Y: int, Z: int) -> CurveSpec:
    return CurveSpec(int(Y), int(Z))


def _require_on(c: CurveSpec, *pts: CurvePoint):
    for P in pts:
        if not c.contains(P):
            raise RusinError(f"point {P} is not on the curve for (Y, Z) = ({c.Y}, {c.Z})")


def ec_neg(c: CurveSpec, P: CurvePoint) -> CurvePoint:
    _require_on(c, P)
    return -P


def _add(c: CurveSpec, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.U == Q.U:
        if P.V != Q.V or P.V == 0:
            return INFINITY
        lam = (3 * P.U * P.U + 2 * c.a2 * P.U + c.a4) / (2 * P.V)
    else:
        lam = (Q.V - P.V) / (Q.U - P.U)
    U = lam * lam - c.a2 - P.U - Q.U
    return CurvePoint(U, lam * (P.U - U) - P.V)


def ec_add(c: CurveSpec, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    """Chord-and-tangent sum on V^2 = U^3 + a2 U^2 + a4 U."""
    _require_on(c, P, Q)
    return _add(c, P, Q)


def _mul(c: CurveSpec, n: int, P: CurvePoint) -> CurvePoint:
    if n < 0:
        return _mul(c, -n, -P)
    acc, base = INFINITY, P
    while n:
        if n & 1:
            acc = _add(c, acc, base)
        base = _add(c, base, base)
        n >>= 1
    return acc


def ec_scalar_mul(c: CurveSpec, n: int, P: CurvePoint) -> CurvePoint:
    _require_on(c, P)
    return _mul(c, n, P)


def seed_points(c: CurveSpec) -> list[CurvePoint]:
    """The three +/- pairs of points known on every curve of the family."""
    Y, Z = c.Y, c.Z
    base = [
        ((Y - Z) ** 2, 4 * (Y + Z) * (Y - Z) ** 2),
        (-3 * (Y + Z) ** 2, 12 * Y * Z * (Y + Z)),
        (3 * (Y + 3 * Z) * (3 * Y + Z), 12 * (Y + Z) * (Y + 3 * Z) * (3 * Y + Z)),
    ]
    out = []
    for U, V in base:
        for sgn in (1, -1):
            P = CurvePoint.at(U, sgn * V)
            _require_on(c, P)
            out.append(P)
    return out


def curve_to_X(c: CurveSpec, P: CurvePoint) -> Fraction | None:
    """X = (V - (Y+Z)U - 3(Y+Z)(Y-Z)^2) / (2(U + 3(Y-Z)^2)), or None if undefined."""
    if P.is_infinity:
        return None
    den = 2 * (P.U + c.k)
    if den == 0:
        return None
    s = c.Y + c.Z
    return (P.V - s * P.U - s * c.k) / den


# ------------------------------------------------------- integer point search

_SIEVE_MODULI = (64, 63, 65, 11, 17, 19, 23)


def _square_tables() -> dict[int, np.ndarray]:
    out = {}
    for mod in _SIEVE_MODULI:
        t = np.zeros(mod, dtype=bool)
        t[[(i * i) % mod for i in range(mod)]] = True
        out[mod] = t
    return out


def _scan(c: CurveSpec, lo: int, hi: int) -> list[tuple[int, int]]:
    """Integer U in [lo, hi] with rhs(U) a perfect square: (U, V >= 0)."""
    tables = _square_tables()
    U = np.arange(lo, hi + 1, dtype=np.int64)
    keep = np.ones(U.shape, dtype=bool)
    for mod, table in tables.items():
        u = U % mod
        r = (u * ((u * ((u + c.a2 % mod) % mod)) % mod + c.a4 % mod)) % mod
        keep &= table[r]
    out = []
    for u in U[keep].tolist():
        v2 = c.rhs(u)
        if v2 < 0:
            continue
        v = isqrt(v2)
        if v * v == v2:
            out.append((u, v))
    return out


def integer_point_search(c: CurveSpec, bound: int, jobs: int = 1) -> list[CurvePoint]:
    """All points with integer U in [-bound, bound], both signs of V, sorted."""
    if bound < 0:
        raise ValueError("bound must be >= 0")
    step = 1 << 18
    spans = [(lo, min(lo + step - 1, bound)) for lo in range(-bound, bound + 1, step)]
    if jobs <= 1 or len(spans) < 2:
        found = [hit for lo, hi in spans for hit in _scan(c, lo, hi)]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = ex.map(_scan, [c] * len(spans), [s[0] for s in spans], [s[1] for s in spans])
            found = [hit for part in parts for hit in part]
    pts = set()
    for u, v in found:
        pts.add(CurvePoint.at(u, v))
        pts.add(CurvePoint.at(u, -v))
    return sorted(pts, key=lambda P: (P.U, P.V))


# ------------------------------------------------------- generator selection

def naive_height(P: CurvePoint) -> int:
    if P.is_infinity:
        return 0
    return max(abs(P.U.numerator), P.U.denominator)


@dataclass
class GeneratorReport:
    generators: list[CurvePoint]
    candidates: int
    covered: int
    uncovered: list[CurvePoint] = field(default_factory=list)
    span_range: int = 3

    def to_json(self) -> dict:
        return {
            "generators": [P.to_json() for P in self.generators],
            "candidates": self.candidates,
            "covered": self.covered,
            "uncovered": [P.to_json() for P in self.uncovered],
            "span_range": self.span_range,
        }


def _span(c: CurveSpec, gens: list[CurvePoint], rng: int, with_torsion: bool = True) -> set[CurvePoint]:
    pts = {INFINITY}
    for G in gens:
        mults = [_mul(c, n, G) for n in range(-rng, rng + 1)]
        pts = {_add(c, P, M) for P in pts for M in mults}
    if with_torsion:
        pts = {_add(c, P, T) for P in pts for T in c.torsion()}
    return pts


def select_generators(c: CurveSpec, points: list[CurvePoint], max_generators: int = 5,
                      span_range: int = 3) -> GeneratorReport:
    """Greedy choice of independent-looking points, smallest height first.

    A candidate is skipped when it already lies in the span
    {sum n_i G_i + T : |n_i| <= span_range, T torsion} of the points kept so
    far.  This is a heuristic stand-in for a Mordell-Weil basis.
    """
    torsion = set(c.torsion())
    cands = sorted({P for P in points if P not in torsion and not P.is_infinity},
                   key=lambda P: (naive_height(P), abs(P.V), P.U, P.V))
    gens: list[CurvePoint] = []
    span = _span(c, gens, span_range)
    for P in cands:
        if len(gens) >= max_generators:
            break
        if P in span:
            continue
        gens.append(P)
        span = _span(c, gens, span_range)
    uncovered = [P for P in cands if P not in span]
    return GeneratorReport(gens, len(cands), len(cands) - len(uncovered), uncovered, span_range)


# ------------------------------------------------------------- combinations

FILTERS = ("rational-zero", "rational-inflexion", "any-nice", "none")


@dataclass(frozen=True)
class Candidate:
    curve: CurveSpec
    coefficients: tuple[int, ...]
    torsion_index: int
    point: CurvePoint
    X: Fraction
    W: Fraction
    quadruple: CriticalQuadruple
    form: RusinForm
    rational_zero: bool
    rational_inflexion: bool

    def to_json(self) -> dict:
        return {
            "Y": self.curve.Y,
            "Z": self.curve.Z,
            "coefficients": list(self.coefficients),
            "torsion_index": self.torsion_index,
            "point": self.point.to_json(),
            "X": str(self.X),
            "W": str(self.W),
            "quadruple": self.quadruple.to_json(),
            "b": str(self.form.b),
            "c": str(self.form.c),
            "rational_zero": self.rational_zero,
            "rational_inflexion": self.rational_inflexion,
        }


@dataclass
class SweepResult:
    candidates: list[Candidate]
    examined: int = 0
    skipped: dict[str, int] = field(default_factory=dict)

    def skip(self, reason: str):
        self.skipped[reason] = self.skipped.get(reason, 0) + 1


def _has_rational_root(p: Poly) -> bool:
    return rational_root_count_at_least(p.int_coeffs(), 1)


def candidate_from_point(c: CurveSpec, Q: CurvePoint, skip=None) -> list[tuple]:
    """Every (X, W, quadruple, form) that the curve point Q leads to."""
    note = skip or (lambda reason: None)
    X = curve_to_X(c, Q)
    if X is None:
        note("X undefined")
        return []
    Ws = w_quartic_solve(X, c.Y, c.Z)
    if not Ws:
        note("no rational W")
        return []
    out = []
    for W in Ws:
        x1, x2, x3 = Fraction(c.Y) / W, Fraction(c.Z) / W, X / W
        try:
            quad = CriticalQuadruple.from_points(x1, x2, x3)
            f = recover_bc(x1, x2)
        except RusinError as exc:
            msg = str(exc)
            note("guard b+c+1=0 or c-b-1=0" if "cancels" in msg else
                 "singular (b, c) system" if "singular" in msg else "critical points not distinct")
            continue
        if critical_quartic(f)(x3) != 0:
            raise AssertionError(f"x3 = {x3} is not critical for {f}")
        out.append((X, W, quad, f))
    return out


def _sweep(c: CurveSpec, gens: list[CurvePoint], coeff_range: int, flt: str,
           vectors: list[tuple[int, ...]]) -> SweepResult:
    res = SweepResult([])
    torsion = c.torsion()
    mults = [{n: _mul(c, n, G) for n in range(-coeff_range, coeff_range + 1)} for G in gens]
    seen = set()
    for vec in vectors:
        base = INFINITY
        for table, n in zip(mults, vec):
            base = _add(c, base, table[n])
        for ti, T in enumerate(torsion):
            Q = _add(c, base, T)
            res.examined += 1
            for X, W, quad, f in candidate_from_point(c, Q, res.skip):
                if f.key in seen:
                    res.skip("duplicate (b, c)")
                    continue
                seen.add(f.key)
                rz = _has_rational_root(Poly((f.c, f.b, 0, 1)))
                ri = _has_rational_root(f.inflexion_cubic())
                keep = (flt == "none" or (flt == "rational-zero" and rz) or (flt == "rational-inflexion" and ri)
                        or (flt == "any-nice" and (rz or ri)))
                if not keep:
                    res.skip("filtered out")
                    continue
                res.candidates.append(Candidate(c, vec, ti, Q, X, W, quad, f, rz, ri))
    return res


def combine_and_filter(c: CurveSpec, gens: list[CurvePoint], coeff_range: int = 3,
                       filter: str = "any-nice", jobs: int = 1) -> SweepResult:
    """Sweep Q = n_1 P_1 + ... + n_m P_m + T over |n_i| <= coeff_range and all torsion T.

    Each Q gives X by the reverse map, then rational W, then (b, c).  Candidates
    are deduplicated on exact (b, c) and sorted by it.
    """
    if filter not in FILTERS:
        raise ValueError(f"filter must be one of {', '.join(FILTERS)}")
    if coeff_range < 1:
        raise ValueError("coeff_range must be >= 1")
    _require_on(c, *gens)
    vectors = list(itertools.product(range(-coeff_range, coeff_range + 1), repeat=len(gens)))
    if jobs <= 1 or len(vectors) < 2:
        parts = [_sweep(c, gens, coeff_range, filter, vectors)]
    else:
        n = jobs * 4
        chunks = [vectors[i::n] for i in range(n)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_sweep, [c] * n, [gens] * n, [coeff_range] * n, [filter] * n, chunks))
    out = SweepResult([])
    best: dict[tuple, Candidate] = {}
    for part in parts:
        out.examined += part.examined
        for reason, k in part.skipped.items():
            out.skipped[reason] = out.skipped.get(reason, 0) + k
        for cand in part.candidates:
            prev = best.get(cand.form.key)
            # keep the provenance with the smallest coefficient vector
            if prev is None or _vec_key(cand) < _vec_key(prev):
                best[cand.form.key] = cand
    out.candidates = [best[k] for k in sorted(best)]
    return out


def _vec_key(cand: Candidate):
    return (sum(abs(n) for n in cand.coefficients), cand.coefficients, cand.torsion_index, -cand.W)


# ---------------------------------------------------------------- present

@dataclass(frozen=True)
class Presentation:
    function: RatFunc
    scale: int
    shift: int
    w_offset: int = 0

    @property
    def map(self) -> AffineMap:
        """Rusin x, y to the presented variables: x' = scale*x + shift, w = scale*y + w_offset."""
        return AffineMap(self.scale, self.shift, self.scale, self.w_offset)

    def to_json(self) -> dict:
        return {
            "function": str(self.function),
            "numerator": [str(v) for v in self.function.num.coeffs],
            "denominator": [str(v) for v in self.function.den.coeffs],
            "scale": self.scale,
            "shift": self.shift,
            "w_offset": self.w_offset,
        }


def _present_with(f: RusinForm, lam: int, mu: int, kappa: int = 0) -> RatFunc | None:
    lam_f = Fraction(lam)
    bb, cc = f.b * lam_f**2, f.c * lam_f**3
    if bb.denominator != 1 or cc.denominator != 1:
        return None
    inner = Poly((-mu, 1))
    den = inner**2 - Poly.const(lam_f**2)
    num = inner**3 + inner.scale(bb) + Poly.const(cc) + den.scale(kappa)
    return ratfunc_new(num, den)


def clearing_scale(f: RusinForm, max_scale: int = 10**12) -> int:
    """Least lambda > 0 putting every rational critical point on an integer and
    making b*lambda^2, c*lambda^3 integral."""
    crit = _distinct_rational_roots_int(critical_quartic(f).int_coeffs())
    base = lcm(1, *(q.denominator for q in crit))
    lam = base
    while lam <= max_scale:
        if (f.b * lam * lam).denominator == 1 and (f.c * lam**3).denominator == 1:
            return lam
        lam += base
    raise RusinError(f"no clearing scale up to {max_scale}")


def present(f: RusinForm, map_hint: tuple[int, ...] | None = None, strategy: str = "offset",
            max_scale: int = 10**12) -> Presentation:
    """A monic integer R32 affinely equivalent to the normal form.

    ``x' = lambda*x + mu`` and ``w = lambda*y``.  The default strategy takes the
    least clearing ``lambda > 0`` and ``mu = -lambda`` (poles at 0 and
    -2*lambda).  ``strategy="compact"`` tries both signs of ``lambda`` and both
    poles at 0 and keeps the smallest largest coefficient.  ``map_hint`` fixes
    (lambda, mu) directly, or (lambda, mu, kappa) for ``w = lambda*y + kappa``;
    the output offset kappa moves the zeros but no critical or inflexion point.
    """
    if map_hint is not None:
        lam, mu, kappa = (tuple(int(v) for v in map_hint) + (0,))[:3]
        if lam == 0:
            raise RusinError("scale must be nonzero")
        R = _present_with(f, lam, mu, kappa)
        if R is None or not (R.num.is_integral() and R.den.is_integral()):
            raise RusinError(f"map (lambda, mu, kappa) = ({lam}, {mu}, {kappa}) does not give integer coefficients")
        return Presentation(R, lam, mu, kappa)
    lam = clearing_scale(f, max_scale)
    if strategy == "offset":
        return Presentation(_present_with(f, lam, -lam), lam, -lam)
    if strategy != "compact":
        raise ValueError("strategy must be 'offset' or 'compact'")
    options = []
    for sl in (lam, -lam):
        for mu in (-sl, sl):
            R = _present_with(f, sl, mu)
            size = max(abs(v) for v in R.num.coeffs + R.den.coeffs)
            options.append((size, -sl, mu, R))
    size, neg, mu, R = min(options, key=lambda o: o[:3])
    return Presentation(R, -neg, mu)


def affine_signature(R: RatFunc) -> tuple | None:
    """Pole-gap and critical-gap ratios, invariant under x -> lambda*x + mu.

    Returns None unless R has two rational poles and four rational critical
    points.  The sign of lambda is removed by taking the lexicographically
    smaller of the signature and its mirror.
    """
    from .rootkit import distinct_rational_roots

    poles = distinct_rational_roots(R.den)
    from .exact import deriv_numerator

    crit = distinct_rational_roots(deriv_numerator(R))
    if len(poles) != 2 or len(crit) != 4:
        return None

    def sig(ps, cs):
        p0, p1 = ps
        span = p1 - p0
        return tuple((x - p0) / span for x in cs)

    a = sig(poles, crit)
    b = sig([-p for p in reversed(poles)], sorted(-x for x in crit))
    return min(a, b)
