"""Exact root classification.

Rational roots are found with exact arithmetic; float roots are only ever used
as hints and are certified (or discarded) by integer sign checks.  Real-root
counting uses Sturm sequences.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, ROUND_HALF_EVEN, localcontext
from fractions import Fraction
from math import isqrt

import numpy as np

from .exact import Poly, poly_gcd


# ------------------------------------------------------------ perfect powers

@dataclass(frozen=True)
class PowerWitness:
    value: int
    root: int | None
    exponent: int

    def __bool__(self) -> bool:
        return self.root is not None


def integer_root(v: int, k: int) -> int | None:
    """Exact integer k-th root of v, or None."""
    if v < 0:
        if k % 2 == 0:
            return None
        r = integer_root(-v, k)
        return None if r is None else -r
    if v < 2:
        return v
    if k == 2:
        r = isqrt(v)
        return r if r * r == v else None
    r = int(round(v ** (1.0 / k))) if v < 1 << 1000 else _iroot_newton(v, k)
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == v:
            return cand
    r = _iroot_newton(v, k)
    return r if r**k == v else None


def _iroot_newton(v: int, k: int) -> int:
    x = 1 << ((v.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + v // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def is_perfect_square(v: int) -> PowerWitness:
    return PowerWitness(v, integer_root(v, 2), 2)


def is_perfect_cube(v: int) -> PowerWitness:
    return PowerWitness(v, integer_root(v, 3), 3)


def rational_root(q: Fraction, k: int) -> Fraction | None:
    q = Fraction(q)
    a, b = integer_root(q.numerator, k), integer_root(q.denominator, k)
    if a is None or b is None:
        return None
    return Fraction(a, b)


# ------------------------------------------------------------- Cardano data

@dataclass(frozen=True)
class CardanoData:
    """Depressed form z^3 + Qz + R of a cubic, x = z + shift, D = (R/2)^2 + (Q/3)^3."""

    Q: Fraction
    R: Fraction
    D: Fraction
    shift: Fraction

    @property
    def classification(self) -> str:
        if self.D > 0:
            return "one-real"
        if self.D < 0:
            return "three-real"
        return "repeated"

    @property
    def real_root_count(self) -> int:
        """Distinct real roots implied by the sign of D."""
        if self.D > 0:
            return 1
        if self.D < 0:
            return 3
        return 1 if self.Q == 0 else 2


def cardano(p: Poly) -> CardanoData:
    if p.degree != 3:
        raise ValueError(f"cardano needs a cubic, got degree {p.degree}")
    m = p.monic()
    A, B, C = m[2], m[1], m[0]
    Q = B - A * A / 3
    R = 2 * A**3 / 27 - A * B / 3 + C
    D = (R / 2) ** 2 + (Q / 3) ** 3
    return CardanoData(Q, R, D, -A / 3)


# ------------------------------------------------------ squarefree / Sturm

def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: p = lc * prod f_i^i with monic squarefree coprime f_i."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    out: list[tuple[Poly, int]] = []
    if p.degree == 0:
        return out
    f = p.monic()
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b = b.exact_div(g)
        d = d.exact_div(g) - b.derivative()
        i += 1
    return out


def squarefree_part(p: Poly) -> Poly:
    if p.degree <= 0:
        return p.monic()
    return p.exact_div(poly_gcd(p, p.derivative())).monic()


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _variations(signs) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _var_at(seq: list[Poly], x) -> int:
    if x == "+inf":
        return _variations([_sign(q.lead) for q in seq])
    if x == "-inf":
        return _variations([_sign(q.lead) * (-1) ** q.degree for q in seq])
    return _variations([_sign(q(x)) for q in seq])


def count_real_roots(p: Poly, lo=None, hi=None) -> int:
    """Number of distinct real roots, optionally restricted to (lo, hi]."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.degree == 0:
        return 0
    seq = sturm_sequence(squarefree_part(p))
    a = "-inf" if lo is None else Fraction(lo)
    b = "+inf" if hi is None else Fraction(hi)
    return _var_at(seq, a) - _var_at(seq, b)


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound: every root satisfies |x| < bound."""
    lc = abs(p.lead)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def _isolate(p: Poly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint open intervals, each holding one real root of squarefree p.

    Assumes p has no rational roots, so rational endpoints are never roots.
    """
    if p.degree <= 0:
        return []
    seq = sturm_sequence(p)
    B = root_bound(p)
    out = []
    stack = [(-B, B, _var_at(seq, -B), _var_at(seq, B))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        vm = _var_at(seq, mid)
        stack.append((lo, mid, vlo, vm))
        stack.append((mid, hi, vm, vhi))
    return sorted(out)


def _refine(p: Poly, lo: Fraction, hi: Fraction, width: Fraction, avoid=()) -> tuple[Fraction, Fraction]:
    """Bisect (lo, hi) until narrower than width and clear of the avoid points."""
    slo = _sign(p(lo))
    while hi - lo >= width or any(lo <= r <= hi for r in avoid):
        mid = (lo + hi) / 2
        sm = _sign(p(mid))
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


# ---------------------------------------------------------- rational roots

def _int_poly(p: Poly) -> list[int]:
    return p.int_coeffs()


def _scaled_eval(f: list[int], m: int, L: int) -> int:
    """L^deg * f(m / L) as an exact integer."""
    n = len(f) - 1
    acc = 0
    lp = 1
    # Horner on f(m/L) * L^n: sum f_i m^i L^(n-i)
    for i in range(n, -1, -1):
        acc = acc * m + f[i] * lp
        lp *= L
    return acc


def _real_count_int(f: list[int]) -> int | None:
    """Distinct real roots of an integer polynomial, cheap for degree <= 3."""
    n = len(f) - 1
    if n == 2:
        disc = f[1] * f[1] - 4 * f[2] * f[0]
        return 2 if disc > 0 else (1 if disc == 0 else 0)
    if n == 3:
        d, c, b, a = f
        disc = 18 * a * b * c * d - 4 * b**3 * d + b * b * c * c - 4 * a * c**3 - 27 * a * a * d * d
        if disc > 0:
            return 3
        if disc < 0:
            return 1
        return None
    return None


def _distinct_rational_roots_int(f: list[int]) -> list[Fraction]:
    """Distinct rational roots of an integer polynomial (low to high coeffs)."""
    while len(f) > 1 and f[-1] == 0:
        f = f[:-1]
    roots: list[Fraction] = []
    if f[0] == 0:
        roots.append(Fraction(0))
        k = next(i for i, c in enumerate(f) if c)
        f = f[k:]
    n = len(f) - 1
    if n <= 0:
        return roots
    if n == 1:
        return sorted(roots + [Fraction(-f[0], f[1])])
    if n == 2:
        c, b, a = f
        disc = b * b - 4 * a * c
        s = integer_root(disc, 2)
        if s is not None:
            roots += {Fraction(-b + s, 2 * a), Fraction(-b - s, 2 * a)}
        return sorted(roots)
    found = _certified_hint_roots(f)
    if found is None:
        found = _exact_rational_roots(f)
    return sorted(roots + found)


def _certified_hint_roots(f: list[int]) -> list[Fraction] | None:
    """Use float roots as hints; None if the hints cannot be certified."""
    L = f[-1]
    n = len(f) - 1
    real = _real_count_int(f)
    if real is None:
        if n > 8:
            return None
        real = count_real_roots(Poly(f))
    if real == 0:
        return []
    try:
        fl = [float(c) for c in reversed(f)]
    except OverflowError:
        return None
    if not all(np.isfinite(fl)):
        return None
    with np.errstate(all="ignore"):
        hints = np.roots(fl)
    hits: set[int] = set()
    cells: set[int] = set()
    for h in hints:
        if abs(h.imag) > 1e-6 * max(1.0, abs(h.real)):
            continue
        t = h.real * L
        if not np.isfinite(t) or abs(t) > 1e14:
            return None
        m0 = int(round(t))
        vals = {m: _scaled_eval(f, m, L) for m in range(m0 - 2, m0 + 3)}
        hit = [m for m in range(m0 - 1, m0 + 2) if vals[m] == 0]
        if hit:
            hits.update(hit)
            continue
        for m in range(m0 - 2, m0 + 2):
            if vals[m] and vals[m + 1] and (vals[m] > 0) != (vals[m + 1] > 0):
                cells.add(m)
                break
    if len(hits) + len(cells) != real:
        return None
    return [Fraction(m, L) for m in hits]


def _exact_rational_roots(f: list[int]) -> list[Fraction]:
    """Rational roots via Sturm isolation: any rational root r has L*r integral."""
    p = squarefree_part(Poly(f))
    g = p.int_coeffs()
    L = g[-1]
    seq = sturm_sequence(p)
    B = root_bound(p)
    out = []
    # isolate all real roots; rational ones may sit on bisection points
    stack = [(-B, B)]
    while stack:
        lo, hi = stack.pop()
        n = _var_at(seq, lo) - _var_at(seq, hi)
        if n == 0:
            continue
        if n == 1 and (hi - lo) * L < 1:
            for m in range(_ceil(lo * L), _floor(hi * L) + 1):
                if _scaled_eval(g, m, L) == 0:
                    out.append(Fraction(m, L))
            continue
        mid = (lo + hi) / 2
        if p(mid) == 0:
            out.append(mid)
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(set(out))


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def has_root_mod(f: list[int], ell: int) -> bool:
    fm = [c % ell for c in f]
    for x in range(ell):
        acc = 0
        for c in reversed(fm):
            acc = (acc * x + c) % ell
        if acc == 0:
            return True
    return False


def rational_root_count_at_least(f: list[int], k: int) -> bool:
    """Cheap necessary-condition screens, then an exact count."""
    if k <= 0:
        return True
    while len(f) > 1 and f[-1] == 0:
        f = f[:-1]
    n = len(f) - 1
    if n < k:
        return False
    if f[0] != 0 and n >= 2:
        for ell in (5, 7, 11, 13):
            if f[-1] % ell and not has_root_mod(f, ell):
                return False
    if n == 3 and k >= 2:
        d, c, b, a = f
        disc = 18 * a * b * c * d - 4 * b**3 * d + b * b * c * c - 4 * a * c**3 - 27 * a * a * d * d
        if integer_root(disc, 2) is None:
            return False
    return len(_distinct_rational_roots_int(f)) >= k


def rational_roots(p: Poly) -> list[tuple[Fraction, int]]:
    """All rational roots of p with multiplicity, ascending."""
    if p.is_zero():
        raise ValueError("zero polynomial has every number as a root")
    out = []
    for g, mult in squarefree_decomposition(p):
        for r in _distinct_rational_roots_int(g.int_coeffs()):
            out.append((r, mult))
    return sorted(out)


def distinct_rational_roots(p: Poly) -> list[Fraction]:
    if p.is_zero():
        raise ValueError("zero polynomial has every number as a root")
    if p.degree <= 0:
        return []
    return _distinct_rational_roots_int(p.int_coeffs())


# ----------------------------------------------------------------- RootSet

@dataclass(frozen=True)
class RootSet:
    """Classified roots of a polynomial (multiplicities counted in the totals)."""

    degree: int
    rational_roots: tuple[tuple[Fraction, int], ...] = ()
    irrational_real_count: int = 0
    complex_pair_count: int = 0
    isolating_intervals: tuple[tuple[Fraction, Fraction], ...] = ()
    decimal_approx: tuple[str, ...] = ()
    irrational_multiplicities: tuple[int, ...] = field(default=(), compare=False)

    @property
    def rationals(self) -> list[Fraction]:
        return [r for r, _ in self.rational_roots]

    @property
    def integers(self) -> list[int]:
        return [int(r) for r in self.rationals if r.denominator == 1]

    @property
    def distinct_real_count(self) -> int:
        return len(self.rational_roots) + len(self.isolating_intervals)

    @property
    def all_real_rational(self) -> bool:
        return bool(self.rational_roots) and not self.isolating_intervals

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "rational_roots": [[_rat_str(r), m] for r, m in self.rational_roots],
            "irrational_real_count": self.irrational_real_count,
            "complex_pair_count": self.complex_pair_count,
            "isolating_intervals": [[_rat_str(a), _rat_str(b)] for a, b in self.isolating_intervals],
            "decimal_approx": list(self.decimal_approx),
        }

    @classmethod
    def from_json(cls, d: dict) -> "RootSet":
        return cls(
            degree=d["degree"],
            rational_roots=tuple((Fraction(r), m) for r, m in d["rational_roots"]),
            irrational_real_count=d["irrational_real_count"],
            complex_pair_count=d["complex_pair_count"],
            isolating_intervals=tuple((Fraction(a), Fraction(b)) for a, b in d["isolating_intervals"]),
            decimal_approx=tuple(d["decimal_approx"]),
        )


def _rat_str(q: Fraction) -> str:
    return str(Fraction(q))


def _decimal(q: Fraction, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = max(50, digits + 30)
        v = Decimal(q.numerator) / Decimal(q.denominator)
        return str(v.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN))


def isolate_real_roots(p: Poly, precision: int = 6) -> RootSet:
    """Full classification of the roots of p.

    Rational roots are exact; each irrational real root gets an open interval
    of width below 10**-precision that excludes every rational root.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.degree == 0:
        return RootSet(degree=0)
    width = Fraction(1, 10 ** (precision + 1))
    rats: list[tuple[Fraction, int]] = []
    pieces: list[tuple[Poly, int]] = []
    for g, mult in squarefree_decomposition(p):
        rs = _distinct_rational_roots_int(g.int_coeffs())
        rats += [(r, mult) for r in rs]
        h = g
        for r in rs:
            h = h.exact_div(Poly((-r, 1)))
        pieces.append((h, mult))
    avoid = [r for r, _ in rats]
    intervals: list[tuple[Fraction, Fraction, int, Poly]] = []
    cpairs = 0
    irr = 0
    for h, mult in pieces:
        if h.degree <= 0:
            continue
        iv = _isolate(h)
        irr += len(iv) * mult
        cpairs += (h.degree - len(iv)) // 2 * mult
        for lo, hi in iv:
            intervals.append((lo, hi, mult, h))
    refined = [(*_refine(h, lo, hi, width, avoid), mult, h) for lo, hi, mult, h in intervals]
    refined.sort(key=lambda t: (t[0], t[1]))
    # roots of different squarefree pieces may share an interval until separated
    while any(a[1] >= b[0] for a, b in zip(refined, refined[1:])):
        refined = [
            (*_refine(h, lo, hi, (hi - lo) / 2, avoid), mult, h) for lo, hi, mult, h in refined
        ]
        refined.sort(key=lambda t: (t[0], t[1]))
    return RootSet(
        degree=p.degree,
        rational_roots=tuple(sorted(rats)),
        irrational_real_count=irr,
        complex_pair_count=cpairs,
        isolating_intervals=tuple((lo, hi) for lo, hi, _, _ in refined),
        decimal_approx=tuple(_decimal((lo + hi) / 2, precision) for lo, hi, _, _ in refined),
        irrational_multiplicities=tuple(m for _, _, m, _ in refined),
    )
