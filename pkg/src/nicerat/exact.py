"""Exact rational and polynomial arithmetic, rational functions and shifts.

Scalars are :class:`fractions.Fraction`; polynomials are dense, low-to-high.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Iterable, Sequence

Rat = Fraction


class PoleError(ZeroDivisionError):
    """Evaluation at a zero of the denominator."""


class AssumptionError(ValueError):
    """A rational function violates the common-factor / repeated-root rules."""


def as_rat(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip().replace(" ", ""))
    return Fraction(value)


class Poly:
    """Dense univariate polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # construction helpers
    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "Poly":
        p = cls.const(lead)
        for r in roots:
            p = p * cls((-as_rat(r), 1))
        return p

    # basic properties
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # arithmetic
    def __add__(self, other) -> "Poly":
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        return self + (-_lift(other))

    def __rsub__(self, other) -> "Poly":
        return _lift(other) - self

    def __mul__(self, other) -> "Poly":
        other = _lift(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "Poly":
        c = as_rat(c)
        return Poly(a * c for a in self.coeffs)

    def __divmod__(self, other: "Poly"):
        other = _lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = 1 / other.lead
        if len(rem) - 1 < dq:
            return Poly(), Poly(rem)
        quot = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            q = rem[k + dq] * inv
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, Poly) else Poly()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shift(self, n) -> "Poly":
        """Return p(x - n); roots move right by ``n``."""
        return self.compose(Poly((-as_rat(n), 1)))

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.lead)

    def content(self) -> Fraction:
        """Positive rational c with self/c primitive over the integers."""
        if self.is_zero():
            return Fraction(0)
        den = lcm(*(c.denominator for c in self.coeffs))
        num = gcd(*(int(c * den) for c in self.coeffs))
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        """Integer coefficients, content 1, positive leading coefficient."""
        if self.is_zero():
            return self
        p = self.scale(1 / self.content())
        return -p if p.lead < 0 else p

    def int_coeffs(self) -> list[int]:
        """Coefficients of the primitive part as plain ints (low to high)."""
        return [int(c) for c in self.primitive().coeffs]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return format_poly(self)


def _lift(v) -> Poly:
    return v if isinstance(v, Poly) else Poly.const(v)


def poly_derivative(p: Poly) -> Poly:
    return p.derivative()


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd over Q. Raises ValueError when both inputs are zero."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    a, b = p, q
    while b:
        a, b = b, a % b
    return a.monic()


# ---------------------------------------------------------------- formatting

def _fmt_coef(c: Fraction) -> str:
    return str(c) if c.denominator == 1 else f"({c})"


def format_poly(p: Poly, var: str = "x") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = _fmt_coef(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{_fmt_coef(a)}{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out


_TERM = re.compile(
    r"""\s*([+-])?\s*
        (\(\s*-?\d+(?:/\d+)?\s*\)|\d+(?:/\d+)?)?\s*\*?\s*
        ([a-z](?:\s*(?:\^|\*\*)\s*(\d+))?)?\s*""",
    re.VERBOSE,
)


def parse_poly(text: str) -> Poly:
    """Parse ``"[4, -5, 1]"`` (low to high) or ``"x^2-5x+4"``."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    if s.startswith("["):
        if not s.endswith("]"):
            raise ValueError(f"malformed coefficient list: {text!r}")
        body = s[1:-1].strip()
        items = [t.strip().strip("'\"") for t in body.split(",")] if body else []
        try:
            return Poly(Fraction(t) for t in items)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad coefficient in {text!r}: {exc}") from None
    coeffs: dict[int, Fraction] = {}
    pos = 0
    var = None
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse polynomial {text!r} near {s[pos:]!r}")
        if pos and not m.group(1):
            raise ValueError(f"missing operator in {text!r} near {s[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(m.group(2).strip("() ")) if m.group(2) else Fraction(1)
        power = 0
        if m.group(3):
            v = m.group(3)[0]
            if var is None:
                var = v
            elif v != var:
                raise ValueError(f"mixed variables in {text!r}")
            power = int(m.group(4)) if m.group(4) else 1
        coeffs[power] = coeffs.get(power, Fraction(0)) + sign * coef
        pos = m.end()
    top = max(coeffs)
    return Poly(coeffs.get(i, 0) for i in range(top + 1))


# ----------------------------------------------------------- rational functions

@dataclass(frozen=True)
class RatFunc:
    """Reduced quotient num/den with a monic denominator."""

    num: Poly
    den: Poly

    @property
    def m(self) -> int:
        return self.num.degree

    @property
    def n(self) -> int:
        return self.den.degree

    def __call__(self, x) -> Fraction:
        return evaluate(self, x)

    def __str__(self) -> str:
        return f"({self.num})/({self.den})"


def assumption_problems(num: Poly, den: Poly) -> list[str]:
    """Ways in which num/den breaks the standing assumptions on R = P/Q."""
    problems = []
    if num.is_zero():
        problems.append("numerator is zero")
        return problems
    g = poly_gcd(num, den)
    if g.degree > 0:
        problems.append(f"numerator and denominator share the factor {g}")
    if num.degree > 1 and poly_gcd(num, num.derivative()).degree > 0:
        problems.append("numerator has a repeated root")
    if num.degree + den.degree < 3:
        problems.append("m + n < 3: fewer than one guaranteed critical point")
    return problems


def ratfunc_new(num: Poly, den: Poly, strict: bool = False) -> RatFunc:
    """Build a reduced rational function.

    In strict mode a shared factor or a repeated numerator root raises
    :class:`AssumptionError`; ``m + n < 3`` only warns.
    """
    if den.is_zero():
        raise ZeroDivisionError("denominator is the zero polynomial")
    if strict and not num.is_zero():
        g = poly_gcd(num, den)
        if g.degree > 0:
            raise AssumptionError(f"common factor {g} between numerator and denominator")
        if num.degree > 1 and poly_gcd(num, num.derivative()).degree > 0:
            raise AssumptionError("numerator has a repeated root")
        if num.degree + den.degree < 3:
            warnings.warn("m + n < 3: no critical point is guaranteed", stacklevel=2)
    return _reduced(num, den)


def _reduced(num: Poly, den: Poly) -> RatFunc:
    if num.is_zero():
        return RatFunc(Poly(), Poly.const(1))
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, den = num.exact_div(g), den.exact_div(g)
    lc = den.lead
    return RatFunc(num.scale(1 / lc), den.monic())


def derivative(R: RatFunc) -> RatFunc:
    n, d = R.num, R.den
    return _reduced(n.derivative() * d - n * d.derivative(), d * d)


def deriv_numerator(R: RatFunc) -> Poly:
    """Numerator of R' after cancelling common factors (monic denominator)."""
    return derivative(R).num


def second_deriv_numerator(R: RatFunc) -> Poly:
    """Numerator of R'' after cancelling common factors (monic denominator)."""
    return derivative(derivative(R)).num


def evaluate(R: RatFunc, x) -> Fraction:
    x = as_rat(x)
    d = R.den(x)
    if d == 0:
        raise PoleError(f"pole at x = {x}")
    return R.num(x) / d


def shift(R: RatFunc, n) -> RatFunc:
    """Substitute x = z - n, so every distinguished point moves by +n."""
    return RatFunc(R.num.shift(n), R.den.shift(n))


# --------------------------------------------------------- parametric families

def _shift_coefficients(p: Poly) -> tuple[Poly, ...]:
    """Coefficients of p(z - n) in z, each a polynomial in n."""
    out = []
    for k in range(len(p.coeffs)):
        terms = [Fraction(0)] * (len(p.coeffs) - k)
        for j in range(k, len(p.coeffs)):
            terms[j - k] += p.coeffs[j] * comb(j, k) * (-1) ** (j - k)
        out.append(Poly(terms))
    return tuple(out)


@dataclass(frozen=True)
class ShiftedFamily:
    """R(z - n) with symbolic n: coefficients in z are polynomials in n."""

    base: RatFunc
    symbol: str = "n"
    var: str = "z"

    @property
    def num_coeffs(self) -> tuple[Poly, ...]:
        return _shift_coefficients(self.base.num)

    @property
    def den_coeffs(self) -> tuple[Poly, ...]:
        return _shift_coefficients(self.base.den)

    def instantiate(self, n) -> RatFunc:
        return shift(self.base, n)

    @property
    def substitution(self) -> str:
        return f"x = {self.var} - {self.symbol}"

    def numerator_text(self) -> str:
        return render_shifted(self.num_coeffs, self.symbol, self.var)

    def denominator_text(self) -> str:
        return render_shifted(self.den_coeffs, self.symbol, self.var)

    def text(self) -> str:
        return f"({self.numerator_text()})/({self.denominator_text()})"

    def latex(self) -> str:
        return rf"\frac{{{self.numerator_text()}}}{{{self.denominator_text()}}}"


def _is_monomial(p: Poly) -> bool:
    return sum(1 for c in p.coeffs if c) == 1


def render_shifted(coeffs: Sequence[Poly], sym: str = "n", var: str = "z") -> str:
    """Render sum_k c_k(n) z^k with the bracket conventions of hand-written forms.

    ``-(2n+5)z`` for all-negative brackets, ``(9-2n)z`` when only the constant
    is positive, ``+n^2+5n+4`` for the expanded constant term.
    """
    pieces: list[str] = []
    top = len(coeffs) - 1
    for k in range(top, -1, -1):
        c = coeffs[k]
        if c.is_zero():
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if k == 0:
            s = format_poly(c, sym)
            pieces.append(s if s.startswith("-") else "+" + s)
            continue
        if c.is_constant():
            a = c.coeffs[0]
            sign = "-" if a < 0 else "+"
            body = mono if abs(a) == 1 else f"{_fmt_coef(abs(a))}{mono}"
            pieces.append(sign + body)
        elif _is_monomial(c):
            s = format_poly(c, sym)
            pieces.append((s if s.startswith("-") else "+" + s) + mono)
        else:
            lead_neg = c.lead < 0
            const = c.coeffs[0]
            if lead_neg and const > 0:
                # constant first, then the negative n-terms
                pieces.append(f"+({_ascending(c, sym)}){mono}")
            elif all(x <= 0 for x in c.coeffs):
                pieces.append(f"-({format_poly(-c, sym)}){mono}")
            else:
                pieces.append(f"+({format_poly(c, sym)}){mono}")
    out = "".join(pieces)
    return out[1:] if out.startswith("+") else out


def _ascending(p: Poly, sym: str) -> str:
    out = ""
    for k, c in enumerate(p.coeffs):
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mono = "" if k == 0 else (sym if k == 1 else f"{sym}^{k}")
        body = _fmt_coef(abs(c)) if k == 0 else (mono if abs(c) == 1 else f"{_fmt_coef(abs(c))}{mono}")
        out += sign + body
    return out[1:] if out.startswith("+") else out


def emit_shifted(R: RatFunc, symbol: str = "n") -> ShiftedFamily:
    return ShiftedFamily(R, symbol)
