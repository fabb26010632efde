import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from nicerat.exact import Poly
from nicerat.rootkit import (
    RootSet,
    cardano,
    count_real_roots,
    distinct_rational_roots,
    integer_root,
    is_perfect_cube,
    is_perfect_square,
    isolate_real_roots,
    rational_root,
    rational_root_count_at_least,
    rational_roots,
    squarefree_decomposition,
)


def P(*low_to_high):
    return Poly(low_to_high)


def test_perfect_powers():
    assert is_perfect_square(196).root == 14
    assert is_perfect_cube(-1728).root == -12
    assert not is_perfect_square(8)
    assert not is_perfect_square(-4)
    assert is_perfect_square(0).root == 0
    assert integer_root(7**6, 6) == 7
    assert integer_root(10**60 + 1, 3) is None
    big = 123456789123456789**3
    assert integer_root(big, 3) == 123456789123456789
    assert rational_root(F(8, 27), 3) == F(2, 3)
    assert rational_root(F(2, 9), 2) is None


@given(st.integers(min_value=-10**12, max_value=10**12), st.sampled_from([2, 3]))
@settings(max_examples=300, derandomize=True)
def test_integer_root_is_exact(v, k):
    r = integer_root(v, k)
    if r is None:
        if k == 2 and v >= 0:
            from math import isqrt

            assert isqrt(v) ** 2 != v
    else:
        assert r**k == v


def test_rational_roots_examples():
    assert rational_roots(P(4, -5, 1)) == [(1, 1), (4, 1)]
    assert rational_roots(P(476280, 10566, 165, 1)) == [(-108, 1)]
    assert rational_roots(P(-105, 10, 15)) == [(-3, 1), (F(7, 3), 1)]
    assert rational_roots(Poly.from_roots([2, 2, 2, F(-1, 3)])) == [(F(-1, 3), 1), (2, 3)]
    with pytest.raises(ValueError):
        rational_roots(Poly())


def test_quadratic_remainder_of_pq43_r32_numerator_is_rootless():
    p = P(476280, 10566, 165, 1)
    rest = p.exact_div(P(108, 1))
    assert rest == P(4410, 57, 1)
    assert count_real_roots(rest) == 0


def test_cardano_examples():
    d1 = cardano(P(4160, -192, 0, 1))
    assert d1.D == 4064256 == F(1 * 64**2 * 63**2, 4)
    assert d1.classification == "one-real"
    d2 = cardano(P(-576, -192, 0, 1))
    assert d2.D == -179200
    assert d2.real_root_count == 3
    d3 = cardano(P(1728, 0, 0, 1))
    assert d3.D == 746496
    assert cardano(Poly.from_roots([1, 1, 2])).classification == "repeated"
    with pytest.raises(ValueError):
        cardano(P(1, 0, 1))


def test_count_real_roots_examples():
    assert count_real_roots(P(1, 0, 1)) == 0
    assert count_real_roots(P(-576, -192, 0, 1)) == 3
    quartic = P(-864, 96, 188, -36, 1)
    assert count_real_roots(quartic) == 4
    assert quartic(-2) == 0 and quartic(6) == 0
    assert count_real_roots(Poly.from_roots([1, 1, 3])) == 2
    assert count_real_roots(Poly.from_roots([1, 2, 3]), 1, 3) == 2
    with pytest.raises(ValueError):
        count_real_roots(Poly())


def test_isolate_examples():
    pq43_r32_inflexion = P(1440747000, 39293100, 357210, 1129)
    rs = isolate_real_roots(pq43_r32_inflexion)
    assert rs.rationals == [] and len(rs.isolating_intervals) == 1
    lo, hi = rs.isolating_intervals[0]
    assert F(-81462, 1000) < lo < hi < F(-81460, 1000)
    assert rs.decimal_approx == ("-81.460991",)
    sq2 = isolate_real_roots(P(-2, 0, 1))
    assert sq2.decimal_approx == ("-1.414214", "1.414214")
    cube = isolate_real_roots(P(1728, 0, 0, 1))
    assert cube.rationals == [-12] and cube.isolating_intervals == () and cube.complex_pair_count == 1


def test_rootset_invariants_and_json():
    rng = random.Random(5)
    for _ in range(60):
        roots = [F(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(rng.randint(0, 3))]
        extra = Poly([rng.randint(-6, 6) for _ in range(rng.randint(1, 4))] + [1])
        p = Poly.from_roots(roots) * extra
        if p.degree < 1:
            continue
        rs = isolate_real_roots(p, precision=4)
        total = sum(m for _, m in rs.rational_roots) + rs.irrational_real_count + 2 * rs.complex_pair_count
        assert total == p.degree
        for lo, hi in rs.isolating_intervals:
            assert count_real_roots(p, lo, hi) == 1
            assert all(not (lo <= r <= hi) for r in rs.rationals)
        assert RootSet.from_json(rs.to_json()) == rs


def test_random_integer_cubics():
    rng = random.Random(100)
    for _ in range(100):
        r = sorted(rng.sample(range(-50, 51), 3))
        p = Poly.from_roots(r)
        assert cardano(p).D < 0
        assert count_real_roots(p) == 3
        assert distinct_rational_roots(p) == r


def test_deflation_reconstructs():
    rng = random.Random(8)
    for _ in range(60):
        roots = [rng.randint(-8, 8) for _ in range(rng.randint(1, 4))]
        extra = Poly([rng.randint(-5, 5), rng.randint(-5, 5), 1])
        p = Poly.from_roots(roots, lead=rng.randint(1, 4)) * extra
        acc = Poly.const(1)
        for r, m in rational_roots(p):
            acc = acc * Poly.from_roots([r]) ** m
        rest, rem = divmod(p, acc)
        assert rem.is_zero()
        assert distinct_rational_roots(rest) == [] if rest.degree > 0 else True


def test_squarefree_decomposition():
    p = Poly.from_roots([1, 1, 1, 2, 2, 5]).scale(3)
    parts = squarefree_decomposition(p)
    assert parts == [(Poly.from_roots([5]), 1), (Poly.from_roots([2]), 2), (Poly.from_roots([1]), 3)]


def test_rational_root_screens_agree_with_exact_count():
    rng = random.Random(9)
    for _ in range(300):
        f = [rng.randint(-30, 30) for _ in range(4)]
        if f[-1] == 0:
            continue
        n = len(distinct_rational_roots(Poly(f)))
        for k in range(0, 4):
            assert rational_root_count_at_least(f, k) == (n >= k)
