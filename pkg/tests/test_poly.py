from fractions import Fraction

import pytest

from cquadrics import MultiPoly, UniPoly
from cquadrics.fields import PrimeField


def test_unipoly_normalization():
    assert UniPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert UniPoly([0, 0]).is_zero
    assert UniPoly([0, 0, 3]).valuation == 2
    assert UniPoly([0, 0, 3]).degree == 2


def test_unipoly_arithmetic():
    p = UniPoly([1, 1])
    q = UniPoly([-1, 1])
    assert p * q == UniPoly([-1, 0, 1])
    assert p + q == UniPoly([0, 2])
    assert p - p == UniPoly()
    assert (p * 0).is_zero
    assert 2 * p == UniPoly([2, 2])


def test_unipoly_truncated_mul():
    p = UniPoly([1, 1, 1, 1])
    assert p.mul(p, trunc=2) == UniPoly([1, 2, 3])


def test_unipoly_exact_div():
    p = UniPoly([-1, 0, 1])
    q = UniPoly([1, 1])
    assert p.exact_div(q) == UniPoly([-1, 1])
    with pytest.raises(ValueError):
        UniPoly([1, 1, 1]).exact_div(q)


def test_unipoly_shift():
    p = UniPoly([0, 0, 2, 3])
    assert p.shift(-2) == UniPoly([2, 3])
    assert p.shift(1) == UniPoly([0, 0, 0, 2, 3])
    with pytest.raises(ValueError):
        UniPoly([1, 1]).shift(-1)


def test_series_inverse():
    p = UniPoly([1, 1])
    inv = p.series_inverse(5)
    assert p.mul(inv, trunc=4) == UniPoly([1])
    assert inv == UniPoly([1, -1, 1, -1, 1])
    p2 = UniPoly([Fraction(2), Fraction(3)])
    assert p2.mul(p2.series_inverse(6), trunc=5) == UniPoly([1])


def test_unipoly_over_prime_field():
    gf = PrimeField(7)
    p = UniPoly([gf.of(3), gf.of(5)])
    q = p.series_inverse(3)
    assert p.mul(q, trunc=2) == UniPoly([gf.of(1)])


def test_multipoly_basics():
    x = MultiPoly.var(2, 0)
    y = MultiPoly.var(2, 1)
    f = x * x + 3 * y - 1
    assert f((2, 1)) == 4 + 3 - 1
    assert f.diff(0) == 2 * x
    assert f.diff(1) == MultiPoly.const(2, 3)
    assert (f - f).is_zero


def test_multipoly_eval_fractions():
    x = MultiPoly.var(1, 0)
    f = x * x - MultiPoly.const(1, Fraction(1, 4))
    assert f((Fraction(1, 2),)) == 0
