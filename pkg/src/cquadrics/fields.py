"""Exact coefficient fields: the rationals and odd prime fields.

Every algorithm in this package is generic over an exact field of
characteristic different from 2.  The default field is QQ (arbitrary
precision rationals via fractions.Fraction, with plain ints allowed as
unreduced synonyms).  A prime field GF(p), p an odd prime, is a drop-in
alternative.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class FpElement:
    """Element of GF(p), stored as the least nonnegative residue."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValueError("mixed prime fields")
            return other.v
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        return FpElement(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        return FpElement(self.v - w, self.p)

    def __rsub__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        return FpElement(w - self.v, self.p)

    def __mul__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        return FpElement(self.v * w, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        return FpElement(self.v * pow(w, -1, self.p), self.p)

    def __rtruediv__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        return FpElement(w * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return FpElement(-self.v, self.p)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v}₍{self.p}₎"


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """GF(p) for an odd prime p."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        self.p = p

    @property
    def zero(self):
        return FpElement(0, self.p)

    @property
    def one(self):
        return FpElement(1, self.p)

    def of(self, n: int):
        return FpElement(n, self.p)

    def parse(self, s: str):
        if "/" in s:
            num, den = s.split("/")
            return self.of(int(num)) / self.of(int(den))
        return self.of(int(s))

    def fmt(self, x) -> str:
        return str(self._val(x))

    def _val(self, x):
        if isinstance(x, FpElement):
            return x.v
        return x % self.p

    def canonical_scale(self, entries):
        """Scalar c such that c*entries has first nonzero entry equal to 1."""
        for e in entries:
            if e != 0:
                return self.one / (e if isinstance(e, FpElement) else self.of(e))
        return self.one

    def normalize(self, x):
        return x if isinstance(x, FpElement) else self.of(x)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class RationalField:
    """The rationals.  Values are Fraction or int."""

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def of(n: int):
        return Fraction(n)

    @staticmethod
    def parse(s: str):
        return Fraction(s)

    @staticmethod
    def fmt(x) -> str:
        f = Fraction(x)
        return f"{f.numerator}/{f.denominator}"

    @staticmethod
    def canonical_scale(entries):
        """Scalar c making c*entries a primitive integer vector, first nonzero positive."""
        den = 1
        for e in entries:
            f = Fraction(e)
            den = den * f.denominator // gcd(den, f.denominator)
        num = 0
        lead = 0
        for e in entries:
            f = Fraction(e)
            n = f.numerator * (den // f.denominator)
            num = gcd(num, n)
            if lead == 0:
                lead = n
        if num == 0:
            return Fraction(1)
        if lead < 0:
            num = -num
        return Fraction(den, num)

    @staticmethod
    def normalize(x):
        f = Fraction(x)
        return f.numerator if f.denominator == 1 else f

    def __repr__(self):
        return "QQ"


QQ = RationalField()
