"""Univariate polynomials in a deformation parameter t, and a small sparse
multivariate polynomial type for chart equations.

UniPoly stores a dense coefficient tuple with no trailing zeros, so the
leading coefficient of a nonzero polynomial is nonzero and the zero
polynomial is the empty tuple.  Coefficients may be ints, Fractions, or
prime field elements; integer inputs stay integers through ring operations.
"""

from __future__ import annotations

from fractions import Fraction


def _strip(coeffs):
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class UniPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _strip(list(coeffs))

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def t_power(cls, k, c=1):
        return cls((0,) * k + (c,))

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def valuation(self):
        """t-adic valuation; None for the zero polynomial."""
        if not self.coeffs:
            return None
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    @property
    def lowest_coeff(self):
        v = self.valuation
        return None if v is None else self.coeffs[v]

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)) or type(other).__name__ == "FpElement":
            return UniPoly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def mul(self, other, trunc=None):
        """Product, optionally dropping all coefficients of degree > trunc."""
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return UniPoly()
        hi = len(a) + len(b) - 1
        if trunc is not None:
            hi = min(hi, trunc + 1)
        out = [0] * hi
        for i, ca in enumerate(a):
            if ca == 0 or i >= hi:
                continue
            stop = min(len(b), hi - i)
            for j in range(stop):
                cb = b[j]
                if cb != 0:
                    out[i + j] = out[i + j] + ca * cb
        return UniPoly(out)

    def __mul__(self, other):
        return self.mul(other)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def truncate(self, order):
        """Representative modulo t^order."""
        return UniPoly(self.coeffs[:order])

    def shift(self, k):
        """Multiply by t^k (k >= 0), or divide exactly by t^{-k} (k < 0)."""
        if k >= 0:
            return UniPoly((0,) * k + self.coeffs) if self.coeffs else self
        if any(c != 0 for c in self.coeffs[:-k]):
            raise ValueError("not divisible by requested power of t")
        return UniPoly(self.coeffs[-k:])

    def exact_div(self, other):
        """Exact polynomial quotient; raises if the division leaves a remainder."""
        o = self._coerce(other)
        if o is None or o.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero:
            return UniPoly()
        rem = list(self.coeffs)
        db, lb = o.degree, o.coeffs[-1]
        if len(rem) - 1 < db:
            raise ValueError("inexact polynomial division")
        out = [0] * (len(rem) - db)
        for k in range(len(out) - 1, -1, -1):
            c = rem[k + db]
            if c == 0:
                continue
            q = _exact_scalar_div(c, lb)
            out[k] = q
            for j, cb in enumerate(o.coeffs):
                if cb != 0:
                    rem[k + j] = rem[k + j] - q * cb
        if any(c != 0 for c in rem):
            raise ValueError("inexact polynomial division")
        return UniPoly(out)

    def series_inverse(self, order):
        """Inverse modulo t^order; the constant term must be invertible."""
        if self.is_zero or self.coeffs[0] == 0:
            raise ZeroDivisionError("series inverse needs a unit constant term")
        c0 = self.coeffs[0]
        inv0 = _scalar_inv(c0)
        out = [0] * order
        out[0] = inv0
        for k in range(1, order):
            acc = 0
            for j in range(1, min(k, len(self.coeffs) - 1) + 1):
                cj = self.coeff(j)
                if cj != 0:
                    acc = acc + cj * out[k - j]
            out[k] = -inv0 * acc
        return UniPoly(out)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(f"{c}")
            elif i == 1:
                parts.append(f"{c}*t")
            else:
                parts.append(f"{c}*t^{i}")
        return " + ".join(parts)


def _scalar_inv(c):
    if isinstance(c, int):
        return Fraction(1, c)
    return 1 / c


def _exact_scalar_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    return a / b


def exact_div(a, b):
    """Exact division in the coefficient ring (Bareiss pivots divide evenly)."""
    if isinstance(a, UniPoly) or isinstance(b, UniPoly):
        a = a if isinstance(a, UniPoly) else UniPoly.const(a)
        return a.exact_div(b)
    q = _exact_scalar_div(a, b)
    if isinstance(q, Fraction) and isinstance(a, int) and isinstance(b, int):
        raise ValueError("inexact integer division in fraction-free elimination")
    return q


class MultiPoly:
    """Sparse multivariate polynomial: exponent tuple -> coefficient."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if c != 0:
                    self.terms[tuple(e)] = c

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @property
    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.nvars, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.nvars, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return MultiPoly(self.nvars)
            return MultiPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def diff(self, i):
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = c * e[i]
        return MultiPoly(self.nvars, out)

    def __call__(self, point):
        acc = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                for _ in range(k):
                    term = term * x
            acc = acc + term
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.nvars, other)
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            mono = "*".join(f"v{i}^{k}" for i, k in enumerate(e) if k)
            c = self.terms[e]
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)
