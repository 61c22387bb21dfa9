"""Dense exact linear algebra: matrices, echelon forms, fraction-free
determinants, kernels, and t-adic lowest order terms.

Rows and matrices are immutable tuples.  Determinants use Bareiss
elimination so that matrices over a polynomial ring stay polynomial;
echelon forms divide, so they expect entries from a field (ints are
promoted to Fraction).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .fields import QQ
from .poly import UniPoly, exact_div


class Matrix:
    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(r) for r in rows)
        if self.rows:
            w = len(self.rows[0])
            if any(len(r) != w for r in self.rows):
                raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, m, n):
        return cls(tuple((0,) * n for _ in range(m)))

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def __add__(self, other):
        return Matrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other):
        return Matrix(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self):
        return Matrix(tuple(tuple(-a for a in r) for r in self.rows))

    def scale(self, c):
        return Matrix(tuple(tuple(c * a for a in r) for r in self.rows))

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch in matrix product")
            cols = other.transpose().rows
            return Matrix(
                tuple(
                    tuple(_dot(r, c) for c in cols)
                    for r in self.rows
                )
            )
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def transpose(self):
        return Matrix(tuple(zip(*self.rows))) if self.rows else Matrix(())

    def map(self, fn):
        return Matrix(tuple(tuple(fn(a) for a in r) for r in self.rows))

    def is_symmetric(self):
        if self.nrows != self.ncols:
            return False
        n = self.nrows
        return all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i + 1, n))

    def is_zero(self):
        return all(a == 0 for r in self.rows for a in r)

    def submatrix(self, rows, cols):
        return Matrix(tuple(tuple(self.rows[i][j] for j in cols) for i in rows))

    def stack(self, other):
        if other.nrows == 0:
            return self
        if self.nrows == 0:
            return other
        if self.ncols != other.ncols:
            raise ValueError("shape mismatch in stack")
        return Matrix(self.rows + other.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def det(self):
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return 1
        m = [list(r) for r in self.rows]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return _zero_like(m[k][k])
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                    m[i][j] = exact_div(num, prev) if prev != 1 else num
                m[i][k] = _zero_like(m[i][k])
            prev = m[k][k]
        d = m[n - 1][n - 1]
        return -d if sign < 0 else d

    def rref(self):
        """Reduced row echelon form over the entry field: (Matrix, pivot columns)."""
        m = [[_promote(a) for a in r] for r in self.rows]
        nr, nc = len(m), (len(m[0]) if m else 0)
        pivots = []
        r = 0
        for c in range(nc):
            pr = None
            for i in range(r, nr):
                if m[i][c] != 0:
                    pr = i
                    break
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = m[r][c]
            m[r] = [a / inv for a in m[r]]
            for i in range(nr):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == nr:
                break
        return Matrix(tuple(tuple(row) for row in m)), tuple(pivots)

    def rank(self):
        return len(self.rref()[1])

    def right_kernel(self):
        """Canonical (RREF) basis of {x : M x = 0}, as rows."""
        R, pivots = self.rref()
        nc = self.ncols
        free = [c for c in range(nc) if c not in pivots]
        basis = []
        for f in free:
            v = [_promote(0)] * nc
            v[f] = _promote(1)
            for r, p in enumerate(pivots):
                v[p] = -R.rows[r][f]
            basis.append(v)
        if not basis:
            return Matrix(())
        return Matrix(basis).rref()[0]

    def column_space(self):
        """Canonical (RREF) basis of the column space, as rows."""
        R, pivots = self.transpose().rref()
        return Matrix(R.rows[: len(pivots)])

    def row_space(self):
        R, pivots = self.rref()
        return Matrix(R.rows[: len(pivots)])

    def inverse(self):
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        aug = Matrix(tuple(self.rows[i] + Matrix.identity(n).rows[i] for i in range(n)))
        R, pivots = aug.rref()
        if pivots[:n] != tuple(range(n)):
            raise ValueError("matrix is singular")
        return Matrix(tuple(r[n:] for r in R.rows))

    def solve_left(self, target):
        """Row vector x with x * self == target, or None if unsolvable."""
        aug = self.transpose()
        aug = Matrix(tuple(aug.rows[i] + (target[i],) for i in range(len(target))))
        R, pivots = aug.rref()
        n = self.nrows
        if n in pivots:
            return None
        x = [_promote(0)] * n
        for r, p in enumerate(pivots):
            x[p] = R.rows[r][n]
        return tuple(x)

    def __repr__(self):
        return "Matrix([" + ",\n        ".join(str(list(r)) for r in self.rows) + "])"


def _dot(r, c):
    acc = 0
    for a, b in zip(r, c):
        if a != 0 and b != 0:
            acc = acc + a * b
    return acc


def _promote(a):
    return Fraction(a) if isinstance(a, int) else a


def _zero_like(a):
    return UniPoly() if isinstance(a, UniPoly) else 0


def rank_kernel_image(M: Matrix):
    """(rank, kernel basis rows, image basis rows, reduced row echelon form)."""
    R, pivots = M.rref()
    return len(pivots), M.right_kernel(), M.column_space(), R


def lowest_order(M: Matrix):
    """Minimum t-adic valuation v over the entries and the coefficient of t^v.

    Entries must be UniPoly; the zero matrix is rejected.
    """
    v = None
    for r in M.rows:
        for a in r:
            av = a.valuation if isinstance(a, UniPoly) else (0 if a != 0 else None)
            if av is not None and (v is None or av < v):
                v = av
    if v is None:
        raise ValueError("lowest_order of the zero matrix")
    coeff = M.map(lambda a: a.coeff(v) if isinstance(a, UniPoly) else (a if v == 0 else 0))
    return v, coeff


_COMBO_CACHE = {}


def index_tuples(d, k):
    """Strictly increasing k-tuples from range(d), lexicographically ordered."""
    key = (d, k)
    if key not in _COMBO_CACHE:
        combos = tuple(combinations(range(d), k))
        _COMBO_CACHE[key] = (combos, {c: i for i, c in enumerate(combos)})
    return _COMBO_CACHE[key]


def all_minor_levels(M: Matrix, max_level=None, trunc=None):
    """All i x i minors of M for i = 1..max_level, as matrices indexed by
    lexicographic index tuples.

    Returns a dict {i: Matrix of size C(n,i) x C(n,i)}.  Shares subminor
    computations across levels; `trunc` caps polynomial degrees (valid when
    only lowest-order information at degree <= trunc is needed).
    """
    n = M.nrows
    if M.ncols != n:
        raise ValueError("minors of a non-square matrix")
    if max_level is None:
        max_level = n
    levels = {}
    prev = None
    for k in range(1, max_level + 1):
        combos, cidx = index_tuples(n, k)
        if k == 1:
            cur = {(J, K): M.rows[J[0]][K[0]] for J in combos for K in combos}
        else:
            sub_idx = index_tuples(n, k - 1)[1]
            cur = {}
            for J in combos:
                Jsub = J[:-1]
                last = J[-1]
                row = M.rows[last]
                for K in combos:
                    acc = None
                    for m in range(k):
                        a = row[K[m]]
                        if a == 0:
                            continue
                        s = prev[(Jsub, K[:m] + K[m + 1 :])]
                        if s == 0:
                            continue
                        term = a.mul(s, trunc) if (trunc is not None and isinstance(a, UniPoly)) else a * s
                        if (k - 1 + m) % 2 == 1:
                            term = -term
                        acc = term if acc is None else acc + term
                    cur[(J, K)] = acc if acc is not None else _zero_like(row[K[0]])
            del sub_idx
        levels[k] = Matrix(tuple(tuple(cur[(J, K)] for K in combos) for J in combos))
        prev = cur
    return levels
