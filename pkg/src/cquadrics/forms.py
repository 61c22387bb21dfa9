"""Symmetric bilinear forms: wedge powers as minor matrices, congruence
diagonalization, and forms induced on subquotients.

A quadric q in Sym^2 V is handled as a symmetric matrix, the Gram matrix of
the induced bilinear form on V^dual (equivalently, the matrix of the
symmetric map V^dual -> V).  The companion interpretation, a form in
Sym^2 V^dual with Gram matrix on V, is tracked by the `on_dual` flag where
it matters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import Matrix, all_minor_levels
from .subspace import Subspace


@dataclass(frozen=True)
class SymForm:
    """A symmetric matrix plus the interpretation of its arguments.

    on_dual=False: element of Sym^2 V, i.e. a form whose arguments are
    covectors (a map V^dual -> V).  on_dual=True: element of Sym^2 V^dual.
    """

    matrix: Matrix
    on_dual: bool = False

    def __post_init__(self):
        if not self.matrix.is_symmetric():
            raise ValueError("SymForm requires an exactly symmetric matrix")

    @property
    def d(self):
        return self.matrix.nrows


def gram_from_terms(d, terms):
    """Gram matrix of sum c * (e_i e_j) from {(i, j): c}, 1-based indices.

    Squares e_i^2 hit the diagonal; cross terms e_i e_j split as c/2 on the
    two symmetric entries.
    """
    g = [[Fraction(0)] * d for _ in range(d)]
    for (i, j), c in terms.items():
        if i == j:
            g[i - 1][j - 1] += Fraction(c)
        else:
            g[i - 1][j - 1] += Fraction(c, 2)
            g[j - 1][i - 1] += Fraction(c, 2)
    return Matrix(g)


def wedge_power(q: Matrix, i: int, trunc=None) -> Matrix:
    """i-th wedge power of a symmetric matrix, the C(d,i) x C(d,i) matrix of
    i x i minors indexed by lexicographic increasing index tuples."""
    d = q.nrows
    if not 1 <= i <= d:
        raise ValueError(f"wedge power index {i} out of range 1..{d}")
    return all_minor_levels(q, max_level=i, trunc=trunc)[i]


def wedge_powers(q: Matrix, trunc=None):
    """All wedge powers 1..d at once (shares minor computations)."""
    return all_minor_levels(q, trunc=trunc)


def congruence_diagonalize(q: Matrix):
    """(P, D) with P invertible and P^T q P = D diagonal, char != 2.

    Pivot rule: first nonzero diagonal entry of the remaining block; if the
    diagonal is zero but the block is not, a row+column addition creates a
    pivot 2a from the first nonzero off-diagonal entry a.
    """
    if not q.is_symmetric():
        raise ValueError("congruence_diagonalize requires a symmetric matrix")
    d = q.nrows
    m = [[Fraction(a) if isinstance(a, int) else a for a in r] for r in q.rows]
    p = [[Fraction(1) if i == j else Fraction(0) for j in range(d)] for i in range(d)]

    def add_col(dst, src, c):
        for r in range(d):
            m[r][dst] += c * m[r][src]
            p[r][dst] += c * p[r][src]

    def add_row(dst, src, c):
        for t in range(d):
            m[dst][t] += c * m[src][t]

    def swap(a, b):
        for r in range(d):
            m[r][a], m[r][b] = m[r][b], m[r][a]
            p[r][a], p[r][b] = p[r][b], p[r][a]
        m[a], m[b] = m[b], m[a]

    for k in range(d):
        piv = next((j for j in range(k, d) if m[j][j] != 0), None)
        if piv is None:
            off = next(
                ((i, j) for i in range(k, d) for j in range(i + 1, d) if m[i][j] != 0),
                None,
            )
            if off is None:
                break
            i, j = off
            add_col(i, j, 1)
            add_row(i, j, 1)
            piv = i
        if piv != k:
            swap(k, piv)
        for j in range(k + 1, d):
            if m[k][j] != 0:
                c = -m[k][j] / m[k][k]
                add_col(j, k, c)
                add_row(j, k, c)
    return Matrix(p), Matrix(m)


def subquotient_form(q: Matrix, F: Subspace, G: Subspace) -> Matrix:
    """Gram matrix of the form induced by q on F/G, on the canonical
    complement basis of G inside F.

    q is given on the ambient space (Gram on coordinate covectors).  The
    result is meaningful when the form actually descends (e.g. q restricted
    to F kills G); descent is the caller's invariant and is what the tests
    exercise.
    """
    comp = F.complement_of(G)
    return comp * q * comp.transpose()


def gram_on_rows(q: Matrix, rows: Matrix) -> Matrix:
    """Gram matrix of q evaluated on the given row vectors."""
    return rows * q * rows.transpose()
