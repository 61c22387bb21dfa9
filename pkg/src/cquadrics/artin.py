"""Finite local algebras and modules as commuting matrices: Macaulay-style
inverse system constructor, power and socle filtrations, Hilbert functions,
Iarrobino's symmetric decomposition, and the associated graded algebra.

An ArtinModule is a tuple of commuting matrices acting on k^D; an
ArtinAlgebra adds a cyclic vector, so every filtration in sight becomes
exact kernel/image linear algebra.  Elements are row vectors; a matrix X
acts on the element w as the column action X w^T, i.e. w |-> w X^T on rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .fields import QQ
from .linalg import Matrix
from .subspace import Subspace


@dataclass(frozen=True)
class Diagnostics:
    """Validation outcome with exact witnesses on failure."""

    commuting: bool
    commuting_witness: tuple | None
    nilpotent: bool
    nilpotent_witness: int | None
    cyclic: bool | None

    @property
    def ok(self):
        return self.commuting and self.nilpotent and self.cyclic is not False


class ArtinModule:
    """Commuting matrices X_1..X_n on k^D."""

    def __init__(self, mats, check=True):
        self.mats = tuple(mats)
        if not self.mats:
            raise ValueError("at least one matrix is required")
        self.dim = self.mats[0].nrows
        for X in self.mats:
            if X.shape != (self.dim, self.dim):
                raise ValueError("all matrices must be square of equal size")
        if check:
            for i in range(len(self.mats)):
                for j in range(i + 1, len(self.mats)):
                    if not (self.mats[i] * self.mats[j] - self.mats[j] * self.mats[i]).is_zero():
                        raise ValueError(f"matrices {i} and {j} do not commute")

    @property
    def nvars(self):
        return len(self.mats)

    def act(self, i, rows: Matrix) -> Matrix:
        """Image of row vectors under the i-th generator."""
        return rows * self.mats[i].transpose()


class ArtinAlgebra(ArtinModule):
    """Commuting matrices plus a cyclic vector; multiplication is recovered
    from the matrices through the cyclic presentation."""

    def __init__(self, mats, cyclic, check=True):
        super().__init__(mats, check=check)
        self.cyclic = tuple(cyclic)
        if len(self.cyclic) != self.dim:
            raise ValueError("cyclic vector has the wrong length")
        self._adapted = None
        self._cyclic_basis = None
        self._ops = None

    def monomial_vector(self, exps):
        w = Matrix((self.cyclic,))
        for i, e in enumerate(exps):
            for _ in range(e):
                w = self.act(i, w)
        return w.rows[0]

    def cyclic_basis(self):
        """Monomial basis X^gamma v chosen greedily by (degree, lex); only
        needs cyclicity, not support at the origin.  Returns
        (exponents, T, T^{-1}) with basis vectors as the rows of T."""
        if self._cyclic_basis is not None:
            return self._cyclic_basis
        span = Subspace.zero(self.dim)
        exps_list, rows = [], []
        deg_vectors = {(0,) * self.nvars: tuple(self.cyclic)}
        deg = 0
        while span.dim < self.dim:
            added = False
            for gamma in sorted(deg_vectors):
                w = deg_vectors[gamma]
                grown = span.sum(Subspace(self.dim, (w,)))
                if grown.dim > span.dim:
                    span = grown
                    exps_list.append(gamma)
                    rows.append(w)
                    added = True
            if span.dim == self.dim:
                break
            if not added and deg > self.dim:
                raise ValueError("vector is not cyclic for the action")
            deg += 1
            nxt = {}
            for exps in sorted(combinations_with_replacement(range(self.nvars), deg)):
                gamma = [0] * self.nvars
                for v in exps:
                    gamma[v] += 1
                gamma = tuple(gamma)
                j = next(k for k, e in enumerate(gamma) if e)
                prev = tuple(g - (1 if k == j else 0) for k, g in enumerate(gamma))
                nxt[gamma] = self.act(j, Matrix((deg_vectors[prev],))).rows[0]
            deg_vectors = nxt
        T = Matrix(rows)
        self._cyclic_basis = (tuple(exps_list), T, T.inverse())
        return self._cyclic_basis

    def adapted_basis(self):
        """Monomial basis adapted to the powers of the maximal ideal.

        Returns (exponents, T, weights): T's rows are the basis vectors
        X^gamma v, chosen degree by degree so that the degree-i picks span
        m^i modulo m^{i+1}; weights are the degrees.  Requires the action to
        be nilpotent with support at the origin and the vector to be cyclic.
        """
        if self._adapted is not None:
            return self._adapted
        powers = power_filtration(self)
        s = len(powers) - 2  # powers = [m^0, ..., m^{s+1} = 0]
        exps_list = []
        rows = []
        weights = []
        deg_vectors = {(0,) * self.nvars: tuple(self.cyclic)}
        for i in range(s + 1):
            target = powers[i].dim - (powers[i + 1].dim if i + 1 < len(powers) else 0)
            if i > 0:
                nxt = {}
                for exps in sorted(combinations_with_replacement(range(self.nvars), i)):
                    gamma = [0] * self.nvars
                    for v in exps:
                        gamma[v] += 1
                    gamma = tuple(gamma)
                    j = next(k for k, e in enumerate(gamma) if e)
                    prev = tuple(g - (1 if k == j else 0) for k, g in enumerate(gamma))
                    w = self.act(j, Matrix((deg_vectors[prev],))).rows[0]
                    nxt[gamma] = w
                deg_vectors = nxt
            floor = powers[i + 1] if i + 1 < len(powers) else Subspace.zero(self.dim)
            span = floor
            picked = 0
            for gamma in sorted(deg_vectors):
                if picked == target:
                    break
                w = deg_vectors[gamma]
                grown = span.sum(Subspace(self.dim, (w,)))
                if grown.dim > span.dim:
                    span = grown
                    exps_list.append(gamma)
                    rows.append(w)
                    weights.append(i)
                    picked += 1
            if picked != target:
                raise ValueError("vector is not cyclic for the action")
        T = Matrix(rows)
        self._adapted = (tuple(exps_list), T, tuple(weights), T.inverse())
        return self._adapted

    def coords_in_adapted(self, w):
        _, _, _, Tinv = self.adapted_basis()
        return (Matrix((w,)) * Tinv).rows[0]

    def _basis_ops(self):
        if self._ops is None:
            exps_list, _, _ = self.cyclic_basis()
            ops = []
            for gamma in exps_list:
                op = Matrix.identity(self.dim)
                for i, e in enumerate(gamma):
                    for _ in range(e):
                        op = self.mats[i] * op
                ops.append(op)
            self._ops = tuple(ops)
        return self._ops

    def mult_operator(self, a) -> Matrix:
        """Matrix of multiplication by the element with row vector a."""
        _, _, Tinv = self.cyclic_basis()
        coords = (Matrix((a,)) * Tinv).rows[0]
        ops = self._basis_ops()
        acc = Matrix.zero(self.dim, self.dim)
        for c, op in zip(coords, ops):
            if c != 0:
                acc = acc + op.scale(c)
        return acc

    def multiply(self, a, b):
        return tuple((Matrix((b,)) * self.mult_operator(a).transpose()).rows[0])


def validate(mats, cyclic=None) -> Diagnostics:
    """Commutativity, nilpotency, and (when a vector is given) cyclicity
    checks; never raises, returns witnesses instead."""
    mats = tuple(mats)
    d = mats[0].nrows
    comm_witness = None
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if not (mats[i] * mats[j] - mats[j] * mats[i]).is_zero():
                comm_witness = (i, j)
                break
        if comm_witness:
            break
    nil_witness = None
    for i, X in enumerate(mats):
        P = Matrix.identity(d)
        for _ in range(d):
            P = P * X
        if not P.is_zero():
            nil_witness = i
            break
    cyc = None
    if cyclic is not None and comm_witness is None:
        span = Subspace(d, (tuple(cyclic),))
        while True:
            grown = span
            for X in mats:
                grown = grown.sum(Subspace(d, span.basis * X.transpose()))
            if grown.dim == span.dim:
                break
            span = grown
        cyc = span.dim == d
    return Diagnostics(comm_witness is None, comm_witness, nil_witness is None, nil_witness, cyc)


def power_filtration(mod: ArtinModule):
    """Subspaces m^0 M >= m^1 M >= ... down to zero; raises if the chain
    stabilizes at a nonzero subspace (action not supported at the origin)."""
    cur = Subspace.full(mod.dim)
    out = [cur]
    while cur.dim > 0:
        nxt = Subspace.zero(mod.dim)
        for i in range(mod.nvars):
            nxt = nxt.sum(Subspace(mod.dim, mod.act(i, cur.basis)))
        if nxt.dim == cur.dim:
            raise ValueError("action is not nilpotent: power filtration stabilizes above zero")
        out.append(nxt)
        cur = nxt
    return out


def loewy_filtration(mod: ArtinModule):
    """Subspaces (0 : m^j) for j = 0, 1, ... up to the full space."""
    out = [Subspace.zero(mod.dim)]
    d = mod.dim
    while out[-1].dim < d:
        prev = out[-1]
        ann = prev.annihilator().basis
        rows = []
        for X in mod.mats:
            block = X.transpose() * ann.transpose()  # condition (w X^T) . a = 0
            for c in range(block.ncols):
                rows.append(block.col(c))
        nxt = Matrix(rows).right_kernel() if rows else Matrix.identity(d)
        sub = Subspace(d, nxt)
        if sub.dim == prev.dim:
            raise ValueError("action is not nilpotent: socle filtration stabilizes")
        out.append(sub)
    return out


def socle_degree(mod: ArtinModule) -> int:
    return len(power_filtration(mod)) - 2


def hilbert_function(mod: ArtinModule):
    powers = power_filtration(mod)
    return tuple(powers[i].dim - powers[i + 1].dim for i in range(len(powers) - 1))


@dataclass(frozen=True)
class SymDecomp:
    """Iarrobino's symmetric decomposition: socle degree, the table
    Delta_delta(i), and bases of the graded pieces Q(delta)_i.

    The table has rows delta = 0..s; for a Gorenstein algebra with s >= 2 the
    top two rows vanish.  Bases are representative row vectors in the ambient
    presentation.
    """

    s: int
    hilbert: tuple
    delta: tuple  # delta[d] = tuple over i = 0..s
    bases: dict  # (delta, i) -> Matrix of representative rows

    def delta_row(self, d):
        return self.delta[d]


def _phi_gram(algebra_or_phi, alpha, rows_a: Matrix, rows_b: Matrix):
    if alpha is not None:
        A = algebra_or_phi
        out = []
        for u in rows_a.rows:
            op = A.mult_operator(u)
            arow = (Matrix((alpha,)) * op).rows[0]
            out.append(tuple(sum(x * y for x, y in zip(arow, w)) for w in rows_b.rows))
        return Matrix(out)
    phi = algebra_or_phi
    return rows_a * phi * rows_b.transpose()


def symmetric_decomposition(mod: ArtinModule, alpha=None, form: Matrix | None = None) -> SymDecomp:
    """Symmetric decomposition of the Hilbert function.

    For an algebra, pass the orientation functional `alpha` (row vector); for
    a self-dual module, pass the action-linear symmetric `form`.  The
    self-duality certificate is checked: whatever pairing is supplied must be
    nondegenerate, and it must pair Q(delta)_i perfectly with
    Q(delta)_{s - delta - i}.
    """
    d = mod.dim
    powers = power_filtration(mod)
    loewy = loewy_filtration(mod)
    s = len(powers) - 2

    def m_pow(i):
        return powers[i] if i < len(powers) else Subspace.zero(d)

    def ann(j):
        if j <= 0:
            return Subspace.zero(d)
        return loewy[j] if j < len(loewy) else Subspace.full(d)

    pairing = None
    if alpha is not None:
        if not isinstance(mod, ArtinAlgebra):
            raise ValueError("a functional orientation needs an algebra")
        phi_rows = []
        for a in range(d):
            e = tuple(1 if k == a else 0 for k in range(d))
            op = mod.mult_operator(e)
            phi_rows.append((Matrix((alpha,)) * op).rows[0])
        phi = Matrix(phi_rows)
        if phi.rank() != d:
            raise ValueError("not self-dual: the functional pairing is degenerate")
        pairing = phi
    elif form is not None:
        if not form.is_symmetric() or form.rank() != d:
            raise ValueError("not self-dual: the form must be symmetric nondegenerate")
        for idx, X in enumerate(mod.mats):
            if not (form * X - X.transpose() * form).is_zero():
                raise ValueError(f"form is not linear over generator {idx}")
        pairing = form
    else:
        socle = loewy[1] if len(loewy) > 1 else Subspace.zero(d)
        if isinstance(mod, ArtinAlgebra) and socle.dim != 1:
            raise ValueError("not Gorenstein: the socle is not one dimensional")

    delta_rows = []
    bases = {}
    for dl in range(s + 1):
        row = []
        for i in range(s + 1):
            N = m_pow(i).intersect(ann(s - i - dl + 1))
            D1 = m_pow(i + 1).intersect(ann(s - i - dl + 1))
            D2 = m_pow(i).intersect(ann(s - i - dl))
            Dsum = D1.sum(D2)
            row.append(N.dim - Dsum.dim)
            bases[(dl, i)] = N.complement_of(Dsum)
        delta_rows.append(tuple(row))

    hilbert = hilbert_function(mod)
    total = [sum(delta_rows[dl][i] for dl in range(s + 1)) for i in range(s + 1)]
    if tuple(total) != hilbert:
        raise AssertionError("decomposition does not sum to the Hilbert function")
    for dl in range(s + 1):
        for i in range(s + 1):
            j = s - dl - i
            expect = delta_rows[dl][j] if 0 <= j <= s else 0
            if delta_rows[dl][i] != expect:
                raise AssertionError("decomposition table is not symmetric")
    if pairing is not None:
        for dl in range(s + 1):
            for i in range(s + 1):
                j = s - dl - i
                if delta_rows[dl][i] == 0 or not 0 <= j <= s:
                    continue
                g = _phi_gram(mod if alpha is not None else pairing, alpha, bases[(dl, i)], bases[(dl, j)])
                if g.rank() != delta_rows[dl][i]:
                    raise AssertionError("duality pairing is degenerate on a graded piece")
    return SymDecomp(s, hilbert, tuple(delta_rows), bases)


def _poly_diff(p, i):
    out = {}
    for e, c in p.items():
        if e[i] == 0:
            continue
        e2 = list(e)
        e2[i] -= 1
        out[tuple(e2)] = c * e[i]
    return out


def apolar_algebra(F: dict, nvars: int):
    """Algebra k[x_1..x_n]/Ann(F) presented on the span of the iterated
    partial derivatives of F, with multiplication matrices the derivative
    operators, cyclic vector the class of 1 (the coordinates of F itself),
    and orientation the constant-coefficient functional.

    Ordinary derivatives: characteristic zero only.  Returns
    (ArtinAlgebra, alpha).
    """
    F = {tuple(e): Fraction(c) for e, c in F.items() if c != 0}
    if not F:
        raise ValueError("the inverse system of the zero polynomial is empty")
    if any(len(e) != nvars for e in F):
        raise ValueError("exponent length does not match the variable count")
    layer = {(0,) * nvars: F}
    polys = [F]
    while layer:
        nxt = {}
        for beta, p in layer.items():
            for i in range(nvars):
                b2 = tuple(e + (1 if k == i else 0) for k, e in enumerate(beta))
                if b2 in nxt:
                    continue
                q = _poly_diff(p, i)
                if q:
                    nxt[b2] = q
        polys.extend(nxt.values())
        layer = nxt
    monomials = sorted({e for p in polys for e in p})
    midx = {e: k for k, e in enumerate(monomials)}
    rows = []
    for p in polys:
        r = [Fraction(0)] * len(monomials)
        for e, c in p.items():
            r[midx[e]] = c
        rows.append(r)
    W = Matrix(rows).row_space()
    D = W.nrows
    _, pivots = W.rref()

    def coords(vec):
        return tuple(vec[p] for p in pivots)

    basis_polys = [{monomials[k]: c for k, c in enumerate(r) if c != 0} for r in W.rows]
    mats = []
    for i in range(nvars):
        cols = []
        for bp in basis_polys:
            q = _poly_diff(bp, i)
            vec = [Fraction(0)] * len(monomials)
            for e, c in q.items():
                vec[midx[e]] = c
            cols.append(coords(vec))
        mats.append(Matrix(cols).transpose())
    fvec = [Fraction(0)] * len(monomials)
    for e, c in F.items():
        fvec[midx[e]] = c
    v = coords(fvec)
    alpha = tuple(bp.get((0,) * nvars, Fraction(0)) for bp in basis_polys)
    return ArtinAlgebra(mats, v), alpha


def assoc_graded(A: ArtinAlgebra):
    """Associated graded algebra on the adapted monomial basis: the induced
    action keeps only the weight-raising block of each generator.  Returns
    (graded ArtinAlgebra, weights); the Hilbert function is preserved."""
    _, T, weights, Tinv = A.adapted_basis()
    gr_mats = []
    for X in A.mats:
        conj = Tinv.transpose() * X * T.transpose()
        rows = [
            [conj[i, j] if weights[i] == weights[j] + 1 else 0 for j in range(A.dim)]
            for i in range(A.dim)
        ]
        gr_mats.append(Matrix(rows))
    v = tuple(1 if i == 0 else 0 for i in range(A.dim))
    return ArtinAlgebra(gr_mats, v), weights


def orientation_to_quadric(A: ArtinAlgebra, alpha):
    """Pairing Phi(a, b) = alpha(a b) as a matrix A -> A^dual and its inverse
    quadric q; q is checked to be compatible with every generator."""
    d = A.dim
    phi_rows = []
    for a in range(d):
        e = tuple(1 if k == a else 0 for k in range(d))
        op = A.mult_operator(e)
        phi_rows.append((Matrix((alpha,)) * op).rows[0])
    phi = Matrix(phi_rows)
    if not phi.is_symmetric():
        raise AssertionError("multiplication pairing failed to be symmetric")
    if phi.rank() != d:
        raise ValueError("not an orientation: the pairing is degenerate")
    q = phi.inverse()
    for idx, X in enumerate(A.mats):
        if not (X * q - q * X.transpose()).is_zero():
            raise AssertionError(f"orientation quadric is not compatible with generator {idx}")
    return phi, q
