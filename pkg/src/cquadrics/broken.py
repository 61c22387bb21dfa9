"""Broken quadrics, the exterior-point embedding and its inverse, limits of
one-parameter families, duality, and the affine chart atlas.

A broken quadric on V (= k^d with its standard basis) is a strictly
decreasing flag V^dual = F_0 > F_1 > ... > F_m = 0 together with a full rank
symmetric form on each subquotient F_j/F_{j+1}, each taken up to scalar.
With `on_dual=True` the same data is read on the other side: flag in V,
forms on subquotients of V.

The exterior tuple of a broken quadric is its image in the product of the
projective spaces P Sym^2 Lambda^i V, i = 1..d: the closure of the wedge
embedding q |-> (q, Lambda^2 q, ..., det q) of full rank quadrics.  Limits
of one-parameter families are computed coordinate-wise in that product.
"""

from __future__ import annotations

from .fields import QQ
from .forms import SymForm, gram_on_rows, wedge_powers
from .linalg import Matrix, all_minor_levels, index_tuples, lowest_order
from .poly import UniPoly
from .subspace import Flag, Subspace


class ReconstructionError(ValueError):
    """An exterior tuple is not the point of any broken quadric."""

    def __init__(self, factor_index, message):
        super().__init__(f"factor {factor_index}: {message}")
        self.factor_index = factor_index


class SingularFamilyError(ValueError):
    """A one-parameter family that is identically singular has no limit."""


class NotInPatchError(ValueError):
    """The point lies outside the requested affine chart."""


class TruncationCapError(ValueError):
    """The truncation order needed by the series diagonalization exceeds the cap."""


def canonical_class(m: Matrix, field=QQ) -> Matrix:
    """Canonical projective representative: over QQ a primitive integer
    matrix whose first nonzero entry (row-major) is positive; over a prime
    field, first nonzero entry 1."""
    flat = [a for r in m.rows for a in r]
    c = field.canonical_scale(flat)
    return m.map(lambda a: field.normalize(c * a))


class ExteriorTuple:
    """Canonicalized point of the product of P Sym^2 Lambda^i V, i = 1..d."""

    __slots__ = ("d", "factors", "on_dual", "field")

    def __init__(self, factors, on_dual=False, field=QQ):
        factors = tuple(factors)
        d = factors[0].nrows if factors else 0
        if len(factors) != d:
            raise ValueError("an exterior tuple on k^d must have d factors")
        canon = []
        for i, f in enumerate(factors, start=1):
            size = len(index_tuples(d, i)[0])
            if f.shape != (size, size):
                raise ValueError(f"factor {i} must be {size}x{size}")
            if not f.is_symmetric():
                raise ValueError(f"factor {i} is not symmetric")
            if f.is_zero():
                raise ValueError(f"factor {i} is zero")
            canon.append(canonical_class(f, field))
        self.d = d
        self.factors = tuple(canon)
        self.on_dual = on_dual
        self.field = field

    def __eq__(self, other):
        if not isinstance(other, ExteriorTuple):
            return NotImplemented
        return (self.d, self.on_dual, self.factors) == (other.d, other.on_dual, other.factors)

    def __hash__(self):
        return hash((self.d, self.on_dual, self.factors))

    def __repr__(self):
        return f"ExteriorTuple(d={self.d}, on_dual={self.on_dual})"


class BrokenQuadric:
    """Canonical form: flag with RREF bases; each subquotient form stored as
    the canonical projective representative of its Gram matrix on the
    canonical complement basis."""

    __slots__ = ("d", "flag", "forms", "on_dual", "field")

    def __init__(self, flag: Flag, forms, on_dual=False, field=QQ):
        forms = tuple(forms)
        if len(forms) != flag.num_steps:
            raise ValueError("one form per flag step is required")
        comps = flag.complements()
        canon = []
        for j, (g, comp) in enumerate(zip(forms, comps)):
            r = comp.nrows
            if g.shape != (r, r):
                raise ValueError(f"form {j} has the wrong size for its subquotient")
            if not g.is_symmetric():
                raise ValueError(f"form {j} is not symmetric")
            if g.rank() != r:
                raise ValueError(f"form {j} is not full rank on its subquotient")
            canon.append(canonical_class(g, field))
        self.d = flag.ambient
        self.flag = flag
        self.forms = tuple(canon)
        self.on_dual = on_dual
        self.field = field

    @classmethod
    def from_ambient_forms(cls, flag: Flag, ambient_grams, on_dual=False, field=QQ):
        """Build from forms given as ambient Gram matrices; each is restricted
        to the canonical complement basis of its flag step."""
        comps = flag.complements()
        grams = [gram_on_rows(q, comp) for q, comp in zip(ambient_grams, comps)]
        return cls(flag, grams, on_dual=on_dual, field=field)

    @classmethod
    def unbroken(cls, q: Matrix, on_dual=False, field=QQ):
        d = q.nrows
        flag = Flag([Subspace.full(d), Subspace.zero(d)])
        return cls(flag, (q,), on_dual=on_dual, field=field)

    @property
    def ranks(self):
        return tuple(
            self.flag.steps[j].dim - self.flag.steps[j + 1].dim for j in range(self.flag.num_steps)
        )

    @property
    def is_unbroken(self):
        return self.flag.num_steps == 1

    def __eq__(self, other):
        if not isinstance(other, BrokenQuadric):
            return NotImplemented
        return (self.d, self.on_dual, self.flag, self.forms) == (
            other.d,
            other.on_dual,
            other.flag,
            other.forms,
        )

    def __hash__(self):
        return hash((self.d, self.on_dual, self.flag, self.forms))

    def __repr__(self):
        return f"BrokenQuadric(d={self.d}, ranks={self.ranks}, on_dual={self.on_dual})"


def _as_poly_matrix(q):
    if isinstance(q, SymForm):
        q = q.matrix
    return q.map(lambda a: a if isinstance(a, UniPoly) else UniPoly.const(a))


def _lift_family(bq: BrokenQuadric):
    """One-parameter family q_0 + t q_1 + ... from the canonical lifts.

    Stacking the canonical complements gives an adapted basis A of the flag
    side; the lift of the j-th form is supported on the j-th block in the
    coordinates dual to A, which makes the family block-diagonal there with
    block valuations 0, 1, 2, ...
    """
    comps = bq.flag.complements()
    A = comps[0]
    for c in comps[1:]:
        A = A.stack(c)
    K = A.inverse()
    d = bq.d
    offsets = []
    pos = 0
    for c in comps:
        offsets.append(pos)
        pos += c.nrows
    entries = [[UniPoly() for _ in range(d)] for _ in range(d)]
    for j, (g, c) in enumerate(zip(bq.forms, comps)):
        r = c.nrows
        kcols = [K.col(offsets[j] + a) for a in range(r)]
        for u in range(d):
            for v in range(d):
                acc = 0
                for a in range(r):
                    for b in range(r):
                        gab = g[a, b]
                        if gab != 0:
                            acc = acc + kcols[a][u] * gab * kcols[b][v]
                if acc != 0:
                    entries[u][v] = entries[u][v] + UniPoly.t_power(j, acc)
    return Matrix(entries)


def to_exterior(bq: BrokenQuadric) -> ExteriorTuple:
    """Exterior tuple of a broken quadric: the coordinate-wise limit of the
    wedge powers of its canonical one-parameter lift."""
    q_t = _lift_family(bq)
    vmax = sum(j * r for j, r in enumerate(bq.ranks))
    levels = wedge_powers(q_t, trunc=vmax)
    factors = [lowest_order(levels[i])[1] for i in range(1, bq.d + 1)]
    return ExteriorTuple(factors, on_dual=bq.on_dual, field=bq.field)


def _plucker(rows: Matrix):
    """Vector of maximal minors of an m x d matrix, lex column-tuple order."""
    m, d = rows.shape
    combos, _ = index_tuples(d, m)
    return tuple(rows.submatrix(tuple(range(m)), J).det() for J in combos)


def from_exterior(t: ExteriorTuple) -> BrokenQuadric:
    """Reconstruct the unique broken quadric with the given exterior tuple.

    Ranks and flag steps are recovered level by level: with the previous
    complements stacked as a prefix, pairing the next factor against wedges
    (prefix ^ f) for f in the current flag step recovers the next form up to
    scalar, whose kernel is the next flag step.  The reconstruction is then
    validated by recomputing the exterior tuple.
    """
    d = t.d
    F = Subspace.full(d)
    flag = [F]
    forms = []
    prefix = Matrix(())
    R = 0
    while F.dim > 0:
        fac = t.factors[R]
        basis = F.basis
        wedges = []
        for a in range(basis.nrows):
            stacked = prefix.stack(Matrix((basis.rows[a],)))
            wedges.append(_plucker(stacked))
        W = Matrix(wedges)
        G = W * fac * W.transpose()
        if G.is_zero():
            raise ReconstructionError(R + 1, "factor pairs to zero against the current flag step")
        ker = G.right_kernel()
        if ker.nrows:
            Fnext = Subspace(d, ker * basis)
        else:
            Fnext = Subspace.zero(d)
        if Fnext.dim >= F.dim:
            raise ReconstructionError(R + 1, "no rank drop at this level")
        comp = F.complement_of(Fnext)
        coords = Matrix(tuple(F.coords_of(r) for r in comp.rows))
        gram = coords * G * coords.transpose()
        forms.append(gram)
        flag.append(Fnext)
        prefix = prefix.stack(comp)
        R += F.dim - Fnext.dim
        F = Fnext
    bq = BrokenQuadric(Flag(flag), forms, on_dual=t.on_dual, field=t.field)
    check = to_exterior(bq)
    for i, (a, b) in enumerate(zip(check.factors, t.factors), start=1):
        if a != b:
            raise ReconstructionError(i, "factor is not the wedge point of any broken quadric")
    return bq


def limit_minor(q_t, on_dual=False, field=QQ) -> BrokenQuadric:
    """Limit at t -> 0 of a generically full rank family of quadrics, by
    taking the lowest order term of every wedge power.

    This is the primary limit algorithm; it never leaves the base field.
    """
    M = _as_poly_matrix(q_t)
    if not M.is_symmetric():
        raise ValueError("limit of a non-symmetric family")
    det = M.det()
    if det.is_zero:
        raise SingularFamilyError("the family is singular for every t")
    levels = wedge_powers(M, trunc=det.valuation)
    factors = [lowest_order(levels[i])[1] for i in range(1, M.nrows + 1)]
    return from_exterior(ExteriorTuple(factors, on_dual=on_dual, field=field))


def limit_dvr(q_t, on_dual=False, field=QQ, max_trunc=None) -> BrokenQuadric:
    """Limit at t -> 0 via symmetric elimination over truncated power series.

    Diagonalizes q_t by a congruence over k[[t]] (working modulo t^N,
    N = val det + 1); grouping the diagonal entries by t-valuation yields the
    flag and the subquotient forms directly.  Independent of limit_minor;
    with minimal-valuation pivoting the elimination never needs a field
    extension, so this oracle is total over the base field.
    """
    M = _as_poly_matrix(q_t)
    d = M.nrows
    if not M.is_symmetric():
        raise ValueError("limit of a non-symmetric family")
    det = M.det()
    if det.is_zero:
        raise SingularFamilyError("the family is singular for every t")
    N = det.valuation + 1
    if max_trunc is not None and N > max_trunc:
        raise TruncationCapError(f"needs truncation order {N}, cap is {max_trunc}")

    m = [[M[i, j].truncate(N) for j in range(d)] for i in range(d)]
    p = [[UniPoly.const(1) if i == j else UniPoly() for j in range(d)] for i in range(d)]

    def val(poly):
        v = poly.valuation
        return N if v is None else v

    def add(dst, src, f):
        # column dst += f * column src, and symmetrically for rows; f a series
        for r in range(d):
            m[r][dst] = (m[r][dst] + m[r][src].mul(f, N - 1)).truncate(N)
            p[r][dst] = (p[r][dst] + p[r][src].mul(f, N - 1)).truncate(N)
        for c in range(d):
            m[dst][c] = (m[dst][c] + f.mul(m[src][c], N - 1)).truncate(N)

    def swap(a, b):
        for r in range(d):
            m[r][a], m[r][b] = m[r][b], m[r][a]
            p[r][a], p[r][b] = p[r][b], p[r][a]
        m[a], m[b] = m[b], m[a]

    one = UniPoly.const(1)
    for k in range(d):
        vmin = min(val(m[i][j]) for i in range(k, d) for j in range(k, d))
        if vmin >= N:
            raise AssertionError("trailing block vanished despite nonzero determinant")
        piv = next((j for j in range(k, d) if val(m[j][j]) == vmin), None)
        if piv is None:
            i, j = next(
                (i, j) for i in range(k, d) for j in range(i + 1, d) if val(m[i][j]) == vmin
            )
            add(i, j, one)
            piv = i
        if piv != k:
            swap(k, piv)
        pw = val(m[k][k])
        unit_inv = m[k][k].shift(-pw).series_inverse(N - pw)
        for i in range(k + 1, d):
            if val(m[k][i]) < N:
                f = m[k][i].shift(-pw).mul(unit_inv, N - 1)
                add(i, k, -f)

    vals = [m[i][i].valuation for i in range(d)]
    units = [m[i][i].lowest_coeff for i in range(d)]
    p0 = Matrix(tuple(tuple(p[i][j].coeff(0) for j in range(d)) for i in range(d)))
    p0t = p0.transpose()
    c_inv = p0t  # C = P(0)^{-T}, so C^{-1} = P(0)^T
    c_mat = c_inv.inverse()

    levels = sorted(set(vals))
    flag = [Subspace.full(d)]
    grams = []
    for li, lv in enumerate(levels):
        nxt = [i for i in range(d) if vals[i] > lv]
        if nxt:
            rows = Matrix(tuple(c_inv.rows[i] for i in nxt))
            Fnext = Subspace(d, rows)
        else:
            Fnext = Subspace.zero(d)
        comp = flag[-1].complement_of(Fnext)
        W = comp * c_mat
        lift = Matrix(
            tuple(
                tuple((units[i] if (i == j and vals[i] == lv) else 0) for j in range(d))
                for i in range(d)
            )
        )
        grams.append(W * lift * W.transpose())
        flag.append(Fnext)
    return BrokenQuadric(Flag(flag), grams, on_dual=on_dual, field=field)


def dualize(bq: BrokenQuadric) -> BrokenQuadric:
    """The canonical isomorphism CQ(V) -> CQ(V^dual): on full rank quadrics
    q |-> q^{-1}; in general the flag is replaced by the reversed chain of
    annihilators and each subquotient form by its inverse form on the dual
    subquotient."""
    m = bq.flag.num_steps
    steps = bq.flag.steps
    dual_steps = [s.annihilator() for s in reversed(steps)]
    dflag = Flag(dual_steps)
    dcomps = dflag.complements()
    comps = bq.flag.complements()
    grams = []
    for j in range(m):
        S = dcomps[j]
        Rows = comps[m - 1 - j]
        B = bq.forms[m - 1 - j]
        P = S * Rows.transpose()
        grams.append(P * B.inverse() * P.transpose())
    return BrokenQuadric(dflag, grams, on_dual=not bq.on_dual, field=bq.field)


def change_basis(t: ExteriorTuple, B: Matrix) -> ExteriorTuple:
    """Rewrite an exterior tuple in the basis whose vectors are the rows of B
    (each row expressed in the standard basis)."""
    R = B.inverse().transpose()
    lv = all_minor_levels(R)
    factors = [lv[i] * t.factors[i - 1] * lv[i].transpose() for i in range(1, t.d + 1)]
    return ExteriorTuple(factors, on_dual=t.on_dual, field=t.field)


def tyrrell_point(ys, xs, field=QQ) -> ExteriorTuple:
    """Point of the affine chart with coordinates (y_1..y_{d-1}, x_ij).

    U is unipotent upper triangular with the x entries, D the diagonal with
    entries 1, y_1, y_1 y_2, ...; the i-th factor is U^T D^(i) U on the i-th
    wedge power, where D^(i) is Lambda^i D divided by its leading entry's
    monomial so the (e_1^ ... ^e_i)^2 entry is 1.  All chart values are
    allowed, including zeros.
    """
    ys = tuple(ys)
    d = len(ys) + 1
    xs = tuple(xs)
    if len(xs) != d * (d - 1) // 2:
        raise ValueError("wrong number of x coordinates")
    U = _unipotent(d, xs)
    lv = all_minor_levels(U)
    factors = []
    for i in range(1, d + 1):
        combos, _ = index_tuples(d, i)
        diag = [_chart_diag_entry(J, i, ys) for J in combos]
        LU = lv[i]
        n = len(combos)
        rows = []
        for a in range(n):
            row = []
            for b in range(n):
                acc = 0
                for j in range(n):
                    if diag[j] != 0 and LU[j, a] != 0 and LU[j, b] != 0:
                        acc = acc + LU[j, a] * diag[j] * LU[j, b]
                row.append(acc)
            rows.append(row)
        factors.append(Matrix(rows))
    return ExteriorTuple(factors, on_dual=False, field=field)


def _div(a, b):
    from fractions import Fraction

    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def _unipotent(d, xs):
    rows = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    k = 0
    for i in range(d):
        for j in range(i + 1, d):
            rows[i][j] = xs[k]
            k += 1
    return Matrix(rows)


def _chart_diag_entry(J, i, ys):
    acc = 1
    for m in range(1, len(ys) + 1):
        e = sum(1 for l in J if l >= m) - max(i - m, 0)
        for _ in range(e):
            acc = acc * ys[m - 1]
    return acc


def tyrrell_membership(t: ExteriorTuple, basis: Matrix | None = None) -> bool:
    """Whether the point lies in the chart of the given ordered basis: every
    factor must have a nonzero entry at (e_1^...^e_i)^2, i.e. a nonzero
    top-left principal minor at every level."""
    if basis is not None:
        t = change_basis(t, basis)
    return all(f[0, 0] != 0 for f in t.factors)


def tyrrell_coords(bq_or_tuple, basis: Matrix | None = None):
    """Chart coordinates (ys, xs) of a point, solved by sequentially
    normalizing principal minors; raises NotInPatchError off the chart."""
    t = bq_or_tuple if isinstance(bq_or_tuple, ExteriorTuple) else to_exterior(bq_or_tuple)
    if basis is not None:
        t = change_basis(t, basis)
    if not tyrrell_membership(t):
        raise NotInPatchError("a top-left principal minor vanishes")
    d = t.d
    hats = [f.map(lambda a, top=f[0, 0]: _div(a, top)) for f in t.factors]
    xs = []
    for i in range(1, d):
        combos, cidx = index_tuples(d, i)
        for mcol in range(i, d):
            K = tuple(range(i - 1)) + (mcol,)
            xs.append(hats[i - 1][0, cidx[K]])
    U = _unipotent(d, xs)
    lv = all_minor_levels(U)
    ys = []
    for i in range(1, d):
        LUinv = lv[i].inverse()
        D = LUinv.transpose() * hats[i - 1] * LUinv
        ys.append(D[1, 1])
    got = tyrrell_point(ys, xs, field=t.field)
    if got != t:
        raise NotInPatchError("point is not of chart form")
    return tuple(ys), tuple(xs)
