"""(Anti)compatibility of endomorphisms with broken quadrics: fiber spaces
of the compatible/anticompatible bundles, the chart equations cutting the
compatibility locus, tangent dimensions, and the fiber points over a single
Jordan block.

Conventions: an endomorphism x of V is a matrix acting on column vectors.
For a broken quadric on V (flag in V^dual, covectors as rows) the transpose
action phi |-> phi * x must preserve the flag; for an `on_dual` broken
quadric (flag in V) the direct action v |-> x v must.  The induced map on a
subquotient with complement basis S and form Gram B is compatible iff M B is
symmetric and anticompatible iff M B is antisymmetric, where M is the matrix
of the induced action on S-classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .broken import BrokenQuadric
from .fields import QQ
from .linalg import Matrix
from .poly import MultiPoly
from .subspace import Flag, Subspace


def _row_action(X: Matrix, on_dual: bool):
    M = X.transpose() if on_dual else X
    return lambda row: (Matrix((row,)) * M).rows[0]


class _StepData:
    """Per-step coordinate extraction for induced subquotient maps."""

    def __init__(self, bq: BrokenQuadric, j: int):
        flag = bq.flag
        self.comp = flag.steps[j].complement_of(flag.steps[j + 1])
        T = self.comp.stack(flag.steps[j + 1].basis)
        _, pivots = T.rref()
        self.pivots = pivots
        self.Tinv = T.submatrix(tuple(range(T.nrows)), pivots).inverse()
        self.r = self.comp.nrows

    def induced_row(self, w):
        """Coordinates of w on the complement classes (valid for w in F_j)."""
        wj = Matrix(((tuple(w[p] for p in self.pivots)),))
        return (wj * self.Tinv).rows[0][: self.r]


def _flag_preserved(X: Matrix, bq: BrokenQuadric):
    act = _row_action(X, bq.on_dual)
    for sub in bq.flag.steps[1:-1]:
        for row in sub.basis.rows:
            if not sub.contains_vector(act(row)):
                return False
    return True


def _induced_maps(X: Matrix, bq: BrokenQuadric, steps=None):
    act = _row_action(X, bq.on_dual)
    steps = steps or [_StepData(bq, j) for j in range(bq.flag.num_steps)]
    out = []
    for st in steps:
        rows = [st.induced_row(act(row)) for row in st.comp.rows]
        out.append(Matrix(rows))
    return out


def _symmetry_ok(M: Matrix, B: Matrix, sign: int) -> bool:
    MB = M * B
    return (MB - Matrix(MB.transpose().rows).scale(sign)).is_zero()


def is_compatible(X: Matrix, bq: BrokenQuadric) -> bool:
    """True iff x preserves the flag and every induced subquotient map is
    symmetric with respect to the subquotient form."""
    if X.shape != (bq.d, bq.d):
        raise ValueError("endomorphism dimension does not match the quadric")
    if not _flag_preserved(X, bq):
        return False
    return all(_symmetry_ok(M, B, 1) for M, B in zip(_induced_maps(X, bq), bq.forms))


def is_anticompatible(X: Matrix, bq: BrokenQuadric) -> bool:
    """Same flag condition, with antisymmetric induced maps."""
    if X.shape != (bq.d, bq.d):
        raise ValueError("endomorphism dimension does not match the quadric")
    if not _flag_preserved(X, bq):
        return False
    return all(_symmetry_ok(M, B, -1) for M, B in zip(_induced_maps(X, bq), bq.forms))


@dataclass(frozen=True)
class OperatorSpace:
    """Linear subspace of End(V) with a canonical echelon basis."""

    d: int
    basis: tuple

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, X: Matrix) -> bool:
        flat = Matrix(tuple(tuple(a for r in b.rows for a in r) for b in self.basis))
        v = tuple(a for r in X.rows for a in r)
        return Subspace(self.d * self.d, flat).contains_vector(v) if self.basis else X.is_zero()


def _entry_index(d, r, c, on_dual):
    # variable index of X[r][c]; the on_dual action phi -> phi X^T reads X[c][r]
    return (c * d + r) if on_dual else (r * d + c)


def _space(bq: BrokenQuadric, sign: int) -> OperatorSpace:
    d = bq.d
    n2 = d * d
    rows = []
    # flag invariance: (phi . X) annihilated by Ann(F_i) for each proper step
    for sub in bq.flag.steps[1:-1]:
        ann = sub.annihilator().basis
        for phi in sub.basis.rows:
            for a in ann.rows:
                row = [Fraction(0)] * n2
                for r in range(d):
                    if phi[r] == 0:
                        continue
                    for c in range(d):
                        if a[c] != 0:
                            row[_entry_index(d, r, c, bq.on_dual)] += Fraction(phi[r]) * Fraction(a[c])
                rows.append(row)
    # per-step (anti)symmetry of the induced map against the subquotient form
    steps = [_StepData(bq, j) for j in range(bq.flag.num_steps)]
    for st, B in zip(steps, bq.forms):
        r = st.r
        # L[a][b] = linear functional giving M[a][b]
        L = [[[Fraction(0)] * n2 for _ in range(r)] for _ in range(r)]
        for a in range(r):
            s = st.comp.rows[a]
            for pos, p in enumerate(st.pivots):
                for rr in range(d):
                    if s[rr] == 0:
                        continue
                    for b in range(r):
                        coef = Fraction(s[rr]) * Fraction(st.Tinv[pos, b])
                        if coef:
                            L[a][b][_entry_index(d, rr, p, bq.on_dual)] += coef
        pairs = (
            [(a, b) for a in range(r) for b in range(a + 1, r)]
            if sign > 0
            else [(a, b) for a in range(r) for b in range(a, r)]
        )
        for a, b in pairs:
            row = [Fraction(0)] * n2
            for c in range(r):
                if B[c, b] != 0:
                    for k in range(n2):
                        if L[a][c][k]:
                            row[k] += L[a][c][k] * Fraction(B[c, b])
                if B[c, a] != 0:
                    for k in range(n2):
                        if L[b][c][k]:
                            row[k] -= sign * L[b][c][k] * Fraction(B[c, a])
            rows.append(row)
    kernel = Matrix(rows).right_kernel() if rows else Matrix.identity(n2)
    basis = tuple(
        Matrix(tuple(tuple(v[i * d + j] for j in range(d)) for i in range(d))) for v in kernel.rows
    )
    return OperatorSpace(d, basis)


def compatible_space(bq: BrokenQuadric) -> OperatorSpace:
    """Canonical basis of the endomorphisms compatible with bq; its dimension
    is C(d+1,2) for every broken quadric."""
    return _space(bq, 1)


def anticompatible_space(bq: BrokenQuadric) -> OperatorSpace:
    """Canonical basis of the anticompatible endomorphisms, of dimension
    C(d,2); the trace-orthogonal complement of the compatible space."""
    return _space(bq, -1)


def commutator_check(action):
    for i in range(len(action)):
        for j in range(i + 1, len(action)):
            if not (action[i] * action[j] - action[j] * action[i]).is_zero():
                return (i, j)
    return None


@dataclass(frozen=True)
class GradedReport:
    """Outcome of checking that a broken quadric makes the associated graded
    module self-dual for a commuting action: flag steps must be submodules
    and each form must intertwine the induced actions."""

    ok: bool
    subspace_invariant: tuple  # [proper step][generator] -> bool
    form_intertwines: tuple  # [level][generator] -> bool
    graded_action: tuple  # [level][generator] -> Matrix or None


def selfdual_graded_report(action, bq: BrokenQuadric) -> GradedReport:
    bad = commutator_check(action)
    if bad is not None:
        raise ValueError(f"generators {bad[0]} and {bad[1]} do not commute")
    acts = [_row_action(X, bq.on_dual) for X in action]
    sub_inv = []
    for sub in bq.flag.steps[1:-1]:
        sub_inv.append(
            tuple(all(sub.contains_vector(act(row)) for row in sub.basis.rows) for act in acts)
        )
    steps = [_StepData(bq, j) for j in range(bq.flag.num_steps)]
    intertwines = []
    graded = []
    for j, (st, B) in enumerate(zip(steps, bq.forms)):
        lev_ok = []
        lev_m = []
        for k, X in enumerate(action):
            invariant_here = all(
                sub_inv[i][k] for i in range(len(sub_inv))
            )  # induced map only meaningful if the whole flag is preserved
            M = Matrix([st.induced_row(acts[k](row)) for row in st.comp.rows])
            if invariant_here:
                lev_ok.append(_symmetry_ok(M, B, 1))
                lev_m.append(M)
            else:
                lev_ok.append(False)
                lev_m.append(None)
        intertwines.append(tuple(lev_ok))
        graded.append(tuple(lev_m))
    ok = all(all(t) for t in sub_inv) and all(all(t) for t in intertwines)
    return GradedReport(ok, tuple(sub_inv), tuple(intertwines), tuple(graded))


def companion_matrix(coeffs) -> Matrix:
    """Multiplication by x on k[x]/(x^d + a_{d-1} x^{d-1} + ... + a_0), in the
    monomial basis 1, x, ..., x^{d-1}."""
    a = list(coeffs)
    d = len(a)
    rows = [[0] * d for _ in range(d)]
    for i in range(d - 1):
        rows[i + 1][i] = 1
    for i in range(d):
        rows[i][d - 1] = -a[i]
    return Matrix(rows)


def is_companion(X: Matrix) -> bool:
    d = X.nrows
    if X.ncols != d:
        return False
    for i in range(d):
        for j in range(d - 1):
            want = 1 if i == j + 1 else 0
            if X[i, j] != want:
                return False
    return True


def _chart_vars(d, companion):
    names = [f"y{i}" for i in range(1, d)]
    names += [f"x{i}{j}" for i in range(1, d + 1) for j in range(i + 1, d + 1)]
    if companion:
        names += [f"a{i}" for i in range(d)]
    return names


def _mp_matrix_mul(A, B, nvars):
    n = len(A)
    out = [[MultiPoly(nvars) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for k in range(n):
            a = A[i][k]
            if isinstance(a, MultiPoly) and a.is_zero:
                continue
            if not isinstance(a, MultiPoly) and a == 0:
                continue
            for j in range(n):
                b = B[k][j]
                if isinstance(b, MultiPoly) and b.is_zero:
                    continue
                if not isinstance(b, MultiPoly) and b == 0:
                    continue
                out[i][j] = out[i][j] + (a * b if isinstance(a, MultiPoly) or isinstance(b, MultiPoly) else MultiPoly.const(nvars, a * b))
    return out


@dataclass(frozen=True)
class ChartSystem:
    """Polynomial system cutting the compatibility locus inside a chart.

    Variables are ordered y_1..y_{d-1}, x_12..x_{d-1,d}, then (optionally)
    the d monic-family coefficients of a single companion generator.  There
    is one equation per generator and per pair i<j: the trace pairing of the
    generator against the transported anticompatible frame element.
    """

    d: int
    ngens: int
    var_names: tuple
    polys: tuple
    companion: bool

    @property
    def nvars(self):
        return len(self.var_names)

    @property
    def n_chart_vars(self):
        return (self.d - 1) + self.d * (self.d - 1) // 2

    def full_point(self, ys, xs, avals=None):
        pt = list(ys) + list(xs)
        if self.companion:
            if avals is None:
                raise ValueError("this system needs the companion coefficients")
            pt += list(avals)
        if len(pt) != self.nvars:
            raise ValueError("wrong number of coordinates")
        return tuple(pt)

    def evaluate(self, point):
        return tuple(p(point) for p in self.polys)

    def jacobian(self, point) -> Matrix:
        return Matrix(
            tuple(tuple(p.diff(i)(point) for i in range(self.nvars)) for p in self.polys)
        )


def _anticompatible_frame(d, nvars):
    """The matrices A_ij(y, x) = U^{-1} M_ij(y) U spanning the anticompatible
    bundle over the chart, as MultiPoly matrices.

    M_ij has (i,j) entry y_i...y_{j-1} and (j,i) entry -1; the convention is
    pinned by the identity M^T Q = -Q M against the chart quadric Q and is
    validated pointwise by the compatibility cross-checks in the tests.
    """
    zero = MultiPoly(nvars)
    one = MultiPoly.const(nvars, 1)
    U = [[zero for _ in range(d)] for _ in range(d)]
    N = [[zero for _ in range(d)] for _ in range(d)]
    k = d - 1
    for i in range(d):
        U[i][i] = one
        for j in range(i + 1, d):
            v = MultiPoly.var(nvars, k)
            U[i][j] = v
            N[i][j] = v
            k += 1
    # U^{-1} = 1 - N + N^2 - ... for the strictly upper triangular N
    Uinv = [[one if i == j else zero for j in range(d)] for i in range(d)]
    power = [row[:] for row in N]
    sign = -1
    for _ in range(d - 1):
        for i in range(d):
            for j in range(d):
                Uinv[i][j] = Uinv[i][j] + power[i][j] * sign
        power = _mp_matrix_mul(power, N, nvars)
        sign = -sign
    frames = []
    for i in range(d):
        for j in range(i + 1, d):
            M = [[zero for _ in range(d)] for _ in range(d)]
            mono = one
            for m in range(i, j):
                mono = mono * MultiPoly.var(nvars, m)
            M[i][j] = mono
            M[j][i] = MultiPoly.const(nvars, -1)
            frames.append(_mp_matrix_mul(_mp_matrix_mul(Uinv, M, nvars), U, nvars))
    return frames


def _chart_conjugate(X: Matrix, basis: Matrix) -> Matrix:
    # rewrite the endomorphism in the chart basis (rows of `basis`)
    Binv = basis.inverse()
    return Binv.transpose() * X * basis.transpose()


def compat_equations(action, chart_basis: Matrix | None = None, companion_params=False) -> ChartSystem:
    """Equations of the locus of chart points compatible with the action:
    n * C(d,2) polynomials in the chart coordinates.

    With companion_params=True the single generator must be a companion
    matrix and its last column becomes d extra variables, so the system cuts
    the full moduli of (finite subscheme of the line, compatible quadric)
    rather than one fiber.
    """
    bad = commutator_check(action)
    if bad is not None:
        raise ValueError(f"generators {bad[0]} and {bad[1]} do not commute")
    d = action[0].nrows
    if companion_params:
        if len(action) != 1:
            raise ValueError("companion parameters require a single generator")
        if not is_companion(action[0]):
            raise ValueError("the generator must be a companion matrix")
    names = _chart_vars(d, companion_params)
    nvars = len(names)
    nchart = (d - 1) + d * (d - 1) // 2
    gens = []
    for X in action:
        if companion_params:
            sym = [[MultiPoly.const(nvars, X[i, j]) for j in range(d)] for i in range(d)]
            for i in range(d):
                sym[i][d - 1] = MultiPoly.var(nvars, nchart + i)
            if chart_basis is not None:
                Binv = chart_basis.inverse()
                Bt = chart_basis.transpose()
                left = [[MultiPoly.const(nvars, Binv.transpose()[i, j]) for j in range(d)] for i in range(d)]
                right = [[MultiPoly.const(nvars, Bt[i, j]) for j in range(d)] for i in range(d)]
                sym = _mp_matrix_mul(_mp_matrix_mul(left, sym, nvars), right, nvars)
            gens.append(sym)
        else:
            Xc = _chart_conjugate(X, chart_basis) if chart_basis is not None else X
            gens.append([[MultiPoly.const(nvars, Xc[i, j]) for j in range(d)] for i in range(d)])
    frames = _anticompatible_frame(d, nvars)
    polys = []
    for G in gens:
        for A in frames:
            acc = MultiPoly(nvars)
            for a in range(d):
                for b in range(d):
                    acc = acc + G[a][b] * A[a][b]
            polys.append(acc)
    return ChartSystem(d, len(action), tuple(names), tuple(polys), companion_params)


def tangent_dim(action, point, chart_basis: Matrix | None = None, fiber_only=False) -> int:
    """Dimension of the Jacobian kernel of the chart equations at a point of
    the compatibility locus.

    By default the single generator must be a companion matrix and its monic
    family supplies the subscheme-direction variables, so the result is the
    tangent dimension of the full moduli at the point.  fiber_only=True
    freezes the action and measures the tangent of the single fiber instead.
    """
    ys, xs = point
    if fiber_only:
        sys_ = compat_equations(action, chart_basis, companion_params=False)
        full = sys_.full_point(ys, xs)
    else:
        sys_ = compat_equations(action, chart_basis, companion_params=True)
        # the companion variables stand for the raw last column of the generator
        last = [action[0][i, action[0].nrows - 1] for i in range(action[0].nrows)]
        full = sys_.full_point(ys, xs, last)
    vals = sys_.evaluate(full)
    if any(v != 0 for v in vals):
        raise ValueError("point does not satisfy the compatibility equations")
    J = sys_.jacobian(full)
    return sys_.nvars - (J.rank() if sys_.polys else 0)


def jordan_fiber_point(d, breaks, params, field=QQ) -> BrokenQuadric:
    """Compatible broken quadric over the d-dimensional Jordan block (the
    algebra k[x]/(x^d)): the flag is the chain of ideals determined by the
    break positions, and each subquotient form comes from a functional on a
    truncated polynomial algebra, normalized to 1 on its socle.

    `breaks` lists the colengths 0 < nu_1 < ... <= d of the flag of ideals;
    a terminal entry d may be omitted.  Step i has length m = nu_{i+1} - nu_i
    and takes m - 1 free parameters (the functional on k[x]/(x^m), socle
    coefficient normalized to 1).
    """
    breaks = list(breaks)
    if not breaks or breaks[-1] != d:
        breaks.append(d)
    nus = [0] + breaks
    if any(a >= b for a, b in zip(nus, nus[1:])) or any(not 0 < b <= d for b in breaks):
        raise ValueError("break positions must be strictly increasing in (0, d]")
    params = [list(p) for p in params] if params else [[] for _ in range(len(nus) - 1)]
    if len(params) != len(nus) - 1:
        raise ValueError("one parameter list per step is required")
    flag = []
    grams = []
    for i in range(len(nus) - 1):
        m = nus[i + 1] - nus[i]
        if len(params[i]) != m - 1:
            raise ValueError(f"step {i} needs {m - 1} parameters")
        c = params[i] + [field.one]
        flag.append(Subspace(d, Matrix.identity(d).rows[: d - nus[i]]))
        g = [[(c[2 * (m - 1) - t - u] if 2 * (m - 1) - t - u <= m - 1 else 0) for u in range(m)] for t in range(m)]
        grams.append(Matrix(g))
    flag.append(Subspace.zero(d))
    return BrokenQuadric(Flag(flag), grams, on_dual=False, field=field)


def jordan_block(d) -> Matrix:
    """Multiplication by x on k[x]/(x^d) in the monomial basis."""
    return companion_matrix([0] * d)


def invariant_quadrics(action):
    """Canonical basis of the symmetric matrices Q with X Q = Q X^T for every
    generator: the quadrics whose unbroken point is compatible with the
    action."""
    d = action[0].nrows
    n2 = d * d
    rows = []
    for X in action:
        # condition (X Q - Q X^T)[i][j] = 0, Q symmetric encoded by full matrix
        for i in range(d):
            for j in range(d):
                row = [Fraction(0)] * n2
                for k in range(d):
                    if X[i, k] != 0:
                        row[k * d + j] += Fraction(X[i, k])
                    if X[j, k] != 0:
                        row[i * d + k] -= Fraction(X[j, k])
                rows.append(row)
    # symmetry constraints
    for i in range(d):
        for j in range(i + 1, d):
            row = [Fraction(0)] * n2
            row[i * d + j] = Fraction(1)
            row[j * d + i] = Fraction(-1)
            rows.append(row)
    kernel = Matrix(rows).right_kernel()
    return tuple(
        Matrix(tuple(tuple(v[i * d + j] for j in range(d)) for i in range(d))) for v in kernel.rows
    )
