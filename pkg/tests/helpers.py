"""Shared random generators and independent oracles for the test suite."""

from fractions import Fraction

from cquadrics import (
    ArtinAlgebra,
    BrokenQuadric,
    Flag,
    Matrix,
    Subspace,
    UniPoly,
    apolar_algebra,
)


def random_symmetric(rng, d, lo=-4, hi=4):
    rows = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            rows[i][j] = rows[j][i] = rng.randint(lo, hi)
    return Matrix(rows)


def random_fullrank_symmetric(rng, d, lo=-4, hi=4):
    while True:
        m = random_symmetric(rng, d, lo, hi)
        if m.rank() == d:
            return m


def random_invertible(rng, d, lo=-3, hi=3):
    while True:
        m = Matrix([[rng.randint(lo, hi) for _ in range(d)] for _ in range(d)])
        if m.det() != 0:
            return m


def random_broken_quadric(rng, d):
    """Random flag from a random invertible matrix, random full rank forms."""
    parts = []
    left = d
    while left > 0:
        r = rng.randint(1, left)
        parts.append(r)
        left -= r
    T = random_invertible(rng, d)
    subs = [Subspace.full(d)]
    used = 0
    for r in parts[:-1]:
        used += r
        subs.append(Subspace(d, Matrix(T.rows[used:])))
    subs.append(Subspace.zero(d))
    flag = Flag(subs)
    forms = [random_fullrank_symmetric(rng, r) for r in parts]
    return BrokenQuadric(flag, forms)


def random_poly_family(rng, d, deg):
    """Random symmetric UniPoly matrix with nonzero determinant."""
    while True:
        rows = [[None] * d for _ in range(d)]
        for i in range(d):
            for j in range(i, d):
                p = UniPoly([rng.randint(-4, 4) for _ in range(deg + 1)])
                rows[i][j] = rows[j][i] = p
        m = Matrix(rows)
        if not m.det().is_zero:
            return m


def random_apolar(rng, nvars_max=3, deg_max=5, dim_lo=2, dim_hi=8):
    """Random inverse-system algebra with dimension in the requested range."""
    while True:
        n = rng.randint(1, nvars_max)
        F = {}
        for _ in range(rng.randint(1, 3)):
            deg = rng.randint(1, deg_max)
            e = [0] * n
            for _ in range(deg):
                e[rng.randrange(n)] += 1
            e = tuple(e)
            F[e] = F.get(e, 0) + rng.randint(-3, 3)
        F = {e: c for e, c in F.items() if c}
        if not F:
            continue
        A, alpha = apolar_algebra(F, n)
        if dim_lo <= A.dim <= dim_hi:
            return A, alpha, F, n


def planar_example():
    """k[x,y]/(xy, x^2 - y^3) on the basis (1, y, y^2, y^3, x) with the
    functional dual to y^3."""
    X = [[0] * 5 for _ in range(5)]
    Y = [[0] * 5 for _ in range(5)]
    X[4][0] = 1
    X[3][4] = 1
    Y[1][0] = 1
    Y[2][1] = 1
    Y[3][2] = 1
    return ArtinAlgebra([Matrix(X), Matrix(Y)], (1, 0, 0, 0, 0)), (0, 0, 0, 1, 0)


# --- polynomial-side oracles for inverse systems (independent of matrices) ---


def poly_diff(p, i):
    out = {}
    for e, c in p.items():
        if e[i]:
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = c * e[i]
    return out


def poly_apply(op, F, nvars):
    """Apply the polynomial operator sum c_gamma d^gamma to F."""
    out = {}
    for gamma, c in op.items():
        q = dict(F)
        for i in range(nvars):
            for _ in range(gamma[i]):
                q = poly_diff(q, i)
        for e, v in q.items():
            out[e] = out.get(e, 0) + c * v
    return {e: v for e, v in out.items() if v != 0}


def derivative_span(F, nvars):
    """All iterated partials of F as a list of polynomial dicts."""
    layer = {(0,) * nvars: dict(F)}
    out = [dict(F)]
    while layer:
        nxt = {}
        for beta, p in layer.items():
            for i in range(nvars):
                b2 = tuple(e + (1 if k == i else 0) for k, e in enumerate(beta))
                if b2 in nxt:
                    continue
                q = poly_diff(p, i)
                if q:
                    nxt[b2] = q
        out.extend(nxt.values())
        layer = nxt
    return out


def poly_space(polys):
    """(Subspace, monomial list) spanned by polynomial dicts."""
    monomials = sorted({e for p in polys for e in p})
    midx = {e: k for k, e in enumerate(monomials)}
    rows = []
    for p in polys:
        r = [Fraction(0)] * len(monomials)
        for e, c in p.items():
            r[midx[e]] = Fraction(c)
        rows.append(r)
    return Subspace(len(monomials), Matrix(rows)), monomials


def dual_side_decomposition(F, nvars):
    """Delta table recomputed entirely on the inverse-system side: the power
    filtration is the span of the partials of order >= i, and the socle
    filtration is cut out by raw polynomial differentiation, with no use of
    multiplication matrices."""
    polys = derivative_span(F, nvars)
    W, monomials = poly_space(polys)
    midx = {e: k for k, e in enumerate(monomials)}
    amb = len(monomials)

    def vec(p):
        r = [Fraction(0)] * amb
        for e, c in p.items():
            r[midx[e]] = Fraction(c)
        return tuple(r)

    def as_poly(row):
        return {monomials[k]: row[k] for k in range(amb) if row[k] != 0}

    # m^i = span of all partials of order exactly i, plus m^{i+1}
    by_order = []
    layer = {(0,) * nvars: dict(F)}
    while layer:
        by_order.append([vec(p) for p in layer.values()])
        nxt = {}
        for beta, p in layer.items():
            for i in range(nvars):
                b2 = tuple(e + (1 if k == i else 0) for k, e in enumerate(beta))
                if b2 not in nxt:
                    q = poly_diff(p, i)
                    if q:
                        nxt[b2] = q
        layer = nxt
    powers = [Subspace.zero(amb)]
    for rows in reversed(by_order):
        powers.append(powers[-1].sum(Subspace(amb, Matrix(rows))))
    powers = list(reversed(powers))  # powers[i] = m^i, ending with zero
    s = len(powers) - 2

    def m_pow(i):
        return powers[i] if i < len(powers) else Subspace.zero(amb)

    # (0:m^{j+1}) = {w in W : d_i w in (0:m^j) for all i}, starting from 0
    loewy = [Subspace.zero(amb)]
    for _ in range(s + 1):
        prev = loewy[-1]
        annb = prev.annihilator().basis
        conds = []
        for b in W.basis.rows:
            row = []
            for i in range(nvars):
                qv = vec(poly_diff(as_poly(b), i))
                for a in annb.rows:
                    row.append(sum(x * y for x, y in zip(qv, a)))
            conds.append(row)
        ker = Matrix(conds).transpose().right_kernel()
        rows = [
            tuple(sum(c * W.basis.rows[k][t] for k, c in enumerate(v)) for t in range(amb))
            for v in ker.rows
        ]
        loewy.append(Subspace(amb, Matrix(rows)) if rows else Subspace.zero(amb))

    def ann(j):
        if j <= 0:
            return Subspace.zero(amb)
        return loewy[j] if j < len(loewy) else W

    delta = []
    for dl in range(s + 1):
        row = []
        for i in range(s + 1):
            N = m_pow(i).intersect(ann(s - i - dl + 1))
            D1 = m_pow(i + 1).intersect(ann(s - i - dl + 1))
            D2 = m_pow(i).intersect(ann(s - i - dl))
            row.append(N.dim - D1.sum(D2).dim)
        delta.append(tuple(row))
    return s, tuple(delta)
