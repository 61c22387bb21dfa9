"""The torus-limit of an oriented local algebra on the moduli of compatible
quadrics: the limit point lives over the associated graded algebra and its
broken quadric realizes Iarrobino's symmetric decomposition.

Two independent routes are provided.  `torus_limit` assembles the limit
directly from the filtration ideals and the graded components of the
orientation functional; `torus_limit_oracle` writes the whole one-parameter
family of pairings as a polynomial matrix and takes its coordinate-wise
wedge-power limit.  Their agreement is the main cross-check of the package.
"""

from __future__ import annotations

from dataclasses import dataclass

from .artin import (
    ArtinAlgebra,
    SymDecomp,
    assoc_graded,
    loewy_filtration,
    orientation_to_quadric,
    power_filtration,
    symmetric_decomposition,
)
from .broken import BrokenQuadric, dualize, limit_minor
from .fields import QQ
from .linalg import Matrix
from .poly import UniPoly
from .subspace import Flag, Subspace


@dataclass(frozen=True)
class TorusLimitResult:
    """Limit data: the graded algebra with its weights, the flag of ideals,
    the diagonal pairing blocks, the broken quadric of pairings (flag on the
    algebra side) and its dual, the limit quadric itself."""

    gr: ArtinAlgebra
    weights: tuple
    decomp: SymDecomp
    ideals: tuple  # ideals[delta] as graded subspaces in adapted coordinates, delta = 0..s+1
    phi_blocks: tuple  # (delta, Gram on the canonical complement of the step)
    bq_phi: BrokenQuadric  # on_dual: flag inside gr(A)
    bq: BrokenQuadric  # the dual point: flag inside gr(A)^dual


def _graded_pairing_matrices(A: ArtinAlgebra, alpha, s):
    """G_delta[a, b] = degree-(s - delta) component of alpha on the product of
    the a-th and b-th adapted basis monomials."""
    exps, _, weights, _ = A.adapted_basis()
    d = A.dim
    alpha_row = Matrix((alpha,))
    prod_val = {}
    for a in range(d):
        for b in range(a, d):
            gamma = tuple(x + y for x, y in zip(exps[a], exps[b]))
            if gamma not in prod_val:
                w = A.monomial_vector(gamma)
                prod_val[gamma] = sum(x * y for x, y in zip(alpha, w))
    gs = {}
    for delta in range(s + 1):
        rows = [[0] * d for _ in range(d)]
        for a in range(d):
            for b in range(a, d):
                if weights[a] + weights[b] == s - delta:
                    gamma = tuple(x + y for x, y in zip(exps[a], exps[b]))
                    c = prod_val[gamma]
                    rows[a][b] = c
                    rows[b][a] = c
        gs[delta] = Matrix(rows)
    return gs


def _filtration_ideals(A: ArtinAlgebra, s):
    """Graded subspaces of gr(A), in adapted coordinates: the delta-th ideal
    has degree-i piece the image of m^i intersect (0 : m^{s+1-i-delta})."""
    _, _, weights, Tinv = A.adapted_basis()
    d = A.dim
    powers = power_filtration(A)
    loewy = loewy_filtration(A)

    def m_pow(i):
        return powers[i] if i < len(powers) else Subspace.zero(d)

    def ann(j):
        if j <= 0:
            return Subspace.zero(d)
        return loewy[j] if j < len(loewy) else Subspace.full(d)

    ideals = []
    for delta in range(s + 2):
        rows = []
        for i in range(s + 1):
            sub = m_pow(i).intersect(ann(s + 1 - i - delta))
            for r in sub.basis.rows:
                coords = (Matrix((r,)) * Tinv).rows[0]
                rows.append(tuple(c if weights[k] == i else 0 for k, c in enumerate(coords)))
        ideals.append(Subspace(d, Matrix(rows) if rows else ()))
    return tuple(ideals)


def graded_dims(sub: Subspace, weights):
    """Dimension of each weight piece of a graded subspace (echelon rows of a
    graded subspace are supported in a single weight block)."""
    out = [0] * (max(weights) + 1)
    for r in sub.basis.rows:
        w = next(weights[k] for k in range(len(weights)) if r[k] != 0)
        out[w] += 1
    return tuple(out)


def torus_limit(A: ArtinAlgebra, alpha, field=QQ) -> TorusLimitResult:
    """Limit of the oriented point (A, alpha) under the scaling torus.

    The limit lies over gr(A); its broken quadric of pairings has flag the
    chain of filtration ideals and subquotient forms the graded components
    of the multiplication pairing of alpha.  The returned `bq` is the dual
    point, the limit of the orientation quadrics themselves.
    """
    orientation_to_quadric(A, alpha)  # validates nondegeneracy and compatibility
    decomp = symmetric_decomposition(A, alpha=alpha)
    s = decomp.s
    gr, weights = assoc_graded(A)
    ideals = _filtration_ideals(A, s)
    gs = _graded_pairing_matrices(A, alpha, s)
    flag_subs = [ideals[0]]
    step_deltas = []
    for delta in range(s + 2):
        if delta + 1 < len(ideals):
            nxt = ideals[delta + 1]
        else:
            nxt = Subspace.zero(A.dim)
        if nxt.dim < flag_subs[-1].dim:
            step_deltas.append(delta)
            flag_subs.append(nxt)
        if nxt.dim == 0:
            break
    flag = Flag(flag_subs)
    ambient = [gs[delta] for delta in step_deltas]
    bq_phi = BrokenQuadric.from_ambient_forms(flag, ambient, on_dual=True, field=field)
    blocks = tuple(zip(step_deltas, bq_phi.forms))
    bq = dualize(bq_phi)
    return TorusLimitResult(gr, tuple(weights), decomp, ideals, blocks, bq_phi, bq)


def homogenized_pairing_family(A: ArtinAlgebra, alpha):
    """The pairing of the rescaled orientation along the torus orbit, as a
    symmetric matrix over the parameter ring, in the adapted monomial basis:
    entry (a, b) is t^(s - w_a - w_b) alpha(m_a m_b)."""
    exps, _, weights, _ = A.adapted_basis()
    s = max(weights)
    d = A.dim
    rows = [[UniPoly() for _ in range(d)] for _ in range(d)]
    for a in range(d):
        for b in range(a, d):
            gamma = tuple(x + y for x, y in zip(exps[a], exps[b]))
            w = A.monomial_vector(gamma)
            c = sum(x * y for x, y in zip(alpha, w))
            if c != 0:
                e = s - weights[a] - weights[b]
                if e < 0:
                    raise AssertionError("nonzero pairing above the socle degree")
                rows[a][b] = UniPoly.t_power(e, c)
                rows[b][a] = rows[a][b]
    return Matrix(rows)


def torus_limit_oracle(A: ArtinAlgebra, alpha, field=QQ) -> BrokenQuadric:
    """Independent route to the limit quadric: the coordinate-wise wedge-power
    limit of the homogenized pairing family, dualized at the end."""
    orientation_to_quadric(A, alpha)
    fam = homogenized_pairing_family(A, alpha)
    bq_phi = limit_minor(fam, on_dual=True, field=field)
    return dualize(bq_phi)


def bb_limit_ideal(A: ArtinAlgebra):
    """Limit of the underlying subscheme alone: the associated graded algebra
    (the initial ideal's quotient) together with its grading."""
    gr, weights = assoc_graded(A)
    return gr, tuple(weights)
