import random
from fractions import Fraction
from math import comb

import pytest

from cquadrics import (
    Matrix,
    Subspace,
    UniPoly,
    congruence_diagonalize,
    gram_from_terms,
    subquotient_form,
    wedge_power,
)
from helpers import random_fullrank_symmetric, random_symmetric


def test_wedge_identity():
    for d in range(1, 6):
        for i in range(1, d + 1):
            assert wedge_power(Matrix.identity(d), i) == Matrix.identity(comb(d, i))


def test_wedge_diagonal_family_level_two():
    # diag(1, t, t^2, t^2): level 2 diagonal t, t^2, t^2, t^3, t^3, t^4
    # on the index pairs (12), (13), (14), (23), (24), (34)
    Z = UniPoly()
    t = UniPoly.t_power
    q = Matrix([[t(0), Z, Z, Z], [Z, t(1), Z, Z], [Z, Z, t(2), Z], [Z, Z, Z, t(2)]])
    w = wedge_power(q, 2)
    expected = [t(1), t(2), t(2), t(3), t(3), t(4)]
    for a in range(6):
        for b in range(6):
            assert w[a, b] == (expected[a] if a == b else Z)


def test_wedge_two_by_two():
    a, b, c = Fraction(3), Fraction(5), Fraction(-2)
    q = Matrix([[a, b], [b, c]])
    assert wedge_power(q, 2) == Matrix([[a * c - b * b]])


def test_wedge_top_is_det():
    rng = random.Random(13)
    for _ in range(10):
        d = rng.randint(1, 5)
        q = random_symmetric(rng, d)
        assert wedge_power(q, d) == Matrix([[q.det()]])


def test_wedge_index_range():
    with pytest.raises(ValueError):
        wedge_power(Matrix.identity(3), 4)


def test_wedge_minor_rank_identity():
    rng = random.Random(17)
    for _ in range(15):
        d = rng.randint(2, 5)
        q = random_symmetric(rng, d)
        r = q.rank()
        for i in range(1, d + 1):
            assert wedge_power(q, i).rank() == comb(r, i)


def test_congruence_hyperbolic_plane():
    q = Matrix([[0, 1], [1, 0]])
    P, D = congruence_diagonalize(q)
    assert D == Matrix([[2, 0], [0, Fraction(-1, 2)]])
    assert P.transpose() * q * P == D


def test_congruence_diagonal_input_is_fixed():
    q = Matrix([[3, 0], [0, -5]])
    P, D = congruence_diagonalize(q)
    assert P == Matrix.identity(2).map(Fraction)
    assert D == q.map(Fraction)


def test_congruence_rank_one():
    q = Matrix([[1, 1], [1, 1]])
    P, D = congruence_diagonalize(q)
    assert D == Matrix([[1, 0], [0, 0]])
    assert P.transpose() * q * P == D


def test_congruence_random_exact_identity():
    rng = random.Random(23)
    for _ in range(25):
        d = rng.randint(1, 6)
        q = random_symmetric(rng, d)
        P, D = congruence_diagonalize(q)
        assert P.transpose() * q * P == D
        assert all(D[i, j] == 0 for i in range(d) for j in range(d) if i != j)
        assert sum(1 for i in range(d) if D[i, i] != 0) == q.rank()


def test_subquotient_full_to_zero_is_identity():
    rng = random.Random(29)
    q = random_symmetric(rng, 4)
    F = Subspace.full(4)
    G = Subspace.zero(4)
    assert subquotient_form(q, F, G) == q


def test_subquotient_kernel_restriction_vanishes():
    rng = random.Random(31)
    for _ in range(10):
        d = rng.randint(2, 5)
        q = random_symmetric(rng, d)
        ker = Subspace(d, q.right_kernel())
        if ker.dim == 0:
            continue
        g = subquotient_form(q, ker, Subspace.zero(d))
        assert g.is_zero()


def test_subquotient_planar_jordan_case():
    # the ideal flag over the truncated polynomial algebra in one variable:
    # the pairing from the socle functional induces a full rank form on the
    # middle subquotient
    d = 3
    phi = Matrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]])  # alpha = (x^2)^* pairing
    F = Subspace.full(d)
    G = Subspace(d, Matrix([[1, 0, 0]]))
    g = subquotient_form(phi, F, G)
    assert g.nrows == 2 and g.rank() == 2


def test_subquotient_requires_containment():
    with pytest.raises(ValueError):
        subquotient_form(
            Matrix.identity(3),
            Subspace(3, Matrix([[1, 0, 0]])),
            Subspace(3, Matrix([[0, 1, 0]])),
        )


def test_gram_from_terms():
    g = gram_from_terms(3, {(1, 1): 1, (1, 3): 1})
    assert g == Matrix([[1, 0, Fraction(1, 2)], [0, 0, 0], [Fraction(1, 2), 0, 0]])


def test_wedge_respects_congruence():
    # minors of P^T q P factor through minors of q: wedge(d) is multiplicative
    rng = random.Random(37)
    q = random_fullrank_symmetric(rng, 4)
    P = Matrix([[rng.randint(-2, 2) for _ in range(4)] for _ in range(4)])
    lhs = wedge_power(P.transpose() * q * P, 4)
    rhs = Matrix([[P.det() * P.det() * q.det()]])
    assert lhs == rhs
