import random
from fractions import Fraction

import pytest

from cquadrics import Matrix, UniPoly, lowest_order, rank_kernel_image
from helpers import random_invertible


def test_det_identity():
    assert Matrix.identity(3).det() == 1


def test_det_2x2():
    assert Matrix([[1, 2], [3, 4]]).det() == -2


def test_det_rank_one_family():
    t = UniPoly.t_power(1)
    m = Matrix([[UniPoly.const(1), t], [t, t * t]])
    assert m.det().is_zero


def test_det_non_square():
    with pytest.raises(ValueError):
        Matrix([[1, 2, 3], [4, 5, 6]]).det()


def test_det_multiplicative():
    rng = random.Random(11)
    for _ in range(25):
        d = rng.randint(1, 5)
        a = Matrix([[rng.randint(-5, 5) for _ in range(d)] for _ in range(d)])
        b = Matrix([[rng.randint(-5, 5) for _ in range(d)] for _ in range(d)])
        assert (a * b).det() == a.det() * b.det()


def test_det_bareiss_polynomial_entries_stay_polynomial():
    rng = random.Random(5)
    rows = [[UniPoly([rng.randint(-3, 3) for _ in range(3)]) for _ in range(4)] for _ in range(4)]
    d = Matrix(rows).det()
    assert isinstance(d, UniPoly)


def test_rank_kernel_image_zero_matrix():
    rank, kernel, image, R = rank_kernel_image(Matrix.zero(2, 3))
    assert rank == 0
    assert kernel == Matrix.identity(3).map(Fraction)
    assert image.nrows == 0


def test_rank_kernel_image_identity():
    rank, kernel, image, _ = rank_kernel_image(Matrix.identity(4))
    assert rank == 4 and kernel.nrows == 0 and image.nrows == 4


def test_rank_kernel_image_ones():
    rank, kernel, image, _ = rank_kernel_image(Matrix([[1, 1], [1, 1]]))
    assert rank == 1
    assert kernel.rows == ((Fraction(1), Fraction(-1)),)


def test_kernel_annihilates_and_rank_row_op_invariant():
    rng = random.Random(2)
    for _ in range(20):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        M = Matrix([[rng.randint(-4, 4) for _ in range(n)] for _ in range(m)])
        rank, kernel, _, _ = rank_kernel_image(M)
        assert rank + kernel.nrows == n
        for v in kernel.rows:
            assert all(sum(M[i, j] * v[j] for j in range(n)) == 0 for i in range(m))
        # a random row operation does not change the rank
        if m >= 2:
            i, j = rng.sample(range(m), 2)
            rows = [list(r) for r in M.rows]
            c = rng.randint(-3, 3)
            rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
            assert Matrix(rows).rank() == rank


def test_inverse_round_trip():
    rng = random.Random(9)
    for _ in range(10):
        d = rng.randint(1, 5)
        M = random_invertible(rng, d)
        assert M * M.inverse() == Matrix.identity(d).map(Fraction)


def test_lowest_order_basic():
    t = UniPoly.t_power
    m = Matrix([[t(1), t(2)], [t(2), t(3)]])
    v, coeff = lowest_order(m)
    assert v == 1 and coeff == Matrix([[1, 0], [0, 0]])


def test_lowest_order_diagonal_family():
    Z = UniPoly()
    m = Matrix(
        [
            [UniPoly.const(1), Z, Z, Z],
            [Z, UniPoly.t_power(1), Z, Z],
            [Z, Z, UniPoly.t_power(2), Z],
            [Z, Z, Z, UniPoly.t_power(2)],
        ]
    )
    v, coeff = lowest_order(m)
    assert v == 0
    assert coeff == Matrix([[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])


def test_lowest_order_single_entry():
    v, coeff = lowest_order(Matrix([[UniPoly.t_power(3)]]))
    assert v == 3 and coeff == Matrix([[1]])


def test_lowest_order_zero_matrix_rejected():
    with pytest.raises(ValueError):
        lowest_order(Matrix([[UniPoly()]]))


def test_lowest_order_monomial_rescaling():
    rng = random.Random(4)
    rows = [[UniPoly([rng.randint(-3, 3) for _ in range(3)]) for _ in range(3)] for _ in range(3)]
    m = Matrix(rows)
    v, coeff = lowest_order(m)
    c = UniPoly.t_power(2, 5)
    v2, coeff2 = lowest_order(m.map(lambda p: p.mul(c)))
    assert v2 == v + 2
    assert coeff2 == coeff.map(lambda a: 5 * a)
