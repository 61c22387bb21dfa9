import random
from fractions import Fraction

import pytest

from cquadrics import (
    BrokenQuadric,
    ExteriorTuple,
    Flag,
    Matrix,
    NotInPatchError,
    ReconstructionError,
    SingularFamilyError,
    Subspace,
    UniPoly,
    change_basis,
    dualize,
    from_exterior,
    limit_dvr,
    limit_minor,
    to_exterior,
    tyrrell_coords,
    tyrrell_membership,
    tyrrell_point,
    wedge_powers,
)
from helpers import random_broken_quadric, random_fullrank_symmetric, random_poly_family

F = Fraction
Z = UniPoly()


def tp(k, v=1):
    return UniPoly.t_power(k, F(v))


def diag_family():
    return Matrix([[tp(0), Z, Z, Z], [Z, tp(1), Z, Z], [Z, Z, tp(2), Z], [Z, Z, Z, tp(2)]])


def test_exterior_tuple_of_diagonal_family_matches_display():
    # the displayed wedge triple of the family diag(1, t, t^2, t^2)
    levels = wedge_powers(diag_family())
    assert levels[1] == diag_family()
    lvl2 = levels[2]
    exp = [tp(1), tp(2), tp(2), tp(3), tp(3), tp(4)]
    assert all(lvl2[a, a] == exp[a] for a in range(6))
    lvl3 = levels[3]
    # (123), (124), (134), (234) carry t^3, t^3, t^4, t^5
    exp3 = [tp(3), tp(3), tp(4), tp(5)]
    assert all(lvl3[a, a] == exp3[a] for a in range(4))


def expected_diag_limit():
    flag = Flag(
        [
            Subspace.full(4),
            Subspace(4, Matrix([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])),
            Subspace(4, Matrix([[0, 0, 1, 0], [0, 0, 0, 1]])),
            Subspace.zero(4),
        ]
    )
    return BrokenQuadric(flag, [Matrix([[1]]), Matrix([[1]]), Matrix.identity(2)])


def test_limit_minor_diagonal_family():
    assert limit_minor(diag_family()) == expected_diag_limit()


def test_limit_dvr_diagonal_family():
    assert limit_dvr(diag_family()) == expected_diag_limit()


def test_limit_constant_full_rank_is_unbroken():
    q = Matrix([[F(2), F(1)], [F(1), F(3)]])
    bq = limit_minor(q.map(UniPoly.const))
    assert bq.is_unbroken
    assert bq == BrokenQuadric.unbroken(q)


def test_limit_cross_term_families():
    h = tp(2, F(1, 2))
    c1 = UniPoly.const(F(1))
    q1 = Matrix([[c1, Z, h, Z], [Z, c1, Z, h], [h, Z, Z, Z], [Z, h, Z, Z]])
    b1 = limit_minor(q1)
    assert b1.ranks == (2, 2)
    assert b1.flag.steps[1] == Subspace(4, Matrix([[0, 0, 1, 0], [0, 0, 0, 1]]))
    assert b1.forms[0] == Matrix.identity(2) and b1.forms[1] == Matrix.identity(2)
    q2 = Matrix([[c1, Z, h, Z], [Z, c1, Z, h], [h, Z, tp(3), Z], [Z, h, Z, Z]])
    b2 = limit_minor(q2)
    assert b2.ranks == (2, 1, 1)
    assert b2.forms == (Matrix.identity(2), Matrix([[1]]), Matrix([[1]]))
    assert b2.flag.steps[2] == Subspace(4, Matrix([[0, 0, 0, 1]]))


def test_limit_rejects_identically_singular():
    with pytest.raises(SingularFamilyError):
        limit_minor(Matrix([[tp(1), tp(1)], [tp(1), tp(1)]]))
    with pytest.raises(SingularFamilyError):
        limit_dvr(Matrix([[tp(1), tp(1)], [tp(1), tp(1)]]))


def test_limit_rescaling_invariance():
    rng = random.Random(41)
    for _ in range(10):
        d = rng.randint(2, 4)
        m = random_poly_family(rng, d, rng.randint(0, 2))
        mono = UniPoly.t_power(rng.randint(0, 3), rng.choice([1, -2, 3]))
        assert limit_minor(m.map(lambda p: p.mul(mono))) == limit_minor(m)


def test_round_trip_random():
    rng = random.Random(43)
    for _ in range(25):
        d = rng.randint(1, 5)
        bq = random_broken_quadric(rng, d)
        assert from_exterior(to_exterior(bq)) == bq


def test_unbroken_exterior_is_wedge_chain():
    rng = random.Random(47)
    q = random_fullrank_symmetric(rng, 4)
    t = to_exterior(BrokenQuadric.unbroken(q))
    levels = wedge_powers(q)
    from cquadrics import canonical_class

    for i in range(1, 5):
        assert t.factors[i - 1] == canonical_class(levels[i])


def test_from_exterior_corrupted_tuple():
    t = to_exterior(expected_diag_limit())
    factors = list(t.factors)
    # corrupt the second factor to a wedge square incompatible with p_1
    bad = [[0] * 6 for _ in range(6)]
    bad[5][5] = 1  # (e3 ^ e4)^2 but p_1 = e1^2 needs pairs containing e1
    factors[1] = Matrix(bad)
    with pytest.raises(ReconstructionError):
        from_exterior(ExteriorTuple(factors))


def test_d1_exterior():
    bq = BrokenQuadric.unbroken(Matrix([[F(7)]]))
    t = to_exterior(bq)
    assert t.factors == (Matrix([[1]]),)
    assert from_exterior(t) == bq


def test_dvr_equals_minor_on_random_families():
    rng = random.Random(53)
    for _ in range(40):
        d = rng.randint(2, 5)
        m = random_poly_family(rng, d, rng.randint(0, 3))
        assert limit_dvr(m) == limit_minor(m)


def test_dvr_linear_pencil():
    rng = random.Random(59)
    for _ in range(10):
        d = rng.randint(2, 5)
        a = random_fullrank_symmetric(rng, d)
        b = random_fullrank_symmetric(rng, d)
        m = Matrix(
            [
                [UniPoly([a[i, j], b[i, j]]) for j in range(d)]
                for i in range(d)
            ]
        )
        if m.det().is_zero:
            continue
        assert limit_dvr(m) == limit_minor(m)


def test_corank_one_unique_completion():
    # a constant rank d-1 quadric: the limit is independent of the direction
    rng = random.Random(61)
    d = 4
    while True:
        q = Matrix([[0] * d for _ in range(d)])
        base = random_fullrank_symmetric(rng, d - 1)
        rows = [list(r) + [0] for r in base.rows] + [[0] * d]
        q = Matrix(rows)
        if q.rank() == d - 1:
            break
    limits = []
    for _ in range(2):
        r = random_fullrank_symmetric(rng, d)
        fam = Matrix(
            [[UniPoly([q[i, j], r[i, j]]) for j in range(d)] for i in range(d)]
        )
        limits.append(limit_minor(fam))
    assert limits[0] == limits[1]


def test_dualize_unbroken_is_inverse():
    rng = random.Random(67)
    q = random_fullrank_symmetric(rng, 4)
    bq = BrokenQuadric.unbroken(q)
    dl = dualize(bq)
    assert dl.is_unbroken and dl.on_dual
    assert dl == BrokenQuadric.unbroken(q.inverse(), on_dual=True)


def test_dualize_diagonal_family_example():
    dl = dualize(expected_diag_limit())
    assert dl.flag.steps[1] == Subspace(4, Matrix([[1, 0, 0, 0], [0, 1, 0, 0]]))
    assert dl.flag.steps[2] == Subspace(4, Matrix([[1, 0, 0, 0]]))
    assert [f.rows for f in dl.forms] == [((1, 0), (0, 1)), ((1,),), ((1,),)]


def test_dualize_involution_random():
    rng = random.Random(71)
    for _ in range(20):
        bq = random_broken_quadric(rng, rng.randint(1, 5))
        assert dualize(dualize(bq)) == bq


def test_tyrrell_point_d2():
    t = tyrrell_point([F(5)], [F(3)])
    assert t.factors[0] == Matrix([[1, 3], [3, 14]])
    assert t.factors[1] == Matrix([[1]])


def test_tyrrell_full_rank_when_ys_nonzero():
    t = tyrrell_point([F(1), F(2), F(-1)], [F(1), F(0), F(2), F(1), F(0), F(3)])
    bq = from_exterior(t)
    assert bq.is_unbroken


def test_tyrrell_degenerate_point():
    t = tyrrell_point([F(0)] * 3, [F(0)] * 6)
    bq = from_exterior(t)
    assert bq.ranks == (1, 1, 1, 1)
    ys, xs = tyrrell_coords(t)
    assert all(y == 0 for y in ys) and all(x == 0 for x in xs)


def test_tyrrell_output_always_reconstructs():
    rng = random.Random(73)
    for _ in range(15):
        d = rng.randint(2, 4)
        ys = [F(rng.randint(-2, 2)) for _ in range(d - 1)]
        xs = [F(rng.randint(-2, 2)) for _ in range(d * (d - 1) // 2)]
        t = tyrrell_point(ys, xs)
        from_exterior(t)  # must not raise


def test_tyrrell_coords_round_trip():
    rng = random.Random(79)
    for _ in range(15):
        d = rng.randint(2, 4)
        ys = [F(rng.randint(-3, 3)) for _ in range(d - 1)]
        xs = [F(rng.randint(-3, 3)) for _ in range(d * (d - 1) // 2)]
        t = tyrrell_point(ys, xs)
        ys2, xs2 = tyrrell_coords(t)
        assert list(ys2) == ys and list(xs2) == xs


def test_tyrrell_coords_unbroken_diag():
    bq = BrokenQuadric.unbroken(Matrix([[1, 0], [0, F(5)]]))
    ys, xs = tyrrell_coords(bq)
    assert ys == (F(5),) and xs == (F(0),)


def test_membership_diag_limit():
    t = to_exterior(expected_diag_limit())
    assert tyrrell_membership(t)
    rev = Matrix([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])
    assert not tyrrell_membership(t, rev)


def test_membership_identity_quadric():
    t = to_exterior(BrokenQuadric.unbroken(Matrix.identity(3)))
    assert tyrrell_membership(t)


def test_coords_not_in_patch():
    t = to_exterior(expected_diag_limit())
    rev = Matrix([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])
    with pytest.raises(NotInPatchError):
        tyrrell_coords(t, basis=rev)


def test_change_basis_round_trip():
    rng = random.Random(83)
    bq = random_broken_quadric(rng, 4)
    t = to_exterior(bq)
    B = Matrix([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    assert change_basis(change_basis(t, B), B.inverse()) == t


def test_canonical_class_round_trip():
    rng = random.Random(89)
    for _ in range(10):
        bq = random_broken_quadric(rng, rng.randint(2, 4))
        # rescaling any form representative does not change the class
        forms = [f.map(lambda a: F(3, 7) * a) for f in bq.forms]
        bq2 = BrokenQuadric(bq.flag, forms)
        assert bq2 == bq


def test_dvr_truncation_cap():
    from cquadrics import TruncationCapError

    with pytest.raises(TruncationCapError):
        limit_dvr(diag_family(), max_trunc=2)
