"""Exact integer linear algebra: SNF with self-verification, invariants.

The random sweep checks the full transform identity U @ M @ V == S plus
the structural requirements (nonnegative chained diagonal, unimodular
transforms via the independent exact determinant), so the SNF code is
validated against its own defining equations rather than another SNF.
"""

import random
from fractions import Fraction

from fpcert import (
    abelian_invariants,
    det,
    p_rank,
    presentation,
    relation_matrix,
    smith_normal_form,
)

DINF = presentation("a b", ("a^2", "b^2"))
TRIANGLE = presentation("a b", ("a^3", "b^3", "(ab)^6"))
WISE = presentation(
    "a b s t",
    (
        "a b a^-1 b^-1",
        "s^-1 a s b^-1 a^-1 b^-1 a^-1",
        "t^-1 b t b^-1 a^-1 b^-1 a^-1",
    ),
)


def _mul(a, b):
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in zip(*b)) for row in a
    )


def assert_snf_consistent(m):
    res = smith_normal_form(m)
    if m:
        assert _mul(_mul(res.u, res.matrix), res.v) == res.s
    diag = res.diagonal
    assert all(d >= 0 for d in diag)
    for x, y in zip(diag, diag[1:]):
        if y != 0:
            assert x != 0 and y % x == 0
        # off-diagonal must vanish
    for i, row in enumerate(res.s):
        for j, entry in enumerate(row):
            if i != j:
                assert entry == 0
    assert abs(det(res.u)) == 1
    assert abs(det(res.v)) == 1
    return res


class TestSmithNormalForm:
    def test_goldens(self):
        assert smith_normal_form([[2, 0], [0, 2]]).diagonal == (2, 2)
        assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, 4, 16]]).diagonal == (2, 2, 156)
        assert smith_normal_form([[1]]).diagonal == (1,)
        assert smith_normal_form([[0, 0], [0, 0]]).diagonal == (0, 0)

    def test_shapes(self):
        assert smith_normal_form([]).diagonal == ()
        assert smith_normal_form([[3, 6]]).diagonal == (3,)
        assert smith_normal_form([[3], [6]]).diagonal == (3,)

    def test_random_sweep(self):
        rng = random.Random(196883)
        for trial in range(1000):
            rows = rng.randint(1, 6)
            cols = rng.randint(1, 6)
            m = [[rng.randint(-20, 20) for _ in range(cols)] for _ in range(rows)]
            res = assert_snf_consistent(m)
            if rows == cols:
                # the product of the diagonal equals |det| for square input
                prod = 1
                for d in res.diagonal:
                    prod *= d
                assert Fraction(prod) == abs(det(m))


class TestInvariants:
    def test_dihedral(self):
        assert relation_matrix(DINF) == [[2, 0], [0, 2]]
        assert abelian_invariants(DINF) == ((2, 2), 0)
        assert p_rank(DINF, 2) == 2
        assert p_rank(DINF, 3) == 0

    def test_triangle(self):
        snf = smith_normal_form(relation_matrix(TRIANGLE))
        assert snf.diagonal[:2] == (3, 3)
        assert abelian_invariants(TRIANGLE) == ((3, 3), 0)
        assert p_rank(TRIANGLE, 3) == 2

    def test_wise(self):
        torsion, betti = abelian_invariants(WISE)
        assert torsion == (3,)
        assert betti == 2
        assert p_rank(WISE, 3) == 3
        assert p_rank(WISE, 2) == 2

    def test_free(self):
        assert abelian_invariants(presentation("x y z")) == ((), 3)
        assert p_rank(presentation("x y z"), 5) == 3

    def test_finite_cyclic(self):
        q = presentation("x", ("x^12",))
        assert abelian_invariants(q) == ((12,), 0)
        assert p_rank(q, 2) == 1
        assert p_rank(q, 3) == 1
        assert p_rank(q, 5) == 0
