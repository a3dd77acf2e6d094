import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import det_laplace, rank_by_minors
from lgorbit.errors import DimensionMismatch
from lgorbit.linalg import QMatrix, Subspace, rank_and_kernel, subspace_combine

fractions_st = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def matrix_st(rows, cols):
    return st.lists(
        st.lists(fractions_st, min_size=cols, max_size=cols),
        min_size=rows,
        max_size=rows,
    ).map(QMatrix)


def test_identity_rank_and_kernel():
    rank, kernel = rank_and_kernel(QMatrix.identity(3))
    assert rank == 3
    assert kernel.dim == 0


def test_single_jordan_block_kernel():
    rank, kernel = rank_and_kernel(QMatrix([[0, 1], [0, 0]]))
    assert rank == 1
    assert kernel == Subspace.span(2, [(1, 0)])


def test_pencil_jacobian_sample_rank():
    # partials of the two (1,1) forms at x=(1,1,0), y=(1,-1,0) with weights (1,2,-3):
    # a point where the plain form vanishes but the weighted one does not
    jac = QMatrix([[1, -2, 0, 1, 2, 0], [1, -1, 0, 1, 1, 0]])
    assert jac.rank() == 2
    assert rank_by_minors(jac) == 2  # independent oracle
    assert jac.kernel().dim == 4


def test_empty_matrix_full_kernel():
    rank, kernel = rank_and_kernel(QMatrix([], cols=3))
    assert rank == 0
    assert kernel == Subspace.full(3)


def test_subspace_sum():
    a = Subspace.span(3, [(1, 0, 0)])
    b = Subspace.span(3, [(0, 1, 0)])
    assert subspace_combine("sum", a, b) == Subspace.span(3, [(1, 0, 0), (0, 1, 0)])


def test_subspace_intersect():
    diag = Subspace.span(3, [(1, 1, 0)])
    plane = Subspace.span(3, [(1, 0, 0), (0, 1, 0)])
    assert subspace_combine("intersect", diag, plane) == diag


def test_preimage_of_line_under_nilpotent():
    line = Subspace.span(2, [(1, 0)])
    nil = QMatrix([[0, 1], [0, 0]])
    # the map sends everything into the line, so the preimage is the whole plane
    assert subspace_combine("preimage", line, mapping=nil) == Subspace.full(2)


def test_dimension_mismatch_rejected():
    a = Subspace.span(3, [(1, 0, 0)])
    b = Subspace.span(2, [(1, 0)])
    with pytest.raises(DimensionMismatch):
        a.sum_with(b)
    with pytest.raises(DimensionMismatch):
        a.preimage(QMatrix([[1, 0], [0, 1]]))


def test_rref_idempotent_and_transpose_rank():
    rng = random.Random(7)
    for _ in range(25):
        mat = QMatrix(
            [[Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(6)] for _ in range(6)]
        )
        reduced, _ = mat.rref()
        assert reduced.rref()[0] == reduced
        assert mat.rank() == mat.transpose().rank()


def test_sum_intersect_dimension_formula():
    rng = random.Random(11)
    for _ in range(40):
        a = Subspace.span(
            6, [[rng.randint(-4, 4) for _ in range(6)] for _ in range(rng.randint(0, 4))]
        )
        b = Subspace.span(
            6, [[rng.randint(-4, 4) for _ in range(6)] for _ in range(rng.randint(0, 4))]
        )
        assert a.sum_with(b).dim + a.intersect(b).dim == a.dim + b.dim


@settings(max_examples=40, deadline=None)
@given(matrix_st(4, 4))
def test_rank_matches_minor_oracle(mat):
    assert mat.rank() == rank_by_minors(mat)


@settings(max_examples=40, deadline=None)
@given(matrix_st(4, 4))
def test_det_matches_laplace_oracle(mat):
    assert mat.det() == det_laplace([list(mat.row(i)) for i in range(4)])


def test_kernel_vectors_annihilated():
    rng = random.Random(3)
    for _ in range(20):
        mat = QMatrix([[rng.randint(-5, 5) for _ in range(5)] for _ in range(3)])
        kernel = mat.kernel()
        assert kernel.dim == 5 - mat.rank()
        for i in range(kernel.dim):
            assert all(v == 0 for v in mat.apply(kernel.basis.row(i)))


def test_charpoly_diagonal():
    mat = QMatrix.diagonal([2, -1, -1])
    # (t - 2)(t + 1)^2 = t^3 - 3t - 2
    assert mat.charpoly() == (Fraction(1), Fraction(0), Fraction(-3), Fraction(-2))


def test_inverse_roundtrip():
    mat = QMatrix([[2, 1, 0], [0, 1, 3], [1, 0, 1]])
    assert mat * mat.inverse() == QMatrix.identity(3)
    with pytest.raises(ValueError):
        QMatrix([[1, 2], [2, 4]]).inverse()


def test_canonical_subspace_equality():
    a = Subspace.span(3, [(2, 2, 0), (0, 0, 5)])
    b = Subspace.span(3, [(1, 1, 1), (1, 1, -1)])
    assert a == b
    assert a.basis == b.basis
