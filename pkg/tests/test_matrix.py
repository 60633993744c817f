import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import P, fields, matrices, polys
from oracles import charpoly_leibniz, det_leibniz, rank_bruteforce_gf
from rankpert.algebra import GF, Q, Poly
from rankpert.errors import DimensionError, FieldMismatchError, InputError, SingularMatrixError
from rankpert.matrix import (
    Mat,
    char_matrix,
    charpoly,
    companion,
    det,
    mat_arith,
    mat_inverse,
    poly_at,
    principal_minor_sum,
    random_invertible,
    rank,
)


def test_arith_examples():
    A = Mat(Q, [[1, 2], [3, 4]])
    Z = Mat.zeros(Q, 2)
    I = Mat.identity(Q, 2)
    assert mat_arith(A, Z, "add") == A
    assert mat_arith(I, A, "mul") == A
    N = Mat(Q, [[0, 1], [0, 0]])
    assert (N @ N).is_zero()
    assert mat_arith(A, A, "sub").is_zero()


def test_arith_errors():
    with pytest.raises(DimensionError):
        Mat(Q, [[1, 2]]) + Mat(Q, [[1], [2]])
    with pytest.raises(DimensionError):
        Mat(Q, [[1, 2]]) @ Mat(Q, [[1, 2]])
    with pytest.raises(FieldMismatchError):
        Mat(Q, [[1]]) + Mat(GF(2), [[1]])
    with pytest.raises(ValueError):
        mat_arith(Mat(Q, [[1]]), Mat(Q, [[1]]), "div")


def test_rank_examples():
    assert rank(Mat.zeros(Q, 3)) == 0
    assert rank(Mat.identity(Q, 3)) == 3
    assert rank(Mat(Q, [[1, 2], [2, 4]])) == 1
    assert rank(Mat(GF(2), [[1, 1], [1, 1]])) == 1
    assert rank(Mat(GF(3), [[1, 2], [2, 1]])) == 1


@given(matrices(field=GF(2), max_n=3))
def test_rank_matches_span_size(M):
    assert rank(M) == rank_bruteforce_gf(M)


@given(st.data())
def test_rank_inequalities(data):
    F = data.draw(fields)
    n = data.draw(st.integers(1, 4))
    M = data.draw(matrices(field=F, min_n=n, max_n=n))
    N = data.draw(matrices(field=F, min_n=n, max_n=n))
    assert rank(M @ N) <= min(rank(M), rank(N))
    assert rank(M + N) <= rank(M) + rank(N)


def test_charpoly_examples():
    x = Poly.x(Q)
    assert charpoly(Mat.zeros(Q, 2)) == x**2
    assert charpoly(companion(P(Q, 1, 0, 1))) == P(Q, 1, 0, 1)
    assert charpoly(Mat(Q, [[1, 1], [0, 1]])) == P(Q, 1, -2, 1)
    with pytest.raises(DimensionError):
        charpoly(Mat(Q, [[1, 2]]))


@given(matrices(max_n=5))
def test_charpoly_matches_leibniz(M):
    cp = charpoly(M)
    assert cp.is_monic() and cp.degree == M.nrows
    assert cp == charpoly_leibniz(M)


@given(matrices(max_n=4), st.integers(0, 2**32))
def test_charpoly_similarity_invariant(M, seed):
    S = random_invertible(M.field, M.nrows, random.Random(seed))
    assert charpoly(mat_inverse(S) @ M @ S) == charpoly(M)


@given(st.data())
def test_charpoly_of_companion(data):
    F = data.draw(fields)
    p = data.draw(polys(F, min_deg=1, max_deg=8, monic=True))
    assert charpoly(companion(p)) == p


@given(matrices(max_n=5))
def test_det_matches_leibniz(M):
    assert det(M) == det_leibniz(M)


def test_principal_minor_sum_examples():
    assert principal_minor_sum(Mat.identity(Q, 3), 2) == 3
    assert principal_minor_sum(Mat(Q, [[5, 7], [1, 2]]), 0) == 1
    assert principal_minor_sum(Mat.diag(Q, [1, 2, 3]), 3) == 6
    with pytest.raises(ValueError):
        principal_minor_sum(Mat.identity(Q, 2), 3)


@given(matrices(max_n=6))
def test_charpoly_coefficients_are_signed_minor_sums(M):
    n = M.nrows
    cp = charpoly(M)
    F = M.field
    for j in range(n + 1):
        s = principal_minor_sum(M, n - j)
        assert cp.coeff(j) == F.norm((-1) ** (n - j) * s)


def test_inverse_examples():
    assert mat_inverse(Mat.identity(Q, 3)) == Mat.identity(Q, 3)
    assert mat_inverse(Mat(Q, [[2, 0], [0, 3]])) == Mat(Q, [[Fraction(1, 2), 0], [0, Fraction(1, 3)]])
    assert mat_inverse(Mat(Q, [[1, 1], [0, 1]])) == Mat(Q, [[1, -1], [0, 1]])
    with pytest.raises(SingularMatrixError):
        mat_inverse(Mat(Q, [[1, 2], [2, 4]]))


@given(matrices(max_n=5))
def test_inverse_roundtrip(M):
    if rank(M) < M.nrows:
        with pytest.raises(SingularMatrixError):
            mat_inverse(M)
    else:
        I = Mat.identity(M.field, M.nrows)
        Mi = mat_inverse(M)
        assert M @ Mi == I and Mi @ M == I


def test_companion_layout():
    assert companion(P(Q, -7, 1)) == Mat(Q, [[7]])
    assert companion(P(Q, 1, 0, 1)) == Mat(Q, [[0, -1], [1, 0]])
    assert companion(P(Q, 0, 0, 0, 1)) == Mat(Q, [[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    with pytest.raises(InputError):
        companion(P(Q, 1, 2))
    with pytest.raises(InputError):
        companion(P(Q, 3))


@given(matrices(max_n=4))
def test_cayley_hamilton(M):
    assert poly_at(charpoly(M), M).is_zero()


def test_char_matrix():
    A = Mat(Q, [[1, 2], [3, 4]])
    xm = char_matrix(A)
    assert xm[0, 0] == P(Q, -1, 1)
    assert xm[0, 1] == P(Q, -2)
    assert xm[1, 1] == P(Q, -4, 1)
