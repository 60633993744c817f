import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import P, fields, matrices
from rankpert.algebra import GF, Q, Poly, monic_polys, random_monic
from rankpert.canonical import InvariantFactors, JordanData, JordanEntry, jordan_data, rcf_matrix, smith_invariant_factors
from rankpert.errors import IncompleteJordanData, InfeasibleError, InputError
from rankpert.matrix import Mat, block_diag, charpoly, companion, mat_inverse, random_derogatory, random_invertible, random_matrix, rank, random_rank_matrix
from rankpert.perturb import (
    altered_columns,
    check_feasible,
    check_jordan_condition,
    construct,
    construct_in_rcf,
    rank_bound_check,
    rank_profile,
    required_divisor,
    telescoping_check,
    verify,
)


def X(F):
    return Poly.x(F)


def test_required_divisor_examples():
    x = X(Q)
    assert required_divisor(InvariantFactors(Q, (x, x, x)), 1) == x**2
    assert required_divisor(InvariantFactors(Q, (x - 1, (x - 1) * (x - 2))), 1) == x - 1
    inv = InvariantFactors(Q, (x, x**2))
    assert required_divisor(inv, 2) == Poly.one(Q)
    assert required_divisor(inv, 7) == Poly.one(Q)
    assert required_divisor(inv, 0) == x**3


def test_feasible_zero_matrix():
    x = X(Q)
    A = Mat.zeros(Q, 3)
    cert = check_feasible(A, x**2 * (x - 7), 1)
    assert cert.feasible and cert.quotient_h == x - 7
    assert cert.jordan_side_holds is True
    cert = check_feasible(A, (x - 1) * (x - 2) * (x - 3), 1)
    assert not cert.feasible and cert.quotient_h is None
    assert cert.required_divisor == x**2 and not cert.remainder.is_zero()
    assert cert.jordan_side_holds is False


def test_feasible_both_forms_agree():
    x = X(Q)
    A = block_diag(Q, [companion(x**2), companion(x)])
    assert smith_invariant_factors(A).factors == (x, x**2)
    q = x * (x - 1) ** 2
    cert = check_feasible(A, q, 1)
    assert cert.feasible
    row = [r for r in cert.jordan_report if r.factor == x][0]
    assert (row.mult_in_q, row.alg_mult, row.top_m_blocks) == (1, 3, 2)
    assert row.holds


def test_feasible_m0_means_equal_charpoly(rng):
    A = random_matrix(GF(5), 3, rng)
    cp = charpoly(A)
    assert check_feasible(A, cp, 0).feasible
    other = cp + Poly.x(GF(5))
    assert not check_feasible(A, other, 0).feasible


def test_feasible_errors():
    A = Mat.zeros(Q, 2)
    with pytest.raises(InputError):
        check_feasible(A, P(Q, 0, 0, 2), 1)
    with pytest.raises(InputError):
        check_feasible(A, P(Q, 0, 1), 1)
    with pytest.raises(InputError):
        check_feasible(A, P(GF(2), 0, 0, 1), 1)


def _zero_jd(F, blocks):
    return JordanData((JordanEntry(X(F), tuple(blocks), sum(blocks)),), True)


def test_jordan_condition_examples():
    x = X(Q)
    jd = _zero_jd(Q, [1, 1, 1])
    assert check_jordan_condition(jd, x**2 * (x - 4), 1)
    assert not check_jordan_condition(jd, x * (x - 1) * (x - 2), 1)
    single = _zero_jd(Q, [3])
    for q in [(x - 1) * (x - 2) * (x - 3), P(Q, 5, 4, 3, 1), x**3]:
        assert check_jordan_condition(single, q, 1)
    with pytest.raises(IncompleteJordanData):
        check_jordan_condition(JordanData((), False, P(Q, 2, 0, 0, 0, 1)), x**4, 1)


def test_construct_in_rcf_m1_layout():
    inv = InvariantFactors(Q, (P(Q, 1, 0, 1),))
    B, cols = construct_in_rcf(inv, P(Q, -1, 0, 1), 1)
    # column 2 = [a0 - b0, a1 - b1] with a = (1, 0), b = (-1, 0)
    assert cols == [2]
    assert B == Mat(Q, [[0, 2], [0, 0]])


def test_construct_in_rcf_zero_2x2():
    x = X(Q)
    inv = InvariantFactors(Q, (x, x))
    B, cols = construct_in_rcf(inv, x * (x - 1), 1)
    assert cols == [1]
    assert B == Mat(Q, [[1, 0], [0, 0]])
    assert charpoly(rcf_matrix(inv) + B) == x**2 - x


def test_construct_in_rcf_full_replacement(rng):
    F = GF(7)
    x = X(F)
    inv = InvariantFactors(F, (x - 1, (x - 1) * (x - 2), (x - 1) * (x - 2) * x))
    q = random_monic(F, 6, rng)
    B, cols = construct_in_rcf(inv, q, 5)
    assert cols == [3, 5, 6]
    assert rcf_matrix(inv) + B == companion(q)


def test_construct_in_rcf_m2_columns():
    F = Q
    x = X(F)
    p1 = x - 1
    p2 = (x - 1) * (x**2 + 1)
    p3 = (x - 1) * (x**2 + 1) * (x + 2)
    inv = InvariantFactors(F, (p1, p2, p3))
    q = p1 * random_monic(F, 7, random.Random(3))
    B, cols = construct_in_rcf(inv, q, 2)
    d_s, d_s1 = p3.degree, p2.degree
    assert cols == [d_s, d_s + d_s1]
    nonzero_cols = {j for i in range(inv.n) for j in range(inv.n) if B[i, j]}
    assert nonzero_cols <= {c - 1 for c in cols}
    R = rcf_matrix(inv)
    h = q // p1
    assert R + B == block_diag(F, [companion(h), companion(p1)])
    assert charpoly(R + B) == q


def test_construct_in_rcf_rejects_infeasible():
    x = X(Q)
    with pytest.raises(InputError):
        construct_in_rcf(InvariantFactors(Q, (x, x)), (x - 1) * (x - 2), 1)


def test_construct_examples():
    F = GF(3)
    x = X(F)
    pert = construct(Mat.zeros(F, 2), x * (x - 1), 1)
    assert pert.B == Mat(F, [[1, 0], [0, 0]]) and pert.rank_B == 1
    pert = construct(companion(P(Q, 1, 0, 1)), P(Q, -1, 0, 1), 1)
    assert pert.B == Mat(Q, [[0, 2], [0, 0]])
    assert pert.altered_columns_rcf == (2,)
    A = random_matrix(Q, 4, random.Random(5))
    pert = construct(A, charpoly(A), 2)
    assert pert.rank_B <= 2 and pert.achieved_charpoly == charpoly(A)


def test_construct_infeasible_carries_certificate():
    x = X(Q)
    with pytest.raises(InfeasibleError) as info:
        construct(Mat.zeros(Q, 3), (x - 1) * (x - 2) * (x - 3), 1)
    assert info.value.certificate.required_divisor == x**2
    assert not info.value.certificate.feasible


def _feasible_target(A, m, rng):
    inv = smith_invariant_factors(A)
    div = required_divisor(inv, m)
    return div * random_monic(A.field, A.nrows - div.degree, rng)


@given(st.data())
def test_completeness(data):
    F = data.draw(fields)
    n = data.draw(st.integers(1, 5))
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    A = random_derogatory(F, n, rng) if data.draw(st.booleans()) else random_matrix(F, n, rng)
    m = data.draw(st.integers(0, n + 1))
    q = _feasible_target(A, m, rng)
    pert = construct(A, q, m)
    assert pert.rank_B <= m
    assert charpoly(A + pert.B) == q
    assert verify(A, pert.B, q, m).passed


@given(st.data())
def test_construct_basis_covariance(data):
    F = data.draw(fields)
    n = data.draw(st.integers(1, 4))
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    A = random_derogatory(F, n, rng)
    m = data.draw(st.integers(1, n))
    q = _feasible_target(A, m, rng)
    T = random_invertible(F, n, rng)
    A2 = mat_inverse(T) @ A @ T
    pert = construct(A2, q, m)
    assert charpoly(A2 + pert.B) == q and rank(pert.B) <= m


def test_condition_equivalence_gf3_sampled(rng):
    F = GF(3)
    for _ in range(60):
        n = rng.randint(1, 3)
        A = random_derogatory(F, n, rng) if rng.random() < 0.5 else random_matrix(F, n, rng)
        inv = smith_invariant_factors(A)
        jd = jordan_data(A, inv)
        for m in range(n + 1):
            div = required_divisor(inv, m)
            for q in monic_polys(F, n):
                assert check_jordan_condition(jd, q, m) == div.divides(q)


def test_condition_equivalence_gf2_n4_sampled(rng):
    F = GF(2)
    for _ in range(40):
        A = random_derogatory(F, 4, rng) if rng.random() < 0.5 else random_matrix(F, 4, rng)
        inv = smith_invariant_factors(A)
        jd = jordan_data(A, inv)
        for m in range(5):
            div = required_divisor(inv, m)
            for q in monic_polys(F, 4):
                assert check_jordan_condition(jd, q, m) == div.divides(q)


def test_verify_examples(rng):
    A = random_matrix(Q, 3, rng)
    assert verify(A, Mat.zeros(Q, 3), charpoly(A), 0).passed
    rep = verify(Mat.zeros(Q, 2), Mat(Q, [[1, 0], [0, 0]]), P(Q, 0, -1, 1), 1)
    assert rep.passed and rep.rank_B == 1
    bad = verify(A, random_rank_matrix(Q, 3, 2, rng), charpoly(A), 1)
    assert not bad.rank_ok and not bad.passed


def test_telescoping_examples(rng):
    F = GF(5)
    A, B = random_matrix(F, 4, rng), random_matrix(F, 4, rng)
    assert telescoping_check(A, B, 1)
    assert (B + A) ** 2 == B @ (B + A) + A @ B + A @ A
    assert telescoping_check(A, B, 2)
    assert telescoping_check(A, B, 4)
    with pytest.raises(ValueError):
        telescoping_check(A, B, 0)


def test_rank_bound_examples(rng):
    F = Q
    B = random_rank_matrix(F, 4, 2, rng)
    lhs, rhs = rank_bound_check(Mat.zeros(F, 4), B, 3)
    assert lhs == rank(B**3) and rhs == 3 * rank(B) and lhs <= rhs
    A = random_matrix(F, 4, rng)
    assert rank_bound_check(A, Mat.zeros(F, 4), 2) == (rank(A**2), rank(A**2))
    A5, B5 = random_matrix(F, 5, rng), random_rank_matrix(F, 5, 1, rng)
    lhs, rhs = rank_bound_check(A5, B5, 3)
    assert lhs <= rhs


@given(matrices(max_n=4), matrices(max_n=4), st.integers(1, 5))
def test_identities_random(A, B, k):
    if A.shape != B.shape or A.field != B.field:
        B = Mat(A.field, [[(i * 7 + j * 3) % 5 for j in range(A.ncols)] for i in range(A.nrows)])
    assert telescoping_check(A, B, k)
    lhs, rhs = rank_bound_check(A, B, k)
    assert lhs <= rhs


def _chains(max_len, max_entry):
    for t in range(1, max_len + 1):
        for c in itertools.combinations_with_replacement(range(max_entry, -1, -1), t):
            yield list(c)


def test_rank_profile_values():
    assert rank_profile([3, 2, 1], 2) == [1 * 3 + 3, 0 * 2 + 5, -1 * 1 + 6]


def test_rank_profile_minimum_at_m():
    for blocks in _chains(4, 3):
        for m in range(1, len(blocks) + 1):
            s = rank_profile(blocks, m)
            assert s[m - 1] == min(s)


def test_altered_columns():
    x = X(Q)
    inv = InvariantFactors(Q, (x, x**2, x**3))
    assert altered_columns(inv, 1) == [3]
    assert altered_columns(inv, 2) == [3, 5]
    assert altered_columns(inv, 9) == [3, 5, 6]
    assert altered_columns(inv, 0) == []
