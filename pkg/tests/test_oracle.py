import itertools
import random

import pytest

from conftest import P
from oracles import rank_bruteforce_gf
from rankpert.algebra import GF, Q, Poly
from rankpert.errors import BudgetExceeded, InputError
from rankpert.matrix import Mat, random_matrix, rank
from rankpert.oracle import (
    EnumerationBudget,
    achievable_set_bruteforce,
    achievable_set_predicted,
    charpoly_minor_crosscheck,
    count_rank_exact,
    count_rank_le,
    enumerate_rank_le,
    gaussian_binomial,
    identity_battery,
    minor_battery,
    necessity_check,
    sampled_matrices,
    theorem_check,
    theorem_sweep,
)


def test_gaussian_binomial_small():
    assert gaussian_binomial(3, 1, 2) == 7
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(3, 2, 3) == 13


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2)])
def test_rank_counts_match_formula(p, n):
    F = GF(p)
    counts = [0] * (n + 1)
    for flat in itertools.product(range(p), repeat=n * n):
        M = Mat(F, [flat[i * n : (i + 1) * n] for i in range(n)])
        counts[rank_bruteforce_gf(M)] += 1
    assert counts == [count_rank_exact(n, r, p) for r in range(n + 1)]


def test_enumerate_examples():
    F = GF(2)
    got = list(enumerate_rank_le(F, 2, 1))
    assert len(got) == 10 and len(set(got)) == 10
    assert (2**2 - 1) ** 2 == 9
    assert list(enumerate_rank_le(GF(3), 3, 0)) == [Mat.zeros(GF(3), 3)]
    assert len(set(enumerate_rank_le(F, 2, 2))) == 16


@pytest.mark.parametrize("p,n,m", [(2, 3, 1), (2, 3, 2), (3, 2, 1), (3, 3, 1), (5, 2, 1)])
def test_stratified_matches_sweep(p, n, m):
    F = GF(p)
    sweep = list(enumerate_rank_le(F, n, m, strategy="sweep"))
    strat = list(enumerate_rank_le(F, n, m, strategy="stratified"))
    assert len(strat) == len(set(strat)) == count_rank_le(n, m, p)
    assert set(strat) == set(sweep)
    assert all(rank(B) <= m for B in strat)


def test_enumerate_budget_and_field():
    with pytest.raises(BudgetExceeded):
        list(enumerate_rank_le(GF(2), 3, 1, EnumerationBudget(max_candidates=100)))
    with pytest.raises(InputError):
        list(enumerate_rank_le(Q, 2, 1))
    with pytest.raises(ValueError):
        EnumerationBudget(max_candidates=0)


def test_achievable_examples():
    F = GF(2)
    x = Poly.x(F)
    Z = Mat.zeros(F, 2)
    assert achievable_set_bruteforce(Z, 1) == {x**2, x**2 + x}
    assert achievable_set_predicted(Z, 1) == {x**2, x**2 + x}
    I = Mat.identity(F, 2)
    assert achievable_set_bruteforce(I, 1) == {x**2 + x, x**2 + 1}
    assert achievable_set_predicted(Mat.zeros(F, 3), 1) == {x**3, x**3 + x**2}
    assert len(achievable_set_predicted(Mat.zeros(F, 3), 3)) == 2**3
    A = random_matrix(GF(3), 3, random.Random(1))
    from rankpert.matrix import charpoly

    assert achievable_set_bruteforce(A, 0) == {charpoly(A)}
    with pytest.raises(InputError):
        achievable_set_predicted(Mat.zeros(Q, 2), 1)


def test_theorem_check_examples():
    rep = theorem_check(Mat.zeros(GF(2), 2), 1)
    assert rep.equal and rep.counterexample is None
    d = rep.to_dict()
    assert d["counts"] == {"candidates": 10, "brute_force": 2, "predicted": 2}
    A = sampled_matrices(GF(3), 3, 1, seed=4)[0]
    assert theorem_check(A, 1, seed=4).equal


def test_theorem_check_reports_counterexample():
    # feed a deliberately incomplete candidate list: only B = 0
    F = GF(2)
    rep = theorem_check(Mat.zeros(F, 2), 1, candidates=[Mat.zeros(F, 2)])
    assert not rep.equal
    assert rep.counterexample["side"] == "predicted_only"
    assert rep.counterexample["polynomial"] == ["0", "1", "1"]


def test_small_sweep_gf2_n2():
    rep = theorem_sweep(GF(2), 2, range(3))
    assert rep.runs == 16 * 3 and rep.all_equal
    assert rep.necessity_failures == 0


def test_necessity_check_flags_high_rank():
    F = GF(2)
    A = Mat.zeros(F, 3)
    full = list(enumerate_rank_le(F, 3, 3))
    count, bad = necessity_check(A, 1, full)
    assert count == 512
    assert bad and all(rank(B) >= 2 for B in bad)


def test_minor_crosscheck_examples():
    F = Q
    assert charpoly_minor_crosscheck(Mat.identity(F, 2))
    assert charpoly_minor_crosscheck(Mat.zeros(F, 3))
    assert charpoly_minor_crosscheck(random_matrix(GF(7), 4, random.Random(2)))
    with pytest.raises(InputError):
        charpoly_minor_crosscheck(Mat.zeros(F, 9))


def test_batteries_small():
    rep = identity_battery(40, seed=1)
    assert rep["telescoping"]["failures"] == [] and rep["rank_bound"]["failures"] == []
    assert minor_battery(30, seed=1)["failures"] == []
