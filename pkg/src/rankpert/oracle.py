"""Brute-force checks of the perturbation theorem over small prime fields.

Everything here is deliberately naive: the achievable set is found by
sweeping every perturbation of rank <= m and collecting characteristic
polynomials, and is then compared with the set predicted by the divisibility
criterion.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field as dc_field

from .algebra import Field, Poly, monic_polys
from .canonical import jordan_data, smith_invariant_factors
from .errors import BudgetExceeded, InputError
from .matrix import Mat, _echelon, charpoly, charpoly_coeffs, principal_minor_sum, random_matrix
from .perturb import check_jordan_condition, required_divisor

FULL_SWEEP_LIMIT = 2**20


@dataclass(frozen=True)
class EnumerationBudget:
    max_candidates: int = FULL_SWEEP_LIMIT
    seed: int = 0

    def __post_init__(self):
        if self.max_candidates <= 0:
            raise ValueError("max_candidates must be positive")


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_rank_exact(n: int, r: int, q: int, cols: int | None = None) -> int:
    """Number of n-by-cols matrices of rank r over GF(q)."""
    cols = n if cols is None else cols
    out = gaussian_binomial(n, r, q)
    for i in range(r):
        out *= q**cols - q**i
    return out


def count_rank_le(n: int, m: int, q: int) -> int:
    return sum(count_rank_exact(n, r, q) for r in range(min(m, n) + 1))


def _require_prime_field(field: Field):
    if not field.is_prime_field:
        raise InputError("enumeration needs a prime field")


def _rank_rows(field: Field, rows) -> int:
    return len(_echelon(field, rows)[1])


def _echelon_bases(field: Field, n: int, r: int):
    """All r-by-n reduced row echelon matrices of rank r (one per r-dim subspace)."""
    p = field.modulus
    for piv in itertools.combinations(range(n), r):
        free = [(i, j) for i in range(r) for j in range(piv[i] + 1, n) if j not in piv]
        for vals in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(r)]
            for i, c in enumerate(piv):
                rows[i][c] = 1
            for (i, j), v in zip(free, vals):
                rows[i][j] = v
            yield rows


def enumerate_rank_le(field: Field, n: int, m: int, budget: EnumerationBudget | None = None, strategy: str = "auto"):
    """Yield every n-by-n matrix of rank <= m over GF(p) exactly once.

    ``strategy`` is ``"sweep"`` (all p^(n^2) matrices, filtered by rank),
    ``"stratified"`` (each rank-r matrix as C @ X, C the transpose of a
    reduced echelon basis of its column space and X of full row rank) or
    ``"auto"``, which sweeps when p^(n^2) <= 2^20.
    """
    _require_prime_field(field)
    budget = budget or EnumerationBudget()
    if m < 0:
        raise InputError("rank bound must be nonnegative")
    m = min(m, n)
    p = field.modulus
    total = p ** (n * n)
    if strategy == "auto":
        strategy = "sweep" if total <= FULL_SWEEP_LIMIT else "stratified"
    cost = total if strategy == "sweep" and m < n else count_rank_le(n, m, p)
    if cost > budget.max_candidates:
        raise BudgetExceeded(f"{cost} candidates exceed the budget of {budget.max_candidates}; shrink n or p")
    if strategy == "sweep":
        for flat in itertools.product(range(p), repeat=n * n):
            rows = [flat[i * n : (i + 1) * n] for i in range(n)]
            if m >= n or _rank_rows(field, rows) <= m:
                yield Mat(field, rows, canonical=True, ncols=n)
    elif strategy == "stratified":
        yield Mat.zeros(field, n)
        for r in range(1, m + 1):
            xs = [x for x in itertools.product(range(p), repeat=r * n) if _rank_rows(field, [x[i * n : (i + 1) * n] for i in range(r)]) == r]
            for basis in _echelon_bases(field, n, r):
                C = list(zip(*basis))  # n x r
                for x in xs:
                    X = [x[i * n : (i + 1) * n] for i in range(r)]
                    rows = [[sum(C[i][k] * X[k][j] for k in range(r)) % p for j in range(n)] for i in range(n)]
                    yield Mat(field, rows, canonical=True, ncols=n)
    else:
        raise ValueError(f"unknown enumeration strategy {strategy!r}")


def _perturbed_charpoly(A: Mat, B: Mat) -> Poly:
    F = A.field
    p = F.modulus
    rows = [[(a + b) % p for a, b in zip(ra, rb)] for ra, rb in zip(A.rows, B.rows)]
    return Poly(F, charpoly_coeffs(F, rows), canonical=True)


def achievable_witnesses(A: Mat, m: int, budget: EnumerationBudget | None = None, candidates=None) -> dict:
    """Map each reachable charpoly(A + B) to the first B that reaches it."""
    _require_prime_field(A.field)
    if candidates is None:
        candidates = enumerate_rank_le(A.field, A.nrows, m, budget)
    out = {}
    for B in candidates:
        q = _perturbed_charpoly(A, B)
        if q not in out:
            out[q] = B
    return out


def achievable_set_bruteforce(A: Mat, m: int, budget: EnumerationBudget | None = None, candidates=None) -> set:
    return set(achievable_witnesses(A, m, budget, candidates))


def achievable_set_predicted(A: Mat, m: int, inv=None) -> set:
    """All monic degree-n multiples of the required divisor."""
    F = A.field
    if not F.is_prime_field:
        raise InputError("the predicted set is infinite over Q")
    if inv is None:
        inv = smith_invariant_factors(A)
    div = required_divisor(inv, m)
    return {div * g for g in monic_polys(F, A.nrows - div.degree)}


@dataclass
class TheoremReport:
    field: str
    n: int
    m: int
    matrix: list
    brute_force_count: int
    predicted_count: int
    candidates: int
    equal: bool
    counterexample: dict | None = None
    seed: int | None = None
    wall_time: float = 0.0

    def to_dict(self) -> dict:
        return {
            "field": self.field,
            "n": self.n,
            "m": self.m,
            "matrix": self.matrix,
            "counts": {
                "candidates": self.candidates,
                "brute_force": self.brute_force_count,
                "predicted": self.predicted_count,
            },
            "equal": self.equal,
            "counterexample": self.counterexample,
            "seed": self.seed,
            "wall_time": self.wall_time,
        }


def theorem_check(A: Mat, m: int, budget: EnumerationBudget | None = None, candidates=None, seed: int | None = None) -> TheoremReport:
    """Compare the brute-force achievable set with the predicted one."""
    t0 = time.perf_counter()
    if candidates is None:
        candidates = list(enumerate_rank_le(A.field, A.nrows, m, budget))
    wit = achievable_witnesses(A, m, candidates=candidates)
    brute = set(wit)
    pred = achievable_set_predicted(A, m)
    cex = None
    if brute != pred:
        diff = sorted(brute ^ pred, key=Poly.sort_key)
        q = diff[0]
        cex = {
            "polynomial": q.to_strings(),
            "side": "brute_force_only" if q in brute else "predicted_only",
            "witness_B": wit[q].to_strings() if q in wit else None,
        }
    return TheoremReport(
        field=str(A.field),
        n=A.nrows,
        m=m,
        matrix=A.to_strings(),
        brute_force_count=len(brute),
        predicted_count=len(pred),
        candidates=len(candidates),
        equal=cex is None,
        counterexample=cex,
        seed=seed,
        wall_time=round(time.perf_counter() - t0, 6),
    )


def necessity_check(A: Mat, m: int, candidates) -> tuple[int, list]:
    """Check the per-factor Jordan inequality for charpoly(A + B), every B given.

    Returns (pairs checked, list of violating B).  The verdict depends on B
    only through charpoly(A + B), so it is cached per polynomial.
    """
    jd = jordan_data(A)
    verdict: dict[Poly, bool] = {}
    bad = []
    count = 0
    for B in candidates:
        q = _perturbed_charpoly(A, B)
        ok = verdict.get(q)
        if ok is None:
            ok = verdict[q] = check_jordan_condition(jd, q, m)
        if not ok:
            bad.append(B)
        count += 1
    return count, bad


def charpoly_minor_crosscheck(M: Mat) -> bool:
    """coeff of x^j in det(xI - M) == (-1)^(n-j) * sum of (n-j)-minors, all j."""
    n = M.nrows
    if n > 8:
        raise InputError("minor cross-check is limited to n <= 8")
    F = M.field
    cp = charpoly(M)
    for j in range(n + 1):
        s = principal_minor_sum(M, n - j)
        if (n - j) % 2:
            s = F.norm(-s)
        if cp.coeff(j) != s:
            return False
    return True


def all_matrices(field: Field, n: int):
    _require_prime_field(field)
    p = field.modulus
    for flat in itertools.product(range(p), repeat=n * n):
        yield Mat(field, [flat[i * n : (i + 1) * n] for i in range(n)], canonical=True, ncols=n)


@dataclass
class SweepReport:
    field: str
    n: int
    ms: list
    runs: int = 0
    equal_runs: int = 0
    pairs_checked: int = 0
    necessity_failures: int = 0
    counterexamples: list = dc_field(default_factory=list)
    seed: int | None = None
    wall_time: float = 0.0

    @property
    def all_equal(self) -> bool:
        return self.runs == self.equal_runs

    def to_dict(self) -> dict:
        return {
            "field": self.field,
            "n": self.n,
            "m_values": self.ms,
            "runs": self.runs,
            "equal_runs": self.equal_runs,
            "all_equal": self.all_equal,
            "pairs_checked": self.pairs_checked,
            "necessity_failures": self.necessity_failures,
            "counterexamples": self.counterexamples,
            "seed": self.seed,
            "wall_time": self.wall_time,
        }


def theorem_sweep(field: Field, n: int, ms, matrices=None, check_necessity: bool = True, budget=None, seed=None) -> SweepReport:
    """theorem_check (and optionally necessity_check) for every A and m given.

    The candidate perturbations for each m are enumerated once and reused.
    """
    t0 = time.perf_counter()
    ms = list(ms)
    if matrices is None:
        matrices = all_matrices(field, n)
    cands = {m: list(enumerate_rank_le(field, n, m, budget)) for m in ms}
    rep = SweepReport(str(field), n, ms, seed=seed)
    for A in matrices:
        for m in ms:
            tr = theorem_check(A, m, candidates=cands[m], seed=seed)
            rep.runs += 1
            if tr.equal:
                rep.equal_runs += 1
            else:
                rep.counterexamples.append(tr.to_dict())
            if check_necessity:
                cnt, bad = necessity_check(A, m, cands[m])
                rep.pairs_checked += cnt
                rep.necessity_failures += len(bad)
    rep.wall_time = round(time.perf_counter() - t0, 6)
    return rep


def sampled_matrices(field: Field, n: int, count: int, seed: int):
    rng = random.Random(seed)
    return [random_matrix(field, n, rng) for _ in range(count)]


def identity_battery(count: int, seed: int, fields=None, max_n: int = 5, max_k: int = 5) -> dict:
    """Run telescoping_check and rank_bound_check on seeded random (A, B, k).

    B is drawn with a random rank so the rank bound is exercised away from
    the trivial full-rank case.
    """
    from .algebra import GF, Q
    from .matrix import random_rank_matrix
    from .perturb import rank_bound_check, telescoping_check

    fields = fields or (Q, GF(5))
    rng = random.Random(seed)
    tele_fail, bound_fail = [], []
    for i in range(count):
        F = fields[i % len(fields)]
        n = rng.randint(1, max_n)
        k = rng.randint(1, max_k)
        A = random_matrix(F, n, rng, -3, 3)
        B = random_rank_matrix(F, n, rng.randint(0, n), rng, -2, 2)
        if not telescoping_check(A, B, k):
            tele_fail.append(i)
        lhs, rhs = rank_bound_check(A, B, k)
        if lhs > rhs:
            bound_fail.append(i)
    return {
        "seed": seed,
        "telescoping": {"runs": count, "failures": tele_fail},
        "rank_bound": {"runs": count, "failures": bound_fail},
    }


def minor_battery(count: int, seed: int, fields=None, max_n: int = 6) -> dict:
    from .algebra import GF, Q

    fields = fields or (Q, GF(7))
    rng = random.Random(seed)
    fail = []
    for i in range(count):
        F = fields[i % len(fields)]
        M = random_matrix(F, rng.randint(1, max_n), rng)
        if not charpoly_minor_crosscheck(M):
            fail.append(i)
    return {"seed": seed, "runs": count, "failures": fail}
