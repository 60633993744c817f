"""Rank-bounded perturbations with a prescribed characteristic polynomial.

A monic q of degree n is reachable as charpoly(A + B) with rank(B) <= m
exactly when p_1 * ... * p_{s-m} divides q, where p_1 | ... | p_s are the
invariant factors of A.  The equivalent per-eigenvalue form compares the
multiplicity of each irreducible factor in q against the algebraic
multiplicity minus the m largest Jordan blocks.  When feasible, B is built in
the rational canonical basis by rewriting m columns so that the top-left
corner becomes companion(h) with h = q / (p_1 ... p_{s-m}).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Poly, factor_multiplicity, poly_divmod, poly_product
from .canonical import InvariantFactors, JordanData, jordan_data, rcf_matrix, rcf_transform, smith_invariant_factors
from .errors import DimensionError, FieldMismatchError, IncompleteJordanData, InfeasibleError, InputError, VerificationError
from .matrix import Mat, charpoly, rank


@dataclass(frozen=True)
class JordanRow:
    factor: Poly
    mult_in_q: int
    alg_mult: int
    top_m_blocks: int

    @property
    def required(self) -> int:
        return max(self.alg_mult - self.top_m_blocks, 0)

    @property
    def holds(self) -> bool:
        return self.mult_in_q >= self.alg_mult - self.top_m_blocks


@dataclass(frozen=True)
class FeasibilityCertificate:
    feasible: bool
    m_requested: int
    m_effective: int
    required_divisor: Poly
    remainder: Poly
    quotient_h: Poly | None
    invariants: InvariantFactors
    jordan_report: tuple | None = None
    jordan_complete: bool = False

    @property
    def jordan_side_holds(self) -> bool | None:
        """Verdict of the per-factor inequality, or None if the data is partial."""
        if self.jordan_report is None or not self.jordan_complete:
            return None
        return all(r.holds for r in self.jordan_report)


@dataclass(frozen=True)
class Perturbation:
    B: Mat
    rank_B: int
    altered_columns_rcf: tuple  # 1-based column indices in the canonical basis
    achieved_charpoly: Poly
    certificate: FeasibilityCertificate | None = field(default=None, compare=False)


def effective_rank(inv: InvariantFactors, m: int) -> int:
    if m < 0:
        raise InputError("rank bound must be nonnegative")
    return min(m, inv.s)


def required_divisor(inv: InvariantFactors, m: int) -> Poly:
    """p_1 * ... * p_{s - min(m, s)}; the empty product is 1."""
    k = inv.s - effective_rank(inv, m)
    return poly_product(inv.field, inv.factors[:k])


def _check_target(A: Mat, q: Poly):
    if not A.is_square:
        raise DimensionError(f"A must be square, got {A.shape}")
    if q.field != A.field:
        raise FieldMismatchError(f"polynomial over {q.field}, matrix over {A.field}")
    if not q.is_monic():
        raise InputError(f"target polynomial {q} is not monic")
    if q.degree != A.nrows:
        raise InputError(f"target has degree {q.degree}, expected {A.nrows}")


def jordan_rows(jd: JordanData, q: Poly, m: int) -> tuple:
    return tuple(
        JordanRow(e.factor, factor_multiplicity(q, e.factor), e.alg_mult, sum(e.blocks[:m]))
        for e in jd.entries
    )


def check_jordan_condition(jd: JordanData, q: Poly, m: int) -> bool:
    """Per-factor form: mult of f in q >= alg mult of f minus its m largest blocks."""
    if not jd.complete:
        raise IncompleteJordanData("Jordan data is incomplete; the condition cannot be decided")
    if m < 0:
        raise InputError("rank bound must be nonnegative")
    return all(r.holds for r in jordan_rows(jd, q, m))


def check_feasible(A: Mat, q: Poly, m: int, inv: InvariantFactors | None = None) -> FeasibilityCertificate:
    _check_target(A, q)
    if inv is None:
        inv = smith_invariant_factors(A)
    m_eff = effective_rank(inv, m)
    div = required_divisor(inv, m)
    h, rem = poly_divmod(q, div)
    feasible = rem.is_zero()
    jd = jordan_data(A, inv)
    return FeasibilityCertificate(
        feasible=feasible,
        m_requested=m,
        m_effective=m_eff,
        required_divisor=div,
        remainder=rem,
        quotient_h=h if feasible else None,
        invariants=inv,
        jordan_report=jordan_rows(jd, q, m),
        jordan_complete=jd.complete,
    )


def altered_columns(inv: InvariantFactors, m: int) -> list[int]:
    """delta_i = d_s + d_{s-1} + ... + d_{s-i+1}, for i = 1..m_eff (1-based)."""
    m_eff = effective_rank(inv, m)
    degs = inv.degrees
    out, acc = [], 0
    for i in range(m_eff):
        acc += degs[inv.s - 1 - i]
        out.append(acc)
    return out


def construct_in_rcf(inv: InvariantFactors, q: Poly, m: int) -> tuple[Mat, list[int]]:
    """B in the canonical basis such that R + B = companion(h) + companion(p_{s-m}) + ... ."""
    F = inv.field
    n = inv.n
    div = required_divisor(inv, m)
    h, rem = poly_divmod(q, div)
    if not rem.is_zero():
        raise InputError(f"required divisor {div} does not divide {q}")
    cols = altered_columns(inv, m)
    R = rcf_matrix(inv)
    B = [[F.zero] * n for _ in range(n)]
    if not cols:
        return Mat(F, B, canonical=True, ncols=n), cols
    delta_m = cols[-1]
    if h.degree != delta_m:
        raise VerificationError(f"deg h = {h.degree} differs from delta_m = {delta_m}")
    for c in cols:
        j = c - 1
        if c == delta_m:
            new = [F.norm(-b) for b in h.coeffs[:delta_m]] + [F.zero] * (n - delta_m)
        else:
            new = [F.zero] * n
            new[c] = F.one
        for i in range(n):
            B[i][j] = F.norm(new[i] - R.rows[i][j])
    return Mat(F, B, canonical=True), cols


def construct(A: Mat, q: Poly, m: int) -> Perturbation:
    """Build B with rank(B) <= m and charpoly(A + B) == q, or raise InfeasibleError."""
    cert = check_feasible(A, q, m)
    if not cert.feasible:
        raise InfeasibleError(cert)
    dec = rcf_transform(A)
    B_rcf, cols = construct_in_rcf(dec.inv, q, m)
    B = dec.S @ B_rcf @ dec.S_inv
    rk = rank(B)
    achieved = charpoly(A + B)
    if rk > m:
        raise VerificationError(f"constructed B has rank {rk} > {m}")
    if achieved != q:
        raise VerificationError(f"charpoly(A + B) = {achieved}, expected {q}")
    return Perturbation(B, rk, tuple(cols), achieved, cert)


@dataclass(frozen=True)
class VerifyReport:
    rank_B: int
    rank_ok: bool
    charpoly: Poly
    charpoly_ok: bool

    @property
    def passed(self) -> bool:
        return self.rank_ok and self.charpoly_ok


def verify(A: Mat, B: Mat, q: Poly, m: int) -> VerifyReport:
    """Independent re-check of a claimed perturbation."""
    if A.field != B.field or q.field != A.field:
        raise FieldMismatchError("A, B and q must share a field")
    if A.shape != B.shape or not A.is_square:
        raise DimensionError(f"A is {A.shape}, B is {B.shape}")
    rk = rank(B)
    cp = charpoly(A + B)
    return VerifyReport(rk, rk <= m, cp, cp == q)


def _check_pair(A: Mat, B: Mat, k: int):
    if A.field != B.field:
        raise FieldMismatchError(f"{A.field} vs {B.field}")
    if A.shape != B.shape or not A.is_square:
        raise DimensionError(f"A is {A.shape}, B is {B.shape}")
    if k < 1:
        raise ValueError("k must be at least 1")


def telescoping_check(A: Mat, B: Mat, k: int) -> bool:
    """(B+A)^k == sum_{i<k} A^i B (B+A)^(k-i-1) + A^k, compared exactly."""
    _check_pair(A, B, k)
    S = B + A
    rhs = A**k
    Ai = Mat.identity(A.field, A.nrows)
    for i in range(k):
        rhs = rhs + Ai @ B @ S ** (k - i - 1)
        Ai = Ai @ A
    return S**k == rhs


def rank_bound_check(A: Mat, B: Mat, k: int) -> tuple[int, int]:
    """(rank((A+B)^k), k*rank(B) + rank(A^k)); the first never exceeds the second."""
    _check_pair(A, B, k)
    return rank((A + B) ** k), k * rank(B) + rank(A**k)


def rank_profile(blocks, m: int) -> list[int]:
    """s_i = (m - i) k_i + k_1 + ... + k_i for i = 1..len(blocks).

    Each s_i bounds rank((A+B-lam)^{k_i}) - (n - alg); its minimum sits at i = m,
    which is why only the m largest blocks enter the feasibility condition.
    """
    out = []
    acc = 0
    for i, k in enumerate(blocks, start=1):
        acc += k
        out.append((m - i) * k + acc)
    return out
