"""Invariant factors, rational canonical form and Jordan block data.

The invariant factors come from a Smith normal form of ``xI - A`` computed
with the minimal-degree pivot rule.  The row operations are tracked (as the
inverse transform), which turns the diagonalization into F[x]-module
generators of F^n; their Krylov bases assemble the change of basis ``S`` with
``S^-1 A S = R``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Factorization, Field, Poly, factor_irreducible, factor_multiplicity, is_irreducible, poly_divmod, poly_product
from .errors import DimensionError, InputError, VerificationError
from .matrix import Mat, PolyMat, block_diag, char_matrix, charpoly, companion, mat_inverse, nullity, poly_apply, poly_at


@dataclass(frozen=True)
class InvariantFactors:
    """The chain p_1 | p_2 | ... | p_s of monic nonconstant invariant factors."""

    field: Field
    factors: tuple

    def __post_init__(self):
        for f in self.factors:
            if f.field != self.field or f.degree < 1 or not f.is_monic():
                raise ValueError(f"invalid invariant factor {f!r}")
        for a, b in zip(self.factors, self.factors[1:]):
            if not a.divides(b):
                raise ValueError(f"{a} does not divide {b}")

    @property
    def s(self) -> int:
        return len(self.factors)

    @property
    def degrees(self) -> list[int]:
        return [f.degree for f in self.factors]

    @property
    def n(self) -> int:
        return sum(self.degrees)

    def product(self) -> Poly:
        return poly_product(self.field, self.factors)

    def minimal_polynomial(self) -> Poly:
        return self.factors[-1] if self.factors else Poly.one(self.field)

    def __getitem__(self, i):
        return self.factors[i]

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)


def smith_diagonal(P: PolyMat, track_rows: bool = False):
    """Smith normal form diagonal of a square nonsingular polynomial matrix.

    Returns ``(diag, Uinv)`` where ``U P V = diag(d_1, ..., d_n)`` with every
    d_i monic and d_i | d_{i+1}.  ``Uinv`` (the inverse of the accumulated
    row transform) is returned as a list of rows when ``track_rows`` is set,
    otherwise None.
    """
    F = P.field
    n = P.nrows
    if n != P.ncols:
        raise DimensionError("Smith form implemented for square matrices only")
    M = [list(r) for r in P.entries]
    one, zero = Poly.one(F), Poly.zero(F)
    Ui = [[one if i == j else zero for j in range(n)] for i in range(n)] if track_rows else None

    def swap_rows(i, k):
        M[i], M[k] = M[k], M[i]
        if Ui is not None:
            for r in Ui:
                r[i], r[k] = r[k], r[i]

    def add_row(i, k, c):
        # row_i += c * row_k
        M[i] = [a + c * b for a, b in zip(M[i], M[k])]
        if Ui is not None:
            for r in Ui:
                r[k] = r[k] - c * r[i]

    def scale_row(i, u):
        M[i] = [a * u for a in M[i]]
        if Ui is not None:
            uinv = F.inv(u)
            for r in Ui:
                r[i] = r[i] * uinv

    def swap_cols(j, k):
        for r in M:
            r[j], r[k] = r[k], r[j]

    def add_col(j, k, c):
        # col_j += c * col_k
        for r in M:
            r[j] = r[j] + c * r[k]

    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    e = M[i][j]
                    if not e.is_zero() and (best is None or e.degree < best[0]):
                        best = (e.degree, i, j)
            if best is None:
                raise ValueError("polynomial matrix is singular")
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            piv = M[t][t]
            dirty = False
            for i in range(t + 1, n):
                if not M[i][t].is_zero():
                    q, r = poly_divmod(M[i][t], piv)
                    add_row(i, t, -q)
                    dirty = dirty or not r.is_zero()
            for j in range(t + 1, n):
                if not M[t][j].is_zero():
                    q, r = poly_divmod(M[t][j], piv)
                    add_col(j, t, -q)
                    dirty = dirty or not r.is_zero()
            if dirty:
                continue
            bad = None
            for i in range(t + 1, n):
                for j in range(t + 1, n):
                    if not poly_divmod(M[i][j], piv)[1].is_zero():
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, one)
        lc = M[t][t].lc
        if lc != F.one:
            scale_row(t, F.inv(lc))
    return [M[i][i] for i in range(n)], Ui


def smith_invariant_factors(A: Mat) -> InvariantFactors:
    """Nonconstant invariant factors of A, in divisibility order."""
    if not A.is_square:
        raise DimensionError(f"invariant factors of a {A.shape} matrix")
    diag, _ = smith_diagonal(char_matrix(A))
    return InvariantFactors(A.field, tuple(d for d in diag if d.degree >= 1))


def rcf_matrix(inv: InvariantFactors) -> Mat:
    """Block diagonal companion(p_s) + ... + companion(p_1), largest block first."""
    return block_diag(inv.field, [companion(p) for p in reversed(inv.factors)])


@dataclass(frozen=True)
class RcfDecomposition:
    R: Mat
    S: Mat
    inv: InvariantFactors

    @property
    def S_inv(self) -> Mat:
        return mat_inverse(self.S)


def rcf_transform(A: Mat) -> RcfDecomposition:
    """Rational canonical form with change of basis: ``S^-1 A S == R``.

    The blocks of R are ordered companion(p_s) top-left down to companion(p_1).
    If A already is in that form, S is the identity.
    """
    if not A.is_square:
        raise DimensionError(f"rational canonical form of a {A.shape} matrix")
    F = A.field
    n = A.nrows
    diag, Ui = smith_diagonal(char_matrix(A), track_rows=True)
    inv = InvariantFactors(F, tuple(d for d in diag if d.degree >= 1))
    R = rcf_matrix(inv)
    if R == A:
        return RcfDecomposition(R, Mat.identity(F, n), inv)
    basis = []
    for j in range(n - 1, -1, -1):
        d = diag[j]
        if d.degree < 1:
            continue
        w = [F.zero] * n
        for i in range(n):
            f = Ui[i][j]
            if f.is_zero():
                continue
            e = [F.zero] * n
            e[i] = F.one
            w = [F.norm(a + b) for a, b in zip(w, poly_apply(f, A, e))]
        v = w
        for _ in range(d.degree):
            basis.append(v)
            v = A.apply(v)
    S = Mat.from_columns(F, basis)
    try:
        Sinv = mat_inverse(S)
    except ArithmeticError as exc:
        raise VerificationError("rational canonical basis is singular") from exc
    if Sinv @ A @ S != R:
        raise VerificationError("S^-1 A S does not equal the rational canonical form")
    return RcfDecomposition(R, S, inv)


@dataclass(frozen=True)
class JordanEntry:
    factor: Poly
    blocks: tuple  # non-increasing, units of the exponent of `factor`
    alg_mult: int


@dataclass(frozen=True)
class JordanData:
    """Jordan block data per irreducible factor of the characteristic polynomial.

    ``complete`` is False over Q when part of the minimal polynomial could not
    be factored; that part is kept in ``unfactored``.
    """

    entries: tuple
    complete: bool
    unfactored: Poly | None = None

    def entry(self, f: Poly) -> JordanEntry | None:
        for e in self.entries:
            if e.factor == f:
                return e
        return None


def jordan_from_invariants(inv: InvariantFactors, facts) -> JordanData:
    """Read Jordan data from the chain: block j of f is its multiplicity in p_{s-j+1}.

    ``facts`` is the factorization of p_s, either a :class:`Factorization`
    or an iterable of ``(factor, multiplicity)`` pairs.
    """
    F = inv.field
    top = inv.minimal_polynomial()
    if isinstance(facts, Factorization):
        residual = facts.residual
        pairs = list(facts.factors)
    else:
        residual = Poly.one(F)
        pairs = list(facts)
    prod = residual
    for f, k in pairs:
        prod = prod * f**k
    if prod != top:
        raise ValueError("factorization does not multiply to the largest invariant factor")
    entries = []
    for f, _ in pairs:
        blocks = []
        for p in reversed(inv.factors):
            k = factor_multiplicity(p, f)
            if k == 0:
                break
            blocks.append(k)
        entries.append(JordanEntry(f, tuple(blocks), sum(blocks)))
    complete = residual.is_one()
    return JordanData(tuple(entries), complete, None if complete else residual)


def jordan_data(A: Mat, inv: InvariantFactors | None = None, seed: int = 0) -> JordanData:
    if inv is None:
        inv = smith_invariant_factors(A)
    top = inv.minimal_polynomial()
    return jordan_from_invariants(inv, factor_irreducible(top, seed=seed))


def jordan_from_ranks(A: Mat, f: Poly) -> list[int]:
    """Block sizes for the irreducible factor f from nullities of f(A)^k.

    The number of blocks of size >= k is (nullity f(A)^k - nullity f(A)^(k-1)) / deg f.
    Returns [] when f does not divide the characteristic polynomial.
    """
    if f.field != A.field:
        raise InputError(f"{f.field} vs {A.field}")
    if is_irreducible(f) is False:
        raise InputError(f"{f} is not irreducible")
    f = f.monic()
    n = A.nrows
    d = f.degree
    fA = poly_at(f, A)
    counts = []
    prev_null = 0
    P = Mat.identity(A.field, n)
    while True:
        P = P @ fA
        nl = nullity(P)
        if nl == prev_null:
            break
        step = nl - prev_null
        if step % d:
            raise VerificationError("nullity jump not a multiple of the factor degree")
        counts.append(step // d)
        prev_null = nl
    # counts[k-1] = number of blocks of size >= k
    blocks = []
    for k in range(len(counts), 0, -1):
        exact = counts[k - 1] - (counts[k] if k < len(counts) else 0)
        blocks.extend([k] * exact)
    return blocks


def charpoly_via_invariants(A: Mat) -> Poly:
    """Product of the invariant factors; an independent route to charpoly(A)."""
    return smith_invariant_factors(A).product()


__all__ = [
    "InvariantFactors",
    "RcfDecomposition",
    "JordanEntry",
    "JordanData",
    "smith_diagonal",
    "smith_invariant_factors",
    "rcf_matrix",
    "rcf_transform",
    "jordan_from_invariants",
    "jordan_from_ranks",
    "jordan_data",
    "charpoly_via_invariants",
    "charpoly",
]
