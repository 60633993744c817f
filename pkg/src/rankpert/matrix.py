"""Exact dense matrices over a field, and polynomial matrices over F[x]."""

from __future__ import annotations

import itertools
import random

from .algebra import Field, Poly
from .errors import DimensionError, FieldMismatchError, InputError, SingularMatrixError


class Mat:
    """Immutable dense matrix; ``rows`` is a tuple of tuples of canonical values."""

    __slots__ = ("field", "rows", "nrows", "ncols", "_hash")

    def __init__(self, field: Field, rows, *, canonical=False, ncols=None):
        if canonical:
            rows = tuple(tuple(r) for r in rows)
        else:
            rows = tuple(tuple(field(x) for x in r) for r in rows)
        nc = len(rows[0]) if rows else (ncols or 0)
        if any(len(r) != nc for r in rows):
            raise DimensionError("ragged matrix rows")
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = nc
        self._hash = None

    @classmethod
    def identity(cls, field: Field, n: int) -> Mat:
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)], canonical=True)

    @classmethod
    def zeros(cls, field: Field, r: int, c: int | None = None) -> Mat:
        c = r if c is None else c
        return cls(field, [[field.zero] * c for _ in range(r)], canonical=True, ncols=c)

    @classmethod
    def diag(cls, field: Field, values) -> Mat:
        values = [field(v) for v in values]
        n = len(values)
        return cls(
            field,
            [[values[i] if i == j else field.zero for j in range(n)] for i in range(n)],
            canonical=True,
        )

    @classmethod
    def from_columns(cls, field: Field, cols) -> Mat:
        cols = [list(c) for c in cols]
        return cls(field, list(zip(*cols)), canonical=True, ncols=len(cols))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list]:
        return [list(c) for c in zip(*self.rows)] if self.rows else [[] for _ in range(self.ncols)]

    def transpose(self) -> Mat:
        return Mat(self.field, list(zip(*self.rows)), canonical=True, ncols=self.nrows)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def _check(self, other: Mat):
        if not isinstance(other, Mat):
            raise TypeError(f"expected Mat, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        nm = self.field.norm
        return Mat(
            self.field,
            [[nm(a + b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            canonical=True,
            ncols=self.ncols,
        )

    def __sub__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {self.shape} and {other.shape}")
        nm = self.field.norm
        return Mat(
            self.field,
            [[nm(a - b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            canonical=True,
            ncols=self.ncols,
        )

    def __neg__(self):
        nm = self.field.norm
        return Mat(self.field, [[nm(-a) for a in r] for r in self.rows], canonical=True, ncols=self.ncols)

    def scale(self, c) -> Mat:
        F = self.field
        c = F(c)
        return Mat(F, [[F.norm(c * a) for a in r] for r in self.rows], canonical=True, ncols=self.ncols)

    def __matmul__(self, other):
        self._check(other)
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        nm = self.field.norm
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        return Mat(
            self.field,
            [[nm(sum(a * b for a, b in zip(r, c))) for c in cols] for r in self.rows],
            canonical=True,
            ncols=other.ncols,
        )

    def __pow__(self, k: int):
        if not self.is_square:
            raise DimensionError("only square matrices have powers")
        if k < 0:
            raise ValueError("negative matrix power")
        out, base = Mat.identity(self.field, self.nrows), self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def apply(self, v) -> list:
        nm = self.field.norm
        return [nm(sum(a * b for a, b in zip(r, v))) for r in self.rows]

    def __eq__(self, other):
        if isinstance(other, Mat):
            return self.field == other.field and self.shape == other.shape and self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.shape, self.rows))
        return self._hash

    def to_strings(self) -> list[list[str]]:
        fmt = self.field.format
        return [[fmt(a) for a in r] for r in self.rows]

    def __repr__(self):
        return f"Mat({self.field}, {self.to_strings()})"


def mat_arith(lhs: Mat, rhs: Mat, op: str) -> Mat:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs @ rhs
    raise ValueError(f"unknown matrix operation {op!r}")


def _echelon(F: Field, rows):
    """Row-reduce a copy of ``rows``; return (reduced rows, pivot columns)."""
    a = [list(r) for r in rows]
    nr = len(a)
    nc = len(a[0]) if a else 0
    norm = F.norm
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = None
        for i in range(r, nr):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        prow = a[r]
        inv = F.inv(prow[c])
        for i in range(r + 1, nr):
            row = a[i]
            t = row[c]
            if t:
                t = norm(t * inv)
                for j in range(c, nc):
                    row[j] = norm(row[j] - t * prow[j])
        pivots.append(c)
        r += 1
    return a, pivots


def rank(M: Mat) -> int:
    return len(_echelon(M.field, M.rows)[1])


def nullity(M: Mat) -> int:
    return M.ncols - rank(M)


def det(M: Mat):
    if not M.is_square:
        raise DimensionError("determinant of a non-square matrix")
    F = M.field
    a = [list(r) for r in M.rows]
    n = len(a)
    d = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return F.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = F.norm(-d)
        d = F.norm(d * a[c][c])
        inv = F.inv(a[c][c])
        for i in range(c + 1, n):
            t = a[i][c]
            if t:
                t = F.norm(t * inv)
                for j in range(c, n):
                    a[i][j] = F.norm(a[i][j] - t * a[c][j])
    return d


def charpoly_coeffs(F: Field, rows) -> list:
    """Coefficients of det(xI - M), ascending, via Hessenberg reduction.

    Works on raw rows; shared by :func:`charpoly` and the enumeration oracle.
    """
    h = [list(r) for r in rows]
    n = len(h)
    norm = F.norm
    for j in range(n - 2):
        piv = None
        for i in range(j + 1, n):
            if h[i][j]:
                piv = i
                break
        if piv is None:
            continue
        k = j + 1
        if piv != k:
            h[k], h[piv] = h[piv], h[k]
            for row in h:
                row[k], row[piv] = row[piv], row[k]
        inv = F.inv(h[k][j])
        for i in range(k + 1, n):
            u = h[i][j]
            if not u:
                continue
            u = norm(u * inv)
            ri, rk = h[i], h[k]
            for c in range(n):
                ri[c] = norm(ri[c] - u * rk[c])
            for row in h:
                row[k] = norm(row[k] + u * row[i])
    # p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
    polys = [[F.one]]
    for k in range(n):
        prev = polys[-1]
        cur = [F.zero] + prev
        hk = h[k][k]
        for d, c in enumerate(prev):
            cur[d] = norm(cur[d] - hk * c)
        t = F.one
        for i in range(k - 1, -1, -1):
            t = norm(t * h[i + 1][i])
            if not t:
                break
            coef = norm(h[i][k] * t)
            if coef:
                for d, c in enumerate(polys[i]):
                    cur[d] = norm(cur[d] - coef * c)
        polys.append(cur)
    return polys[-1]


def charpoly(M: Mat) -> Poly:
    """Monic det(xI - M)."""
    if not M.is_square:
        raise DimensionError(f"characteristic polynomial of a {M.shape} matrix")
    return Poly(M.field, charpoly_coeffs(M.field, M.rows), canonical=True)


def principal_minor_sum(M: Mat, k: int):
    """Sum of all k-by-k principal minors (1 for k = 0).

    Enumerates all C(n, k) index subsets; meant for n <= 8.
    """
    if not M.is_square:
        raise DimensionError("principal minors of a non-square matrix")
    n = M.nrows
    if not 0 <= k <= n:
        raise ValueError(f"minor size {k} out of range for n={n}")
    F = M.field
    if k == 0:
        return F.one
    total = F.zero
    for idx in itertools.combinations(range(n), k):
        sub = Mat(F, [[M.rows[i][j] for j in idx] for i in idx], canonical=True)
        total = F.norm(total + det(sub))
    return total


def mat_inverse(M: Mat) -> Mat:
    """Gauss-Jordan inverse; raises SingularMatrixError."""
    if not M.is_square:
        raise DimensionError("inverse of a non-square matrix")
    F = M.field
    n = M.nrows
    norm = F.norm
    a = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(M.rows)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = F.inv(a[c][c])
        a[c] = [norm(x * inv) for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                t = a[i][c]
                a[i] = [norm(x - t * y) for x, y in zip(a[i], a[c])]
    return Mat(F, [r[n:] for r in a], canonical=True)


def companion(p: Poly) -> Mat:
    """Companion matrix: ones on the subdiagonal, last column -a_0 .. -a_{d-1}."""
    if p.degree < 1:
        raise InputError("companion matrix needs a nonconstant polynomial")
    if not p.is_monic():
        raise InputError(f"companion matrix needs a monic polynomial, got {p}")
    F = p.field
    d = p.degree
    rows = [[F.zero] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = F.one
    for i in range(d):
        rows[i][d - 1] = F.norm(-p.coeffs[i])
    return Mat(F, rows, canonical=True)


def block_diag(field: Field, blocks) -> Mat:
    blocks = list(blocks)
    n = sum(b.nrows for b in blocks)
    rows = [[field.zero] * n for _ in range(n)]
    off = 0
    for b in blocks:
        if b.field != field:
            raise FieldMismatchError(f"{b.field} vs {field}")
        for i, r in enumerate(b.rows):
            rows[off + i][off : off + b.ncols] = r
        off += b.nrows
    return Mat(field, rows, canonical=True, ncols=n)


def poly_at(f: Poly, A: Mat) -> Mat:
    """Evaluate f(A) by Horner's rule."""
    if f.field != A.field:
        raise FieldMismatchError(f"{f.field} vs {A.field}")
    F = A.field
    n = A.nrows
    out = Mat.zeros(F, n)
    eye = Mat.identity(F, n)
    for c in reversed(f.coeffs):
        out = out @ A + eye.scale(c)
    return out


def poly_apply(f: Poly, A: Mat, v) -> list:
    """f(A) @ v without forming f(A)."""
    F = A.field
    acc = [F.zero] * A.nrows
    for c in reversed(f.coeffs):
        acc = A.apply(acc)
        acc = [F.norm(a + c * b) for a, b in zip(acc, v)]
    return acc


class PolyMat:
    """Matrix with entries in F[x]."""

    __slots__ = ("field", "entries", "nrows", "ncols")

    def __init__(self, field: Field, entries):
        entries = tuple(tuple(r) for r in entries)
        nc = len(entries[0]) if entries else 0
        if any(len(r) != nc for r in entries):
            raise DimensionError("ragged polynomial matrix")
        for r in entries:
            for p in r:
                if p.field != field:
                    raise FieldMismatchError(f"{p.field} vs {field}")
        self.field = field
        self.entries = entries
        self.nrows = len(entries)
        self.ncols = nc

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if isinstance(other, PolyMat):
            return self.field == other.field and self.entries == other.entries
        return NotImplemented

    def __matmul__(self, other: PolyMat) -> PolyMat:
        if self.ncols != other.nrows:
            raise DimensionError("polynomial matrix shapes do not match")
        F = self.field
        out = []
        for r in self.entries:
            row = []
            for j in range(other.ncols):
                acc = Poly.zero(F)
                for k, a in enumerate(r):
                    if not a.is_zero():
                        acc = acc + a * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return PolyMat(F, out)

    def __repr__(self):
        return f"PolyMat({self.field}, {[[str(p) for p in r] for r in self.entries]})"


def char_matrix(A: Mat) -> PolyMat:
    """The polynomial matrix xI - A."""
    if not A.is_square:
        raise DimensionError("xI - A needs a square matrix")
    F = A.field
    n = A.nrows
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            c = F.norm(-A.rows[i][j])
            row.append(Poly(F, (c, F.one) if i == j else (c,), canonical=True))
        rows.append(row)
    return PolyMat(F, rows)


# seeded random generators used by tests, the oracle and scripts


def random_matrix(field: Field, n: int, rng: random.Random, lo: int = -5, hi: int = 5, cols: int | None = None) -> Mat:
    cols = n if cols is None else cols
    return Mat(field, [[field.random_element(rng, lo, hi) for _ in range(cols)] for _ in range(n)], canonical=True)


def random_invertible(field: Field, n: int, rng: random.Random, lo: int = -3, hi: int = 3) -> Mat:
    while True:
        S = random_matrix(field, n, rng, lo, hi)
        if rank(S) == n:
            return S


def random_rank_matrix(field: Field, n: int, r: int, rng: random.Random, lo: int = -3, hi: int = 3) -> Mat:
    """A random n-by-n matrix of rank exactly r (as a product of full-rank factors)."""
    if r == 0:
        return Mat.zeros(field, n)
    while True:
        U = random_matrix(field, n, rng, lo, hi, cols=r)
        V = random_matrix(field, r, rng, lo, hi, cols=n)
        B = U @ V
        if rank(B) == r:
            return B


def random_derogatory(field: Field, n: int, rng: random.Random, lo: int = -2, hi: int = 2) -> Mat:
    """A random matrix assembled from repeated small blocks, so it tends to have
    several invariant factors.

    Over Q the blocks are only permuted, which keeps entries in [lo, hi];
    over GF(p) the result is conjugated by a random invertible matrix.
    """
    blocks = []
    left = n
    while left:
        k = rng.randint(1, min(2, left))
        if rng.random() < 0.5:
            lam = field.random_element(rng, lo, hi)
            J = [[lam if i == j else (field.one if j == i + 1 else field.zero) for j in range(k)] for i in range(k)]
            B = Mat(field, J, canonical=True)
        else:
            B = random_matrix(field, k, rng, lo, hi)
        reps = rng.randint(1, max(1, left // k))
        for _ in range(reps):
            blocks.append(B)
            left -= k
    A = block_diag(field, blocks)
    perm = list(range(n))
    rng.shuffle(perm)
    A = Mat(field, [[A.rows[perm[i]][perm[j]] for j in range(n)] for i in range(n)], canonical=True)
    if field.is_prime_field:
        S = random_invertible(field, n, rng)
        A = mat_inverse(S) @ A @ S
    return A
