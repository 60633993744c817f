"""Exact scalar fields (Q and GF(p)) and dense univariate polynomials.

Field elements are stored as plain canonical Python values: ``Fraction`` for
the rationals and an ``int`` in ``[0, p)`` for a prime field.  The owning
:class:`Field` is carried once by each polynomial or matrix instead of on
every entry, which keeps the inner loops of rank and characteristic
polynomial computations cheap.  :class:`Scalar` wraps a single value together
with its field for callers that want operator syntax.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm

from .errors import FieldMismatchError, InputError

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases; deterministic for n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_GF_RE = re.compile(r"^\s*(?:GF|F)\s*\(\s*(\d+)\s*\)\s*$", re.IGNORECASE)


@dataclass(frozen=True)
class Field:
    """Either the rationals (``kind == "Q"``) or GF(p) (``kind == "GF"``)."""

    kind: str
    modulus: int = 0

    def __post_init__(self):
        if self.kind == "Q":
            if self.modulus != 0:
                raise InputError("the rationals carry no modulus")
        elif self.kind == "GF":
            if not is_prime(self.modulus):
                raise InputError(f"modulus {self.modulus} is not prime")
        else:
            raise InputError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> Field:
        return cls("Q")

    @classmethod
    def gf(cls, p: int) -> Field:
        return cls("GF", p)

    @classmethod
    def parse(cls, name: str) -> Field:
        """Parse ``"Q"`` or ``"GF(p)"``."""
        if not isinstance(name, str):
            raise InputError(f"field name must be a string, got {name!r}")
        if name.strip().upper() in ("Q", "QQ"):
            return cls.rationals()
        mt = _GF_RE.match(name)
        if mt is None:
            raise InputError(f"cannot parse field name {name!r}")
        return cls.gf(int(mt.group(1)))

    def __str__(self):
        return "Q" if self.kind == "Q" else f"GF({self.modulus})"

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "GF"

    @property
    def characteristic(self) -> int:
        return self.modulus

    @property
    def zero(self):
        return 0 if self.modulus else Fraction(0)

    @property
    def one(self):
        return 1 if self.modulus else Fraction(1)

    def __call__(self, value):
        """Convert an int, Fraction, decimal string or Scalar into a canonical value."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatchError(f"scalar over {value.field} used in {self}")
            return value.value
        if isinstance(value, str):
            value = _parse_rational(value)
        elif isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise InputError(f"cannot interpret {value!r} as an element of {self}")
        if not self.modulus:
            return Fraction(value)
        p = self.modulus
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise InputError(f"{value} has no image in {self}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return value % p

    def norm(self, x):
        """Reduce the result of plain ``+ - *`` on canonical values."""
        return x % self.modulus if self.modulus else x

    def inv(self, a):
        if not a:
            raise ZeroDivisionError(f"division by zero in {self}")
        if self.modulus:
            return pow(a, -1, self.modulus)
        return 1 / a

    def div(self, a, b):
        return self.norm(a * self.inv(b))

    def elements(self):
        if not self.modulus:
            raise ValueError("the rationals are infinite")
        return range(self.modulus)

    def random_element(self, rng: random.Random, lo: int = -5, hi: int = 5):
        if self.modulus:
            return rng.randrange(self.modulus)
        return Fraction(rng.randint(lo, hi))

    def format(self, a) -> str:
        return str(a)

    def scalar(self, value) -> Scalar:
        return Scalar(self, self(value))


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse scalar {text!r}") from None


Q = Field.rationals()


def GF(p: int) -> Field:
    return Field.gf(p)


@dataclass(frozen=True)
class Scalar:
    """A field element bundled with its field."""

    field: Field
    value: object

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other.value
        return self.field(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.norm(self.value + self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.norm(self.value - self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.norm(self._other(other) - self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.norm(self.value * self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, self.field.norm(-self.value))

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def inverse(self) -> Scalar:
        return Scalar(self.field, self.field.inv(self.value))

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return self.field.format(self.value)


class Poly:
    """Dense polynomial, coefficients in ascending degree order.

    Trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``
    and ``degree == -1``.
    """

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: Field, coeffs=(), *, canonical=False):
        if not canonical:
            coeffs = [field(c) for c in coeffs]
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)
        self._hash = None

    # construction helpers
    @classmethod
    def x(cls, field: Field) -> Poly:
        return cls(field, (field.zero, field.one), canonical=True)

    @classmethod
    def const(cls, field: Field, c) -> Poly:
        return cls(field, (field(c),), canonical=True)

    @classmethod
    def one(cls, field: Field) -> Poly:
        return cls(field, (field.one,), canonical=True)

    @classmethod
    def zero(cls, field: Field) -> Poly:
        return cls(field, (), canonical=True)

    @classmethod
    def linear(cls, field: Field, root) -> Poly:
        """The monic polynomial ``x - root``."""
        return cls(field, (field.norm(-field(root)), field.one), canonical=True)

    @classmethod
    def from_roots(cls, field: Field, roots) -> Poly:
        out = cls.one(field)
        for r in roots:
            out = out * cls.linear(field, r)
        return out

    @classmethod
    def monomial(cls, field: Field, d: int) -> Poly:
        return cls(field, [field.zero] * d + [field.one], canonical=True)

    # basic queries
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def is_one(self) -> bool:
        return self.coeffs == (self.field.one,)

    def monic(self) -> Poly:
        if not self.coeffs:
            raise ValueError("cannot normalize the zero polynomial")
        F = self.field
        c = F.inv(self.coeffs[-1])
        return Poly(F, [F.norm(a * c) for a in self.coeffs], canonical=True)

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def __call__(self, t):
        F = self.field
        t = F(t)
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.norm(acc * t + c)
        return acc

    def derivative(self) -> Poly:
        F = self.field
        return Poly(F, [F.norm(k * c) for k, c in enumerate(self.coeffs) if k], canonical=True)

    # arithmetic
    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other
        return Poly.const(self.field, other)

    def __add__(self, other):
        other = self._coerce(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.norm(out[i] + c)
        return Poly(F, out, canonical=True)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Poly(F, [F.norm(-c) for c in self.coeffs], canonical=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(F)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(F, [F.norm(c) for c in out], canonical=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        out, base = Poly.one(self.field), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        return poly_divmod(self, self._coerce(other))

    def __floordiv__(self, other):
        return poly_divmod(self, self._coerce(other))[0]

    def __mod__(self, other):
        return poly_divmod(self, self._coerce(other))[1]

    def divides(self, other: Poly) -> bool:
        return poly_divmod(other, self)[1].is_zero()

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.coeffs))
        return self._hash

    def sort_key(self):
        return (self.degree, tuple(reversed(self.coeffs)))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    # text forms
    def to_strings(self) -> list[str]:
        return [self.field.format(c) for c in self.coeffs]

    @classmethod
    def parse(cls, field: Field, coeffs) -> Poly:
        if not isinstance(coeffs, (list, tuple)):
            raise InputError("polynomial must be a list of coefficients")
        return cls(field, coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        out = ""
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            cs = self.field.format(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if not mono:
                term = cs
            elif cs == "1":
                term = mono
            elif "/" in cs:
                term = f"({cs})*{mono}"
            else:
                term = f"{cs}*{mono}"
            if not out:
                out = "-" + term if neg else term
            else:
                out += (" - " if neg else " + ") + term
        return out

    def __repr__(self):
        return f"Poly({self.field}, {str(self)!r})"


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Euclidean division: ``a == b*q + r`` with ``deg r < deg b``."""
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field} vs {b.field}")
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    F = a.field
    db = b.degree
    if a.degree < db:
        return Poly.zero(F), a
    rem = list(a.coeffs)
    bc = b.coeffs
    inv_lc = F.inv(bc[-1])
    quo = [F.zero] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if not c:
            continue
        t = F.norm(c * inv_lc)
        quo[k - db] = t
        off = k - db
        for j in range(db):
            rem[off + j] = F.norm(rem[off + j] - t * bc[j])
        rem[k] = F.zero
    return Poly(F, quo, canonical=True), Poly(F, rem[:db], canonical=True)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd of two polynomials, not both zero."""
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field} vs {b.field}")
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    return a.monic()


def poly_exact_div(a: Poly, b: Poly) -> Poly:
    q, r = poly_divmod(a, b)
    if not r.is_zero():
        raise ArithmeticError(f"{b} does not divide {a}")
    return q


def powmod(base: Poly, e: int, mod: Poly) -> Poly:
    out = Poly.one(base.field) % mod
    base = base % mod
    while e:
        if e & 1:
            out = (out * base) % mod
        base = (base * base) % mod
        e >>= 1
    return out


def factor_multiplicity(p: Poly, f: Poly) -> int:
    """Largest k with f**k dividing p (f nonconstant, p nonzero)."""
    if p.is_zero():
        raise ValueError("multiplicity in the zero polynomial is unbounded")
    if f.degree < 1:
        raise ValueError("factor must be nonconstant")
    k = 0
    while True:
        q, r = poly_divmod(p, f)
        if not r.is_zero():
            return k
        p = q
        k += 1


def root_multiplicity(p: Poly, lam) -> int:
    """Multiplicity of ``lam`` as a zero of p (0 when it is not a root)."""
    if p.is_zero():
        raise ValueError("multiplicity in the zero polynomial is unbounded")
    F = p.field
    if isinstance(lam, Scalar) and lam.field != F:
        raise FieldMismatchError(f"{lam.field} vs {F}")
    lam = F(lam)
    coeffs = list(p.coeffs)
    k = 0
    # repeated synthetic division by (x - lam)
    while len(coeffs) > 1:
        acc = F.zero
        quo = []
        for c in reversed(coeffs):
            acc = F.norm(acc * lam + c)
            quo.append(acc)
        if quo[-1]:
            break
        coeffs = list(reversed(quo[:-1]))
        k += 1
    return k


def poly_product(field: Field, polys) -> Poly:
    out = Poly.one(field)
    for f in polys:
        out = out * f
    return out


# factorization


@dataclass(frozen=True)
class Factorization:
    """Monic irreducible factors with multiplicities.

    ``residual`` is the monic part left unfactored (1 when the factorization
    is complete); ``product()`` always reproduces the input exactly.
    """

    field: Field
    factors: tuple
    residual: Poly

    @property
    def complete(self) -> bool:
        return self.residual.is_one()

    def product(self) -> Poly:
        out = self.residual
        for f, k in self.factors:
            out = out * f**k
        return out

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


def factor_irreducible(p: Poly, seed: int = 0) -> Factorization:
    """Factor a monic polynomial into monic irreducibles.

    Over GF(p) the result is complete (squarefree split, distinct-degree,
    then Cantor-Zassenhaus equal-degree splitting driven by a ``random.Random``
    seeded with ``seed``).  Over Q only rational roots are extracted, plus
    squarefree parts of degree 2 or 3 without rational roots, which are
    irreducible; anything else lands in ``residual``.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if not p.is_monic():
        raise ValueError("factor_irreducible expects a monic polynomial")
    F = p.field
    if p.degree == 0:
        return Factorization(F, (), Poly.one(F))
    if F.is_prime_field:
        rng = random.Random(seed)
        acc: dict[Poly, int] = {}
        for g, k in _sqf_gf(p):
            for h, d in _ddf(g):
                for f in _edf(h, d, rng):
                    acc[f] = acc.get(f, 0) + k
        factors = tuple(sorted(acc.items(), key=lambda fk: fk[0].sort_key()))
        return Factorization(F, factors, Poly.one(F))
    return _factor_rational(p)


def _pth_root(f: Poly) -> Poly:
    F = f.field
    p = F.modulus
    return Poly(F, f.coeffs[::p], canonical=True)


def _sqf_gf(f: Poly):
    """Squarefree decomposition over GF(p): pairs (squarefree g, multiplicity)."""
    F = f.field
    p = F.modulus
    out = []
    fd = f.derivative()
    c = poly_gcd(f, fd) if not fd.is_zero() else f
    w = poly_exact_div(f, c)
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        fac = poly_exact_div(w, y)
        if fac.degree > 0:
            out.append((fac, i))
        i += 1
        w = y
        c = poly_exact_div(c, y)
    if c.degree > 0:
        for g, k in _sqf_gf(_pth_root(c)):
            out.append((g, k * p))
    return out


def _ddf(g: Poly):
    """Distinct-degree split of a monic squarefree polynomial over GF(p)."""
    F = g.field
    p = F.modulus
    x = Poly.x(F)
    out = []
    h = x % g
    d = 1
    while g.degree >= 2 * d:
        h = powmod(h, p, g)
        t = poly_gcd(g, h - x)
        if t.degree > 0:
            out.append((t, d))
            g = poly_exact_div(g, t)
            h = h % g
        d += 1
    if g.degree > 0:
        out.append((g, g.degree))
    return out


def _edf(f: Poly, d: int, rng: random.Random):
    """Split a product of distinct degree-d irreducibles (Cantor-Zassenhaus)."""
    if f.degree == d:
        return [f]
    F = f.field
    p = F.modulus
    n = f.degree
    while True:
        a = Poly(F, [rng.randrange(p) for _ in range(n)], canonical=True)
        if a.degree < 1:
            continue
        if p == 2:
            t = a % f
            acc = t
            for _ in range(d - 1):
                t = (t * t) % f
                acc = acc + t
        else:
            acc = powmod(a, (p**d - 1) // 2, f) - 1
        if acc.is_zero():
            continue
        g = poly_gcd(f, acc)
        if 0 < g.degree < n:
            return _edf(g, d, rng) + _edf(poly_exact_div(f, g), d, rng)


def _sqf_char0(f: Poly):
    """Yun's squarefree decomposition in characteristic zero."""
    out = []
    fd = f.derivative()
    a0 = poly_gcd(f, fd)
    b = poly_exact_div(f, a0)
    c = poly_exact_div(fd, a0)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = poly_exact_div(b, a)
        c = poly_exact_div(d, a)
        d = c - b.derivative()
        i += 1
    return out


def _divisors(n: int):
    n = abs(n)
    small, large = [], []
    for k in range(1, isqrt(n) + 1):
        if n % k == 0:
            small.append(k)
            if k != n // k:
                large.append(n // k)
    return small + large[::-1]


def rational_roots(p: Poly) -> list[Fraction]:
    """Distinct rational roots of a nonzero polynomial over Q, ascending."""
    if p.field.is_prime_field:
        raise ValueError("rational_roots is for polynomials over Q")
    if p.is_zero():
        raise ValueError("the zero polynomial has every root")
    den = lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * den) for c in p.coeffs]
    roots = []
    low = 0
    while ints[low] == 0:
        low += 1
    if low:
        roots.append(Fraction(0))
    ints = ints[low:]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if len(ints) > 1:
        int_poly = Poly(p.field, ints)
        for r in _divisors(ints[0]):
            for s in _divisors(ints[-1]):
                if gcd(r, s) != 1:
                    continue
                for cand in (Fraction(r, s), Fraction(-r, s)):
                    if not int_poly(cand):
                        roots.append(cand)
    return sorted(set(roots))


def _factor_rational(p: Poly) -> Factorization:
    F = p.field
    acc: dict[Poly, int] = {}
    residual = Poly.one(F)
    for g, k in _sqf_char0(p):
        for r in rational_roots(g):
            lin = Poly.linear(F, r)
            acc[lin] = acc.get(lin, 0) + k
            g = poly_exact_div(g, lin)
        if g.degree in (2, 3):
            acc[g] = acc.get(g, 0) + k
        elif g.degree >= 4:
            residual = residual * g**k
    factors = tuple(sorted(acc.items(), key=lambda fk: fk[0].sort_key()))
    return Factorization(F, factors, residual)


def is_irreducible(f: Poly) -> bool | None:
    """True/False when decidable; None over Q when the factorizer cannot tell."""
    if f.degree < 1:
        return False
    fac = factor_irreducible(f.monic())
    if not fac.complete:
        if fac.factors:
            return False
        return None
    return len(fac.factors) == 1 and fac.factors[0][1] == 1


def monic_polys(field: Field, degree: int):
    """All monic polynomials of the given degree over a prime field."""
    p = field.modulus
    if not p:
        raise ValueError("infinitely many monic polynomials over Q")
    for low in itertools.product(range(p), repeat=degree):
        yield Poly(field, low + (1,), canonical=True)


def random_monic(field: Field, degree: int, rng: random.Random, lo: int = -5, hi: int = 5) -> Poly:
    cs = [field.random_element(rng, lo, hi) for _ in range(degree)] + [field.one]
    return Poly(field, cs, canonical=True)
