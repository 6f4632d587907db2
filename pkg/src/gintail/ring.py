"""Exact multivariate polynomial arithmetic with the degree reverse
lexicographic order.

Variables are named x0..x{n} with x0 ranked highest.  Monomials are plain
exponent tuples; polynomials map monomials to nonzero field elements and keep
their terms sorted descending in grevlex, so the leading term is always the
first one.  Coefficients are arbitrary-precision rationals (the certified
mode) or elements of an odd prime field (a fast, advisory mode).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import InhomogeneousError, RingMismatchError, SingularMatrixError

Mono = tuple  # exponent vector, one nonnegative int per variable
Monomial = Mono

# Exponents are checked against this bound instead of silently wrapping;
# everything in this artifact stays in single digits.
MAX_EXPONENT = 2**31 - 1


# ---------------------------------------------------------------------------
# coefficient fields
# ---------------------------------------------------------------------------

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Fp:
    """Element of GF(p), thin enough that polynomial code can use +,-,*,/."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def __add__(self, other):
        return Fp(self.v + other.v, self.p)

    def __sub__(self, other):
        return Fp(self.v - other.v, self.p)

    def __mul__(self, other):
        return Fp(self.v * other.v, self.p)

    def __truediv__(self, other):
        return Fp(self.v * pow(other.v, -1, self.p), self.p)

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __eq__(self, other):
        return isinstance(other, Fp) and self.v == other.v and self.p == other.p

    def __bool__(self):
        return self.v != 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return str(self.v)


class RationalField:
    """The rational numbers; results over this field are authoritative."""

    certified = True
    name = "QQ"

    zero = Fraction(0)
    one = Fraction(1)

    def of(self, v) -> Fraction:
        return Fraction(v)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """GF(p) for an odd prime p.  Generic-initial-ideal results over a large
    prime field generically agree with characteristic 0, but every theorem
    consumed downstream is stated in characteristic 0, so this mode is
    advisory only."""

    certified = False

    def __init__(self, p: int):
        if p <= 2 or not _is_prime(p):
            raise ValueError(f"prime field modulus must be an odd prime, got {p}")
        self.p = p
        self.name = f"GF({p})"
        self.zero = Fp(0, p)
        self.one = Fp(1, p)

    def of(self, v) -> Fp:
        if isinstance(v, Fp):
            if v.p != self.p:
                raise RingMismatchError(f"element of GF({v.p}) used in GF({self.p})")
            return v
        if isinstance(v, Fraction):
            return Fp(v.numerator * pow(v.denominator, -1, self.p), self.p)
        return Fp(v, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


QQ = RationalField()

#: Default fast-mode modulus; large enough that chance agreement failures
#: with characteristic 0 are not a practical concern at desk scale.
DEFAULT_PRIME = 32003


# ---------------------------------------------------------------------------
# monomials and the grevlex order
# ---------------------------------------------------------------------------

def mono_degree(m: Mono) -> int:
    return sum(m)


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Mono, b: Mono) -> bool:
    """True iff a | b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Mono, a: Mono):
    """b / a, or None when a does not divide b."""
    q = []
    for x, y in zip(a, b):
        if x > y:
            return None
        q.append(y - x)
    return tuple(q)


def mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_disjoint(a: Mono, b: Mono) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def mono_max_index(m: Mono) -> int:
    """max(x^K): the largest variable index with positive exponent (-1 for 1)."""
    for i in range(len(m) - 1, -1, -1):
        if m[i] > 0:
            return i
    return -1


def grevlex_key(m: Mono):
    """Sort key realizing grevlex: higher degree wins, ties break at the last
    differing exponent with the smaller exponent winning."""
    return (sum(m), tuple(-e for e in reversed(m)))


def compare_grevlex(a: Mono, b: Mono) -> int:
    """-1, 0, or 1 as a <, ==, > b in grevlex."""
    if len(a) != len(b):
        raise RingMismatchError(
            f"monomials live in different rings ({len(a)} vs {len(b)} variables)")
    ka, kb = grevlex_key(a), grevlex_key(b)
    return (ka > kb) - (ka < kb)


def mono_str(m: Mono) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) if parts else "1"


# ---------------------------------------------------------------------------
# ring context
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RingCtx:
    """A polynomial ring k[x0..x{num_vars-1}] with its coefficient field."""

    num_vars: int
    field: object = QQ

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("a ring needs at least one variable")

    def check_same(self, other: "RingCtx"):
        if self != other:
            raise RingMismatchError(f"ring mismatch: {self} vs {other}")

    def unit_mono(self) -> Mono:
        return (0,) * self.num_vars

    def var_mono(self, i: int) -> Mono:
        if not 0 <= i < self.num_vars:
            raise ValueError(f"no variable x{i} in a {self.num_vars}-variable ring")
        return tuple(1 if j == i else 0 for j in range(self.num_vars))

    def variable(self, i: int) -> "Polynomial":
        return Polynomial.from_dict(self, {self.var_mono(i): self.field.one})

    def constant(self, c) -> "Polynomial":
        return Polynomial.from_dict(self, {self.unit_mono(): self.field.of(c)})

    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def __repr__(self):
        return f"{self.field}[x0..x{self.num_vars - 1}]"


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class Polynomial:
    """Immutable sparse polynomial in canonical form: terms sorted descending
    in grevlex, no zero coefficients stored."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingCtx, terms):
        # terms must already be canonical; use from_dict otherwise
        self.ring = ring
        self.terms = tuple(terms)
        self._hash = None

    @classmethod
    def from_dict(cls, ring: RingCtx, d: dict) -> "Polynomial":
        items = [(m, c) for m, c in d.items() if c]
        for m, _ in items:
            if len(m) != ring.num_vars:
                raise RingMismatchError(
                    f"monomial with {len(m)} exponents in {ring.num_vars}-variable ring")
            if any(e < 0 or e > MAX_EXPONENT for e in m):
                raise ValueError(f"exponent out of range in {m}")
        items.sort(key=lambda t: grevlex_key(t[0]), reverse=True)
        return cls(ring, items)

    def term_dict(self) -> dict:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def lead_monomial(self) -> Mono:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0][0]

    def lead_coeff(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0][1]

    def degree(self) -> int:
        """Total degree (of the leading term; -1 for the zero polynomial)."""
        if not self.terms:
            return -1
        return max(mono_degree(m) for m, _ in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {mono_degree(m) for m, _ in self.terms}
        return len(degs) <= 1

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self.ring.check_same(other.ring)
        d = dict(self.terms)
        for m, c in other.terms:
            s = d.get(m)
            s = c if s is None else s + c
            if s:
                d[m] = s
            else:
                d.pop(m, None)
        return Polynomial.from_dict(self.ring, d)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self.ring.check_same(other.ring)
        d = {}
        for ma, ca in self.terms:
            for mb, cb in other.terms:
                m = mono_mul(ma, mb)
                s = d.get(m)
                s = ca * cb if s is None else s + ca * cb
                if s:
                    d[m] = s
                else:
                    d.pop(m, None)
        return Polynomial.from_dict(self.ring, d)

    def scale(self, c) -> "Polynomial":
        c = self.ring.field.of(c)
        if not c:
            return Polynomial(self.ring, ())
        return Polynomial(self.ring, tuple((m, k * c) for m, k in self.terms))

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        return self.scale(self.ring.field.one / self.lead_coeff())

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for idx, (m, c) in enumerate(self.terms):
            neg = (c < type(c)(0)) if isinstance(c, Fraction) else False
            mag = -c if neg else c
            ms = mono_str(m)
            if ms == "1":
                body = str(mag)
            elif mag == self.ring.field.one:
                body = ms
            else:
                body = f"{mag}*{ms}"
            if idx == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append(("- " if neg else "+ ") + body)
        return " ".join(out)

    def __repr__(self):
        return f"Polynomial({self})"


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def poly_scale(f: Polynomial, c) -> Polynomial:
    return f.scale(c)


def strip_content(f: Polynomial) -> Polynomial:
    """Canonical scalar normal form: over Q, divide by the rational content so
    coefficients are coprime integers with positive leading coefficient; over
    a prime field, make monic.  Scaling never changes the ideal membership of
    a generator, only its presentation."""
    if f.is_zero:
        return f
    if isinstance(f.ring.field, PrimeField):
        return f.monic()
    num = 0
    den = 1
    for _, c in f.terms:
        num = math.gcd(num, c.numerator)
        den = den * c.denominator // math.gcd(den, c.denominator)
    content = Fraction(num, den)
    if f.lead_coeff() < 0:
        content = -content
    return f.scale(1 / content)


# ---------------------------------------------------------------------------
# homogeneous ideals of polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyIdeal:
    """A homogeneous ideal given by an explicit generator list.

    Everything downstream (saturation, Gins, section formulas) is stated for
    homogeneous ideals only, so inhomogeneous generators are rejected here.
    """

    ring: RingCtx
    gens: tuple

    def __post_init__(self):
        if not self.gens:
            raise InhomogeneousError("an ideal needs at least one generator")
        for k, g in enumerate(self.gens):
            self.ring.check_same(g.ring)
            if g.is_zero:
                raise InhomogeneousError(f"generator #{k} is the zero polynomial")
            if not g.is_homogeneous():
                raise InhomogeneousError(f"generator #{k} is not homogeneous: {g}")

    @classmethod
    def make(cls, ring: RingCtx, gens) -> "PolyIdeal":
        return cls(ring, tuple(gens))

    def __repr__(self):
        return "PolyIdeal(" + ", ".join(str(g) for g in self.gens) + ")"


# ---------------------------------------------------------------------------
# linear changes of coordinates
# ---------------------------------------------------------------------------

def _coerce_matrix(M, field, n: int):
    rows = [tuple(field.of(v) for v in row) for row in M]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise RingMismatchError(f"coordinate change must be {n}x{n}")
    return rows


def matrix_det(M, field):
    """Determinant by exact Gaussian elimination."""
    n = len(M)
    A = [list(row) for row in M]
    det = field.one
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            return field.zero
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        det = det * A[col][col]
        inv = field.one / A[col][col]
        for r in range(col + 1, n):
            if A[r][col]:
                factor = A[r][col] * inv
                A[r] = [a - factor * b for a, b in zip(A[r], A[col])]
    return det

def matrix_mul(A, B, field):
    n = len(A)
    return tuple(
        tuple(sum((A[i][k] * B[k][j] for k in range(n)), field.zero) for j in range(n))
        for i in range(n))


def matrix_inv(M, field):
    """Inverse by Gauss-Jordan; raises SingularMatrixError when det = 0."""
    n = len(M)
    A = [list(row) + [field.one if i == j else field.zero for j in range(n)]
         for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        A[col], A[piv] = A[piv], A[col]
        inv = field.one / A[col][col]
        A[col] = [a * inv for a in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                factor = A[r][col]
                A[r] = [a - factor * b for a, b in zip(A[r], A[col])]
    return tuple(tuple(row[n:]) for row in A)


def apply_linear_change(f: Polynomial, M) -> Polynomial:
    """Substitute x_i -> sum_j M[i][j] * x_j in f.

    M must be invertible, so the substitution is a ring automorphism; applying
    M then its inverse is the identity.
    """
    ring = f.ring
    field = ring.field
    rows = _coerce_matrix(M, field, ring.num_vars)
    if not matrix_det(rows, field):
        raise SingularMatrixError("coordinate change matrix is singular")
    images = []
    for i in range(ring.num_vars):
        img = {ring.var_mono(j): rows[i][j] for j in range(ring.num_vars) if rows[i][j]}
        images.append(Polynomial.from_dict(ring, img))
    pow_cache: dict = {}

    def image_power(i: int, e: int) -> Polynomial:
        got = pow_cache.get((i, e))
        if got is None:
            got = image_power(i, e - 1) * images[i] if e > 1 else images[i]
            pow_cache[(i, e)] = got
        return got

    acc: dict = {}
    for m, c in f.terms:
        part = ring.constant(c)
        for i, e in enumerate(m):
            if e:
                part = part * image_power(i, e)
        for mm, cc in part.terms:
            s = acc.get(mm)
            s = cc if s is None else s + cc
            if s:
                acc[mm] = s
            else:
                acc.pop(mm, None)
    return Polynomial.from_dict(ring, acc)


def seeded_invertible_matrix(num_vars: int, seed: int, bound: int = 1000, field=QQ):
    """Deterministic invertible matrix with entries uniform in [-bound, bound].

    Resamples on a zero determinant; more than 100 resamples would mean the
    generator is broken, not unlucky.
    """
    rng = random.Random(seed)
    for _ in range(100):
        rows = tuple(
            tuple(field.of(rng.randint(-bound, bound)) for _ in range(num_vars))
            for _ in range(num_vars))
        if matrix_det(rows, field):
            return rows
    raise RuntimeError("could not sample an invertible matrix (internal error)")


def seeded_linear_form(ring: RingCtx, seed: int, bound: int = 1000) -> Polynomial:
    """Deterministic nonzero linear form with integer coefficients in [-bound, bound]."""
    rng = random.Random(seed)
    while True:
        coeffs = [rng.randint(-bound, bound) for _ in range(ring.num_vars)]
        if any(coeffs):
            break
    return Polynomial.from_dict(
        ring, {ring.var_mono(i): ring.field.of(c) for i, c in enumerate(coeffs) if c})
