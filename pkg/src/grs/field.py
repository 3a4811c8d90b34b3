"""Small finite fields GF(p^n) as polynomials over Z_p, and the field-based
difference-matrix construction.

Polynomials are coefficient tuples, constant term first. Field elements have
exactly ``n`` coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from grs.groups import GroupElement, GroupSpec, SpecMismatchError

Poly = tuple[int, ...]

MAX_DEGREE = 12
MAX_MATRIX_SIZE = 4096


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomial arithmetic over Z_p -------------------------------------


def _trim(a: Sequence[int]) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_sub(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return _trim(
        ((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)
    )


def poly_mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_divmod(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    rem = list(_trim(a))
    quot = [0] * max(len(rem) - len(b) + 1, 0)
    while len(rem) >= len(b):
        shift = len(rem) - len(b)
        c = rem[-1] * inv_lead % p
        quot[shift] = c
        for i, y in enumerate(b):
            rem[shift + i] = (rem[shift + i] - c * y) % p
        rem = list(_trim(rem))
    return _trim(quot), tuple(rem)


def poly_mod(a: Poly, b: Poly, p: int) -> Poly:
    return poly_divmod(a, b, p)[1]


def poly_gcd(a: Poly, b: Poly, p: int) -> Poly:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = tuple(c * inv % p for c in a)
    return a


def poly_powmod(a: Poly, e: int, mod: Poly, p: int) -> Poly:
    result: Poly = (1,)
    a = poly_mod(a, mod, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, a, p), mod, p)
        a = poly_mod(poly_mul(a, a, p), mod, p)
        e >>= 1
    return result


def is_irreducible(f: Poly, p: int) -> bool:
    """Rabin's test: x^(p^n) = x mod f and gcd(x^(p^(n/q)) - x, f) = 1 for primes q | n."""
    f = _trim(f)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x: Poly = (0, 1)
    for q in prime_factors(n):
        h = poly_sub(poly_powmod(x, p ** (n // q), f, p), x, p)
        if len(poly_gcd(h, f, p)) != 1:
            return False
    return poly_sub(poly_powmod(x, p**n, f, p), x, p) == ()


def find_irreducible(p: int, n: int) -> Poly:
    """Smallest monic irreducible of degree n, comparing coefficient vectors
    constant term first."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not 1 <= n <= MAX_DEGREE:
        raise ValueError(f"degree must be in [1, {MAX_DEGREE}], got {n}")
    # product() varies the last slot fastest, which is the lexicographic order
    for low in product(range(p), repeat=n):
        f = low + (1,)
        if is_irreducible(f, p):
            return f
    raise AssertionError(f"no irreducible of degree {n} over Z_{p}")


# --- field elements ------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    p: int
    n: int
    modulus: Poly

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        mod = tuple(int(c) for c in self.modulus)
        if len(mod) != self.n + 1 or mod[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {self.n}")
        if any(not 0 <= c < self.p for c in mod):
            raise ValueError("modulus coefficients must be reduced mod p")
        if not is_irreducible(mod, self.p):
            raise ValueError(f"{mod} is reducible over Z_{self.p}")
        object.__setattr__(self, "modulus", mod)

    @classmethod
    def default(cls, p: int, n: int) -> FieldSpec:
        return cls(p, n, find_irreducible(p, n))

    @property
    def order(self) -> int:
        return self.p**self.n

    def element(self, coeffs: Sequence[int]) -> FieldElement:
        coeffs = tuple(int(c) % self.p for c in coeffs)
        if len(coeffs) > self.n:
            raise ValueError(f"at most {self.n} coefficients")
        return FieldElement(self, coeffs + (0,) * (self.n - len(coeffs)))

    def from_index(self, i: int) -> FieldElement:
        """Field element whose coefficients are the base-p digits of i."""
        if not 0 <= i < self.order:
            raise IndexError(i)
        coeffs = []
        for _ in range(self.n):
            i, c = divmod(i, self.p)
            coeffs.append(c)
        return FieldElement(self, tuple(coeffs))

    @property
    def zero(self) -> FieldElement:
        return self.from_index(0)

    @property
    def one(self) -> FieldElement:
        return self.element((1,))

    def elements(self):
        for i in range(self.order):
            yield self.from_index(i)


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    coeffs: tuple[int, ...]

    def _check(self, other: FieldElement) -> None:
        if other.field != self.field:
            raise SpecMismatchError("elements of different fields")

    @property
    def index(self) -> int:
        i = 0
        for c in reversed(self.coeffs):
            i = i * self.field.p + c
        return i

    def __add__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> FieldElement:
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other: FieldElement) -> FieldElement:
        return self + (-other)

    def __mul__(self, other: FieldElement) -> FieldElement:
        return ff_mul(self, other)

    def inverse(self) -> FieldElement:
        if not any(self.coeffs):
            raise ZeroDivisionError("zero has no inverse")
        # a^(q-2) in a field of q elements
        result = self.field.one
        base, e = self, self.field.order - 2
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result


def ff_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    f = a.field
    prod = poly_mod(poly_mul(_trim(a.coeffs), _trim(b.coeffs), f.p), f.modulus, f.p)
    return f.element(prod)


def truncate(a: FieldElement, m: int) -> GroupElement:
    """Keep the first m coefficients, as an element of (Z_p)^m."""
    if not 1 <= m <= a.field.n:
        raise ValueError(f"m must be in [1, {a.field.n}], got {m}")
    return GroupSpec((a.field.p,) * m).element(*a.coeffs[:m])


def multiplication_table(field: FieldSpec) -> np.ndarray:
    """Products of all element pairs as canonical indices, shape (q, q)."""
    p, n, q = field.p, field.n, field.order
    idx = np.arange(q)
    coeffs = np.stack([(idx // p**t) % p for t in range(n)], axis=1)  # (q, n)
    # x^t * a for every a, reduced modulo the field polynomial
    shifted = [coeffs.copy()]
    low = np.array(field.modulus[:n], dtype=np.int64)
    for _ in range(1, n):
        prev = shifted[-1]
        top = prev[:, n - 1]
        nxt = np.zeros_like(prev)
        nxt[:, 1:] = prev[:, :-1]
        nxt = (nxt - top[:, None] * low[None, :]) % p
        shifted.append(nxt)
    place = p ** np.arange(n)
    table = np.empty((q, q), dtype=np.int64)
    for i in range(q):
        acc = np.zeros((q, n), dtype=np.int64)
        for t in range(n):
            acc += coeffs[i, t] * shifted[t]
        table[i] = (acc % p) @ place
    return table


def build_field_difference_matrix(p: int, m: int, n: int, modulus: Poly | None = None):
    """Rank-2 weight function on digits 0..p^n-1 with values in (Z_p)^m:
    ``f(i, j) = truncate(i * j, m)`` with digits identified with field elements."""
    from grs.weights import WeightFunction

    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    if p**n > MAX_MATRIX_SIZE:
        raise ValueError(f"p^n = {p**n} exceeds the table guard {MAX_MATRIX_SIZE}")
    field = FieldSpec(p, n, modulus) if modulus is not None else FieldSpec.default(p, n)
    # truncation to m coefficients is reduction of the index mod p^m
    table = multiplication_table(field) % p**m
    return WeightFunction.from_indices(
        k=p**n, group=GroupSpec((p,) * m), table=table.ravel(), rank=2, dim=1
    )
