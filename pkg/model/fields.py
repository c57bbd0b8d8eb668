"""Exact arithmetic in GF(p) and GF(p^2).

GF(p) elements are plain ints reduced into [0, p). GF(p^2) is always built as
GF(p)[t]/(t^2 - 5): for every admissible prime 5 is a non-residue mod p, so one
basis serves the whole family and t is a square root of 5.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from sympy import isprime

from .exceptions import DivisionByZero, NonResidue, ParameterError, PreconditionError


logger = logging.getLogger(__name__)

NON_RESIDUE = 5


def is_admissible(p: int) -> bool:
    return (
        isinstance(p, int)
        and p > 3
        and p % 5 in (2, 3)
        and bool(isprime(p))
    )


def require_admissible(p: int) -> int:
    """Raise PreconditionError unless p > 3 is a prime with p = +-2 (mod 5)."""
    if not isinstance(p, int) or isinstance(p, bool):
        raise PreconditionError(f"p must be an integer, got {p!r}")
    if p <= 3:
        raise PreconditionError(f"p = {p} is excluded: the family needs p > 3")
    if not isprime(p):
        raise PreconditionError(f"p = {p} is not prime")
    if p % 5 not in (2, 3):
        raise PreconditionError(
            f"p = {p} is excluded: p = {p % 5} (mod 5), but p = +-2 (mod 5) is "
            "required so that 5 is a non-square mod p"
        )
    return p


@lru_cache(maxsize=256)
def _require_odd_prime(p: int) -> None:
    if not isinstance(p, int) or p < 3 or not isprime(p):
        raise ParameterError(f"modulus must be an odd prime, got {p!r}")


def legendre(n: int, p: int) -> int:
    """Legendre symbol (n/p) by Euler's criterion."""
    _require_odd_prime(p)
    n %= p
    if n == 0:
        return 0
    return 1 if pow(n, (p - 1) // 2, p) == 1 else -1


def _find_nonresidue(p: int) -> int:
    for z in range(2, p):
        if legendre(z, p) == -1:
            return z
    raise ParameterError(f"no quadratic non-residue modulo {p}")


def sqrt_mod_p(n: int, p: int) -> int:
    """Canonical square root of n mod p (the smaller of r, p - r).

    Tonelli-Shanks; raises NonResidue when n is not a square mod p.
    """
    _require_odd_prime(p)
    n %= p
    if n == 0:
        return 0
    if legendre(n, p) == -1:
        raise NonResidue(f"{n} is not a square modulo {p}")

    if p % 4 == 3:
        r = pow(n, (p + 1) // 4, p)
        return min(r, p - r)

    # p - 1 = q * 2^s with q odd
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1

    c = pow(_find_nonresidue(p), q, p)
    r = pow(n, (q + 1) // 2, p)
    t = pow(n, q, p)
    m = s
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        r = r * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return min(r, p - r)


Scalar = Union["FqElement", int]


@dataclass(frozen=True, slots=True)
class FqElement:
    """c0 + c1*t in GF(p^2), with t^2 = 5."""

    c0: int
    c1: int
    p: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "c0", self.c0 % self.p)
        object.__setattr__(self, "c1", self.c1 % self.p)

    @classmethod
    def from_int(cls, n: int, p: int) -> FqElement:
        return cls(n, 0, p)

    @classmethod
    def zero(cls, p: int) -> FqElement:
        return cls(0, 0, p)

    @classmethod
    def one(cls, p: int) -> FqElement:
        return cls(1, 0, p)

    @classmethod
    def root5(cls, p: int) -> FqElement:
        """The basis element t."""
        return cls(0, 1, p)

    def _coerce(self, other: Scalar) -> FqElement:
        if isinstance(other, FqElement):
            if other.p != self.p:
                raise ParameterError(
                    f"cannot combine elements of GF({self.p}^2) and GF({other.p}^2)"
                )
            return other
        if isinstance(other, int):
            return FqElement(other, 0, self.p)
        return NotImplemented

    def __add__(self, other: Scalar) -> FqElement:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FqElement(self.c0 + o.c0, self.c1 + o.c1, self.p)

    __radd__ = __add__

    def __neg__(self) -> FqElement:
        return FqElement(-self.c0, -self.c1, self.p)

    def __sub__(self, other: Scalar) -> FqElement:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FqElement(self.c0 - o.c0, self.c1 - o.c1, self.p)

    def __rsub__(self, other: Scalar) -> FqElement:
        return -self + other

    def __mul__(self, other: Scalar) -> FqElement:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FqElement(
            self.c0 * o.c0 + NON_RESIDUE * self.c1 * o.c1,
            self.c0 * o.c1 + self.c1 * o.c0,
            self.p,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> FqElement:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * fq_inv(o)

    def __rtruediv__(self, other: Scalar) -> FqElement:
        return fq_inv(self) * other

    def __pow__(self, k: int) -> FqElement:
        if k < 0:
            return fq_pow(fq_inv(self), -k)
        return fq_pow(self, k)

    def __bool__(self) -> bool:
        return bool(self.c0 or self.c1)

    def is_zero(self) -> bool:
        return not self

    def is_in_prime_field(self) -> bool:
        return self.c1 == 0

    def norm(self) -> int:
        """N(c0 + c1 t) = c0^2 - 5 c1^2, an element of GF(p)."""
        return (self.c0 * self.c0 - NON_RESIDUE * self.c1 * self.c1) % self.p

    def to_json(self) -> list[int]:
        return [self.c0, self.c1]

    def __repr__(self) -> str:
        return f"GF({self.p}^2)({self.c0} + {self.c1}t)"


def fq_inv(e: FqElement) -> FqElement:
    if e.is_zero():
        raise DivisionByZero(f"zero has no inverse in GF({e.p}^2)")
    # (c0 + c1 t)^-1 = (c0 - c1 t) / N, and N != 0 since 5 is a non-residue
    n_inv = pow(e.norm(), -1, e.p)
    return FqElement(e.c0 * n_inv, -e.c1 * n_inv, e.p)


def fq_pow(e: FqElement, k: int) -> FqElement:
    if k < 0:
        raise ParameterError(f"exponent must be non-negative, got {k}")
    result = FqElement.one(e.p)
    base = e
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


def frobenius(e: FqElement) -> FqElement:
    """e -> e^p; t^p = -t because 5 is a non-residue."""
    return FqElement(e.c0, -e.c1, e.p)


def golden_root(p: int, conjugate: bool = False) -> FqElement:
    """The root a = (-1 + t)/2 of a^2 + a - 1 = 0 (or (-1 - t)/2)."""
    require_admissible(p)
    half = pow(2, -1, p)
    sign = -1 if conjugate else 1
    return FqElement(-half, sign * half, p)


def omega_root(p: int, conjugate: bool = False) -> FqElement:
    """The root b = (-1 + beta)/2 of b^2 + b + 1 = 0, with beta^2 = -3.

    For p = 1 (mod 3), -3 is a square mod p and beta lies in the prime field.
    Otherwise beta = lam*t with lam^2 = -3/5, a product of two non-residues.
    """
    require_admissible(p)
    if p % 3 == 1:
        beta = FqElement(sqrt_mod_p(-3, p), 0, p)
    else:
        lam = sqrt_mod_p(-3 * pow(NON_RESIDUE, -1, p), p)
        beta = FqElement(0, lam, p)
        logger.debug(f"Fields: -3 is a non-square mod {p}, sqrt(-3) = {lam}t")
    if conjugate:
        beta = -beta
    half = pow(2, -1, p)
    return (beta - 1) * half
