"""3x3 matrices over GF(p^2) and their images in PGL_3(p^2).

A matrix is stored as a flat tuple of 18 ints: the (c0, c1) coordinates of its
entries in row-major order. Entry (i, j) lives at positions 6i + 2j and 6i + 2j + 1.
Products are computed directly on that tuple; everything else goes through
FqElement arithmetic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, NamedTuple, Sequence

from .exceptions import CapExceeded, SingularMatrix
from .fields import NON_RESIDUE, FqElement, golden_root, omega_root, require_admissible


logger = logging.getLogger(__name__)

Flat = tuple[int, ...]


def _flat_mul(a: Flat, b: Flat, p: int) -> list[int]:
    out = []
    for i in range(3):
        r = 6 * i
        a00, a01, a10, a11, a20, a21 = a[r : r + 6]
        for j in range(3):
            c = 2 * j
            b00, b01 = b[c], b[c + 1]
            b10, b11 = b[c + 6], b[c + 7]
            b20, b21 = b[c + 12], b[c + 13]
            s0 = a00 * b00 + a10 * b10 + a20 * b20 + NON_RESIDUE * (
                a01 * b01 + a11 * b11 + a21 * b21
            )
            s1 = a00 * b01 + a01 * b00 + a10 * b11 + a11 * b10 + a20 * b21 + a21 * b20
            out.append(s0 % p)
            out.append(s1 % p)
    return out


def _flat_normalize(v: Sequence[int], p: int) -> Flat:
    """Scale so that the first nonzero entry in row-major order is 1."""
    for k in range(0, 18, 2):
        c0, c1 = v[k], v[k + 1]
        if c0 or c1:
            break
    else:
        raise SingularMatrix("the zero matrix has no projective image")
    if c0 == 1 and c1 == 0:
        return tuple(v)
    n_inv = pow((c0 * c0 - NON_RESIDUE * c1 * c1) % p, -1, p)
    i0, i1 = c0 * n_inv % p, -c1 * n_inv % p
    out = []
    for k in range(0, 18, 2):
        x0, x1 = v[k], v[k + 1]
        out.append((x0 * i0 + NON_RESIDUE * x1 * i1) % p)
        out.append((x0 * i1 + x1 * i0) % p)
    return tuple(out)


@dataclass(frozen=True, slots=True)
class Mat3:
    p: int
    flat: Flat

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[FqElement | int]], p: int) -> Mat3:
        flat: list[int] = []
        for row in rows:
            for entry in row:
                if isinstance(entry, FqElement):
                    flat.extend((entry.c0, entry.c1))
                else:
                    flat.extend((entry % p, 0))
        if len(flat) != 18:
            raise ValueError("a Mat3 needs exactly 3 rows of 3 entries")
        return cls(p, tuple(flat))

    @classmethod
    def identity(cls, p: int) -> Mat3:
        return cls.scalar(FqElement.one(p))

    @classmethod
    def scalar(cls, c: FqElement) -> Mat3:
        z = FqElement.zero(c.p)
        return cls.from_rows([[c, z, z], [z, c, z], [z, z, c]], c.p)

    @classmethod
    def diagonal(cls, entries: Sequence[FqElement]) -> Mat3:
        p = entries[0].p
        z = FqElement.zero(p)
        return cls.from_rows(
            [[entries[0], z, z], [z, entries[1], z], [z, z, entries[2]]], p
        )

    def entry(self, i: int, j: int) -> FqElement:
        k = 6 * i + 2 * j
        return FqElement(self.flat[k], self.flat[k + 1], self.p)

    @property
    def rows(self) -> tuple[tuple[FqElement, ...], ...]:
        return tuple(tuple(self.entry(i, j) for j in range(3)) for i in range(3))

    def scale(self, c: FqElement | int) -> Mat3:
        return Mat3.from_rows(
            [[c * e for e in row] for row in self.rows], self.p
        )

    def adjugate(self) -> Mat3:
        m = self.rows
        cof = [
            [
                m[(i + 1) % 3][(j + 1) % 3] * m[(i + 2) % 3][(j + 2) % 3]
                - m[(i + 1) % 3][(j + 2) % 3] * m[(i + 2) % 3][(j + 1) % 3]
                for j in range(3)
            ]
            for i in range(3)
        ]
        return Mat3.from_rows([[cof[j][i] for j in range(3)] for i in range(3)], self.p)

    def trace(self) -> FqElement:
        return self.entry(0, 0) + self.entry(1, 1) + self.entry(2, 2)

    def __matmul__(self, other: Mat3) -> Mat3:
        return mat_mul(self, other)

    def to_json(self) -> list[list[list[int]]]:
        return [[e.to_json() for e in row] for row in self.rows]


def mat_mul(a: Mat3, b: Mat3) -> Mat3:
    return Mat3(a.p, tuple(_flat_mul(a.flat, b.flat, a.p)))


def det(a: Mat3) -> FqElement:
    m = a.rows
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def mat_inv(a: Mat3) -> Mat3:
    d = det(a)
    if d.is_zero():
        raise SingularMatrix("matrix is singular")
    return a.adjugate().scale(1 / d)


@dataclass(frozen=True, slots=True)
class CharPoly:
    """lambda^3 + c2 lambda^2 + c1 lambda + c0."""

    c2: FqElement
    c1: FqElement
    c0: FqElement

    def coefficients(self) -> list[FqElement]:
        """Highest degree first, leading 1 included."""
        return [FqElement.one(self.c0.p), self.c2, self.c1, self.c0]

    def times(self, other: Sequence[FqElement | int]) -> list[FqElement]:
        """Product with another polynomial, both highest degree first."""
        p = self.c0.p
        other = [c if isinstance(c, FqElement) else FqElement.from_int(c, p) for c in other]
        mine = self.coefficients()
        out = [FqElement.zero(p)] * (len(mine) + len(other) - 1)
        for i, x in enumerate(mine):
            for j, y in enumerate(other):
                out[i + j] = out[i + j] + x * y
        return out

    def evaluate(self, lam: FqElement | int) -> FqElement:
        acc = FqElement.zero(self.c0.p)
        for c in self.coefficients():
            acc = acc * lam + c
        return acc

    def to_json(self) -> list[list[int]]:
        return [c.to_json() for c in self.coefficients()]


def charpoly(a: Mat3) -> CharPoly:
    m = a.rows
    minors = (
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
        + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[1][1] * m[2][2] - m[1][2] * m[2][1]
    )
    return CharPoly(c2=-a.trace(), c1=minors, c0=-det(a))


@dataclass(frozen=True, slots=True)
class ProjElement:
    """An element of PGL_3(p^2), held as its canonical representative."""

    p: int
    key: Flat

    @classmethod
    def identity_for(cls, p: int) -> ProjElement:
        return cls(p, _identity_key(p))

    @property
    def rep(self) -> Mat3:
        return Mat3(self.p, self.key)

    def __mul__(self, other: ProjElement) -> ProjElement:
        return ProjElement(self.p, _flat_normalize(_flat_mul(self.key, other.key, self.p), self.p))

    def __pow__(self, k: int) -> ProjElement:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = self.identity()
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> ProjElement:
        # the adjugate is a scalar multiple of the inverse
        return ProjElement(self.p, _flat_normalize(self.rep.adjugate().flat, self.p))

    def identity(self) -> ProjElement:
        return ProjElement.identity_for(self.p)

    def is_identity(self) -> bool:
        return self.key == _identity_key(self.p)

    def canonical_key(self) -> Flat:
        return self.key

    def to_json(self) -> list[list[list[int]]]:
        return self.rep.to_json()


@lru_cache(maxsize=64)
def _identity_key(p: int) -> Flat:
    return Mat3.identity(p).flat


def canonicalize(a: Mat3) -> ProjElement:
    if det(a).is_zero():
        raise SingularMatrix("singular matrices have no image in PGL_3")
    return ProjElement(a.p, _flat_normalize(a.flat, a.p))


def is_in_psl(e: ProjElement) -> bool:
    """det is a cube in GF(p^2); scalars change det by cubes, so this is well defined."""
    p = e.p
    return (det(e.rep) ** ((p * p - 1) // 3)) == FqElement.one(p)


def default_order_cap(p: int) -> int:
    return p**4 + p**2 + 1


def element_order(e: ProjElement, cap: int | None = None) -> int:
    cap = default_order_cap(e.p) if cap is None else cap
    power = e
    for k in range(1, cap + 1):
        if power.is_identity():
            return k
        power = power * e
    raise CapExceeded(f"element order exceeds {cap}")


def psl3_order(q: int) -> int:
    """|PSL_3(q)| = q^3 (q^2 - 1)(q^3 - 1) / gcd(3, q - 1)."""
    return q**3 * (q**2 - 1) * (q**3 - 1) // gcd(3, q - 1)


class TheoremElements(NamedTuple):
    g: ProjElement
    x: ProjElement
    y: ProjElement
    z: ProjElement


@dataclass(frozen=True)
class TheoremMatrices:
    """Pre-images of g, x, y, z together with the roots they were built from."""

    p: int
    a: FqElement
    b: FqElement
    g: Mat3
    x: Mat3
    y: Mat3
    z: Mat3

    def elements(self) -> TheoremElements:
        return TheoremElements(*(canonicalize(m) for m in (self.g, self.x, self.y, self.z)))


def theorem_matrices(p: int, conjugate_roots: bool = False) -> TheoremMatrices:
    require_admissible(p)
    a = golden_root(p, conjugate=conjugate_roots)
    b = omega_root(p, conjugate=conjugate_roots)
    a_inv, b_inv = 1 / a, 1 / b
    g = Mat3.from_rows([[b_inv, 0, 1], [0, a - b, 0], [1, 0, -b]], p)
    x = Mat3.from_rows([[a_inv, 1, -a], [-1, a, -a_inv], [-a, a_inv, 1]], p)
    y = Mat3.from_rows([[-b_inv, 0, 0], [0, 0, 1], [0, b, 0]], p)
    z = Mat3.from_rows([[0, 0, 1], [-1, 0, 0], [0, -1, 0]], p)
    logger.debug(f"Matrices: built g, x, y, z for p = {p}")
    return TheoremMatrices(p=p, a=a, b=b, g=g, x=x, y=y, z=z)


def theorem_elements(p: int, conjugate_roots: bool = False) -> TheoremElements:
    return theorem_matrices(p, conjugate_roots).elements()


# Matrices displayed in the proof, written over Z[a, b] and evaluated at the roots.


def displayed_g_inverse(a: FqElement, b: FqElement) -> Mat3:
    return Mat3.from_rows([[b, 0, 1], [0, a + b + 1, 0], [1, 0, -1 / b]], a.p)


def displayed_x_squared(a: FqElement, b: FqElement) -> tuple[Mat3, Mat3]:
    p = a.p
    doubled = Mat3.from_rows(
        [[2, 2 * a, -2 * a - 2], [-2 * a, -2 * a - 2, -2], [-2 * a - 2, 2, -2 * a]], p
    )
    reduced = Mat3.from_rows([[-1, -a, a + 1], [a, a + 1, 1], [a + 1, -1, a]], p)
    return doubled, reduced


def displayed_x_squared_y(a: FqElement, b: FqElement) -> Mat3:
    ab = a * b
    return Mat3.from_rows(
        [
            [b + 1, -ab - b, a],
            [-ab - a, -b, -a - 1],
            [-ab - a - b - 1, -ab, 1],
        ],
        a.p,
    )


def displayed_y_x(a: FqElement, b: FqElement) -> Mat3:
    ab = a * b
    return Mat3.from_rows(
        [
            [ab + a + b + 1, b + 1, -ab - a],
            [-a, a + 1, 1],
            [-b, ab, -ab - b],
        ],
        a.p,
    )


def displayed_x_y_x(a: FqElement, b: FqElement) -> tuple[Mat3, Mat3]:
    ab = a * b
    doubled = Mat3.from_rows(
        [
            [2 * ab + 2 * b + 2, 2 * ab + 2 * a + 2, 0],
            [-2, -2 * b, 2 * ab + 2 * a + 2 * b],
            [-2 * b - 2, 2, -2 * ab + 2],
        ],
        a.p,
    )
    reduced = Mat3.from_rows(
        [
            [ab + b + 1, ab + a + 1, 0],
            [-1, -b, ab + a + b],
            [-b - 1, 1, -ab + 1],
        ],
        a.p,
    )
    return doubled, reduced


def displayed_w(a: FqElement, b: FqElement) -> Mat3:
    ab = a * b
    return Mat3.from_rows(
        [
            [b + 1, -a - b - 1, -b],
            [-b, -ab - a - b, -1],
            [a - b, 0, ab + a + 1],
        ],
        a.p,
    )
