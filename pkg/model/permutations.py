"""Permutation elements and a catalogue of small permutation groups.

These back the coset-digraph oracle: every property that the large matrix
construction relies on is checked exhaustively on the groups listed here.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.galois import S6TransitiveSubgroups
from sympy.combinatorics.group_constructs import DirectProduct
from sympy.combinatorics.named_groups import (
    AbelianGroup,
    AlternatingGroup,
    CyclicGroup,
    DihedralGroup,
    SymmetricGroup,
)

from .groups import GroupSet, generate


logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class PermElement:
    """A permutation of {0, ..., n-1} stored by its image tuple.

    As with SymPy, ``p * q`` applies p first and then q.
    """

    images: tuple[int, ...]

    @classmethod
    def from_sympy(cls, perm: Permutation) -> PermElement:
        return cls(tuple(perm.array_form))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], size: int) -> PermElement:
        return cls.from_sympy(Permutation([list(c) for c in cycles], size=size))

    def to_sympy(self) -> Permutation:
        return Permutation(list(self.images))

    def __mul__(self, other: PermElement) -> PermElement:
        o = other.images
        return PermElement(tuple(o[i] for i in self.images))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def inverse(self) -> PermElement:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return PermElement(tuple(inv))

    def identity(self) -> PermElement:
        return PermElement(tuple(range(len(self.images))))

    def canonical_key(self) -> tuple[int, ...]:
        return self.images

    def to_json(self) -> list[list[int]]:
        return [list(c) for c in self.to_sympy().cyclic_form]

    def __repr__(self) -> str:
        return f"PermElement({self.to_json()})"


@dataclass(frozen=True)
class CatalogueGroup:
    name: str
    group: GroupSet[PermElement]

    @property
    def order(self) -> int:
        return len(self.group)


def _affine(modulus: int, multiplier: int) -> PermutationGroup:
    """x -> x + 1 and x -> multiplier * x on Z/modulus."""
    shift = Permutation([(i + 1) % modulus for i in range(modulus)])
    scale = Permutation([(multiplier * i) % modulus for i in range(modulus)])
    return PermutationGroup([shift, scale])


def _wreath_c2(top: str) -> PermutationGroup:
    """C2 wr C3 (= C2 x A4) or C2 wr S3 (= C2 x S4) on the three pairs {0,1}, {2,3}, {4,5}."""
    gens = [
        Permutation([[0, 1]], size=6),
        Permutation([[0, 2, 4], [1, 3, 5]], size=6),
    ]
    if top == "S3":
        gens.append(Permutation([[0, 2], [1, 3]], size=6))
    return PermutationGroup(gens)


def _quaternion() -> PermutationGroup:
    """Q8 in its regular representation."""
    i = Permutation([[0, 1, 3, 6], [2, 5, 7, 4]], size=8)
    j = Permutation([[0, 2, 3, 7], [1, 4, 6, 5]], size=8)
    return PermutationGroup([i, j])


def _catalogue() -> list[tuple[str, PermutationGroup]]:
    groups = [
        ("C5", CyclicGroup(5)),
        ("S3", SymmetricGroup(3)),
        ("D8", DihedralGroup(4)),
        ("D10", DihedralGroup(5)),
        ("A4", AlternatingGroup(4)),
        ("D12", DihedralGroup(6)),
        ("AGL(1,5)", _affine(5, 2)),
        ("C7:C3", _affine(7, 2)),
        ("S4", SymmetricGroup(4)),
        ("C2 wr C3", _wreath_c2("C3")),
        ("AGL(1,7)", _affine(7, 3)),
        ("C2 wr S3", _wreath_c2("S3")),
        ("A5", AlternatingGroup(5)),
        ("S5", SymmetricGroup(5)),
        ("C2xC2", AbelianGroup(2, 2)),
        ("C4xC2", AbelianGroup(4, 2)),
        ("C2xC2xC2", AbelianGroup(2, 2, 2)),
        ("Q8", _quaternion()),
        ("C2xD8", DirectProduct(CyclicGroup(2), DihedralGroup(4))),
        ("C3xS3", DirectProduct(CyclicGroup(3), SymmetricGroup(3))),
        ("C2 x C2 wr C3", DirectProduct(CyclicGroup(2), _wreath_c2("C3"))),
        # transitive groups of degree 6 not listed above
        ("C3^2:C2", S6TransitiveSubgroups.G18.get_perm_group()),
        ("C3^2:C4", S6TransitiveSubgroups.G36m.get_perm_group()),
        ("S3xS3", S6TransitiveSubgroups.G36p.get_perm_group()),
        ("S3 wr C2", S6TransitiveSubgroups.G72.get_perm_group()),
    ]
    groups += [(f"D{2 * n}", DihedralGroup(n)) for n in (*range(7, 21), 30, 60)]
    return groups


def small_groups(max_order: int) -> list[CatalogueGroup]:
    """Catalogue groups of order at most max_order, smallest first."""
    out = []
    for name, pgroup in _catalogue():
        if pgroup.order() > max_order:
            continue
        gens = [PermElement.from_sympy(g) for g in pgroup.generators]
        group = generate(gens)
        if len(group) != pgroup.order():
            raise RuntimeError(f"closure of {name} has {len(group)} elements, expected {pgroup.order()}")
        out.append(CatalogueGroup(name, group))
    out.sort(key=lambda c: (c.order, c.name))
    logger.debug(f"Oracle: catalogue up to order {max_order}: {[c.name for c in out]}")
    return out


def frobenius_21() -> tuple[GroupSet[PermElement], GroupSet[PermElement], PermElement]:
    """The order-21 group on Z/7 with H the stabilizer of 0 and g = x -> x + 1."""
    shift = PermElement(tuple((i + 1) % 7 for i in range(7)))
    scale = PermElement(tuple((2 * i) % 7 for i in range(7)))
    return generate([shift, scale]), generate([scale]), shift
