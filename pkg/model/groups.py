"""Finite-group machinery over any element type with a canonical key.

Elements only need multiplication, ``inverse()``, ``identity()`` and
``canonical_key()``; ProjElement and PermElement both qualify.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Generic, Hashable, Iterable, Iterator, Protocol, Sequence, TypeVar

from .exceptions import CapExceeded, PreconditionError


logger = logging.getLogger(__name__)

DEFAULT_CAP = 10**6
A6_ORDER = 360
A5_ORDER = 60


class GroupElement(Protocol):
    def __mul__(self, other): ...

    def inverse(self): ...

    def identity(self): ...

    def canonical_key(self) -> Hashable: ...


E = TypeVar("E", bound=GroupElement)


class GroupSet(Generic[E]):
    """An explicitly enumerated finite group with its generator list.

    Elements keep the order in which they were produced, so iteration is
    deterministic; membership goes through canonical keys.
    """

    __slots__ = ("generators", "_members", "_keys")

    def __init__(self, generators: Sequence[E], members: dict[Hashable, E]):
        self.generators: tuple[E, ...] = tuple(generators)
        self._members = members
        self._keys: frozenset | None = None

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self) -> Iterator[E]:
        return iter(self._members.values())

    def __contains__(self, e: E) -> bool:
        return e.canonical_key() in self._members

    @property
    def order(self) -> int:
        return len(self._members)

    @property
    def elements(self) -> tuple[E, ...]:
        return tuple(self._members.values())

    @property
    def identity(self) -> E:
        return next(iter(self._members.values())).identity()

    def keys(self) -> frozenset:
        if self._keys is None:
            self._keys = frozenset(self._members)
        return self._keys

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupSet):
            return NotImplemented
        return self.keys() == other.keys()

    def __hash__(self) -> int:
        return hash(self.keys())

    def is_subset_of(self, other: GroupSet) -> bool:
        return len(self) <= len(other) and all(k in other._members for k in self._members)

    def summary(self) -> dict:
        return {
            "order": len(self),
            "generators": [g.to_json() for g in self.generators],
        }

    def __repr__(self) -> str:
        return f"GroupSet(order={len(self)}, generators={len(self.generators)})"


def _keyed(elements: Iterable[E]) -> dict[Hashable, E]:
    return {e.canonical_key(): e for e in elements}


def generate(gens: Sequence[E], cap: int = DEFAULT_CAP) -> GroupSet[E]:
    """Breadth-first closure of gens under right multiplication."""
    if not gens:
        raise PreconditionError("generate needs at least one generator")
    identity = gens[0].identity()
    members = {identity.canonical_key(): identity}
    queue = deque([identity])
    while queue:
        e = queue.popleft()
        for s in gens:
            y = e * s
            k = y.canonical_key()
            if k not in members:
                members[k] = y
                if len(members) > cap:
                    raise CapExceeded(f"closure of {len(gens)} generators exceeds {cap} elements")
                queue.append(y)
    return GroupSet(gens, members)


def contains(s: GroupSet[E], e: E) -> bool:
    return e in s


def conjugate(s: GroupSet[E], e: E) -> GroupSet[E]:
    """e^-1 S e."""
    e_inv = e.inverse()
    return GroupSet(
        [e_inv * x * e for x in s.generators],
        _keyed(e_inv * x * e for x in s),
    )


def _small_generating_set(elements: Sequence[E]) -> list[E]:
    gens: list[E] = []
    span: GroupSet | None = None
    for e in elements:
        if span is not None and e in span:
            continue
        gens.append(e)
        span = generate(gens)
        if len(span) == len(elements):
            break
    return gens


def intersect(s1: GroupSet[E], s2: GroupSet[E]) -> GroupSet[E]:
    common = [e for e in s1 if e in s2]
    gens = _small_generating_set(common)
    result = generate(gens)
    if len(result) != len(common):
        raise PreconditionError("intersect called on sets that are not subgroups of one group")
    return result


def common_order(s1: GroupSet, s2: GroupSet) -> int:
    return sum(1 for k in s1.keys() if k in s2.keys())


def product_set(a: Iterable[E], b: Iterable[E]) -> dict[Hashable, E]:
    """The literal set A*B, keyed."""
    b = list(b)
    return _keyed(x * y for x in a for y in b)


def product_factorizes(a: GroupSet[E], b: GroupSet[E], h: GroupSet[E]) -> bool:
    """H = AB, decided by |A||B| = |A n B||H| (AB is inside H already)."""
    if not a.is_subset_of(h) or not b.is_subset_of(h):
        raise PreconditionError("both factors must be subgroups of H")
    return len(a) * len(b) == common_order(a, b) * len(h)


@dataclass
class DoubleCoset(Generic[E]):
    base: E
    subgroup: GroupSet[E]
    members: dict[Hashable, E] = field(repr=False)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, e: E) -> bool:
        return e.canonical_key() in self.members

    def __iter__(self) -> Iterator[E]:
        return iter(self.members.values())


def double_coset(h: GroupSet[E], g: E) -> DoubleCoset[E]:
    """HgH, enumerated one right coset H(gk) at a time."""
    members: dict[Hashable, E] = {}
    for k in h:
        y = g * k
        if y.canonical_key() in members:
            continue
        for x in h:
            e = x * y
            members[e.canonical_key()] = e
    return DoubleCoset(base=g, subgroup=h, members=members)


def antisymmetry_check(h: GroupSet[E], g: E) -> bool:
    """True iff g^-1 is not in HgH; g^-1 = h1 g h2 exactly when g h2 g lies in H."""
    return not any((g * x * g) in h for x in h)


def normalizes(e: E, s: GroupSet[E]) -> bool:
    # e^-1 S e has the order of S, so containing the conjugated generators is enough
    e_inv = e.inverse()
    return all((e_inv * x * e) in s for x in s.generators)


def right_transversal(h: GroupSet[E], k: GroupSet[E]) -> list[E]:
    """Representatives r with H the disjoint union of the cosets K r."""
    covered: set[Hashable] = set()
    reps: list[E] = []
    for r in h:
        if r.canonical_key() in covered:
            continue
        reps.append(r)
        covered.update((x * r).canonical_key() for x in k)
    return reps


def derived_subgroup(s: GroupSet[E]) -> GroupSet[E]:
    elements = s.elements
    inverses = [e.inverse() for e in elements]
    commutators = _keyed(
        ia * ib * a * b
        for a, ia in zip(elements, inverses)
        for b, ib in zip(elements, inverses)
    )
    return generate(list(commutators.values()))


def _is_identity(e: GroupElement) -> bool:
    return e.canonical_key() == e.identity().canonical_key()


def verify_a6_presentation(x: E, y: E, cap: int = DEFAULT_CAP) -> bool:
    """x^5 = y^2 = (xy)^5 = (xyx)^4 = 1 and |<x, y>| = 360."""
    xy = x * y
    xyx = xy * x
    words = {"x^5": (x, 5), "y^2": (y, 2), "(xy)^5": (xy, 5), "(xyx)^4": (xyx, 4)}
    for name, (base, n) in words.items():
        power = base
        for _ in range(n - 1):
            power = power * base
        if not _is_identity(power):
            logger.info(f"Groups: relation {name} = 1 fails")
            return False
    try:
        order = len(generate([x, y], cap=cap))
    except CapExceeded as exc:
        logger.warning(f"Groups: {exc}")
        return False
    return order == A6_ORDER


def a5_recognize(s: GroupSet[E], ambient: GroupSet[E] | None = None) -> bool:
    """Inside a verified A6 the subgroups of order 60 are exactly the A5's."""
    if ambient is not None:
        if len(ambient) != A6_ORDER or not s.is_subset_of(ambient):
            raise PreconditionError("a5_recognize needs a subgroup of a group of order 360")
    if len(s) != A5_ORDER:
        return False
    if len(derived_subgroup(s)) != len(s):
        logger.error("Groups: order-60 subgroup is not perfect")
        return False
    return True


def double_coset_reps(g: GroupSet[E], h: GroupSet[E]) -> list[E]:
    """One representative of every (H, H)-double coset of G, first-seen order."""
    covered: set[Hashable] = set()
    reps: list[E] = []
    for e in g:
        if e.canonical_key() in covered:
            continue
        reps.append(e)
        covered.update(double_coset(h, e).members)
    return reps


def all_subgroups(g: GroupSet[E]) -> list[GroupSet[E]]:
    """Every subgroup of a small group, built as joins of cyclic subgroups."""
    cyclic: dict[frozenset, GroupSet[E]] = {}
    for e in g:
        c = generate([e])
        cyclic.setdefault(c.keys(), c)
    found = dict(cyclic)
    frontier = list(cyclic.values())
    while frontier:
        grown: list[GroupSet[E]] = []
        for s in frontier:
            for c in cyclic.values():
                if c.is_subset_of(s):
                    continue
                j = generate([*s.generators, *c.generators])
                if j.keys() not in found:
                    found[j.keys()] = j
                    grown.append(j)
        frontier = grown
    return sorted(found.values(), key=len)


def subgroup_class_reps(g: GroupSet[E]) -> list[GroupSet[E]]:
    """One subgroup from each conjugacy class, smallest order first."""
    seen: set[frozenset] = set()
    reps: list[GroupSet[E]] = []
    for s in all_subgroups(g):
        if s.keys() in seen:
            continue
        reps.append(s)
        seen.update(conjugate(s, e).keys() for e in g)
    logger.debug(f"Groups: {len(reps)} conjugacy classes of subgroups in a group of order {len(g)}")
    return reps
