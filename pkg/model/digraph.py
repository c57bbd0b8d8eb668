"""The coset digraph Cos(G, H, g).

Vertices are right cosets Hx, and Hx -> Hy iff y x^-1 lies in HgH. Small
instances are built explicitly; for the PSL_3(p^2) family only the local patch
around v = H is computed, with coset equality decided by membership in H.
"""

from __future__ import annotations

import json
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Generic, Hashable

import networkx as nx
from sympy.combinatorics import Permutation, PermutationGroup

from .exceptions import CapExceeded, NotADigraph, PreconditionError
from .groups import (
    E,
    GroupSet,
    antisymmetry_check,
    conjugate,
    double_coset,
    generate,
    intersect,
    product_factorizes,
    right_transversal,
)


logger = logging.getLogger(__name__)

ARC_GUARD = 100_000
PRIMITIVITY_GUARD = 200


@dataclass
class CosetDigraph(Generic[E]):
    group: GroupSet[E]
    subgroup: GroupSet[E]
    g: E
    vertices: list[E]
    arcs: list[tuple[int, ...]]
    coset_index: dict[Hashable, int] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.vertices)

    def coset_of(self, e: E) -> int:
        return self.coset_index[e.canonical_key()]

    def right_action(self, e: E) -> tuple[int, ...]:
        """The permutation Hx -> Hxe of vertex indices."""
        return tuple(self.coset_of(x * e) for x in self.vertices)

    @cached_property
    def action_group(self) -> PermutationGroup:
        """R_H(G) as a permutation group on the vertex indices."""
        return PermutationGroup([Permutation(list(self.right_action(x))) for x in self.group.generators])

    def out_degrees(self) -> list[int]:
        return [len(a) for a in self.arcs]

    def in_degrees(self) -> list[int]:
        counts = [0] * self.order
        for targets in self.arcs:
            for j in targets:
                counts[j] += 1
        return counts

    def arc_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, targets in enumerate(self.arcs) for j in targets]

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.order))
        graph.add_edges_from(self.arc_pairs())
        return graph

    def to_arc_lines(self) -> str:
        return "".join(f"{i} {j}\n" for i, j in self.arc_pairs())

    def to_json(self) -> str:
        return json.dumps(
            {"order": self.order, "arcs": [list(a) for a in self.arc_pairs()]},
            sort_keys=True,
        )


def build_coset_digraph(G: GroupSet[E], H: GroupSet[E], g: E) -> CosetDigraph[E]:
    if not H.is_subset_of(G):
        raise PreconditionError("H is not a subgroup of G")
    if g not in G:
        raise PreconditionError("g is not an element of G")
    if not antisymmetry_check(H, g):
        raise NotADigraph("g^-1 lies in HgH")

    vertices: list[E] = []
    index: dict[Hashable, int] = {}
    for x in G:
        if x.canonical_key() in index:
            continue
        c = len(vertices)
        vertices.append(x)
        for h in H:
            index[(h * x).canonical_key()] = c

    hgh = list(double_coset(H, g))
    arcs = [
        tuple(sorted({index[(d * x).canonical_key()] for d in hgh}))
        for x in vertices
    ]
    logger.debug(f"Digraph: {len(vertices)} vertices, out-degree {len(arcs[0])}")
    return CosetDigraph(G, H, g, vertices, arcs, index)


def check_connectivity(d: CosetDigraph) -> bool:
    return nx.is_weakly_connected(d.to_networkx())


def _s_arcs(d: CosetDigraph, s: int) -> list[tuple[int, ...]]:
    walks = [(v,) for v in range(d.order)]
    for _ in range(s):
        walks = [w + (j,) for w in walks for j in d.arcs[w[-1]]]
    return walks


def brute_s_arc_transitive(d: CosetDigraph, s: int, guard: int = ARC_GUARD) -> bool:
    """Is R_H(G) transitive on s-arcs? Only the right-multiplication group is tested."""
    if s not in (0, 1, 2, 3):
        raise PreconditionError(f"s must be 0, 1, 2 or 3, got {s}")
    valency = len(d.arcs[0])
    total = d.order * valency**s
    if total > guard:
        raise CapExceeded(f"{total} {s}-arcs exceed the guard of {guard}")
    walks = _s_arcs(d, s)
    if not walks:
        return True
    orbit = d.action_group.orbit(list(walks[0]), action="tuples")
    return len(orbit) == len(walks)


def arc_stabilizers(H: GroupSet[E], g: E) -> tuple[GroupSet[E], GroupSet[E]]:
    """(H n g^-1 H g, g H g^-1 n H): the stabilizers of the arcs v->w and u->v."""
    k1 = intersect(H, conjugate(H, g))
    k2 = intersect(conjugate(H, g.inverse()), H)
    return k1, k2


def factorization_predicts_2arc(d: CosetDigraph) -> bool:
    k1, k2 = arc_stabilizers(d.subgroup, d.g)
    return product_factorizes(k1, k2, d.subgroup)


def check_primitive_bruteforce(d: CosetDigraph, guard: int = PRIMITIVITY_GUARD) -> bool:
    """Is R_H(G) primitive on the vertices? Decided with SymPy minimal blocks."""
    n = d.order
    if n > guard:
        raise CapExceeded(f"{n} vertices exceed the primitivity guard of {guard}")
    return bool(d.action_group.is_primitive(randomized=False))


def is_maximal_bruteforce(G: GroupSet[E], H: GroupSet[E]) -> bool:
    """H < G is maximal iff <H, e> = G for every e outside H."""
    if len(H) >= len(G):
        return False
    covered: set[Hashable] = set(H.keys())
    for e in G:
        if e.canonical_key() in covered:
            continue
        if len(generate([*H.generators, e])) != len(G):
            return False
        covered.update((h * e).canonical_key() for h in H)
    return True


def same_coset(H: GroupSet[E], x: E, y: E) -> bool:
    """Hx = Hy."""
    return (x * y.inverse()) in H


@dataclass
class ArcTriple(Generic[E]):
    """The 2-arc u -> v -> w with u = Hg^-1, v = H, w = Hg, and its stabilizer."""

    u: E
    v: E
    w: E
    stabilizer: GroupSet[E]


@dataclass
class LocalPatch(Generic[E]):
    subgroup: GroupSet[E]
    g: E
    arc_stabilizer: GroupSet[E]
    reverse_arc_stabilizer: GroupSet[E]
    out_reps: list[E]
    in_reps: list[E]
    out_of_w: list[E]
    two_arc: ArcTriple[E]

    @property
    def out_degree(self) -> int:
        return len(self.out_reps)

    @property
    def in_degree(self) -> int:
        return len(self.in_reps)

    def is_disjoint(self) -> bool:
        return not any(
            same_coset(self.subgroup, x, y) for x in self.out_reps for y in self.in_reps
        )

    def underlying_valency(self) -> int:
        distinct: list[E] = []
        for x in [*self.out_reps, *self.in_reps]:
            if not any(same_coset(self.subgroup, x, y) for y in distinct):
                distinct.append(x)
        return len(distinct)


def local_patch(H: GroupSet[E], g: E) -> LocalPatch[E]:
    if not antisymmetry_check(H, g):
        raise NotADigraph("g^-1 lies in HgH")
    k1, k2 = arc_stabilizers(H, g)
    g_inv = g.inverse()
    out_reps = [g * r for r in right_transversal(H, k1)]
    in_reps = [g_inv * r for r in right_transversal(H, k2)]
    out_of_w = [y * g for y in out_reps]
    identity = H.identity
    two_arc = ArcTriple(u=g_inv, v=identity, w=g, stabilizer=intersect(k2, k1))
    logger.debug(
        f"Digraph: local patch with {len(out_reps)} out- and {len(in_reps)} in-neighbours"
    )
    return LocalPatch(H, g, k1, k2, out_reps, in_reps, out_of_w, two_arc)


def two_arc_stabilizer_orbits(patch: LocalPatch) -> list[int]:
    """Orbit sizes of G_uvw on the out-neighbours of w, sorted ascending."""
    H = patch.subgroup
    points = patch.out_of_w
    inverses = [y.inverse() for y in points]

    def locate(e) -> int:
        for j, y_inv in enumerate(inverses):
            if (e * y_inv) in H:
                return j
        raise PreconditionError("image is not an out-neighbour of w")

    gens = patch.two_arc.stabilizer.generators
    seen: set[int] = set()
    sizes: list[int] = []
    for start in range(len(points)):
        if start in seen:
            continue
        orbit = {start}
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for k in gens:
                j = locate(points[i] * k)
                if j not in orbit:
                    orbit.add(j)
                    queue.append(j)
        seen |= orbit
        sizes.append(len(orbit))
    return sorted(sizes)
