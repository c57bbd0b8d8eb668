"""Small-group checks of the coset-digraph facts the PSL_3(p^2) construction uses.

The exhaustive tier walks every catalogue group, every conjugacy class of
subgroups H and every (H, H)-double coset HgH, builds Cos(G, H, g) whenever it
is a digraph and compares each brute-force property with the group-theoretic
criterion that predicts it. The randomized tier depends on the seed.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Any, Hashable

from pydantic import BaseModel, Field

from .digraph import (
    ARC_GUARD,
    PRIMITIVITY_GUARD,
    arc_stabilizers,
    brute_s_arc_transitive,
    build_coset_digraph,
    check_connectivity,
    check_primitive_bruteforce,
    factorization_predicts_2arc,
    is_maximal_bruteforce,
)
from .exceptions import CapExceeded, PreconditionError
from .groups import (
    GroupSet,
    all_subgroups,
    antisymmetry_check,
    common_order,
    conjugate,
    double_coset,
    double_coset_reps,
    generate,
    intersect,
    normalizes,
    product_factorizes,
    product_set,
    subgroup_class_reps,
)
from .permutations import CatalogueGroup, PermElement, small_groups


logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 120
DIRECTED_ATTEMPTS = 200

EXHAUSTIVE_PROPERTIES = (
    "double_coset_size",
    "directed",
    "factor_distinctness",
    "regularity",
    "antisymmetric_arcs",
    "vertex_and_arc_transitive",
    "connectivity",
    "two_arc_factorization",
    "primitivity_maximality",
    "primitive_implies_connected",
)
RANDOMIZED_PROPERTIES = ("factorization_equivalences", "directed_randomized")


class Counterexample(BaseModel):
    property: str
    group: str
    detail: dict[str, Any]


class PropertyTally(BaseModel):
    checked: int = 0
    counterexamples: list[Counterexample] = Field(default_factory=list)


class OracleReport(BaseModel):
    max_group_order: int
    seed: int
    groups: list[str]
    digraph_instances: int
    premise_instances: int
    premise_groups: list[str]
    exhaustive: dict[str, PropertyTally]
    randomized: dict[str, PropertyTally]

    @property
    def counterexamples(self) -> list[Counterexample]:
        return [
            c
            for section in (self.exhaustive, self.randomized)
            for tally in section.values()
            for c in tally.counterexamples
        ]

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def dumps(self) -> str:
        return self.model_dump_json(indent=2) + "\n"


@dataclass
class _Premise:
    group: CatalogueGroup
    H: GroupSet[PermElement]
    g: PermElement


class _Tallies:
    def __init__(self, names: tuple[str, ...]):
        self.tallies = {name: PropertyTally() for name in names}

    def check(self, name: str, ok: bool, group: str, **detail: Any) -> bool:
        tally = self.tallies[name]
        tally.checked += 1
        if not ok:
            logger.warning(f"Oracle: [fail] {name} in {group}: {detail}")
            tally.counterexamples.append(
                Counterexample(property=name, group=group, detail=_describe(detail))
            )
        return ok


def _describe(detail: dict[str, Any]) -> dict[str, Any]:
    out = {}
    for k, v in detail.items():
        if isinstance(v, GroupSet):
            out[k] = v.summary()
        elif hasattr(v, "to_json"):
            out[k] = v.to_json()
        else:
            out[k] = v
    return out


def _nontrivial(h: GroupSet, a: GroupSet, b: GroupSet) -> bool:
    return len(a) < len(h) and len(b) < len(h)


def _sweep_group(
    cat: CatalogueGroup,
    tallies: _Tallies,
    premises: list[_Premise],
    arc_guard: int,
    primitivity_guard: int,
) -> int:
    G, name = cat.group, cat.name
    built = 0
    for H in subgroup_class_reps(G):
        if len(H) == len(G):
            continue
        maximal = is_maximal_bruteforce(G, H)
        primitive: bool | None = None
        for g in double_coset_reps(G, H):
            if g in H:
                continue
            k1, k2 = arc_stabilizers(H, g)
            hgh = double_coset(H, g)
            tallies.check(
                "double_coset_size",
                len(hgh) * len(k1) == len(H) ** 2,
                name,
                H=H,
                g=g,
                double_coset=len(hgh),
                arc_stabilizer=len(k1),
            )
            antisymmetric = antisymmetry_check(H, g)
            factorizes = product_factorizes(k1, k2, H)
            if factorizes and not normalizes(g, H):
                premises.append(_Premise(cat, H, g))
                tallies.check("directed", antisymmetric, name, H=H, g=g)
                if _nontrivial(H, k1, k2):
                    k12 = intersect(k1, k2)
                    tallies.check(
                        "factor_distinctness",
                        k1 != k2 and len(k12) < len(k1) and len(k12) < len(k2),
                        name,
                        H=H,
                        g=g,
                        factors=[len(k1), len(k2)],
                        intersection=len(k12),
                    )
            if not antisymmetric:
                continue

            d = build_coset_digraph(G, H, g)
            built += 1
            valency = len(H) // len(k1)
            tallies.check(
                "regularity",
                set(d.out_degrees()) == {valency} and set(d.in_degrees()) == {valency},
                name,
                H=H,
                g=g,
                out_degrees=sorted(set(d.out_degrees())),
                in_degrees=sorted(set(d.in_degrees())),
                expected=valency,
            )
            arcs = set(d.arc_pairs())
            tallies.check(
                "antisymmetric_arcs",
                not any((j, i) in arcs for i, j in arcs),
                name,
                H=H,
                g=g,
            )
            tallies.check(
                "vertex_and_arc_transitive",
                brute_s_arc_transitive(d, 0, arc_guard) and brute_s_arc_transitive(d, 1, arc_guard),
                name,
                H=H,
                g=g,
            )
            connected = check_connectivity(d)
            generates = len(generate([*H.generators, g])) == len(G)
            tallies.check(
                "connectivity",
                connected == generates,
                name,
                H=H,
                g=g,
                connected=connected,
                generates=generates,
            )
            try:
                transitive = brute_s_arc_transitive(d, 2, arc_guard)
            except CapExceeded as exc:
                logger.info(f"Oracle: 2-arc check skipped in {name}: {exc}")
            else:
                predicted = factorization_predicts_2arc(d)
                tallies.check(
                    "two_arc_factorization",
                    transitive == predicted,
                    name,
                    H=H,
                    g=g,
                    two_arc_transitive=transitive,
                    factorizes=predicted,
                )
            if primitive is None:
                # the coset action does not depend on g
                primitive = check_primitive_bruteforce(d, primitivity_guard)
            tallies.check(
                "primitivity_maximality",
                primitive == maximal,
                name,
                H=H,
                primitive=primitive,
                maximal=maximal,
            )
            tallies.check(
                "primitive_implies_connected",
                connected or not primitive,
                name,
                H=H,
                g=g,
            )
    return built


def _right_coset_labels(g: GroupSet, k: GroupSet) -> dict[Hashable, int]:
    labels: dict[Hashable, int] = {}
    count = 0
    for x in g:
        if x.canonical_key() in labels:
            continue
        for y in k:
            labels[(y * x).canonical_key()] = count
        count += 1
    return labels


def _transitive_on_cosets(g: GroupSet, a: GroupSet, b: GroupSet) -> bool:
    """Does A act transitively on the right cosets of B by right multiplication?"""
    labels = _right_coset_labels(g, b)
    reached = {labels[x.canonical_key()] for x in a}
    return len(reached) == len(set(labels.values()))


def _factorization_trials(
    groups: list[CatalogueGroup], trials: int, rng: random.Random, tallies: _Tallies
) -> None:
    if not groups:
        return
    lattices = {c.name: all_subgroups(c.group) for c in groups}
    elements = {c.name: c.group.elements for c in groups}
    for _ in range(trials):
        cat = rng.choice(groups)
        G = cat.group
        subs = lattices[cat.name]
        H, K = rng.choice(subs), rng.choice(subs)
        x, y = rng.choice(elements[cat.name]), rng.choice(elements[cat.name])
        verdicts = {
            "a": len(product_set(H, K)) == len(G),
            "b": len(product_set(K, H)) == len(G),
            "c": len(product_set(conjugate(H, x), conjugate(K, y))) == len(G),
            "d": common_order(H, K) * len(G) == len(H) * len(K),
            "e": _transitive_on_cosets(G, H, K),
            "f": _transitive_on_cosets(G, K, H),
        }
        tallies.check(
            "factorization_equivalences",
            len(set(verdicts.values())) == 1,
            cat.name,
            H=H,
            K=K,
            x=x,
            y=y,
            verdicts=verdicts,
        )


def _directed_trials(
    groups: list[CatalogueGroup],
    premises: list[_Premise],
    trials: int,
    rng: random.Random,
    tallies: _Tallies,
) -> list[str]:
    """Draw random (G, H, g) until `trials` of them satisfy the premise, and check antisymmetry."""
    names = sorted({inst.group.name for inst in premises})
    if not names:
        logger.warning("Oracle: no premise instances, randomized directed tier is empty")
        return names
    by_name = {c.name: c for c in groups}
    # only subgroups of an order already seen to carry the premise are drawn
    pools = {}
    for name in names:
        orders = {len(inst.H) for inst in premises if inst.group.name == name}
        pools[name] = [s for s in all_subgroups(by_name[name].group) if len(s) in orders]

    found = attempts = 0
    while found < trials and attempts < trials * DIRECTED_ATTEMPTS:
        attempts += 1
        cat = by_name[rng.choice(names)]
        H = rng.choice(pools[cat.name])
        g = rng.choice(cat.group.elements)
        if g in H:
            continue
        k1, k2 = arc_stabilizers(H, g)
        if not product_factorizes(k1, k2, H) or normalizes(g, H):
            continue
        found += 1
        tallies.check("directed_randomized", antisymmetry_check(H, g), cat.name, H=H, g=g)
    if found < trials:
        logger.warning(f"Oracle: only {found} of {trials} directed trials met the premise in {attempts} draws")
    else:
        logger.info(f"Oracle: {found} directed trials from {attempts} draws")
    return names


def run_oracle_suite(
    max_group_order: int = EXHAUSTIVE_LIMIT,
    seed: int = 0,
    directed_trials: int = 1000,
    factorization_trials: int = 200,
    factorization_max_order: int = 60,
    arc_guard: int = ARC_GUARD,
    primitivity_guard: int = PRIMITIVITY_GUARD,
) -> OracleReport:
    if max_group_order > EXHAUSTIVE_LIMIT:
        raise PreconditionError(
            f"the exhaustive tier is limited to groups of order at most {EXHAUSTIVE_LIMIT}"
        )
    groups = small_groups(max_group_order)
    exhaustive = _Tallies(EXHAUSTIVE_PROPERTIES)
    premises: list[_Premise] = []
    built = 0
    for cat in groups:
        n = _sweep_group(cat, exhaustive, premises, arc_guard, primitivity_guard)
        logger.info(f"Oracle: {cat.name} (order {cat.order}): {n} digraphs")
        built += n

    rng = random.Random(seed)
    randomized = _Tallies(RANDOMIZED_PROPERTIES)
    small = [c for c in groups if c.order <= factorization_max_order]
    _factorization_trials(small, factorization_trials, rng, randomized)
    premise_groups = _directed_trials(groups, premises, directed_trials, rng, randomized)

    report = OracleReport(
        max_group_order=max_group_order,
        seed=seed,
        groups=[c.name for c in groups],
        digraph_instances=built,
        premise_instances=len(premises),
        premise_groups=premise_groups,
        exhaustive=exhaustive.tallies,
        randomized=randomized.tallies,
    )
    level = logging.INFO if report.ok else logging.WARNING
    logger.log(
        level,
        f"Oracle: {built} digraphs, {len(premises)} premise instances, "
        f"{len(report.counterexamples)} counterexamples",
    )
    return report
