import json

import networkx as nx
import pytest

from model.digraph import (
    arc_stabilizers,
    brute_s_arc_transitive,
    build_coset_digraph,
    check_connectivity,
    check_primitive_bruteforce,
    factorization_predicts_2arc,
    is_maximal_bruteforce,
    local_patch,
    two_arc_stabilizer_orbits,
)
from model.exceptions import CapExceeded, NotADigraph, PreconditionError
from model.groups import (
    antisymmetry_check,
    double_coset_reps,
    generate,
    normalizes,
    product_factorizes,
    subgroup_class_reps,
)
from model.permutations import PermElement


@pytest.fixture(scope="module")
def frobenius_digraph(frobenius):
    return build_coset_digraph(frobenius.G, frobenius.H, frobenius.g)


def test_frobenius_digraph_shape(frobenius_digraph):
    d = frobenius_digraph
    assert d.order == 7
    assert d.out_degrees() == [3] * 7
    assert d.in_degrees() == [3] * 7
    arcs = set(d.arc_pairs())
    assert not any((j, i) in arcs for i, j in arcs)
    assert not any(i == j for i, j in arcs)


def test_frobenius_properties(frobenius, frobenius_digraph):
    d = frobenius_digraph
    assert check_connectivity(d)
    assert brute_s_arc_transitive(d, 0)
    assert brute_s_arc_transitive(d, 1)
    assert not brute_s_arc_transitive(d, 2)
    assert not factorization_predicts_2arc(d)
    assert check_primitive_bruteforce(d)
    assert is_maximal_bruteforce(frobenius.G, frobenius.H)


def test_frobenius_local_patch(frobenius):
    patch = local_patch(frobenius.H, frobenius.g)
    assert patch.out_degree == 3
    assert patch.in_degree == 3
    assert patch.is_disjoint()
    assert patch.underlying_valency() == 6
    assert len(patch.two_arc.stabilizer) == 1
    assert two_arc_stabilizer_orbits(patch) == [1, 1, 1]


def test_local_patch_agrees_with_full_digraph(frobenius, frobenius_digraph):
    d = frobenius_digraph
    patch = local_patch(frobenius.H, frobenius.g)
    v = d.coset_of(frobenius.H.identity)
    assert sorted(d.coset_of(r) for r in patch.out_reps) == list(d.arcs[v])
    into_v = sorted(i for i, targets in enumerate(d.arcs) if v in targets)
    assert sorted(d.coset_of(r) for r in patch.in_reps) == into_v


def test_exports(frobenius_digraph):
    d = frobenius_digraph
    lines = d.to_arc_lines().splitlines()
    assert len(lines) == 21
    assert all(len(line.split()) == 2 for line in lines)
    data = json.loads(d.to_json())
    assert data["order"] == 7
    assert len(data["arcs"]) == 21
    graph = d.to_networkx()
    assert isinstance(graph, nx.DiGraph)
    assert graph.number_of_edges() == 21


def test_rejects_invalid_input(frobenius, s4, perm):
    h = frobenius.H.generators[0]
    with pytest.raises(NotADigraph):
        build_coset_digraph(frobenius.G, frobenius.H, h)
    with pytest.raises(NotADigraph):
        local_patch(frobenius.H, h)
    with pytest.raises(PreconditionError):
        build_coset_digraph(frobenius.G, s4, frobenius.g)
    with pytest.raises(PreconditionError):
        build_coset_digraph(s4, generate([perm([[0, 1]], 4)]), perm([[0, 1, 2, 3, 4]], 5))


def test_guards(frobenius_digraph):
    with pytest.raises(CapExceeded):
        brute_s_arc_transitive(frobenius_digraph, 3, guard=100)
    with pytest.raises(PreconditionError):
        brute_s_arc_transitive(frobenius_digraph, 4)
    with pytest.raises(CapExceeded):
        check_primitive_bruteforce(frobenius_digraph, guard=5)


def test_disconnected_when_h_and_g_generate_less(s4, perm):
    trivial = generate([PermElement(tuple(range(4)))])
    g = perm([[0, 1, 2]], 4)
    d = build_coset_digraph(s4, trivial, g)
    assert d.order == 24
    assert not check_connectivity(d)
    assert nx.number_weakly_connected_components(d.to_networkx()) == 8


def test_connectivity_criterion_on_s4(s4):
    seen_disconnected = False
    for h in subgroup_class_reps(s4):
        if len(h) == len(s4):
            continue
        for g in double_coset_reps(s4, h):
            if g in h or not antisymmetry_check(h, g):
                continue
            d = build_coset_digraph(s4, h, g)
            generates = len(generate([*h.generators, g])) == len(s4)
            assert check_connectivity(d) == generates
            seen_disconnected |= not generates
    assert seen_disconnected


def test_imprimitive_when_h_is_not_maximal(s4, perm):
    h = generate([perm([[0, 1]], 4)])
    g = perm([[0, 2, 3]], 4)
    d = build_coset_digraph(s4, h, g)
    assert not is_maximal_bruteforce(s4, h)
    assert not check_primitive_bruteforce(d)
    assert check_connectivity(d)


def test_maximal_subgroups_of_s4(s4):
    orders = sorted(len(h) for h in subgroup_class_reps(s4) if is_maximal_bruteforce(s4, h))
    # S3, D8, A4
    assert orders == [6, 8, 12]


def test_nontrivial_factorization_forces_a_digraph(catalogue, perm):
    G = catalogue["C2 wr C3"]
    h = generate([perm([[0, 1]], 6), perm([[2, 3]], 6)])
    g = perm([[0, 4, 2], [1, 5, 3]], 6)
    assert h.is_subset_of(G) and g in G
    k1, k2 = arc_stabilizers(h, g)
    assert product_factorizes(k1, k2, h)
    assert not normalizes(g, h)
    assert antisymmetry_check(h, g)
    d = build_coset_digraph(G, h, g)
    assert brute_s_arc_transitive(d, 2)


def test_theorem_local_patch(theorem7):
    patch = local_patch(theorem7.H, theorem7.g)
    assert patch.out_degree == 6
    assert patch.in_degree == 6
    assert patch.is_disjoint()
    assert patch.underlying_valency() == 12
    assert len(patch.arc_stabilizer) == 60
    assert len(patch.two_arc.stabilizer) == 10
    orbits = two_arc_stabilizer_orbits(patch)
    assert sum(orbits) == 6
    assert len(orbits) >= 2
    assert all(10 % size == 0 for size in orbits)


def test_action_group_is_the_coset_action(frobenius_digraph):
    group = frobenius_digraph.action_group
    assert group.degree == 7
    assert group.order() == 21
    assert group.is_transitive()
    arcs = group.orbit(tuple(frobenius_digraph.arc_pairs()[0]), action="tuples")
    assert len(arcs) == 21


def test_primitivity_matches_maximality_on_small_groups(catalogue):
    for name, G in catalogue.items():
        if len(G) > 60:
            continue
        for H in subgroup_class_reps(G):
            if len(H) == len(G):
                continue
            reps = [g for g in double_coset_reps(G, H) if g not in H and antisymmetry_check(H, g)]
            if not reps:
                continue
            d = build_coset_digraph(G, H, reps[0])
            assert check_primitive_bruteforce(d) == is_maximal_bruteforce(G, H), (name, len(H))
