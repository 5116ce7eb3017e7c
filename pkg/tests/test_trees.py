import random

import pytest

from broomlab.graphs import Graph, induced
from broomlab.oracles import contains_induced_oracle
from broomlab.solvers import InstanceTooLarge
from broomlab.trees import (
    PatternTree,
    assemble_T_delta,
    build_T,
    build_broom,
    build_multibroom,
    contains_induced,
    find_rooted_broom,
    is_T_delta_free,
    verify_embedding,
)
from broomlab.generators import complete_multipartite

from conftest import random_graph


def is_path_graph(g: Graph) -> bool:
    degs = sorted(len(g.adj[v]) for v in range(g.n))
    return g.m == g.n - 1 and degs.count(1) == 2 and degs[-1] <= 2


def test_build_broom():
    b = build_broom(1, 1)
    assert b.tree.n == 3 and b.handle == 0 and is_path_graph(b.tree)
    b = build_broom(2, 1)
    assert b.tree.n == 4 and is_path_graph(b.tree)
    b = build_broom(2, 3)
    assert b.tree.n == 6
    assert len(b.tree.adj[2]) == 4  # far end of the two-edge path
    with pytest.raises(ValueError):
        build_broom(0, 2)


def test_build_multibroom():
    mb = build_multibroom([(1, 1), (2, 1)])
    assert mb.tree.n == 6 and is_path_graph(mb.tree)
    assert build_multibroom([(1, 0)]).tree.n == 2
    double = build_multibroom([(1, 2), (1, 2)])
    assert double.tree.n == 7
    assert len(double.tree.adj[0]) == 2  # the shared handle joins two stars
    assert sorted(len(double.tree.adj[v]) for v in range(7)) == [1, 1, 1, 1, 2, 3, 3]
    with pytest.raises(ValueError):
        build_multibroom([])


def test_build_T_sizes():
    for delta in range(1, 6):
        t = build_T(delta)
        assert t.tree.n == 1 + delta * (2 * delta + 3)
    assert is_path_graph(build_T(1).tree)
    assert len(build_T(2).tree.adj[0]) == 4
    with pytest.raises(ValueError):
        build_T(0)


def test_contains_induced_examples(c7, k4, pet):
    p6 = build_multibroom([(1, 1), (2, 1)])
    emb = contains_induced(c7, p6)
    assert emb is not None and verify_embedding(c7, p6, emb)
    p3 = build_broom(2, 0)
    assert contains_induced(k4, p3) is None
    assert contains_induced(pet, p6) is None
    assert contains_induced_oracle(pet, p6.tree) is False


def test_t_delta_freeness(c7, pet):
    assert is_T_delta_free(pet, 1)
    assert not is_T_delta_free(c7, 1)
    assert is_T_delta_free(Graph(4, [(0, 1)]), 1)  # host smaller than pattern
    assert is_T_delta_free(pet, 2)


def test_containment_size_refusal():
    big = Graph(80, [(i, i + 1) for i in range(79)])
    with pytest.raises(InstanceTooLarge):
        contains_induced(big, build_T(1))
    assert contains_induced(big, build_T(1), limit=80) is not None


def test_oracle_equivalence_sample():
    rng = random.Random(5)
    for _ in range(120):
        host = random_graph(rng, rng.randint(4, 8), rng.uniform(0.15, 0.85))
        n = rng.randint(2, 6)
        tree = Graph(n, [(rng.randrange(i), i) for i in range(1, n)])
        pattern = PatternTree(tree=tree, handle=0)
        emb = contains_induced(host, pattern)
        assert (emb is not None) == contains_induced_oracle(host, tree)
        if emb is not None:
            assert verify_embedding(host, pattern, emb)


def test_single_vertex_pattern(pet):
    dot = PatternTree(tree=Graph(1), handle=0)
    emb = contains_induced(pet, dot)
    assert emb is not None and emb.as_dict() == {0: 0}
    assert contains_induced(Graph(0), dot) is None


def test_hereditary_consistency(pet):
    rng = random.Random(11)
    assert is_T_delta_free(pet, 1)
    for _ in range(10):
        keep = frozenset(rng.sample(range(10), rng.randint(6, 9)))
        sub, _ = induced(pet, keep)
        assert is_T_delta_free(sub, 1)


def test_find_rooted_broom_star_absent():
    star = Graph(4, [(0, 1), (0, 2), (0, 3)])
    emb = find_rooted_broom(
        star, 0, 1, 3, allowed=frozenset({1, 2, 3})
    )
    assert emb is None  # leaves would need neighbours of a leaf


def test_find_rooted_broom_complete_bipartite():
    zeta = 4
    g = complete_multipartite([2, zeta])  # parts {0,1} and {2..5}
    handle = 2
    emb = find_rooted_broom(
        g, handle, 1, zeta - 1, allowed=frozenset(range(g.n)) - {handle}
    )
    assert emb is not None
    m = emb.as_dict()
    assert m[0] == handle
    assert m[1] in (0, 1)  # path end on the small side
    assert verify_embedding(g, build_broom(1, zeta - 1), emb)


def test_find_rooted_broom_forbidden():
    g = complete_multipartite([2, 4])
    rest = frozenset(range(g.n)) - {2}
    assert (
        find_rooted_broom(g, 2, 1, 1, allowed=frozenset(), forbidden=rest)
        is None
    )
    with pytest.raises(ValueError):
        find_rooted_broom(g, 2, 1, 1, allowed=frozenset({3}), forbidden=frozenset({2}))
    with pytest.raises(ValueError):
        find_rooted_broom(g, 2, 1, 1, allowed=frozenset({3}), forbidden=frozenset({3}))


def test_assemble_in_c7(c7):
    one = find_rooted_broom(c7, 0, 1, 1, allowed=frozenset({1, 2}))
    two = find_rooted_broom(c7, 0, 2, 1, allowed=frozenset({4, 5, 6}))
    assert one is not None and two is not None
    result = assemble_T_delta(
        c7, 0, [(build_broom(1, 1), one), (build_broom(2, 1), two)]
    )
    assert result.embedding is not None
    assert verify_embedding(c7, result.pattern, result.embedding)
    assert result.pattern.tree.n == build_T(1).tree.n


def test_assemble_cross_edge_diagnostic():
    # Two pieces joined only at the handle, plus one poisoning edge
    # between their leaf sets.
    edges = [(0, 1), (1, 2), (0, 3), (3, 4), (4, 5), (2, 5)]
    g = Graph(6, edges)
    one = find_rooted_broom(g, 0, 1, 1, allowed=frozenset({1, 2}))
    two = find_rooted_broom(g, 0, 2, 1, allowed=frozenset({3, 4, 5}))
    assert one is not None and two is not None
    result = assemble_T_delta(
        g, 0, [(build_broom(1, 1), one), (build_broom(2, 1), two)]
    )
    assert result.embedding is None
    assert result.conflict_edge in ((2, 5), (5, 2))


def test_assemble_overlap_is_error(c7):
    one = find_rooted_broom(c7, 0, 1, 1, allowed=frozenset({1, 2}))
    assert one is not None
    with pytest.raises(ValueError):
        assemble_T_delta(
            c7, 0, [(build_broom(1, 1), one), (build_broom(1, 1), one)]
        )
