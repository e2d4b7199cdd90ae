import pytest

from diagrams import (
    Bond,
    Leaf,
    enumerate_graphs,
    graph_weight,
    graphs_weight_sum,
    mirror_classes,
    pants_count,
    skeleton_shapes,
    to_text,
)
from recursion import compute_omega


@pytest.mark.parametrize("g,k,rules,expected", [
    (0, 2, "strict", 2),
    (0, 3, "strict", 12),
    (1, 0, "strict", 1),
    (2, 0, "strict", 5),
    (2, 0, "any-side", 13),
    (2, 0, "any-edge", 15),
])
def test_graph_counts(g, k, rules, expected):
    assert len(enumerate_graphs(g, k, rules)) == expected


def test_skeleton_shapes_are_catalan():
    assert [len(skeleton_shapes(n)) for n in range(6)] == [1, 1, 2, 5, 14, 42]


def test_pants_count_matches_strict_enumeration():
    assert pants_count(0, 3) == 12
    assert pants_count(2, 0) == 5


def test_planar_pair_text():
    texts = sorted(to_text(graph) for graph in enumerate_graphs(0, 2))
    assert texts == ["p -> 0[p1 p2]", "p -> 0[p2 p1]"]


def test_torus_graph_is_a_self_loop():
    (graph,) = enumerate_graphs(1, 0)
    assert graph.slots == ((Bond(0, 1), Bond(0, 0)),)
    assert to_text(graph) == "p -> 0[~0R ~0L]"
    assert graph.edge_counts() == (1, 1)


def test_enumeration_is_deterministic_and_duplicate_free():
    first = [to_text(graph) for graph in enumerate_graphs(0, 3)]
    second = [to_text(graph) for graph in enumerate_graphs(0, 3)]
    assert first == second
    assert len(set(first)) == len(first)


def test_leaves_are_labelled_once():
    for graph in enumerate_graphs(1, 2):
        labels = sorted(s.label for pair in graph.slots for s in pair if isinstance(s, Leaf))
        assert labels == [1, 2]


def test_swap_is_an_involution():
    for graph in enumerate_graphs(2, 0):
        for v in range(graph.n_vertices):
            assert graph.swap(v).swap(v) == graph


def test_mirror_classes_at_genus_two():
    classes = mirror_classes(enumerate_graphs(2, 0))
    assert [m for _, m in classes] == [2, 2, 1]


@pytest.mark.parametrize("g,k", [(0, 1), (-1, 3), (0, -1)])
def test_unstable_requests_are_rejected(g, k):
    with pytest.raises(ValueError):
        enumerate_graphs(g, k)


def test_unknown_rule_set():
    with pytest.raises(ValueError):
        enumerate_graphs(0, 2, "loose")


@pytest.mark.parametrize("g,n", [(0, 3), (1, 1), (0, 4), (1, 2)])
def test_weights_reproduce_airy_correlators(airy, g, n):
    total = graphs_weight_sum(airy, enumerate_graphs(g, n - 1))
    assert total == compute_omega(airy, g, n)


@pytest.mark.parametrize("g,n", [(0, 3), (1, 1), (0, 4)])
def test_weights_reproduce_quadrangulation_correlators(quadrangulation, g, n):
    total = graphs_weight_sum(quadrangulation, enumerate_graphs(g, n - 1))
    assert total == compute_omega(quadrangulation, g, n)


def test_single_graph_weight_has_one_slot_per_point(airy):
    (graph,) = enumerate_graphs(1, 0)
    weight = graph_weight(airy, graph)
    assert weight.slots == (0,)
    assert weight.g == 1


def test_empty_sum_is_none(airy):
    assert graphs_weight_sum(airy, []) is None
