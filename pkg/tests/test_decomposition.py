import pytest
from conftest import complete, path, small_graphs
from hypothesis import given, settings

from labcon.decomposition import (
    FORGET,
    INTRODUCE,
    INTRODUCE_EDGE,
    JOIN,
    LEAF,
    TreeDecomposition,
    duplicate_bags,
    heuristic_decompose,
    nicify,
    trivial_decomposition,
    validate,
)
from labcon.errors import InvalidDecomposition
from labcon.graph import LabeledGraph


def grid(r, c):
    lab = lambda i, j: i * c + j
    edges = []
    for i in range(r):
        for j in range(c):
            if i + 1 < r:
                edges.append((lab(i, j), lab(i + 1, j)))
            if j + 1 < c:
                edges.append((lab(i, j), lab(i, j + 1)))
    return LabeledGraph(range(r * c), edges)


def test_validate_path_two_bags():
    td = TreeDecomposition({0: {1, 2}, 1: {2, 3}}, [(0, 1)])
    rep = validate(td, path(1, 2, 3))
    assert rep.valid and rep.width == 1


def test_validate_single_bag_triangle():
    rep = validate(TreeDecomposition({0: {1, 2, 3}}), complete([1, 2, 3]))
    assert rep.valid and rep.width == 2


def test_validate_uncovered_edge():
    rep = validate(TreeDecomposition({0: {1, 2}, 1: {3}}, [(0, 1)]), path(1, 2, 3))
    assert not rep.valid
    assert any("(2, 3)" in p for p in rep.violations)


def test_validate_broken_subtree():
    td = TreeDecomposition({0: {1, 2}, 1: {2, 3}, 2: {1, 3}}, [(0, 1), (1, 2)])
    rep = validate(td, complete([1, 2, 3]))
    assert not rep.valid


def test_validate_cycle_in_tree():
    td = TreeDecomposition({0: {1, 2}, 1: {1, 2}, 2: {1, 2}}, [(0, 1), (1, 2), (2, 0)])
    assert not validate(td, LabeledGraph([1, 2], [(1, 2)])).valid


@pytest.mark.parametrize(
    "g, width",
    [
        (LabeledGraph(range(7), [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]), 1),
        (complete([1, 2, 3, 4, 5]), 4),
    ],
)
def test_heuristic_exact_cases(g, width):
    td = heuristic_decompose(g)
    rep = validate(td, g)
    assert rep.valid and rep.width == width


def test_heuristic_grid():
    g = grid(3, 3)
    rep = validate(heuristic_decompose(g), g)
    assert rep.valid and rep.width <= 4


def test_nice_single_edge_inventory():
    g = LabeledGraph([1, 2], [(1, 2)])
    ntd = nicify(TreeDecomposition({0: {1, 2}}), g)
    assert [n.describe() for n in ntd.nodes] == [
        "leaf", "introduce 1", "introduce 2", "introduce_edge 1 2", "forget 1", "forget 2"]
    assert ntd.root == len(ntd.nodes) - 1
    assert not ntd.nodes[ntd.root].bag


def test_nice_triangle_edge_count():
    g = complete([1, 2, 3])
    ntd = nicify(TreeDecomposition({0: {1, 2, 3}}), g)
    assert ntd.count(INTRODUCE_EDGE) == 3


def test_nicify_rejects_invalid():
    with pytest.raises(InvalidDecomposition):
        nicify(TreeDecomposition({0: {1, 2}, 1: {3}}, [(0, 1)]), path(1, 2, 3))


@settings(max_examples=60, deadline=None)
@given(small_graphs(min_n=1, max_n=8))
def test_nicify_properties(g):
    for td in (trivial_decomposition(g), heuristic_decompose(g),
               duplicate_bags(heuristic_decompose(g))):
        assert validate(td, g).valid
        ntd = nicify(td, g)
        assert ntd.check(g).valid
        assert ntd.width == td.width
        assert ntd.count(INTRODUCE_EDGE) == g.num_edges
        assert ntd.count(FORGET) == g.num_vertices
        assert ntd.count(INTRODUCE) >= g.num_vertices
        for n in ntd.nodes:
            if n.kind == JOIN:
                assert len(n.children) == 2
            if n.kind == LEAF:
                assert not n.bag
        assert validate(ntd.to_tree_decomposition(), g).valid


def test_duplicate_bags_keeps_width():
    g = grid(2, 3)
    td = heuristic_decompose(g)
    dup = duplicate_bags(td)
    assert len(dup.bags) == 2 * len(td.bags)
    assert dup.width == td.width
    assert validate(dup, g).valid


def test_disconnected_graph_decomposes():
    g = LabeledGraph([1, 2, 3, 4, 5], [(1, 2), (4, 5)])
    td = heuristic_decompose(g)
    assert validate(td, g).valid
    assert nicify(td, g).check(g).valid


def test_empty_bag_graph_edgeless():
    g = LabeledGraph([3, 1, 2], [])
    td = heuristic_decompose(g)
    assert validate(td, g).width == 0
