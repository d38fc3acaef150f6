from conftest import complete, sequence_oracle, small_instances
from hypothesis import given, settings

from labcon import solve_twdp_auto
from labcon.decomposition import (
    duplicate_bags,
    heuristic_decompose,
    nicify,
    trivial_decomposition,
)
from labcon.graph import InstancePair, LabeledGraph, check_witness, union_graph
from labcon.twdp import (
    EMPTY,
    DPContext,
    signature_view,
    solve_twdp,
    transition_forget,
    transition_introduce_edge,
    transition_introduce_vertex,
    transition_join,
    transition_leaf,
)


def ctx_for(g, h):
    return DPContext(InstancePair(g, h))


def sig(tokens, req=(), adj=()):
    return (tuple(tokens), frozenset(req), frozenset(adj))


def test_leaf_table():
    t = transition_leaf()
    assert list(t) == [EMPTY] and len(t) == 1
    assert sig([1]) not in t


def test_introduce_explorer():
    ctx = ctx_for(LabeledGraph([1, 5], [(1, 5)]), LabeledGraph([1], []))
    t = transition_introduce_vertex(transition_leaf(), (), 5, ctx)
    assert list(t) == [sig([5])]


def test_introduce_h_vertex_adds_unsat_requirement():
    g = LabeledGraph([1, 2], [(1, 2)])
    ctx = ctx_for(g, g)
    t = transition_introduce_vertex({sig([1]): None}, (1,), 2, ctx)
    assert list(t) == [sig([1, 2], [(1, 2, False)])]


def test_introduce_h_vertex_without_classes():
    g = LabeledGraph([1, 2, 5], [(1, 5), (5, 2)])
    h = LabeledGraph([1, 2], [(1, 2)])
    t = transition_introduce_vertex({sig([5]): None}, (5,), 1, ctx_for(g, h))
    assert list(t) == [sig([1, 5])]


def test_forget_explorer_dropped():
    ctx = ctx_for(LabeledGraph([1, 5], [(1, 5)]), LabeledGraph([1], []))
    assert transition_forget({sig([1, 5]): None}, (1, 5), 5, ctx) == {}


def test_forget_unsat_dropped_and_sat_survives():
    g = LabeledGraph([1, 2], [(1, 2)])
    ctx = ctx_for(g, g)
    assert transition_forget({sig([1, 2], [(1, 2, False)]): None}, (1, 2), 2, ctx) == {}
    out = transition_forget({sig([1, 2], [(1, 2, True)]): None}, (1, 2), 2, ctx)
    assert list(out) == [sig([1])]


def test_introduce_edge_between_classes_marks_sat():
    g = LabeledGraph([1, 2], [(1, 2)])
    ctx = ctx_for(g, g)
    out = transition_introduce_edge({sig([1, 2], [(1, 2, False)]): None}, (1, 2), 1, 2, ctx)
    assert list(out) == [sig([1, 2], [(1, 2, True)])]


def test_introduce_edge_class_and_explorer():
    g = LabeledGraph([1, 5], [(1, 5)])
    ctx = ctx_for(g, LabeledGraph([1], []))
    out = transition_introduce_edge({sig([1, 5]): None}, (1, 5), 1, 5, ctx)
    assert set(out) == {sig([1, 5], adj=[(1, 5)]), sig([1, 1])}


def test_introduce_edge_two_explorers():
    g = LabeledGraph([1, 5, 6], [(1, 5), (5, 6)])
    ctx = ctx_for(g, LabeledGraph([1], []))
    out = transition_introduce_edge({sig([5, 6]): None}, (5, 6), 5, 6, ctx)
    assert set(out) == {sig([5, 6], adj=[(5, 6)]), sig([5, 5]), sig([6, 6])}


def test_join_sat_dominates():
    g = LabeledGraph([1, 2], [(1, 2)])
    ctx = ctx_for(g, g)
    left = {sig([1, 2], [(1, 2, False)]): None}
    right = {sig([1, 2], [(1, 2, True)]): None}
    assert list(transition_join(left, right, (1, 2), ctx)) == [sig([1, 2], [(1, 2, True)])]


def test_join_adjacency_realizes_requirement():
    g = LabeledGraph([1, 2, 5], [(1, 2), (1, 5), (2, 5)])
    h = LabeledGraph([1, 2], [(1, 2)])
    ctx = ctx_for(g, h)
    left = {sig([1, 2, 5], [(1, 2, False)], [(2, 5)]): None}
    right = {sig([1, 2, 1], [(1, 2, False)]): None}
    out = transition_join(left, right, (1, 2, 5), ctx)
    assert sig([1, 2, 1], [(1, 2, True)]) in out


def test_join_forbidden_adjacency_rejected():
    g = LabeledGraph([1, 2, 5], [(1, 5), (2, 5)])
    h = LabeledGraph([1, 2], [])
    ctx = ctx_for(g, h)
    left = {sig([1, 2, 5], adj=[(2, 5)]): None}
    right = {sig([1, 2, 1]): None}
    assert transition_join(left, right, (1, 2, 5), ctx) == {}


def test_signature_view_mentions_every_vertex():
    g = LabeledGraph([1, 5], [(1, 5)])
    ctx = ctx_for(g, LabeledGraph([1], []))
    text = signature_view((1, 5), sig([1, 5]), ctx)
    assert "1" in text and "5" in text


def test_identity_and_path(path_edge):
    g = complete([1, 2, 3])
    assert solve_twdp_auto(InstancePair(g, g)).yes
    u = union_graph(path_edge)
    res = solve_twdp(path_edge, nicify(trivial_decomposition(u), u))
    assert res.yes and res.certificate.classes in ({1: {1, 2}, 3: {3}}, {1: {1}, 3: {2, 3}})


def test_trace_output(path_edge, tmp_path):
    u = union_graph(path_edge)
    p = tmp_path / "trace.txt"
    with open(p, "w") as fh:
        solve_twdp(path_edge, nicify(heuristic_decompose(u), u), trace=fh)
    assert "forget" in p.read_text()


@settings(max_examples=80, deadline=None)
@given(small_instances(max_n=7, max_k=3))
def test_matches_sequence_oracle(inst):
    expected = sequence_oracle(inst)
    u = union_graph(inst)
    for td in (heuristic_decompose(u), trivial_decomposition(u), duplicate_bags(heuristic_decompose(u))):
        res = solve_twdp(inst, nicify(td, u))
        assert res.yes == expected
        if res.yes:
            assert check_witness(inst, res.certificate).valid
        assert res.stats["max_table"] >= 1
        b = res.stats["width"] + 1
        assert res.stats["max_table"] <= (b + 1) ** (2 * b) * 3 ** (b * b) * 2 ** (b * b)


def test_disconnected_union():
    g = LabeledGraph([1, 2, 3, 4], [(1, 2), (3, 4)])
    h = LabeledGraph([1, 3], [])
    assert solve_twdp_auto(InstancePair(g, h)).yes
    h2 = LabeledGraph([1, 3], [(1, 3)])
    assert not solve_twdp_auto(InstancePair(g, h2)).yes
