import pytest
from conftest import small_graphs, small_instances
from hypothesis import given, settings

from labcon import io
from labcon.decomposition import heuristic_decompose, validate
from labcon.errors import ParseError
from labcon.graph import ContractionSequence, InstancePair, WitnessStructure, union_graph
from labcon.reductions import CnfFormula, CrossMatchingInstance, PvcInstance

PATH_EDGE = """c path 1-2-3 against edge (1,3)
p lcp 3 2 2 1
gv 1
gv 2
gv 3
ge 1 2
ge 2 3
hv 1
hv 3
he 1 3
"""


def test_parse_instance_example():
    inst = io.parse_instance(PATH_EDGE)
    assert inst.g.edges() == [(1, 2), (2, 3)]
    assert inst.h.edges() == [(1, 3)]
    assert inst.k == 1


@settings(max_examples=60, deadline=None)
@given(small_instances())
def test_instance_round_trip(inst):
    assert io.parse_instance(io.format_instance(inst)) == inst


def test_isolated_vertices_survive():
    from labcon.graph import LabeledGraph

    g = LabeledGraph([5, 7], [])
    inst = InstancePair(g, g)
    assert io.parse_instance(io.format_instance(inst)) == inst


@pytest.mark.parametrize(
    "text, line",
    [
        ("p lcp 1 0 1 0\ngv 1\nhv 2\n", 3),
        ("p lcp 2 1 1 0\ngv 1\ngx 2\n", 3),
        ("p lcp 2 1 1 0\ngv 1\ngv 2\nge 1 3\nhv 1\n", 4),
        ("p lcp 1 0 1 0\ngv -1\nhv 1\n", 2),
        ("p lcp 1 0 1 0\ngv a\nhv 1\n", 2),
    ],
)
def test_malformed_instance_names_line(text, line):
    with pytest.raises(ParseError) as info:
        io.parse_instance(text)
    assert info.value.line == line


def test_header_count_mismatch():
    with pytest.raises(ParseError):
        io.parse_instance("p lcp 2 0 1 0\ngv 1\nhv 1\n")


def test_missing_header():
    with pytest.raises(ParseError):
        io.parse_instance("gv 1\nhv 1\n")


def test_certificate_round_trips():
    s = ContractionSequence(((1, 2), (3, 4)))
    assert io.parse_certificate(io.format_certificate(s)) == s
    w = WitnessStructure({1: {1, 2}, 3: {3}})
    assert io.parse_certificate(io.format_certificate(w)).classes == w.classes


def test_empty_certificate_is_sequence():
    cert = io.parse_certificate("c nothing to contract\n")
    assert isinstance(cert, ContractionSequence) and cert.pairs == ()


def test_mixed_certificate_rejected():
    with pytest.raises(ParseError):
        io.parse_certificate("ct 1 2\nw 3 4\n")


@settings(max_examples=40, deadline=None)
@given(small_graphs(min_n=1, max_n=8))
def test_td_round_trip(g):
    td = heuristic_decompose(g)
    text = io.format_td(td, g.vertices)
    assert text.startswith("s td ")
    back = io.parse_td(text, g.vertices)
    rep = validate(back, g)
    assert rep.valid and rep.width == td.width


def test_td_header_numbers():
    from labcon.graph import LabeledGraph

    g = LabeledGraph([10, 20, 30], [(10, 20), (20, 30)])
    text = io.format_td(heuristic_decompose(g), g.vertices)
    header = text.splitlines()[0].split()
    assert header[:2] == ["s", "td"] and int(header[3]) == 2 and int(header[4]) == 3


def test_dimacs_round_trip():
    f = CnfFormula(4, [(1, 2, 3), (2, 3, 4)])
    assert io.parse_dimacs(io.format_dimacs(f)) == f


def test_dimacs_rejects_wide_clause():
    with pytest.raises(Exception):
        io.parse_dimacs("p cnf 4 1\n1 2 3 4 0\n")


def test_pvc_and_crossmatch_round_trip():
    from labcon.graph import LabeledGraph

    p = PvcInstance(LabeledGraph([1, 2], [(1, 2)]), [[1], [2]], [1, 0])
    assert io.parse_pvc(io.format_pvc(p)) == p
    cm = CrossMatchingInstance(LabeledGraph([1, 2, 3, 4], [(1, 3), (2, 4), (1, 2)]), [1, 2], [3, 4])
    assert io.parse_crossmatch(io.format_crossmatch(cm)) == cm


def test_read_write_files(tmp_path):
    inst = io.parse_instance(PATH_EDGE)
    p = tmp_path / "x.lcp"
    io.write_instance(p, inst, comment="hello")
    assert io.read_instance(p) == inst
    assert union_graph(inst).num_edges == 3
