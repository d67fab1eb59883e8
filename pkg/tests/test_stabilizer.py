import itertools

from primnorm.autos import PermutationMove, WhiteheadMove, abelianization_matrix, determinant
from primnorm.stabilizer import (
    build_mccool_graph,
    loop_generators,
    stabilizer_in_aut_plus,
    to_dot,
    to_json,
)
from primnorm.words import cyclic_reduce, parse_word


def graph_for(text, rank=2):
    return build_mccool_graph(cyclic_reduce(parse_word(text, rank))[0])


def staircase_graph(k):
    return graph_for(f"a^{k}b^{2*k}a^{3*k}b^{4*k}")


def test_staircase_vertices():
    g = staircase_graph(2)
    assert len(g.vertices) == 8


def test_staircase_permutation_edges_form_complete_graph_without_loops():
    g = staircase_graph(2)
    perm_edges = [(s, t) for s, m, t in g.edges if isinstance(m, PermutationMove)]
    assert all(s != t for s, t in perm_edges)
    distinct = {(s, t) for s, t in perm_edges}
    assert distinct == {
        (s, t) for s, t in itertools.product(g.vertices, repeat=2) if s != t
    }


def test_staircase_whitehead_edges_are_self_loops():
    g = staircase_graph(2)
    wh_edges = [(s, t) for s, m, t in g.edges if isinstance(m, WhiteheadMove)]
    assert wh_edges and all(s == t for s, t in wh_edges)


def test_generator_class_level_set():
    g = graph_for("a")
    assert {str(v) for v in g.vertices} == {"a", "A", "b", "B"}


def test_loop_generators_fix_basepoint():
    g = staircase_graph(2)
    gens = loop_generators(g)
    assert gens
    for psi in gens:
        image, _ = cyclic_reduce(psi.apply(g.basepoint.as_word()))
        assert image == g.basepoint


def test_staircase_stabilizer_in_determinant_plus_one():
    assert stabilizer_in_aut_plus(staircase_graph(2))
    assert stabilizer_in_aut_plus(staircase_graph(3))


def test_generator_class_has_negative_determinant_stabilizer():
    g = graph_for("a")
    assert not stabilizer_in_aut_plus(g)
    dets = {determinant(abelianization_matrix(psi)) for psi in loop_generators(g)}
    assert -1 in dets


def test_dot_export():
    dot = to_dot(graph_for("a"))
    assert dot.startswith("digraph stabilizer {")
    assert dot.count("label=") >= 4
    assert "->" in dot


def test_json_export():
    data = to_json(graph_for("a"))
    assert data["basepoint"] == "a"
    assert sorted(data["vertices"]) == ["A", "B", "a", "b"]
    for edge in data["edges"]:
        assert set(edge) == {"source", "move", "target"}
        assert 0 <= edge["source"] < 4 and 0 <= edge["target"] < 4
