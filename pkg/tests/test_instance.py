from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from checks import check_edge_to_vertex, check_multiway_reduction, check_vertex_to_edge
from subsetfvs.graph import MultiGraph
from subsetfvs.instance import (
    EsfvsInstance, ParseError, SfvsInstance, esfvs_to_sfvs, format_solution, gen_planted,
    gen_random, multiway_to_esfvs, parse, parse_vertex_list, serialize, sfvs_to_esfvs,
)
from subsetfvs.multiway import MwcInstance
from subsetfvs.oracle import brute_force, is_solution

DATA = Path(__file__).parent / "data"
GOLDEN = sorted(DATA.glob("*.*"))


def triangle(s=()):
    return MultiGraph.from_edges(3, [(0, 1, 0 in s), (1, 2, 1 in s), (0, 2, 2 in s)])


# -- types -------------------------------------------------------------------------

def test_negative_budget_rejected():
    with pytest.raises(ValueError):
        EsfvsInstance(triangle(), -1)
    with pytest.raises(ValueError):
        SfvsInstance(triangle(), frozenset(), -1)


def test_s_vertices_must_be_vertices():
    with pytest.raises(ValueError):
        SfvsInstance(triangle(), frozenset({7}), 1)


# -- conversions ---------------------------------------------------------------------

def test_vertex_to_edge_empty_s():
    conv = sfvs_to_esfvs(SfvsInstance(triangle(), frozenset(), 1))
    assert conv.s_edges == frozenset()


def test_vertex_to_edge_triangle():
    conv = sfvs_to_esfvs(SfvsInstance(triangle(), frozenset({0}), 1))
    assert conv.s_edges == {0, 2}  # the two edges at vertex 0


def test_edge_to_vertex_empty_s():
    inst = EsfvsInstance(triangle(), 1)
    conv = esfvs_to_sfvs(inst)
    assert conv.s_vertices == frozenset()
    assert conv.graph == inst.graph


def test_edge_to_vertex_subdivides_triangle():
    conv = esfvs_to_sfvs(EsfvsInstance(triangle(s={0}), 1))
    g = conv.graph
    assert g.n == 4 and g.m == 4
    [x] = conv.s_vertices
    assert g.neighbors(x) == {0, 1}
    assert conv.origin == {x: 0}
    # a 4-cycle 0-x-1-2
    assert all(g.degree(v) == 2 for v in g.vertices)


@pytest.mark.parametrize("seed", range(40))
def test_vertex_to_edge_preserves_answer(seed):
    check_vertex_to_edge(seed)


@pytest.mark.parametrize("seed", range(40))
def test_edge_to_vertex_preserves_answer(seed):
    check_edge_to_vertex(seed)


def test_multiway_construction_path():
    g = MultiGraph.from_edges(3, [(0, 1), (1, 2)])
    conv = multiway_to_esfvs(g, [0, 2], 1)
    assert conv.graph.n == 5 and len(conv.s_edges) == 2 and conv.k == 1
    assert is_solution(conv, {1})
    assert len(brute_force(conv)) == 1


def test_multiway_construction_adjacent_terminals_budget_zero():
    g = MultiGraph.from_edges(2, [(0, 1)])
    assert brute_force(multiway_to_esfvs(g, [0, 1], 0)) is None


def test_multiway_construction_admits_deleting_a_terminal():
    # Adjacent terminals cannot be cut by non-terminals, yet deleting one
    # terminal kills the only S-cycle, so the edge instance is YES at k = 1.
    g = MultiGraph.from_edges(2, [(0, 1)])
    conv = multiway_to_esfvs(g, [0, 1], 1)
    assert oracles.min_multiway_cut(g, [0, 1], 1) is None
    assert oracles.min_multiway_cut(g, [0, 1], 1, allow_terminals=True) == 1
    w = brute_force(conv)
    assert w is not None and w & {0, 1}


def test_multiway_construction_rejects_repeated_terminals():
    with pytest.raises(ValueError):
        multiway_to_esfvs(triangle(), [0, 0], 1)


@pytest.mark.parametrize("seed", range(40))
def test_multiway_construction_preserves_answer(seed):
    check_multiway_reduction(seed)


# -- parsing ------------------------------------------------------------------------------

def test_parse_triangle_header():
    inst = parse("p esfvs 3 3 1\ne 1 2 1\ne 2 3 0\ne 3 1 0\n")
    assert isinstance(inst, EsfvsInstance)
    assert inst.graph.n == 3 and len(inst.s_edges) == 1 and inst.k == 1


def test_parse_comments_and_blank_lines():
    inst = parse("c hello\n\np esfvs 2 1 0\nc mid\ne 1 2 1\n")
    assert inst.graph.m == 1


def test_parse_kinds():
    assert isinstance(parse((DATA / "triangle.sfvs").read_text()), SfvsInstance)
    mwc = parse((DATA / "path.mwc").read_text())
    assert isinstance(mwc, MwcInstance) and mwc.terminals == {0, 2}


@pytest.mark.parametrize("path", GOLDEN, ids=lambda p: p.name)
def test_golden_round_trip(path):
    text = path.read_text()
    assert serialize(parse(text)) == text


@pytest.mark.parametrize("text, line", [
    ("", 0),
    ("e 1 2 0\n", 1),
    ("p esfvs 2 1\n", 1),
    ("p foo 2 1 0\n", 1),
    ("p esfvs 2 1 x\n", 1),
    ("p esfvs 2 1 -1\n", 1),
    ("p esfvs 2 1 0\np esfvs 2 1 0\n", 2),
    ("p esfvs 2 1 0\ne 1 3 0\n", 2),
    ("p esfvs 2 1 0\ne 1 2 2\n", 2),
    ("p esfvs 2 1 0\ne 1 2\n", 2),
    ("p esfvs 2 0 0\ne 1 2 0\n", 2),
    ("p esfvs 2 2 0\ne 1 2 0\n", 2),
    ("p sfvs 2 1 0\ne 1 2 1\n", 2),
    ("p sfvs 2 0 0\ns 3\n", 2),
    ("p esfvs 2 0 0\ns 1\n", 2),
    ("p mwc 2 0 0\nt 1\nt 1\n", 3),
    ("p esfvs 2 0 0\nq\n", 2),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line == line


@settings(max_examples=400, deadline=None)
@given(st.binary(max_size=80))
def test_fuzzed_bytes_never_crash(data):
    text = data.decode("latin-1")
    try:
        parse(text)
    except ParseError:
        pass


_LINE = st.one_of(
    st.builds(lambda *a: "p %s %d %d %d" % a, st.sampled_from(["esfvs", "sfvs", "mwc", "x"]),
              st.integers(-1, 4), st.integers(-1, 4), st.integers(-1, 3)),
    st.builds(lambda *a: "e %d %d %d" % a, st.integers(-1, 5), st.integers(-1, 5), st.integers(-1, 2)),
    st.builds(lambda v: "s %d" % v, st.integers(-1, 5)),
    st.builds(lambda v: "t %d" % v, st.integers(-1, 5)),
    st.just("c comment"),
)


@settings(max_examples=400, deadline=None)
@given(st.lists(_LINE, max_size=8))
def test_fuzzed_structured_lines_parse_or_error(lines):
    try:
        inst = parse("\n".join(lines))
    except ParseError:
        return
    assert parse(serialize(inst)) == inst


def test_serialize_labels_sparse_ids():
    g = MultiGraph.from_edges(4, [(1, 3, True), (3, 1)]).delete_vertices([0, 2])
    text = serialize(EsfvsInstance(g, 0))
    assert "c label 1 2" in text and "c label 2 4" in text
    back = parse(text)
    assert back.graph.n == 2 and back.graph.m == 2


def test_format_solution():
    assert format_solution(None) == "NO\n"
    assert format_solution({2, 0}) == "YES\n1\n3\n"
    assert format_solution(set()) == "YES\n"


def test_parse_vertex_list():
    assert parse_vertex_list("YES\n3\nc x\n1 2\n") == {0, 1, 2}
    with pytest.raises(ParseError):
        parse_vertex_list("0\n")


# -- generators -------------------------------------------------------------------------

def test_gen_random_edgeless():
    inst = gen_random(5, 0, 0, 1, seed=4)
    assert inst.graph.m == 0
    assert brute_force(inst) == frozenset()


def test_gen_random_is_deterministic_and_simple():
    a, b = gen_random(8, 12, 4, 2, 9), gen_random(8, 12, 4, 2, 9)
    assert a == b
    assert len(a.s_edges) == 4
    pairs = [frozenset((e.u, e.v)) for e in a.graph.edges()]
    assert len(set(pairs)) == 12 and all(len(p) == 2 for p in pairs)


@pytest.mark.parametrize("args", [(3, 4, 0, 0), (4, 2, 3, 0), (-1, 0, 0, 0)])
def test_gen_random_rejects_bad_parameters(args):
    with pytest.raises(ValueError):
        gen_random(*args, seed=0)


@pytest.mark.parametrize("seed", range(20))
def test_planted_set_is_a_solution(seed):
    inst, hubs = gen_planted(40, 1 + seed % 3, seed)
    assert len(hubs) == inst.k
    assert is_solution(inst, hubs)


def test_planted_is_deterministic():
    assert gen_planted(30, 2, 5) == gen_planted(30, 2, 5)


def test_gen_planted_rejects_bad_parameters():
    with pytest.raises(ValueError):
        gen_planted(3, 1, 0)


def test_random_yes_rate_is_nontrivial():
    yes = 0
    for seed in range(1000):
        yes += brute_force(gen_random(8, 12, 4, 1, seed)) is not None
    assert 0 < yes < 1000
