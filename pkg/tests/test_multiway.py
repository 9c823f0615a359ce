import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from checks import check_mwc
from strategies import multigraphs
from subsetfvs.graph import MultiGraph
from subsetfvs.multiway import MwcInstance, is_multiway_cut, solve_mwc


def test_path_cut_is_middle_vertex():
    g = MultiGraph.from_edges(3, [(0, 1), (1, 2)])
    assert solve_mwc(MwcInstance(g, frozenset({0, 2}), 1)) == {1}


@pytest.mark.parametrize("k", [0, 1, 3])
def test_adjacent_terminals_never_separable(k):
    g = MultiGraph.from_edges(2, [(0, 1)])
    assert solve_mwc(MwcInstance(g, frozenset({0, 1}), k)) is None


def test_budget_zero_on_separated_terminals():
    g = MultiGraph.from_edges(4, [(0, 1), (2, 3)])
    assert solve_mwc(MwcInstance(g, frozenset({0, 3}), 0)) == frozenset()


def test_terminals_must_be_vertices():
    with pytest.raises(ValueError):
        MwcInstance(MultiGraph.from_edges(2, [(0, 1)]), frozenset({5}), 1)


def test_three_terminals_star():
    g = MultiGraph.from_edges(4, [(0, 3), (1, 3), (2, 3)])
    assert solve_mwc(MwcInstance(g, frozenset({0, 1, 2}), 1)) == {3}


def test_is_multiway_cut():
    g = MultiGraph.from_edges(3, [(0, 1), (1, 2)])
    assert is_multiway_cut(g, {0, 2}, {1})
    assert not is_multiway_cut(g, {0, 2}, set())


@pytest.mark.parametrize("seed", range(80))
def test_against_enumeration(seed):
    check_mwc(seed)


@settings(max_examples=150, deadline=None)
@given(multigraphs(max_n=8, max_m=14, s_prob=False), st.data())
def test_monotone_and_valid(g, data):
    if g.n < 2:
        return
    terms = frozenset(data.draw(st.sets(st.sampled_from(sorted(g.vertices)), min_size=2, max_size=4)))
    k = data.draw(st.integers(0, 3))
    got = solve_mwc(MwcInstance(g, terms, k))
    if got is not None:
        assert len(got) <= k and not got & terms
        assert oracles.is_separated(g, terms, got)
        assert solve_mwc(MwcInstance(g, terms, k + 1)) is not None
    else:
        assert oracles.min_multiway_cut(g, terms, k) is None
