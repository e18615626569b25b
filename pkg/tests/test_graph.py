import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kuragenus.graph import (
    ApicalPair,
    Graph,
    SplitLog,
    SplitStep,
    apex_join,
    contract_edge,
    merge_back,
    sibling_free_split,
    split_into_parts,
    split_vertex,
)
from kuragenus.minors import has_minor
from kuragenus.planarity import is_planar


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(range(n), edges)


def test_star_hub_split_gives_two_stars():
    star = Graph(range(5), [(0, i) for i in range(1, 5)])
    h = split_vertex(star, SplitStep.fresh(star, 0, [1, 2]))
    assert 0 not in h
    comps = sorted(sorted(c) for c in h.components())
    assert len(comps) == 2
    assert all(len(c) == 3 for c in comps)


def test_k5_split_two_two_is_planar():
    k5 = Graph.complete(5)
    for w in range(5):
        nb = sorted(k5.neighbors(w))
        h = split_vertex(k5, SplitStep.fresh(k5, w, nb[:2]))
        assert h.n == 6
        assert is_planar(h).planar


def test_empty_part_leaves_isolated_clone():
    k4 = Graph.complete(4)
    step = SplitStep.fresh(k4, 0, [])
    h = split_vertex(k4, step)
    assert h.degree(step.new_u) == 0
    assert h.neighbors(step.new_v) == frozenset({1, 2, 3})


def test_merge_back_restores_k5():
    k5 = Graph.complete(5)
    step = SplitStep.fresh(k5, 0, [1, 2])
    assert merge_back(split_vertex(k5, step), step) == k5


def test_merge_opposite_c4_vertices_gives_path():
    c4 = Graph.cycle(4)
    step = SplitStep(9, {1, 3}, set(), 0, 2)
    h = merge_back(c4, step)
    assert h.n == 3 and h.m == 2
    assert h.neighbors(9) == frozenset({1, 3})


def test_contractions():
    assert contract_edge(Graph.complete(4), (0, 1)).m == 3
    c = contract_edge(Graph.cycle(4), (0, 1))
    assert (c.n, c.m) == (3, 3)
    k33 = contract_edge(Graph.complete_bipartite(3, 3), (0, 3))
    assert (k33.n, k33.m) == (5, 8)
    assert contract_edge(Graph.complete(3), (0, 1)).m == 1


def test_has_minor_examples():
    assert has_minor(Graph.complete(5), Graph.complete(4)) is not None
    assert has_minor(Graph.grid(3, 3), Graph.complete(5)) is None
    model = has_minor(Graph.petersen(), Graph.complete(5))
    assert model is not None and model.is_valid(Graph.petersen())


def test_apex_join_examples():
    host = Graph.complete(5)
    a = host.remove_vertices([4])
    assert apex_join(a, [4], host) == host
    lone = Graph([0, 1], [(0, 1)])
    sparse = Graph(range(3), [(0, 1)])
    assert apex_join(lone, [2], sparse).degree(2) == 0
    tri = host.subgraph([0, 1, 2])
    assert apex_join(tri, [4], host) == Graph.complete(4).relabel({3: 4})


def test_sibling_free_counts():
    k5 = Graph.complete(5)
    pair = ApicalPair(k5, {0})
    g, groups = sibling_free_split(pair, {0: [[1, 2], [3, 4]]})
    assert [len(s) for s in groups] == [1, 1]
    g1, groups1 = sibling_free_split(pair, {})
    assert len(groups1) == 1 and g1.n == 5
    host = Graph.complete_bipartite(2, 6)
    pair2 = ApicalPair(host, {0, 1})
    parts = {0: [[2, 3], [4, 5], [6, 7]], 1: [[2], [3, 4], [5, 6, 7]]}
    g2, groups2 = sibling_free_split(pair2, parts)
    assert sum(len(s) for s in groups2) == 6 and len(groups2) == 3
    assert all(len(s) == 2 for s in groups2)


def test_apical_pair_rejects_bad_input():
    with pytest.raises(ValueError):
        ApicalPair(Graph.complete(3), {0, 1})
    with pytest.raises(ValueError):
        ApicalPair(Graph.complete(6), {0})


def test_split_into_parts_rejects_non_partition():
    with pytest.raises(ValueError):
        split_into_parts(Graph.complete(4), 0, [[1], [1, 2, 3]])


def test_log_json_round_trip():
    k5 = Graph.complete(5)
    g, log, clones = split_into_parts(k5, 0, [[1], [2], [3, 4]])
    back = SplitLog.from_json_obj(json.loads(json.dumps(log.to_json_obj())))
    assert back.replay(k5) == g
    assert back.undo(g) == k5
    assert len(clones) == 3


@settings(max_examples=150, deadline=None)
@given(graphs(), st.data())
def test_split_then_merge_is_identity(g, data):
    w = data.draw(st.sampled_from(g.sorted_vertices()))
    nb = sorted(g.neighbors(w))
    p = data.draw(st.lists(st.sampled_from(nb), unique=True)) if nb else []
    step = SplitStep.fresh(g, w, p)
    h = split_vertex(g, step)
    assert h.n == g.n + 1
    assert h.m == g.m
    assert merge_back(h, step) == g


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_json_round_trip(g):
    assert Graph.from_json(g.to_json()) == g
