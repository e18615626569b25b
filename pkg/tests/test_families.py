import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kuragenus.errors import BudgetExceeded
from kuragenus.families import (
    JunctionWitness,
    detect_junction,
    detect_kuratowski_minor,
    junction_to_kuratowski,
    kuratowski_layout,
    layout_junction,
    make_kuratowski,
    piece_mixes,
    purify,
    sigma,
    sigma_at,
)
from kuragenus.generators import random_planar
from kuragenus.graph import Graph, RootedGraph, model_from_branch_sets
from kuragenus.planarity import is_flat, is_planar


@pytest.mark.parametrize(
    "k, i, pieces, n, m",
    [
        (2, 0, ["k5", "k5"], 10, 20),
        (2, 2, ["k5", "k5"], 8, 18),
        (2, 3, [], 5, 6),
        (1, 0, ["k33"], 6, 9),
        (2, 1, ["k33", "k33"], 11, 18),
    ],
)
def test_generator_sizes(k, i, pieces, n, m):
    g = make_kuratowski(k, i, pieces)
    assert (g.n, g.m) == (n, m)


def test_i3_is_k_2_3():
    g = make_kuratowski(2, 3)
    assert g == Graph.complete_bipartite(3, 2)


@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("i", [0, 1, 2, 3])
def test_detector_finds_every_generated_mix(k, i):
    for mix in piece_mixes(k, i):
        g = make_kuratowski(k, i, mix)
        model = detect_kuratowski_minor(g, k, i)
        assert model is not None and model.is_valid(g)


def test_detector_examples():
    assert detect_kuratowski_minor(Graph.grid(3, 3), 1, 0) is None
    assert detect_kuratowski_minor(Graph.petersen(), 1, 0) is not None
    with pytest.raises(BudgetExceeded):
        detect_kuratowski_minor(Graph.grid(4, 4), 1, 0)


def test_junction_examples():
    g = Graph.complete(5).disjoint_union(Graph.complete(5))
    w = detect_junction(g, 2, 0)
    assert w is not None and w.k == 2
    w.validate(g)
    k23 = Graph.complete_bipartite(3, 2)
    w3 = detect_junction(k23, 2, 3)
    assert w3 is not None and set(w3.roots) == {0, 1, 2}


def test_no_junction_on_cofacial_roots_of_planar_graph():
    g = Graph.grid(3, 3)
    assert detect_junction(g, 1, 2, roots=(0, 1)) is None
    assert detect_junction(g, 1, 2, roots=(0, 8)) is None


def test_junction_witness_rejects_planar_piece():
    g = Graph.complete(4)
    assert JunctionWitness(0, (), (frozenset(range(4)),)).problems(g)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_returned_junctions_revalidate(seed):
    rng = random.Random(seed)
    k, i = rng.choice([(1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 3)])
    mix = rng.choice(piece_mixes(k, i))
    g = make_kuratowski(k, i, mix)
    if g.n < 12:  # junction search caps the host size
        g = g.add_vertex(g.max_vertex() + 1, [rng.choice(g.sorted_vertices())])
    w = detect_junction(g, k, i)
    assert w is not None
    assert not w.problems(g)
    if i == 2:
        for p in w.pieces:
            assert not is_flat(RootedGraph(g.subgraph(p), tuple(sorted(w.roots))))


def test_sigma_examples():
    assert sigma([], Graph.complete(5).disjoint_union(Graph.complete(5))) == 2
    assert sigma([], Graph.grid(3, 3)) == 0
    assert sigma([0], Graph.complete(5)) == 1


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_sigma_shrinks_under_deletion(seed):
    rng = random.Random(seed)
    g = Graph.complete(5).disjoint_union(Graph.complete_bipartite(3, 3))
    g = g.add_edges([(rng.randrange(5), 5 + rng.randrange(6))])
    x = [rng.randrange(g.n)]
    z = rng.sample([v for v in g.sorted_vertices() if v not in x], rng.randint(1, 3))
    assert sigma(x, g.remove_vertices(z)) <= sigma(x, g)
    v = rng.choice([w for w in g.sorted_vertices() if w not in x])
    assert sigma_at(x, v, g) <= max(sigma(x, g), 1)


def test_planar_graph_has_sigma_zero():
    rng = random.Random(3)
    for _ in range(10):
        g = random_planar(rng, 8, 20)
        assert sigma([], g) == 0


@pytest.mark.parametrize(
    "k, i, mix",
    [
        (8, 0, ["k5"] * 8),
        (16, 1, ["k33"] * 16),
        (8, 2, ["k33e"] * 8),
        (8, 2, ["k5"] * 4 + ["k33n"] * 4),
        (8, 3, []),
    ],
)
def test_extraction_from_layout_junctions(k, i, mix):
    g, w = layout_junction(k, i, mix)
    target = 2 if k == 16 else 1
    model = junction_to_kuratowski(g, w, target)
    assert model.is_valid(g)
    assert model.i is not None and model.i <= i
    assert len(model.pieces) == target


def _identity_model(k, i, mix):
    g, infos = kuratowski_layout(k, i, mix)
    return model_from_branch_sets(g, g, {v: {v} for v in g.vertices}, i=i, pieces=infos)


def test_purify_majority():
    pure = purify(_identity_model(3, 0, ["k5", "k5", "k33"]), 1)
    assert [p.kind for p in pure.pieces] == ["K5"]
    pure = purify(_identity_model(6, 0, ["k5"] * 2 + ["k33"] * 4), 2)
    assert [p.kind for p in pure.pieces] == ["K33", "K33"]
    pure = purify(_identity_model(3, 2, ["k33e", "k33n", "k33n"]), 1)
    assert pure.pieces[0].pair_kind == "nonedge"


def test_purify_needs_enough_pieces():
    with pytest.raises(ValueError):
        purify(_identity_model(1, 0, ["k5"]), 1)


def test_generated_graphs_are_nonplanar_per_piece():
    for k, i in [(2, 0), (2, 1)]:
        for mix in piece_mixes(k, i):
            g, infos = kuratowski_layout(k, i, mix)
            for info in infos:
                assert not is_planar(g.subgraph(info.vertex_map)).planar
