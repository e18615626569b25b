import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kuragenus.generators import random_tree
from kuragenus.graph import Graph, model_from_branch_sets
from kuragenus.ledger import f_tree, tree_threshold
from kuragenus.trees import (
    MarkedForest,
    balanced_edge,
    complementary_split,
    disjoint_triples,
    edge_sides,
    recursive_split,
    star_minor_to_junction,
    subtree_trichotomy,
)


def _sides_ok(tree, marks, d, e) -> bool:
    a, b = edge_sides(tree, e)
    need = (len(marks) - 1) / (d - 1)
    return len(a & set(marks)) >= need and len(b & set(marks)) >= need


# ---------------------------------------------------------------- balanced edge


def test_balanced_edge_on_path():
    e = balanced_edge(Graph.path(5), range(5), 3)
    assert e in {(1, 2), (2, 3)}


def test_balanced_edge_on_star():
    star = Graph(range(5), [(0, i) for i in range(1, 5)])
    e = balanced_edge(star, [1, 2, 3, 4], 5)
    assert 0 in e


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_balanced_edge_against_exhaustive_scan(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 15)
    d = rng.randint(3, 5)
    tree = random_tree(rng, n, d)
    marks = rng.sample(range(n), rng.randint(1, n))
    e = balanced_edge(tree, marks, d)
    assert tree.has_edge(*e)
    assert _sides_ok(tree, marks, d, e)


def test_balanced_edge_rejects_high_degree():
    star = Graph(range(5), [(0, i) for i in range(1, 5)])
    with pytest.raises(ValueError):
        balanced_edge(star, [1, 2, 3, 4], 4)


# ---------------------------------------------------------------- complementary splits


def test_single_path_split():
    forest = MarkedForest([Graph.path(8)], [tuple(range(8))], 3)
    sp = complementary_split(forest)
    (a, b), = sp.pairs
    assert a | b == frozenset(range(8)) and not a & b
    assert len(sp.X) >= 8 / 3 and len(sp.Y) >= 8 / 3


def test_two_aligned_paths_split():
    forest = MarkedForest([Graph.path(9), Graph.path(9)], [tuple(range(9)), tuple(range(9))], 3)
    sp = complementary_split(forest)
    assert not sp.X & sp.Y
    assert min(len(sp.X), len(sp.Y)) >= 1
    for s, (a, b) in enumerate(sp.pairs):
        mk = forest.marks[s]
        assert all(mk[i] in a for i in sp.X) and all(mk[i] in b for i in sp.Y)


def test_split_at_exact_threshold_is_nonempty():
    forest = MarkedForest([Graph.path(9), Graph.path(9)], [tuple(range(9)), tuple(reversed(range(9)))], 3)
    sp = complementary_split(forest)
    assert sp.X and sp.Y


def test_split_below_threshold_refused():
    with pytest.raises(ValueError):
        complementary_split(MarkedForest([Graph.path(8), Graph.path(8)], [tuple(range(8))] * 2, 3))


def test_recursive_split_sizes():
    rng = random.Random(2)
    trees = [random_tree(rng, 40, 3) for _ in range(2)]
    marks = [tuple(rng.sample(range(40), 27)), tuple(rng.sample(range(40), 27))]
    forest = MarkedForest(trees, marks, 3)
    groups = recursive_split(forest, 1)
    assert len(groups) == 2
    for subs, idx in groups:
        assert len(idx) >= 27 / 9
        for s, sub in enumerate(subs):
            assert all(forest.marks[s][i] in sub for i in idx)
    assert not groups[0][1] & groups[1][1]


# ---------------------------------------------------------------- disjoint triples


def test_k1_takes_whole_trees():
    # the threshold 3d^t still applies at k = 1
    forest = MarkedForest([Graph.path(10)], [tuple(range(9))], 3)
    res = disjoint_triples(forest, 1)
    assert len(res.triples) == 1
    assert res.subtrees[0][0] == frozenset(range(10))
    with pytest.raises(ValueError):
        disjoint_triples(MarkedForest([Graph.path(4)], [(0, 1, 2)], 3), 1)


@pytest.mark.parametrize("t", [1, 2])
def test_k2_on_paths(t):
    d = 3
    n = tree_threshold(d, t, 2)
    rng = random.Random(t)
    trees = [Graph.path(n + 3) for _ in range(t)]
    marks = [tuple(rng.sample(range(n + 3), n)) for _ in range(t)]
    forest = MarkedForest(trees, marks, d)
    res = disjoint_triples(forest, 2)
    assert not res.problems(forest)
    assert len(res.triples) == 2


def test_threshold_enforced_exactly():
    n = tree_threshold(3, 1, 2)
    ok = MarkedForest([Graph.path(n)], [tuple(range(n))], 3)
    assert not disjoint_triples(ok, 2).problems(ok)
    short = MarkedForest([Graph.path(n)], [tuple(range(n - 1))], 3)
    with pytest.raises(ValueError):
        disjoint_triples(short, 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_triples_property(seed):
    rng = random.Random(seed)
    k = rng.choice([1, 2, 3])
    t = rng.choice([1, 2])
    d = 3
    n = tree_threshold(d, t, k)
    size = n + rng.randint(0, 10)
    trees = [random_tree(rng, size, d) for _ in range(t)]
    marks = [tuple(rng.sample(range(size), n)) for _ in range(t)]
    forest = MarkedForest(trees, marks, d)
    assert not disjoint_triples(forest, k).problems(forest)


# ---------------------------------------------------------------- trichotomy


def test_trichotomy_singletons_disjoint():
    tree = Graph.path(6)
    subs = [{v} for v in range(6)]
    res = subtree_trichotomy(tree, subs, 3, 1, 1, 2)
    assert res.kind == "disjoint"
    assert not res.problems([frozenset(s) for s in subs], 3)


def test_trichotomy_copies_of_an_edge():
    tree = Graph.path(3)
    subs = [{0, 1}] * 8
    res = subtree_trichotomy(tree, subs, 2, 2, 2, 1)
    assert res.kind == "edge"
    assert not res.problems([frozenset(s) for s in subs], 2)


def test_trichotomy_star_paths():
    star = Graph(range(49), [(0, i) for i in range(1, 49)])
    subs = [{0, 2 * i - 1, 2 * i} for i in range(1, 25)]
    res = subtree_trichotomy(star, subs, 2, 2, 3, 2)
    assert res.kind == "vertex" and res.vertex == 0
    assert not res.problems([frozenset(s) for s in subs], 3)


def test_trichotomy_needs_abcd():
    with pytest.raises(ValueError):
        subtree_trichotomy(Graph.path(3), [{0}, {1}], 1, 1, 1, 3)


# ---------------------------------------------------------------- star minors


def star_host(rng, tree_sizes, kp):
    """Three trees (paths) and kp single vertices, each joined once into every tree."""
    edges, bs, nxt = [], {}, 0
    trees = []
    for j, size in enumerate(tree_sizes):
        vs = list(range(nxt, nxt + size))
        edges += list(zip(vs, vs[1:]))
        bs[j] = set(vs)
        trees.append(vs)
        nxt += size
    for c in range(kp):
        v = nxt + c
        bs[3 + c] = {v}
        for vs in trees:
            edges.append((v, rng.choice(vs)))
    g = Graph(range(nxt + kp), edges)
    pattern = Graph.complete_bipartite(3, kp)
    return g, model_from_branch_sets(g, pattern, bs)


@pytest.mark.parametrize("k", [1, 2, 4])
def test_star_with_single_vertex_trees(k):
    g, model = star_host(random.Random(k), [1, 1, 1], k)
    w = star_minor_to_junction(g, model, k)
    assert w.i == 3 and w.k == k
    w.validate(g)


@pytest.mark.parametrize("k", [1, 2])
def test_star_with_one_path_tree(k):
    kp = f_tree(k, 1)
    g, model = star_host(random.Random(k), [kp + 2, 1, 1], kp)
    w = star_minor_to_junction(g, model, k)
    assert w.k == k
    w.validate(g)


def test_k23_itself_at_k2():
    g = Graph.complete_bipartite(3, 2)
    model = model_from_branch_sets(g, g, {v: {v} for v in g.vertices})
    w = star_minor_to_junction(g, model, 2)
    assert w.i == 3 and w.k == 2


def test_star_below_threshold_refused():
    g, model = star_host(random.Random(0), [6, 1, 1], f_tree(2, 1) - 1)
    with pytest.raises(ValueError):
        star_minor_to_junction(g, model, 2)
