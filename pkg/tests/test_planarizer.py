import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kuragenus.families import JunctionWitness
from kuragenus.generators import planted_chain, random_apical_pair
from kuragenus.graph import ApicalPair, Graph
from kuragenus.ledger import BoundLedger
from kuragenus.planarity import is_planar
from kuragenus.planarizer import (
    Evidence,
    HittingSets,
    Weighting,
    apply_partition,
    chain_decompose,
    check_planarization,
    exact_partition,
    interval_hitting,
    nonplanarity_exact,
    planarize_apex,
    rescan_hitting,
    search_space,
    set_partitions,
    weight_descend,
    weighting_check,
    weighting_cost,
    weighting_problems,
)


def apex_on(g: Graph, x: int) -> ApicalPair:
    return ApicalPair(g, {x})


# ---------------------------------------------------------------- chains


def test_path_chain():
    ch = chain_decompose(Graph.path(3), 0, 2)
    assert ch.t == 2 and ch.cuts == (0, 1, 2)
    assert all(s.m == 1 for s in ch.segments)


def test_two_connected_chain_is_one_segment():
    g = Graph.cycle(5)
    ch = chain_decompose(g, 0, 2)
    assert ch.t == 1 and ch.segments[0] == g


def test_theta_minus_interior_vertex_gives_block_chain():
    # cycle 0-1-2-3 with a pendant triangle 3-4-5 and v = 5
    g = Graph.cycle(4).add_edges([(3, 4), (4, 5), (5, 3), (5, 6)])
    ch = chain_decompose(g, 0, 6)
    assert ch.t == 3 and ch.cuts == (0, 3, 5, 6)
    assert not ch.problems()


def test_chain_precondition():
    with pytest.raises(ValueError):
        chain_decompose(Graph.path(3), 1, 2)


# ---------------------------------------------------------------- interval hitting


def test_no_apex_gives_empty_hitting_sets():
    g = Graph.path(4)
    ch = chain_decompose(g, 0, 3)
    hs = interval_hitting(ApicalPair(g, set()), ch, 1)
    assert isinstance(hs, HittingSets)
    assert not (hs.m1 or hs.m2 or hs.m3)


def test_planar_chain_has_empty_m1():
    rng = random.Random(5)
    pair, ch = planted_chain(rng, 10, 1, planted=0)
    hs = interval_hitting(pair, ch, 1)
    assert isinstance(hs, HittingSets)
    assert not hs.m1
    assert not rescan_hitting(pair, ch, hs)


@pytest.mark.parametrize("k", [1, 2])
def test_planted_bad_intervals_give_junction(k):
    rng = random.Random(k)
    pair, ch = planted_chain(rng, 12 * k, 1, planted=4 * k)
    res = interval_hitting(pair, ch, k)
    assert isinstance(res, JunctionWitness)
    assert res.k == k
    res.validate(pair.graph)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_interval_dichotomy(seed):
    rng = random.Random(seed)
    k = rng.choice([1, 2])
    xi = rng.randint(1, 3)
    pair, ch = planted_chain(rng, rng.randint(3, 14), xi, planted=rng.randint(0, 5), bad_apex=rng.randint(1, xi))
    res = interval_hitting(pair, ch, k)
    if isinstance(res, HittingSets):
        assert res.within_bounds()
        led = BoundLedger(k, xi)
        assert len(res.m3) <= led.m3_cubic()
        assert not rescan_hitting(pair, ch, res)
    else:
        assert not res.problems(pair.graph)


# ---------------------------------------------------------------- exact oracle


def test_set_partitions_count_bell_numbers():
    assert [sum(1 for _ in set_partitions(list(range(n)))) for n in range(6)] == [1, 1, 2, 5, 15, 52]


def test_exact_values():
    assert nonplanarity_exact(apex_on(Graph.complete(5), 0)) == 2
    assert nonplanarity_exact(apex_on(Graph.complete_bipartite(3, 3), 0)) == 2
    planar = ApicalPair(Graph.complete(4).add_vertex(4, [0, 1]), {4})
    assert nonplanarity_exact(planar) == 1
    assert search_space(apex_on(Graph.complete(5), 0)) == 15


def test_exact_partition_is_planar():
    g = Graph.complete(5).union(Graph.complete(5).relabel({i: i + 4 for i in range(1, 5)}))
    pair = apex_on(g, 0)
    n, parts = exact_partition(pair)
    out, log = apply_partition(g, parts)
    assert is_planar(out).planar
    assert n == sum(len([p for p in ps if p]) for ps in parts.values())
    assert log.undo(out) == g


# ---------------------------------------------------------------- pipeline


def test_empty_apex_set_gives_empty_log():
    assert len(planarize_apex(ApicalPair(Graph.grid(3, 3), set()))) == 0


def test_k5_apex_takes_one_split():
    pair = apex_on(Graph.complete(5), 0)
    log = planarize_apex(pair)
    assert len(log) == 1
    assert not check_planarization(pair, log)


def test_two_k5_sharing_apex_splits_per_component():
    g = Graph.complete(5).union(Graph.complete(5).relabel({i: i + 4 for i in range(1, 5)}))
    pair = apex_on(g, 0)
    log = planarize_apex(pair)
    assert log.meta["groups"] == 2
    assert not check_planarization(pair, log)
    assert nonplanarity_exact(pair) <= pair.xi + len(log)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_pipeline_postconditions(seed):
    rng = random.Random(seed)
    pair = random_apical_pair(rng, rng.randint(3, 11), rng.randint(1, 2), rng.uniform(0.2, 0.7))
    log = planarize_apex(pair)
    assert not check_planarization(pair, log)
    out = log.replay(pair.graph)
    assert is_planar(out).planar
    assert log.undo(out) == pair.graph
    if search_space(pair) <= 10**4:
        assert nonplanarity_exact(pair) <= pair.xi + len(log)


# ---------------------------------------------------------------- weightings


def test_zero_weighting_on_restricted_pair():
    pair = apex_on(Graph.complete(5), 0)
    w = Weighting()
    # K5 holds a (2,3)-junction (three roots, two singleton pieces), so k = 3
    assert not weighting_check(pair, w, 2)
    assert weighting_check(pair, w, 3)
    assert weighting_cost(w, 3, 1) == 27


def test_alpha_at_cap_is_rejected():
    pair = apex_on(Graph.complete(5), 0)
    assert not weighting_check(pair, Weighting(alpha=3), 3, restricted=True)
    assert weighting_check(pair, Weighting(alpha=1), 3, restricted=True)


def test_unrestricted_pair_is_rejected():
    # two K5s through the apex form a (2,1)-junction
    assert "graph is not k-restricted" in weighting_problems(_two_k5(), Weighting(), 2)


def _two_k5():
    g = Graph.complete(5).union(Graph.complete(5).relabel({i: i + 4 for i in range(1, 5)}))
    return apex_on(g, 0)


def test_descent_alpha_case():
    pair = _two_k5()
    w = Weighting()
    ev = Evidence("nonplanar", frozenset({0, 5, 6, 7, 8}))
    new_pair, new_w = weight_descend(pair, w, {1, 2, 3, 4}, ev)
    assert new_w.alpha == 1 and not new_w.support
    assert weighting_cost(new_w, 3, 1) < weighting_cost(w, 3, 1)
    assert weighting_check(new_pair, new_w, 3, restricted=True)


def test_descent_beta_case():
    pair = _two_k5()
    w = Weighting()
    ev = Evidence("nonplanar", frozenset({0, 1, 5, 6, 7, 8}))
    new_pair, new_w = weight_descend(pair, w, {1, 2, 3, 4}, ev)
    assert new_w.alpha == 0 and new_w.beta == {1: 1}
    assert weighting_cost(new_w, 3, 1) == weighting_cost(w, 3, 1) - 1
    assert weighting_check(new_pair, new_w, 3, restricted=True)


def test_descent_beta_vertex_outside_a_bumps_alpha():
    pair = _two_k5()
    w = Weighting(beta={5: 1})
    new_pair, new_w = weight_descend(pair, w, {1, 2, 3, 4}, Evidence("beta", vertex=5))
    assert new_w.alpha == 1 and not new_w.beta


def test_descent_rejects_bad_evidence():
    pair = _two_k5()
    with pytest.raises(ValueError):
        weight_descend(pair, Weighting(), {1, 2, 3, 4}, Evidence("nonplanar", frozenset({5, 6, 7})))
    with pytest.raises(ValueError):
        weight_descend(pair, Weighting(), {1, 2, 3, 4}, Evidence("connected", frozenset({5, 6})))
    with pytest.raises(ValueError):
        weight_descend(pair, Weighting(), {1, 2, 3, 4}, Evidence("beta", vertex=5))
