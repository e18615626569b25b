"""The acceptance criteria as runnable checks, shared by the test suite and ``verify``.

Every criterion returns a :class:`CriterionResult`; none of them raises on a
failed check, they count violations instead. ``scale="desk"`` runs the stated
instance counts, ``scale="quick"`` a tenth of them for smoke runs.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .bridges import conflicts, conflicts_combinatorial, shares_face, twist_bound, twist_planarize
from .errors import BudgetExceeded
from .families import (
    JunctionWitness,
    detect_kuratowski_minor,
    junction_to_kuratowski,
    kuratowski_layout,
    layout_junction,
    piece_mixes,
)
from .generators import (
    attach_apex,
    bridge_corpus,
    planted_chain,
    random_apical_pair,
    random_biconnected_planar,
    random_graph,
    random_planar,
    random_tree,
    relabel_bridge,
)
from .genus import min_genus
from .graph import ApicalPair, Graph, SplitStep, split_vertex
from .ledger import tree_threshold
from .planarity import cofacial_embeddable, is_planar
from .planarizer import (
    Evidence,
    HittingSets,
    Weighting,
    check_planarization,
    interval_hitting,
    is_restricted,
    nonplanarity_exact,
    planarize_apex,
    rescan_hitting,
    search_space,
    weight_descend,
    weighting_check,
    weighting_cost,
    weighting_problems,
)
from .trees import MarkedForest, balanced_edge, disjoint_triples, edge_sides, subtree_trichotomy


# the face-tracing search prunes hard; K8 needs 0.03s despite ~10^29 raw rotations
GENUS_CAP = 10**30


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    checks: int
    seconds: float
    limit: float | None = None
    failures: list[str] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lim = f" (limit {self.limit:.0f}s)" if self.limit else ""
        head = f"[{status}] {self.number:>2}. {self.name}: {self.checks} checks, {self.seconds:.1f}s{lim}"
        if self.failures:
            head += " | " + "; ".join(self.failures[:3])
        return head

    def to_json_obj(self) -> dict:
        return {
            "criterion": self.number,
            "name": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "seconds": round(self.seconds, 3),
            "limit": self.limit,
            "failures": self.failures,
            "notes": self.notes,
        }


class _Tally:
    def __init__(self):
        self.checks = 0
        self.failures: list[str] = []

    def check(self, ok: bool, msg: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(msg)


def _count(n: int, scale: str) -> int:
    return n if scale == "desk" else max(1, n // 10)


def _finish(number: int, name: str, tally: _Tally, start: float, limit: float | None, **notes) -> CriterionResult:
    secs = time.perf_counter() - start
    ok = not tally.failures and tally.checks > 0 and (limit is None or secs <= limit)
    fails = list(tally.failures)
    if limit is not None and secs > limit:
        fails.append(f"took {secs:.1f}s, limit {limit:.0f}s")
    return CriterionResult(number, name, ok, tally.checks, secs, limit, fails, notes)


# ---------------------------------------------------------------------------


def criterion_1(seed: int = 0, scale: str = "desk") -> CriterionResult:
    """Genus ground truth: K5 and K33 have genus 1, two-component mixes genus 2."""
    start = time.perf_counter()
    tally = _Tally()
    for name, g in (("K5", Graph.complete(5)), ("K33", Graph.complete_bipartite(3, 3))):
        got = min_genus(g).genus
        tally.check(got == 1, f"genus({name}) = {got}, expected 1")
    genera = {}
    for mix in piece_mixes(2, 0):
        g = kuratowski_layout(2, 0, mix)[0]
        got = min_genus(g).genus
        label = "+".join(p.label() for p in mix)
        genera[label] = got
        tally.check(got == 2, f"genus({label}) = {got}, expected 2")
    return _finish(1, "genus ground truth", tally, start, 10.0, genera=genera)


def criterion_2(seed: int = 0, scale: str = "desk") -> CriterionResult:
    """(2,1)- and (2,2)-Kuratowski graphs from K33 pieces have genus 2."""
    start = time.perf_counter()
    tally = _Tally()
    genera = {}
    cases = [(1, ["k33", "k33"]), (2, ["k33e", "k33e"]), (2, ["k33n", "k33n"]), (2, ["k33e", "k33n"])]
    for i, mix in cases:
        g = kuratowski_layout(2, i, mix)[0]
        got = min_genus(g).genus
        label = f"(2,{i}) " + "+".join(mix)
        genera[label] = got
        tally.check(got == 2, f"genus of {label} = {got}, expected 2")
    return _finish(2, "necessity of exclusions", tally, start, 120.0, genera=genera)


def criterion_3(seed: int = 0, scale: str = "desk") -> CriterionResult:
    """Splitting a vertex lowers the genus by at most one."""
    start = time.perf_counter()
    tally = _Tally()
    rng = random.Random(seed)
    hist: dict[int, int] = {}
    for trial in range(_count(500, scale)):
        n = rng.randint(3, 8)
        g = random_graph(rng, n, rng.uniform(0.3, 0.8))
        cands = [v for v in g.sorted_vertices() if g.degree(v) >= 2]
        if not cands:
            g = g.add_edges([(0, 1), (0, 2)])
            cands = [0]
        w = rng.choice(cands)
        nb = sorted(g.neighbors(w))
        p = [x for x in nb if rng.random() < 0.5]
        step = SplitStep.fresh(g, w, p)
        h = split_vertex(g, step)
        a, b = min_genus(g, cap=GENUS_CAP).genus, min_genus(h, cap=GENUS_CAP).genus
        hist[a - b] = hist.get(a - b, 0) + 1
        tally.check(a <= b + 1, f"trial {trial}: genus {a} before, {b} after")
    return _finish(3, "split inequality", tally, start, 300.0, drop_histogram=hist)


def _twist_instance(rng: random.Random) -> tuple[ApicalPair, int, int] | None:
    n = rng.randint(4, 10)
    skel = random_biconnected_planar(rng, n, rng.randint(0, 2 * n))
    xi = rng.choice([0, 1, 1, 2, 2, 2])
    pair = attach_apex(rng, skel, xi, rng.uniform(0.2, 0.5), keep_planar=True)
    if not is_planar(pair.graph).planar:
        return None
    pairs = [(u, v) for u, v in itertools.combinations(skel.sorted_vertices(), 2) if cofacial_embeddable(skel, u, v)]
    # nonadjacent pairs exercise the twist; adjacent ones only the direct route
    far = [(u, v) for u, v in pairs if not skel.has_edge(u, v)]
    if far and rng.random() < 0.85:
        pairs = far
    if not pairs:
        return None
    u, v = rng.choice(pairs)
    return pair, u, v


def criterion_4(seed: int = 0, scale: str = "desk") -> CriterionResult:
    """Twisting: planar output, u and v cofacial, at most 3|X|+64|X|^2 splits."""
    start = time.perf_counter()
    tally = _Tally()
    rng = random.Random(seed)
    routes: dict[str, int] = {}
    longest = 0
    done = 0
    while done < _count(100, scale):
        inst = _twist_instance(rng)
        if inst is None:
            continue
        pair, u, v = inst
        done += 1
        log, rot = twist_planarize(pair, u, v)
        out = log.replay(pair.graph)
        routes[log.meta["route"]] = routes.get(log.meta["route"], 0) + 1
        longest = max(longest, len(log))
        tally.check(is_planar(out).planar, f"instance {done}: output not planar")
        tally.check(shares_face(out, rot, u, v), f"instance {done}: u, v not cofacial")
        tally.check(len(log) <= twist_bound(pair.xi), f"instance {done}: {len(log)} splits > {twist_bound(pair.xi)}")
        tally.check(log.undo(out) == pair.graph, f"instance {done}: merge-back differs")
    return _finish(4, "twist bound", tally, start, 300.0, routes=routes, longest_log=longest)


def criterion_5(seed: int = 0, scale: str = "desk") -> CriterionResult:
    """Planarity-oracle conflicts agree with the interleaving / equal-triple rule."""
    start = time.perf_counter()
    tally = _Tally()
    top = 8 if scale == "desk" else 5
    sizes = {}
    for length in range(3, top + 1):
        max_kernel = 3 if length <= 4 else 2 if length == 5 else 1
        corp = bridge_corpus(length, max_kernel)
        cycle = list(range(length))
        pairs = 0
        for a in range(len(corp)):
            for b in range(a, len(corp)):
                d1, d2 = corp[a], relabel_bridge(corp[b], 100)
                x = conflicts(d1, d2, cycle)
                y = conflicts_combinatorial(d1.attachments, d2.attachments, length)
                pairs += 1
                tally.check(x == y, f"cycle {length}: {d1.attachments} vs {d2.attachments}: oracle {x}, rule {y}")
        sizes[length] = {"bridges": len(corp), "pairs": pairs}
    return _finish(5, "conflict equivalence", tally, start, None, corpus=sizes)


def criterion_6(seed: int = 0, scale: str = "desk") -> CriterionResult:
    """Interval hitting: bounded hitting sets that re-scan clean, or a valid junction."""
    start = time.perf_counter()
    tally = _Tally()
    rng = random.Random(seed)
    arms = {"hitting": 0, "junction": 0}
    for trial in range(_count(200, scale)):
        xi = rng.randint(0, 3)
        k = rng.randint(1, 2)
        plant = rng.choice([0, 0, 4 * k, 4 * k + 1]) if xi else 0
        t = rng.randint(1, 12)
        if plant:
            t = max(t, 2 * plant)
        pair, chain = planted_chain(rng, t, xi, plant, rng.randint(1, min(xi, 2)) if xi else 0)
        res = interval_hitting(pair, chain, k)
        if isinstance(res, HittingSets):
            arms["hitting"] += 1
            tally.check(res.within_bounds(), f"trial {trial}: hitting sets exceed bounds")
            bad = rescan_hitting(pair, chain, res)
            tally.check(not bad, f"trial {trial}: {bad[:2]}")
        elif isinstance(res, JunctionWitness):
            arms["junction"] += 1
            tally.check(not res.problems(pair.graph), f"trial {trial}: witness invalid")
            tally.check(res.k == k, f"trial {trial}: witness has {res.k} pieces")
        else:
            tally.check(False, f"trial {trial}: third outcome {type(res).__name__}")
    return _finish(6, "interval dichotomy", tally, start, None, arms=arms)


def criterion_7(seed: int = 0, scale: str = "desk") -> CriterionResult:
    """Exact nonplanarity never exceeds what the pipeline produces."""
    start = time.perf_counter()
    tally = _Tally()
    rng = random.Random(seed)
    for name, g in (("K5", Graph.complete(5)), ("K33", Graph.complete_bipartite(3, 3))):
        got = nonplanarity_exact(ApicalPair(g, {0}))
        tally.check(got == 2, f"{name} apex case: {got}, expected 2")
    compared = 0
    slack: dict[int, int] = {}
    routes: dict[str, int] = {}
    while compared < _count(200, scale):
        # skeletons above the pipeline's exact-leaf size force the decomposition routes
        n = rng.randint(3, 12)
        pair = random_apical_pair(rng, n, rng.randint(1, 2), rng.uniform(0.3, 0.8) if n <= 8 else rng.uniform(0.2, 0.45))
        if search_space(pair) > 10**5:
            continue
        exact = nonplanarity_exact(pair)
        log = planarize_apex(pair)
        made = pair.xi + len(log)  # vertices the apex set ends up as
        compared += 1
        slack[made - exact] = slack.get(made - exact, 0) + 1
        for route, cnt in log.meta["routes"].items():
            routes[route] = routes.get(route, 0) + cnt
        tally.check(exact <= made, f"exact {exact} > pipeline {made} on {pair.graph.to_json()}")
        probs = check_planarization(pair, log)
        tally.check(not probs, f"pipeline log invalid: {probs}")
    return _finish(7, "oracle vs pipeline", tally, start, None, slack_histogram=slack, routes=routes)


def _weighting_instance(rng: random.Random) -> ApicalPair:
    parts = []
    nxt = 0
    budget = rng.randint(4, 9)
    while nxt < budget:
        kind = rng.choice(["K4", "C4", "P3", "K23", "edge"])
        g = {"K4": Graph.complete(4), "C4": Graph.cycle(4), "P3": Graph.path(3),
             "K23": Graph.complete_bipartite(2, 3), "edge": Graph.path(2)}[kind]
        if nxt + g.n > 9:
            break
        parts.append(g.relabel({v: v + nxt for v in g.vertices}))
        nxt += g.n
    skel = parts[0]
    for p in parts[1:]:
        skel = skel.union(p)
    pair = attach_apex(rng, skel, rng.randint(1, 2), rng.uniform(0.3, 0.9))
    # an apex joined to a whole K4 gives K5 evidence for the descent
    dense = [p for p in parts if p.n == 4 and p.m == 6]
    if dense and rng.random() < 0.6:
        x = rng.choice(sorted(pair.apex_set))
        g = pair.graph.add_edges([(x, v) for v in rng.choice(dense).vertices])
        pair = ApicalPair(g, pair.apex_set)
    return pair


def _find_evidence(pair: ApicalPair, A: frozenset[int], w: Weighting) -> Evidence | None:
    g, X = pair.graph, pair.apex_set
    rest = pair.skeleton.remove_vertices(A)
    for comp in rest.components():
        if sum(1 for x in X if g.neighbors(x) & comp) >= 3:
            return Evidence("connected", comp)
    for a in [None] + sorted(A):
        for r in range(min(2, len(X)), -1, -1):
            for S in itertools.combinations(sorted(X), r):
                H = rest.vertices | set(S) | ({a} if a is not None else set())
                if not is_planar(g.subgraph(H)).planar:
                    return Evidence("nonplanar", frozenset(H))
    for v in sorted(w.support):
        if v not in A:
            return Evidence("beta", vertex=v)
    return None


def criterion_8(seed: int = 0, scale: str = "desk") -> CriterionResult:
    """(0,0) is a weighting of restricted pairs; descent strictly lowers the cost."""
    start = time.perf_counter()
    tally = _Tally()
    rng = random.Random(seed)
    restricted_seen = 0
    descents = {"alpha": 0, "beta": 0}
    trials = 0
    while restricted_seen < _count(60, scale) and trials < 2000:
        trials += 1
        pair = _weighting_instance(rng)
        k = rng.choice([2, 3])
        try:
            if not is_restricted(pair.graph, k):
                continue
        except BudgetExceeded:
            continue
        restricted_seen += 1
        w = Weighting()
        probs = weighting_problems(pair, w, k, restricted=True)
        tally.check(not probs, f"(0,0) rejected on a {k}-restricted pair: {probs[:2]}")
        if probs:
            continue
        xi = pair.xi
        tally.check(weighting_cost(w, k, xi) == k**3 * xi**6, "cost of (0,0) is not k^3 xi^6")
        # walk down while evidence keeps appearing
        cur_pair, cur_w = pair, w
        for _ in range(6):
            comps = sorted((sorted(c) for c in cur_pair.skeleton.components()), key=lambda c: c[0])
            if len(comps) < 2:
                break
            # whole components leave the rest intact; a stray vertex exercises the beta case
            chosen = rng.sample(range(len(comps)), rng.randint(1, len(comps) - 1))
            A = {v for j in chosen for v in comps[j]}
            if rng.random() < 0.4:
                spare = [v for j, c in enumerate(comps) if j not in chosen for v in c]
                A.add(rng.choice(spare))
            A = frozenset(A)
            ev = _find_evidence(cur_pair, A, cur_w)
            if ev is None:
                continue
            new_pair, new_w = weight_descend(cur_pair, cur_w, A, ev)
            before, after = weighting_cost(cur_w, k, xi), weighting_cost(new_w, k, xi)
            descents["alpha" if new_w.alpha > cur_w.alpha else "beta"] += 1
            tally.check(after < before, f"cost {before} -> {after}")
            tally.check(
                weighting_check(new_pair, new_w, k, restricted=True),
                f"descended weighting invalid: {weighting_problems(new_pair, new_w, k, restricted=True)[:2]}",
            )
            cur_pair, cur_w = new_pair, new_w
    # the alpha axiom bound is exact
    pair = ApicalPair(Graph.complete(5), {0})
    tally.check(not weighting_check(pair, Weighting(alpha=3), 3, restricted=True), "alpha = k|X|^3 accepted")
    return _finish(8, "weighting machinery", tally, start, None, restricted_pairs=restricted_seen, descents=descents)


def _random_subtree(rng: random.Random, tree: Graph, size: int, d: int) -> frozenset[int]:
    start = rng.choice(tree.sorted_vertices())
    got = {start}
    deg = {start: 0}
    frontier = [(start, w) for w in sorted(tree.neighbors(start))]
    while frontier and len(got) < size:
        u, w = frontier.pop(rng.randrange(len(frontier)))
        if w in got or deg[u] >= d:
            continue
        got.add(w)
        deg[u] += 1
        deg[w] = 1
        frontier += [(w, z) for z in sorted(tree.neighbors(w)) if z not in got]
    return frozenset(got)


def criterion_9(seed: int = 0, scale: str = "desk") -> CriterionResult:
    """Tree lemmas hold on random instances; thresholds are enforced exactly."""
    start = time.perf_counter()
    tally = _Tally()
    rng = random.Random(seed)
    n_inst = _count(10_000, scale)
    for trial in range(n_inst):
        n = rng.randint(2, 20)
        d = rng.randint(3, 6)
        tree = random_tree(rng, n, d)
        marks = [v for v in tree.sorted_vertices() if rng.random() < 0.6]
        e = balanced_edge(tree, marks, d)
        A, B = edge_sides(tree, e)
        need = len(marks) - 1
        ok = all(sum(m in side for m in marks) * (d - 1) >= need for side in (A, B))
        tally.check(ok and tree.has_edge(*e), f"balanced_edge trial {trial}")
    for trial in range(n_inst):
        d = rng.randint(3, 5)
        k = rng.randint(1, 3)
        t = rng.choice([1, 1, 2])
        need = tree_threshold(d, t, k)
        if need > 300:
            t = 1
            need = tree_threshold(d, t, k)
        n = need + rng.randint(0, 4)
        trees = [random_tree(rng, n + rng.randint(0, 8), d) for _ in range(t)]
        forest = MarkedForest(tuple(trees), tuple(tuple(rng.sample(tr.sorted_vertices(), n)) for tr in trees), d)
        res = disjoint_triples(forest, k)
        probs = res.problems(forest)
        tally.check(len(res.triples) == k and not probs, f"disjoint_triples trial {trial}: {probs[:2]}")
    for trial in range(n_inst):
        a, b, c, d = (rng.randint(1, 3) for _ in range(4))
        size = rng.randint(5, 20)
        tree = random_tree(rng, size, max(d + 2, 3))
        n = a * b * c * d + rng.randint(0, 3)
        subs = [_random_subtree(rng, tree, rng.randint(1, 5), d) for _ in range(n)]
        res = subtree_trichotomy(tree, subs, a, b, c, d)
        want = {"disjoint": a, "edge": b, "vertex": c}[res.kind]
        probs = res.problems(subs, want)
        tally.check(not probs, f"trichotomy trial {trial}: {probs[:2]}")
    # thresholds: one below raises, exactly at passes
    for d, t, k in [(3, 1, 2), (4, 1, 3), (3, 2, 2), (5, 1, 1)]:
        need = tree_threshold(d, t, k)
        for n, should_pass in ((need - 1, False), (need, True)):
            trees = tuple(Graph.path(n + 1) if d == 3 else random_tree(rng, n + 1, d) for _ in range(t))
            forest = MarkedForest(trees, tuple(tuple(range(n)) for _ in range(t)), d)
            try:
                res = disjoint_triples(forest, k)
                passed = not res.problems(forest)
            except ValueError:
                passed = False
            tally.check(passed == should_pass, f"threshold {need} at n={n} (d={d}, t={t}, k={k})")
    tree = Graph.path(4)
    subs = [frozenset({0})] * 7
    try:
        subtree_trichotomy(tree, subs, 2, 2, 2, 1)
        tally.check(False, "abcd threshold not enforced")
    except ValueError:
        tally.check(True, "")
    return _finish(9, "tree lemmas", tally, start, None)


def criterion_10(seed: int = 0, scale: str = "desk") -> CriterionResult:
    """The detector finds every generated family member; junctions with 8k pieces yield models."""
    start = time.perf_counter()
    tally = _Tally()
    found = 0
    for k in (1, 2):
        for i in range(4):
            for mix in piece_mixes(k, i):
                g = kuratowski_layout(k, i, mix)[0]
                model = detect_kuratowski_minor(g, k, i)
                label = f"({k},{i}) " + "+".join(p.label() for p in mix)
                tally.check(model is not None and model.is_valid(g), f"detector missed {label}")
                found += model is not None
    kinds = {0: ["k5", "k33"], 1: ["k5", "k33"], 2: ["k5", "k33e", "k33n"], 3: [None]}
    models = 0
    for i in range(4):
        for kind in kinds[i]:
            pieces = [] if kind is None else [kind] * 8
            g, w = layout_junction(8, i, pieces)
            model = junction_to_kuratowski(g, w, 1)
            tally.check(model.is_valid(g), f"(8,{i}) {kind}: model invalid")
            tally.check(model.i is not None and model.i <= i, f"(8,{i}) {kind}: model index {model.i}")
            models += 1
    return _finish(10, "generator/detector closure", tally, start, None, detected=found, extracted=models)


CRITERIA: dict[int, Callable[..., CriterionResult]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
}


def run_all(seed: int = 0, scale: str = "desk", only: list[int] | None = None) -> list[CriterionResult]:
    return [CRITERIA[n](seed=seed, scale=scale) for n in sorted(CRITERIA) if only is None or n in only]
