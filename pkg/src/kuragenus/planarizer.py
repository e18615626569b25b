"""Planarizing apical pairs by splitting apex vertices.

Contents, in pipeline order: chain decompositions of a graph between two
vertices, hitting sets for bad intervals of a chain, the exact nonplanarity
oracle, the constructive pipeline, and weightings (the potential that the
inductive argument decreases; here it is data with a checker, it does not
drive the recursion).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

import networkx as nx

from .errors import BudgetExceeded, InvariantViolation
from .families import JunctionWitness, detect_junction, sigma, sigma_at
from .graph import ApicalPair, Graph, SplitLog, apex_join, split_into_parts, split_vertex
from .ledger import BoundLedger
from .planarity import face_cover, is_planar, planar_embedding, planar_quick

EXACT_CAP = 10**6
EXACT_VERTICES = 8
DEPTH_LIMIT = 64


# ---------------------------------------------------------------------------
# chains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainDecomposition:
    """Vertices u = a_0, ..., a_t = v and segments A_1..A_t with A_i meeting
    A_{i+1} exactly in a_i. Intervals are 1-based and inclusive."""

    cuts: tuple[int, ...]
    segments: tuple[Graph, ...]

    @property
    def t(self) -> int:
        return len(self.segments)

    def interval(self, p: int, q: int) -> Graph:
        """A(I) for I = {p, ..., q}."""
        if not 1 <= p <= q <= self.t:
            raise IndexError(f"bad interval {p}..{q} for t={self.t}")
        g = self.segments[p - 1]
        for s in self.segments[p:q]:
            g = g.union(s)
        return g

    def union(self) -> Graph:
        return self.interval(1, self.t)

    def problems(self) -> list[str]:
        out = []
        if len(self.cuts) != self.t + 1:
            out.append("need t+1 cut vertices")
            return out
        if len(set(self.cuts)) != len(self.cuts):
            out.append("cut vertices are not distinct")
        for i, s in enumerate(self.segments, start=1):
            if not s.is_connected():
                out.append(f"segment {i} is disconnected")
            if self.cuts[i - 1] not in s or self.cuts[i] not in s:
                out.append(f"segment {i} misses its end vertices")
        for i in range(1, self.t):
            if self.segments[i - 1].vertices & self.segments[i].vertices != {self.cuts[i]}:
                out.append(f"segments {i} and {i + 1} do not meet exactly in a_{i}")
        for i, j in itertools.combinations(range(self.t), 2):
            if j > i + 1 and self.segments[i].vertices & self.segments[j].vertices:
                out.append(f"segments {i + 1} and {j + 1} are not disjoint")
        return out

    def to_json_obj(self) -> dict:
        return {"cuts": list(self.cuts), "segments": [s.to_json_obj() for s in self.segments]}


def chain_decompose(g: Graph, u: int, v: int) -> ChainDecomposition:
    """The maximal chain of blocks of ``g`` from ``u`` to ``v``.

    The blocks must line up along a path from u to v with neither u nor v a
    cut vertex; any block hanging off that path is a separation that does
    not separate u from v, and is reported as a precondition failure.
    """
    if u == v or u not in g or v not in g:
        raise ValueError("u and v must be distinct vertices of g")
    if not g.is_connected():
        raise ValueError("g must be connected")
    nxg = g.to_networkx()
    blocks = [frozenset(b) for b in nx.biconnected_components(nxg)]
    cutset = set(nx.articulation_points(nxg))
    for end in (u, v):
        if end in cutset:
            raise ValueError(f"precondition violated: {end} is a cut vertex, a separation not separating u from v")
    tree = nx.Graph()
    for i, b in enumerate(blocks):
        tree.add_node(("b", i))
        for c in b & cutset:
            tree.add_edge(("b", i), ("c", c))
    bu = next(i for i, b in enumerate(blocks) if u in b)
    bv = next(i for i, b in enumerate(blocks) if v in b)
    route = nx.shortest_path(tree, ("b", bu), ("b", bv))
    if len(route) != tree.number_of_nodes():
        raise ValueError("precondition violated: a separation not separating u from v")
    cuts = [u] + [node[1] for node in route if node[0] == "c"] + [v]
    segments = tuple(g.subgraph(blocks[node[1]]) for node in route if node[0] == "b")
    chain = ChainDecomposition(tuple(cuts), segments)
    probs = chain.problems()
    if probs:
        raise InvariantViolation("; ".join(probs))
    return chain


# ---------------------------------------------------------------------------
# interval hitting sets
# ---------------------------------------------------------------------------


@dataclass
class HittingSets:
    """Segment indices hitting every bad interval, per apex vertex, pair and triple rule."""

    k: int
    xi: int
    m1: frozenset[int]
    m2: frozenset[int]
    m3: frozenset[int]
    stabs: dict = field(default_factory=dict)

    def within_bounds(self) -> bool:
        led = BoundLedger(self.k, max(self.xi, 1))
        if self.xi == 0:
            return not (self.m1 or self.m2 or self.m3)
        return (
            len(self.m1) <= led.m1()
            and len(self.m2) <= led.m2()
            and len(self.m3) <= led.m3_binomial()
        )

    def to_json_obj(self) -> dict:
        return {"k": self.k, "xi": self.xi, "M1": sorted(self.m1), "M2": sorted(self.m2), "M3": sorted(self.m3)}


class _Intervals:
    """Goodness tests for one chain and apex set, cached by interval."""

    def __init__(self, pair: ApicalPair, chain: ChainDecomposition):
        self.g = pair.graph
        self.chain = chain
        self._a: dict[tuple[int, int], Graph] = {}
        self._touch: dict[tuple[int, int], frozenset[int]] = {}
        self.apex = pair.apex_set

    def A(self, p: int, q: int) -> Graph:
        key = (p, q)
        if key not in self._a:
            self._a[key] = self.chain.interval(p, q)
        return self._a[key]

    def touching(self, p: int, q: int) -> frozenset[int]:
        """Members of X with a neighbour in V(A(I))."""
        key = (p, q)
        if key not in self._touch:
            av = self.A(p, q).vertices
            self._touch[key] = frozenset(x for x in self.apex if self.g.neighbors(x) & av)
        return self._touch[key]

    def ends(self, p: int, q: int) -> tuple[int, int]:
        return self.chain.cuts[p - 1], self.chain.cuts[q]

    def good1(self, x: int, p: int, q: int) -> bool:
        s, e = self.ends(p, q)
        h = apex_join(self.A(p, q), [x], self.g).add_edges([(x, s), (x, e)])
        return planar_quick(h)

    def good2(self, x: int, y: int, p: int, q: int) -> bool:
        touch = self.touching(p, q)
        if x not in touch or y not in touch:
            return True
        s, e = self.ends(p, q)
        h = apex_join(self.A(p, q), [x, y], self.g)
        h = h.add_edges([(x, s), (x, e), (y, s), (y, e), (x, y)])
        return planar_quick(h)

    def tripled(self, p: int, q: int) -> bool:
        return len(self.touching(p, q)) >= 3


def _greedy_stab(t: int, bad) -> tuple[list[int], list[tuple[int, int]]]:
    """Stab every bad interval of 1..t; badness must be closed under enlarging.

    Returns the stab points and the pairwise disjoint minimal bad intervals
    that forced them (one per stab, in order).
    """
    first: dict[int, int] = {}
    for p in range(1, t + 1):
        for q in range(p, t + 1):
            if bad(p, q):
                first[p] = q
                break
    minimal = [(p, q) for p, q in first.items() if not any(p2 > p and q2 <= q for p2, q2 in first.items())]
    minimal.sort(key=lambda iv: iv[1])
    stabs, chosen, last = [], [], 0
    for p, q in minimal:
        if p > last:
            stabs.append(q)
            chosen.append((p, q))
            last = q
    return stabs, chosen


def _span_pieces(chain: ChainDecomposition, chosen: list[tuple[int, int]], k: int) -> list[frozenset[int]]:
    """V(C_j) for C_j = A(H_j), H_j running from the start of I_{4j-3} to the end of I_{4j-1}."""
    out = []
    for j in range(1, k + 1):
        a = chosen[4 * j - 4][0]
        b = chosen[4 * j - 2][1]
        out.append(chain.interval(a, b).vertices)
    return out


def _check_chain(pair: ApicalPair, chain: ChainDecomposition) -> None:
    probs = chain.problems()
    if probs:
        raise ValueError("invalid chain: " + "; ".join(probs))
    whole = chain.union()
    if not whole.is_subgraph_of(pair.skeleton):
        raise ValueError("chain is not a subgraph of the skeleton")
    # the end vertices must be joinable without losing planarity, as they
    # are when the chain comes from a 2-connected planar graph minus uv
    if not planar_quick(whole.add_edges([(chain.cuts[0], chain.cuts[-1])])):
        raise ValueError("chain plus an edge between its ends is not planar")


def interval_hitting(pair: ApicalPair, chain: ChainDecomposition, k: int) -> HittingSets | JunctionWitness:
    """Hitting sets M1, M2, M3 for the bad intervals, or a junction built from
    too many disjoint bad intervals. The returned arm is validated."""
    if k < 1:
        raise ValueError("k must be at least 1")
    _check_chain(pair, chain)
    t = chain.t
    xs = sorted(pair.apex_set)
    iv = _Intervals(pair, chain)
    stabs_all: dict = {}

    m1: set[int] = set()
    for x in xs:
        stabs, chosen = _greedy_stab(t, lambda p, q, x=x: not iv.good1(x, p, q))
        if len(chosen) >= 4 * k:
            pieces = [c | {x} for c in _span_pieces(chain, chosen, k)]
            w = JunctionWitness(1, (x,), tuple(pieces), tuple({"intervals": chosen[4 * j: 4 * j + 3]} for j in range(k)))
            w.validate(pair.graph)
            return w
        stabs_all[(x,)] = stabs
        m1.update(stabs)

    m2: set[int] = set()
    for x, y in itertools.combinations(xs, 2):
        stabs, chosen = _greedy_stab(t, lambda p, q, x=x, y=y: not iv.good2(x, y, p, q))
        if len(chosen) >= 4 * k:
            pieces = [c | {x, y} for c in _span_pieces(chain, chosen, k)]
            w = JunctionWitness(2, (x, y), tuple(pieces), tuple({"intervals": chosen[4 * j: 4 * j + 3]} for j in range(k)))
            w.validate(pair.graph)
            return w
        stabs_all[(x, y)] = stabs
        m2.update(stabs)

    stabs, chosen = _greedy_stab(t, iv.tripled)
    n_triples = math.comb(len(xs), 3)
    if n_triples and len(chosen) >= 2 * k * n_triples:
        # pigeonhole: some triple touches 2k of the disjoint intervals
        for triple in itertools.combinations(xs, 3):
            hits = [c for c in chosen if set(triple) <= iv.touching(*c)]
            if len(hits) >= 2 * k:
                break
        else:  # pragma: no cover - excluded by counting
            raise InvariantViolation("pigeonhole failed")
        # alternate intervals so consecutive ones do not share a cut vertex
        use = hits[0: 2 * k: 2]
        pieces = [iv.A(p, q).vertices | set(triple) for p, q in use]
        w = JunctionWitness(3, triple, tuple(pieces), tuple({"interval": c} for c in use))
        w.validate(pair.graph)
        return w
    stabs_all["tripled"] = stabs
    out = HittingSets(k, len(xs), frozenset(m1), frozenset(m2), frozenset(stabs), stabs_all)
    if not out.within_bounds():  # pragma: no cover - excluded by the stopping rule
        raise InvariantViolation("hitting sets exceed their bounds")
    return out


def rescan_hitting(pair: ApicalPair, chain: ChainDecomposition, hs: HittingSets) -> list[str]:
    """Check every interval avoiding a hitting set; returns the failures."""
    iv = _Intervals(pair, chain)
    xs = sorted(pair.apex_set)
    bad = []
    for p in range(1, chain.t + 1):
        for q in range(p, chain.t + 1):
            span = set(range(p, q + 1))
            if not span & hs.m1:
                bad += [f"{p}..{q} not {{{x}}}-good" for x in xs if not iv.good1(x, p, q)]
            if not span & hs.m2:
                bad += [f"{p}..{q} not {{{x},{y}}}-good" for x, y in itertools.combinations(xs, 2) if not iv.good2(x, y, p, q)]
            if not span & hs.m3 and iv.tripled(p, q):
                bad.append(f"{p}..{q} tripled")
    return bad


# ---------------------------------------------------------------------------
# exact nonplanarity
# ---------------------------------------------------------------------------


def set_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    """All partitions of ``items`` into nonempty blocks (restricted growth order)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def search_space(pair: ApicalPair) -> int:
    """Product over apex vertices of Bell(degree): the number of split patterns."""
    total = 1
    for x in pair.apex_set:
        total *= _bell(pair.graph.degree(x))
    return total


def _bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for val in row:
            nxt.append(nxt[-1] + val)
        row = nxt
    return row[0]


def exact_partition(pair: ApicalPair, cap: int = EXACT_CAP) -> tuple[int, dict[int, list[frozenset[int]]]]:
    """Minimum total clone count and, per apex vertex, the neighbour partition achieving it.

    Candidates are tried in order of increasing total count, so the first
    planar one is optimal.
    """
    space = search_space(pair)
    if space > cap:
        raise BudgetExceeded(f"search space {space} exceeds cap {cap}")
    xs = sorted(pair.apex_set)
    g = pair.graph
    base = pair.skeleton.to_networkx()
    by_size: dict[int, dict[int, list]] = {}
    for x in xs:
        nb = sorted(g.neighbors(x))
        if not nb:
            by_size[x] = {1: [[frozenset()]]}
            continue
        d: dict[int, list] = {}
        for part in set_partitions(nb):
            d.setdefault(len(part), []).append([frozenset(b) for b in part])
        by_size[x] = d
    lo = len(xs)
    hi = sum(max(by_size[x]) for x in xs)
    top = (max(g.vertices) + 1) if g.n else 0
    for n in range(lo, hi + 1):
        for sizes in _compositions(n, [sorted(by_size[x]) for x in xs]):
            for choice in itertools.product(*(by_size[x][s] for x, s in zip(xs, sizes))):
                h = base.copy()
                nid = top
                for parts in choice:
                    for block in parts:
                        h.add_node(nid)
                        h.add_edges_from((nid, w) for w in block)
                        nid += 1
                if nx.check_planarity(h)[0]:
                    return n, {x: list(parts) for x, parts in zip(xs, choice)}
    raise InvariantViolation("splitting every apex vertex into pendants must planarize")


def _compositions(n: int, allowed: list[list[int]]) -> Iterator[tuple[int, ...]]:
    if not allowed:
        if n == 0:
            yield ()
        return
    rest_min = sum(a[0] for a in allowed[1:])
    rest_max = sum(a[-1] for a in allowed[1:])
    for s in allowed[0]:
        if rest_min <= n - s <= rest_max:
            for tail in _compositions(n - s, allowed[1:]):
                yield (s,) + tail


def nonplanarity_exact(pair: ApicalPair, cap: int = EXACT_CAP) -> int:
    """The least total number of vertices the apex set can be split into so
    that the result is planar; |X| when no split is needed."""
    return exact_partition(pair, cap)[0]


def apply_partition(g: Graph, parts: Mapping[int, list[Iterable[int]]]) -> tuple[Graph, SplitLog]:
    log = SplitLog()
    for x in sorted(parts):
        plist = [frozenset(p) for p in parts[x] if p]
        if len(plist) <= 1:
            continue
        g, sub, _ = split_into_parts(g, x, plist)
        log.extend(sub)
    return g, log


# ---------------------------------------------------------------------------
# the pipeline
# ---------------------------------------------------------------------------


@dataclass
class _Run:
    g: Graph
    log: SplitLog
    depth_limit: int
    exact_vertices: int
    cap: int
    routes: dict = field(default_factory=dict)

    def note(self, route: str) -> None:
        self.routes[route] = self.routes.get(route, 0) + 1

    def split(self, target: int, parts: list[Iterable[int]]) -> list[int]:
        parts = [frozenset(p) for p in parts if p]
        if len(parts) <= 1:
            return [target]
        self.g, sub, clones = split_into_parts(self.g, target, parts)
        self.log.extend(sub)
        return clones

    def local(self, verts: frozenset[int], virtual: frozenset, clones: Iterable[int]) -> Graph:
        h = self.g.subgraph(verts).add_edges(virtual)
        for c in clones:
            h = h.add_vertex(c, self.g.neighbors(c))
        return h


def _distribute(run: _Run, clones: list[int], owners: list[frozenset[int]]) -> list[list[int]]:
    """Split every clone so each new clone sees one owner set; neighbours in
    several owners go to the first. Returns the clones per owner."""
    per = [[] for _ in owners]
    for c in clones:
        nb = run.g.neighbors(c)
        seen: set[int] = set()
        parts, idx = [], []
        for j, o in enumerate(owners):
            p = (nb & o) - seen
            if p:
                parts.append(p)
                idx.append(j)
                seen |= p
        if seen != nb:
            raise InvariantViolation("clone has a neighbour outside its region")
        new = run.split(c, parts) if parts else []
        for j, cl in zip(idx, new):
            per[j].append(cl)
    return per


def _two_cut(h: Graph) -> tuple[int, int] | None:
    nxg = h.to_networkx()
    for p, q in itertools.combinations(h.sorted_vertices(), 2):
        rest = nxg.subgraph([w for w in nxg if w not in (p, q)])
        if rest.number_of_nodes() and not nx.is_connected(rest):
            return p, q
    return None


def _pendant(run: _Run, clones: list[int]) -> None:
    for c in clones:
        run.split(c, [[w] for w in sorted(run.g.neighbors(c))])
    run.note("pendant")


def _solve(run: _Run, verts: frozenset[int], virtual: frozenset, clones: list[int], depth: int) -> None:
    clones = [c for c in clones if run.g.degree(c)]
    if not clones:
        return
    if planar_quick(run.local(verts, virtual, clones)):
        return
    if depth > run.depth_limit:
        raise BudgetExceeded(f"recursion deeper than {run.depth_limit}")
    if len(verts) <= run.exact_vertices:
        local = run.local(verts, virtual, clones)
        try:
            _, parts = exact_partition(ApicalPair(local, frozenset(clones), validate=False), run.cap)
        except BudgetExceeded:
            pass
        else:
            for c in clones:
                run.split(c, parts[c])
            run.note("exact")
            return
    skel = run.g.subgraph(verts).add_edges(virtual)
    comps = skel.components()
    if len(comps) > 1:
        run.note("components")
        for comp, cl in zip(comps, _distribute(run, clones, comps)):
            _solve(run, comp, frozenset(e for e in virtual if set(e) <= comp), cl, depth + 1)
        return
    nxs = skel.to_networkx()
    if len(verts) > 2 and any(True for _ in nx.articulation_points(nxs)):
        run.note("blocks")
        blocks = [frozenset(b) for b in nx.biconnected_components(nxs)]
        for b, cl in zip(blocks, _distribute(run, clones, blocks)):
            _solve(run, b, frozenset(e for e in virtual if set(e) <= b), cl, depth + 1)
        return
    cut = _two_cut(skel) if len(verts) > 3 else None
    if cut is not None:
        run.note("two-sum")
        p, q = cut
        rest = skel.remove_vertices(cut).components()
        side1 = rest[0] | set(cut)
        side2 = frozenset().union(*rest[1:]) | set(cut)
        glue = (min(cut), max(cut))
        per = _distribute(run, clones, [rest[0], side2])
        for side, cl in zip((side1, side2), per):
            vis = frozenset(e for e in virtual if set(e) <= side) | {glue}
            _solve(run, frozenset(side), vis, cl, depth + 1)
        return
    _face_route(run, verts, virtual, skel, clones)


def _face_route(run: _Run, verts: frozenset[int], virtual: frozenset, skel: Graph, clones: list[int]) -> None:
    """Split each clone by a minimum face cover of its neighbours."""
    rot = planar_embedding(skel)
    new: list[int] = []
    for i, c in enumerate(clones):
        try:
            faces = face_cover(skel, rot, run.g.neighbors(c))
        except BudgetExceeded:
            _pendant(run, new + clones[i:])
            return
        new += _distribute(run, [c], [frozenset(f) for f in faces])[0]
    if planar_quick(run.local(verts, virtual, new)):
        run.note("faces")
        return
    _pendant(run, new)


def _group_components(pair: ApicalPair) -> list[frozenset[int]]:
    """Components of G minus X, with planar ones merged while the merge stays planar."""
    g, X = pair.graph, pair.apex_set
    comps = pair.skeleton.components()
    groups: list[frozenset[int]] = []
    easy: frozenset[int] = frozenset()
    for comp in comps:
        if not any(g.neighbors(x) & comp for x in X):
            continue
        if planar_quick(g.subgraph(comp | X)):
            merged = easy | comp
            if planar_quick(g.subgraph(merged | X)):
                easy = merged
                continue
        groups.append(comp)
    if easy:
        groups.insert(0, easy)
    return groups


def planarize_apex(
    pair: ApicalPair,
    k: int = 1,
    *,
    depth_limit: int = DEPTH_LIMIT,
    exact_vertices: int = EXACT_VERTICES,
    cap: int = EXACT_CAP,
) -> SplitLog:
    """A replayable log of apex splits after which the graph is planar.

    First the apex set is split sibling-free across groups of components of
    G minus X, then each group is cut along 1- and 2-separations; pieces with
    at most ``exact_vertices`` skeleton vertices are solved exactly, larger
    3-connected ones by face covers, with pendant splitting as last resort.
    ``k`` only feeds the recorded bound.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    log = SplitLog(meta={"routes": {}, "groups": 0})
    X = pair.apex_set
    if not X or planar_quick(pair.graph):
        return log
    run = _Run(pair.graph, log, depth_limit, exact_vertices, cap)
    groups = _group_components(pair)
    log.meta["groups"] = len(groups)
    per = _distribute(run, sorted(x for x in X if pair.graph.degree(x)), groups)
    for grp, clones in zip(groups, per):
        _solve(run, grp, frozenset(), clones, 1)
    if not is_planar(run.g).planar:
        _pendant(run, [c for c in run.g.vertices if c not in pair.skeleton and run.g.degree(c) > 1])
    if not is_planar(run.g).planar:
        raise InvariantViolation("pipeline output is not planar")
    log.meta["routes"] = run.routes
    led = BoundLedger(k, len(X))
    log.meta["bound_component_groups"] = led.component_bound()
    return log


def check_planarization(pair: ApicalPair, log: SplitLog) -> list[str]:
    """Replay, planarity, apex-only and merge-back checks for a pipeline log."""
    out = []
    g = pair.graph
    apex_like = set(pair.apex_set)
    cur = g
    for step in log:
        if step.target not in apex_like:
            out.append(f"split of non-apex vertex {step.target}")
        cur = split_vertex(cur, step)
        apex_like |= {step.new_u, step.new_v}
    if not is_planar(cur).planar:
        out.append("result is not planar")
    if log.undo(cur) != g:
        out.append("merge-back does not reconstruct the input")
    return out


# ---------------------------------------------------------------------------
# weightings
# ---------------------------------------------------------------------------


@dataclass
class Weighting:
    alpha: int = 0
    beta: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.alpha < 0 or any(b < 0 for b in self.beta.values()):
            raise ValueError("weights must be nonnegative")

    def b(self, v: int) -> int:
        return self.beta.get(v, 0)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(v for v, b in self.beta.items() if b > 0)

    def to_json_obj(self) -> dict:
        return {"alpha": self.alpha, "beta": {str(v): b for v, b in sorted(self.beta.items()) if b}}


def weighting_cost(w: Weighting, k: int, xi: int) -> int:
    return k**3 * xi**6 - k**2 * xi**5 * w.alpha - sum(w.beta.values())


def is_restricted(g: Graph, k: int) -> bool:
    """No (k,i)-junction for i = 0..3, by exhaustive search."""
    return all(detect_junction(g, k, i) is None for i in range(4))


def weighting_problems(pair: ApicalPair, w: Weighting, k: int, restricted: bool | None = None) -> list[str]:
    """Violated weighting axioms. ``restricted`` skips the junction search when known."""
    g, X = pair.graph, pair.apex_set
    xi = len(X)
    out = []
    others = g.vertices - X
    if set(w.beta) - others:
        out.append("beta is defined on apex vertices or non-vertices")
    if restricted is None:
        restricted = is_restricted(g, k)
    if not restricted:
        out.append("graph is not k-restricted")
    supp = sorted(w.support & others)
    for r in range(len(supp) + 1):
        for Z in itertools.combinations(supp, r):
            s = sigma(X, g.remove_vertices(Z))
            if not s < k * xi**3 - w.alpha - len(Z):
                out.append(f"sigma after deleting {list(Z)} is {s}")
    for v in sorted(others):
        s = sigma_at(X, v, g)
        if not s < k * xi**2 - w.b(v):
            out.append(f"sigma at {v} is {s}")
    return out


def weighting_check(pair: ApicalPair, w: Weighting, k: int, restricted: bool | None = None) -> bool:
    return not weighting_problems(pair, w, k, restricted)


@dataclass(frozen=True)
class Evidence:
    """Why a subgraph A is smaller: ``kind`` is "connected", "nonplanar" or "beta"."""

    kind: str
    vertices: frozenset[int] = frozenset()
    vertex: int | None = None


def weight_descend(pair: ApicalPair, w: Weighting, a: Iterable[int], evidence: Evidence) -> tuple[ApicalPair, Weighting]:
    """The pair (A+X, X) with a weighting of smaller cost.

    Increments alpha when the evidence lives away from A (or some vertex
    outside A carries weight), otherwise increments beta at the single vertex
    where the nonplanar evidence meets A.
    """
    g, X = pair.graph, pair.apex_set
    A = frozenset(a)
    if A & X or not A <= g.vertices:
        raise ValueError("A must be a vertex set of G minus X")
    outside_weight = [v for v in w.support if v not in A and v not in X]
    bump: int | None = None
    if evidence.kind == "connected":
        H = evidence.vertices
        if not H or H & X or H & A or not g.subgraph(H).is_connected():
            raise ValueError("evidence must be a connected vertex set disjoint from A and X")
        if sum(1 for x in X if g.neighbors(x) & H) < 3:
            raise ValueError("fewer than three apex vertices touch the evidence")
    elif evidence.kind == "nonplanar":
        H = evidence.vertices
        if len(H & A) > 1 or len(H & X) > 2 or is_planar(g.subgraph(H)).planar:
            raise ValueError("evidence must be nonplanar with at most one vertex in A and two in X")
        if H & A and not outside_weight:
            (bump,) = H & A
    elif evidence.kind == "beta":
        if evidence.vertex is None or evidence.vertex in A or evidence.vertex in X or w.b(evidence.vertex) <= 0:
            raise ValueError("evidence must be a vertex outside A and X with positive beta")
    else:
        raise ValueError(f"unknown evidence kind {evidence.kind!r}")
    beta = {v: b for v, b in w.beta.items() if v in A and b}
    if bump is None:
        new = Weighting(w.alpha + 1, beta)
    else:
        beta[bump] = beta.get(bump, 0) + 1
        new = Weighting(w.alpha, beta)
    sub = apex_join(g.subgraph(A), X, g)
    return ApicalPair(sub, X), new
