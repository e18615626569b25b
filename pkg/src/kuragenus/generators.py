"""Seeded random instances shared by the acceptance suite, the tests and the CLI."""

from __future__ import annotations

import itertools
import random

from .bridges import Bridge
from .graph import ApicalPair, Graph
from .planarity import planar_quick
from .planarizer import ChainDecomposition, chain_decompose


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(a, b) for a, b in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph(range(n), edges)


def random_tree(rng: random.Random, n: int, d: int) -> Graph:
    """Random tree on 0..n-1 with every degree below ``d``."""
    if d < 2 or (d == 2 and n > 2):
        raise ValueError("degree bound too small for a tree of this size")
    deg = [0] * n
    edges = []
    for v in range(1, n):
        choices = [u for u in range(v) if deg[u] < d - 1]
        u = rng.choice(choices)
        deg[u] += 1
        deg[v] += 1
        edges.append((u, v))
    return Graph(range(n), edges)


def random_planar(rng: random.Random, n: int, tries: int) -> Graph:
    """A random spanning tree plus random edges kept while planar."""
    g = random_tree(rng, n, n + 1) if n > 1 else Graph(range(n))
    for _ in range(tries):
        a, b = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if a == b or g.has_edge(a, b):
            continue
        h = g.add_edges([(a, b)])
        if planar_quick(h):
            g = h
    return g


def random_biconnected_planar(rng: random.Random, n: int, tries: int) -> Graph:
    """A cycle on 0..n-1 plus random chords kept while planar."""
    g = Graph.cycle(n)
    for _ in range(tries):
        a, b = rng.sample(range(n), 2)
        if g.has_edge(a, b):
            continue
        h = g.add_edges([(a, b)])
        if planar_quick(h):
            g = h
    return g


def attach_apex(rng: random.Random, skel: Graph, xi: int, p: float, keep_planar: bool = False) -> ApicalPair:
    """Add ``xi`` apex vertices with random neighbourhoods (each at least one neighbour)."""
    g = skel
    top = skel.max_vertex() + 1 if skel.n else 0
    verts = skel.sorted_vertices()
    X = []
    for j in range(xi):
        x = top + j
        for _ in range(50):
            nb = [v for v in verts if rng.random() < p] or [rng.choice(verts)]
            h = g.add_vertex(x, nb)
            if not keep_planar or planar_quick(h):
                break
        else:
            nb = [rng.choice(verts)]
            h = g.add_vertex(x, nb)
        g = h
        X.append(x)
    return ApicalPair(g, frozenset(X))


def random_apical_pair(rng: random.Random, n: int, xi: int, p: float = 0.4, tries: int | None = None) -> ApicalPair:
    skel = random_planar(rng, n, tries if tries is not None else 2 * n)
    return attach_apex(rng, skel, xi, p)


def planted_chain(
    rng: random.Random, t: int, xi: int, planted: int = 0, bad_apex: int = 1, p: float = 0.15
) -> tuple[ApicalPair, ChainDecomposition]:
    """A chain of edges and cycles; ``planted`` segments are K4s joined to the
    first ``bad_apex`` apex vertices, which makes those single segments bad."""
    edges: list[tuple[int, int]] = []
    cuts = [0]
    nxt = 1
    chosen = set(rng.sample(range(t), min(planted, t)))
    k4s = []
    for s in range(t):
        a = cuts[-1]
        if s in chosen:
            vs = [a, nxt, nxt + 1, nxt + 2]
            nxt += 3
            edges += list(itertools.combinations(vs, 2))
            k4s.append(vs)
            b = vs[-1]
        else:
            m = rng.choice([2, 3, 4, 5])
            if m == 2:
                b = nxt
                nxt += 1
                edges.append((a, b))
            else:
                vs = [a] + list(range(nxt, nxt + m - 1))
                nxt += m - 1
                edges += [(vs[j], vs[(j + 1) % m]) for j in range(m)]
                b = rng.choice(vs[1:])
        cuts.append(b)
    skel = Graph.from_edges(edges)
    apex = list(range(nxt, nxt + xi))
    all_edges = list(edges)
    for x in apex:
        all_edges += [(x, v) for v in skel.sorted_vertices() if rng.random() < p]
    for vs in k4s:
        for x in apex[:bad_apex]:
            all_edges += [(x, v) for v in vs]
    g = Graph(list(skel.vertices) + apex, all_edges)
    return ApicalPair(g, frozenset(apex)), chain_decompose(skel, 0, cuts[-1])


# ---------------------------------------------------------------------------
# bridges of a fixed cycle
# ---------------------------------------------------------------------------


def _make_bridge(cycle: list[int], kernel_edges: list[tuple[int, int]], kernel: list[int], att: dict[int, tuple[int, ...]]) -> Bridge:
    """``att`` maps kernel vertex -> cycle positions; a chord has an empty kernel and att {None: (i, j)}."""
    edges = list(kernel_edges)
    positions = set()
    for kv, pos in att.items():
        positions |= set(pos)
        if kv is None:
            i, j = pos
            edges.append((cycle[i], cycle[j]))
        else:
            edges += [(kv, cycle[q]) for q in pos]
    verts = frozenset(kernel) | {cycle[q] for q in positions}
    return Bridge(frozenset(kernel), tuple(sorted(positions)), verts, frozenset(tuple(sorted(e)) for e in edges), "minor", None)


def _embeddable(cycle: list[int], b: Bridge) -> bool:
    g = Graph(set(cycle) | b.vertices, [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))] + list(b.edges))
    z = g.max_vertex() + 1
    return planar_quick(g.add_vertex(z, cycle))


def bridge_corpus(length: int, max_kernel: int, base: int = 100) -> list[Bridge]:
    """Every chord, every one-vertex bridge, and path-shaped bridges on up to
    ``max_kernel`` vertices with at most two attachments per kernel vertex
    (one when the kernel has three vertices), kept if drawable inside the cycle."""
    cycle = list(range(length))
    out: list[Bridge] = []
    for i, j in itertools.combinations(range(length), 2):
        if (j - i) % length not in (1, length - 1):
            out.append(_make_bridge(cycle, [], [], {None: (i, j)}))
    subsets = [s for r in range(1, length + 1) for s in itertools.combinations(range(length), r)]
    for s in subsets:
        out.append(_make_bridge(cycle, [], [base], {base: s}))
    for size in range(2, max_kernel + 1):
        cap = 2 if size == 2 else 1
        small = [()] + [s for r in range(1, cap + 1) for s in itertools.combinations(range(length), r)]
        kernel = [base + q for q in range(size)]
        kedges = [(kernel[q], kernel[q + 1]) for q in range(size - 1)]
        for combo in itertools.product(small, repeat=size):
            if not any(combo) or not combo[0] or not combo[-1]:
                continue  # end vertices attach, or the bridge is a smaller one with a tail
            b = _make_bridge(cycle, kedges, kernel, dict(zip(kernel, combo)))
            if _embeddable(cycle, b):
                out.append(b)
    return out


def relabel_bridge(b: Bridge, offset: int) -> Bridge:
    """Shift kernel ids so two corpus bridges can share one cycle."""
    m = {v: v + offset for v in b.kernel}
    f = lambda v: m.get(v, v)  # noqa: E731
    return Bridge(
        frozenset(m.values()),
        b.attachments,
        frozenset(f(v) for v in b.vertices),
        frozenset(tuple(sorted((f(a), f(c)))) for a, c in b.edges),
        b.klass,
        b.minor_type,
    )
