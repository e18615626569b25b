"""Simple undirected graphs and the split / merge / contract algebra.

Graphs are immutable. Every operation returns a new :class:`Graph`; vertex ids
are plain integers and fresh ids are always allocated above the current maximum.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

import networkx as nx

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u <= v else (v, u)


class Graph:
    """Finite simple graph with opaque integer vertex ids."""

    __slots__ = ("_adj", "_hash")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        adj: dict[int, set[int]] = {int(v): set() for v in vertices}
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u not in adj or v not in adj:
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside the vertex set")
            adj[u].add(v)
            adj[v].add(u)
        self._adj: dict[int, frozenset[int]] = {v: frozenset(n) for v, n in adj.items()}
        self._hash: int | None = None

    # construction helpers

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], vertices: Iterable[int] = ()) -> "Graph":
        edges = [(int(u), int(v)) for u, v in edges]
        vs = set(vertices)
        for u, v in edges:
            vs.add(u)
            vs.add(v)
        return cls(sorted(vs), edges)

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        return cls(g.nodes, g.edges)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(range(n), ((i, j) for i in range(n) for j in range(i + 1, n)))

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        return cls(range(a + b), ((i, a + j) for i in range(a) for j in range(b)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(range(n), ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(range(n), ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def grid(cls, rows: int, cols: int) -> "Graph":
        idx = lambda r, c: r * cols + c  # noqa: E731
        edges = []
        for r in range(rows):
            for c in range(cols):
                if c + 1 < cols:
                    edges.append((idx(r, c), idx(r, c + 1)))
                if r + 1 < rows:
                    edges.append((idx(r, c), idx(r + 1, c)))
        return cls(range(rows * cols), edges)

    @classmethod
    def petersen(cls) -> "Graph":
        return cls.from_networkx(nx.petersen_graph())

    # queries

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self._adj)

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset(norm_edge(u, v) for u, ns in self._adj.items() for v in ns if u < v)

    def sorted_vertices(self) -> list[int]:
        return sorted(self._adj)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return sum(len(ns) for ns in self._adj.values()) // 2

    def __len__(self) -> int:
        return len(self._adj)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._adj))

    def neighbors(self, v: int) -> frozenset[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise KeyError(f"unknown vertex {v}") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def max_vertex(self) -> int:
        return max(self._adj, default=-1)

    def adjacency(self) -> Mapping[int, frozenset[int]]:
        return self._adj

    # derived graphs

    def subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph."""
        keep = set(vertices)
        missing = keep - self._adj.keys()
        if missing:
            raise KeyError(f"unknown vertices {sorted(missing)}")
        return Graph(keep, ((u, v) for u in keep for v in self._adj[u] if v in keep and u < v))

    def edge_subgraph(self, edges: Iterable[tuple[int, int]], vertices: Iterable[int] = ()) -> "Graph":
        edges = [norm_edge(u, v) for u, v in edges]
        for u, v in edges:
            if not self.has_edge(u, v):
                raise ValueError(f"({u}, {v}) is not an edge")
        return Graph.from_edges(edges, vertices)

    def remove_vertices(self, vertices: Iterable[int]) -> "Graph":
        drop = set(vertices)
        return self.subgraph(v for v in self._adj if v not in drop)

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        drop = {norm_edge(u, v) for u, v in edges}
        return Graph(self._adj, (e for e in self.edges if e not in drop))

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Add edges, creating endpoints as needed; existing edges are ignored."""
        extra = [(u, v) for u, v in edges]
        return Graph.from_edges(list(self.edges) + extra, self._adj)

    def add_vertex(self, v: int, neighbours: Iterable[int] = ()) -> "Graph":
        if v in self._adj:
            raise ValueError(f"vertex {v} already present")
        neighbours = list(neighbours)
        for w in neighbours:
            if w not in self._adj:
                raise KeyError(f"unknown vertex {w}")
        return Graph(list(self._adj) + [v], list(self.edges) + [(v, w) for w in neighbours])

    def relabel(self, mapping: Mapping[int, int]) -> "Graph":
        f = lambda v: mapping.get(v, v)  # noqa: E731
        new_vs = [f(v) for v in self._adj]
        if len(set(new_vs)) != len(new_vs):
            raise ValueError("relabelling is not injective")
        return Graph(new_vs, ((f(u), f(v)) for u, v in self.edges))

    def union(self, other: "Graph") -> "Graph":
        """Union of two graphs on possibly overlapping vertex sets."""
        return Graph(self._adj.keys() | other._adj.keys(), list(self.edges | other.edges))

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.max_vertex() + 1 - min(other._adj, default=0)
        return self.union(other.relabel({v: v + shift for v in other._adj}))

    def is_subgraph_of(self, other: "Graph") -> bool:
        return self._adj.keys() <= other._adj.keys() and all(other.has_edge(u, v) for u, v in self.edges)

    def components(self) -> list[frozenset[int]]:
        """Connected components, ordered by least vertex."""
        seen: set[int] = set()
        comps = []
        for s in sorted(self._adj):
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def is_stable(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        return not any(self._adj[v] & vs for v in vs)

    # conversion

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(sorted(self._adj))
        g.add_edges_from(self.sorted_edges())
        return g

    def to_json_obj(self) -> dict:
        vs = self.sorted_vertices()
        obj: dict = {"n": len(vs), "edges": [list(e) for e in self.sorted_edges()]}
        if vs != list(range(len(vs))):
            obj["vertices"] = vs
        return obj

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "Graph":
        vertices = obj.get("vertices", range(int(obj["n"])))
        return cls(vertices, (tuple(e) for e in obj["edges"]))

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        return cls.from_json_obj(json.loads(text))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        lines += [f"  {v};" for v in self.sorted_vertices()]
        lines += [f"  {u} -- {v};" for u, v in self.sorted_edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"

    # dunder

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vertices, self.edges))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# rooted graphs, apical pairs, splits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootedGraph:
    graph: Graph
    roots: tuple[int, ...]

    def __post_init__(self):
        if len(self.roots) > 3:
            raise ValueError("a rooted graph may have at most three roots")
        if len(set(self.roots)) != len(self.roots):
            raise ValueError("roots must be distinct")
        for r in self.roots:
            if r not in self.graph:
                raise ValueError(f"root {r} is not a vertex")


@dataclass(frozen=True)
class ApicalPair:
    """A graph with a stable apex set whose removal leaves a planar graph."""

    graph: Graph
    apex_set: frozenset[int]
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "apex_set", frozenset(self.apex_set))
        if not self.validate:
            return
        if not self.apex_set <= self.graph.vertices:
            raise ValueError("apex set is not a subset of the vertices")
        if not self.graph.is_stable(self.apex_set):
            raise ValueError("apex set is not stable")
        from .planarity import planar_embedding

        if planar_embedding(self.skeleton) is None:
            raise ValueError("graph minus apex set is not planar")

    @property
    def skeleton(self) -> Graph:
        return self.graph.remove_vertices(self.apex_set)

    @property
    def xi(self) -> int:
        return len(self.apex_set)


@dataclass(frozen=True)
class SplitStep:
    target: int
    part_p: frozenset[int]
    part_q: frozenset[int]
    new_u: int
    new_v: int

    def __post_init__(self):
        object.__setattr__(self, "part_p", frozenset(self.part_p))
        object.__setattr__(self, "part_q", frozenset(self.part_q))
        if self.part_p & self.part_q:
            raise ValueError("split parts overlap")
        if self.new_u == self.new_v:
            raise ValueError("split must create two distinct vertices")

    @classmethod
    def fresh(cls, g: Graph, target: int, part_p: Iterable[int], part_q: Iterable[int] | None = None) -> "SplitStep":
        """Build a step with freshly allocated ids; ``part_q`` defaults to the rest."""
        p = frozenset(part_p)
        q = frozenset(g.neighbors(target) - p) if part_q is None else frozenset(part_q)
        top = g.max_vertex()
        return cls(target, p, q, top + 1, top + 2)

    def to_json_obj(self) -> dict:
        return {"target": self.target, "p": sorted(self.part_p), "q": sorted(self.part_q),
                "u": self.new_u, "v": self.new_v}


@dataclass
class SplitLog:
    """Replayable sequence of splits; ``meta`` carries free-form provenance."""

    steps: list[SplitStep] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def append(self, step: SplitStep) -> None:
        self.steps.append(step)

    def extend(self, other: "SplitLog") -> None:
        self.steps.extend(other.steps)

    def replay(self, g: Graph) -> Graph:
        for step in self.steps:
            g = split_vertex(g, step)
        return g

    def undo(self, g: Graph) -> Graph:
        for step in reversed(self.steps):
            g = merge_back(g, step)
        return g

    def to_json_obj(self) -> list:
        return [s.to_json_obj() for s in self.steps]

    @classmethod
    def from_json_obj(cls, items: list, g: Graph | None = None) -> "SplitLog":
        """Parse a log; steps without explicit ``u``/``v`` get fresh ids by replaying on ``g``."""
        log = cls()
        cur = g
        for item in items:
            if "u" in item and "v" in item:
                step = SplitStep(item["target"], item["p"], item["q"], item["u"], item["v"])
            else:
                if cur is None:
                    raise ValueError("steps without ids need the originating graph")
                step = SplitStep.fresh(cur, item["target"], item["p"], item["q"])
            if cur is not None:
                cur = split_vertex(cur, step)
            log.append(step)
        return log


def split_vertex(g: Graph, step: SplitStep) -> Graph:
    w = step.target
    if w not in g:
        raise KeyError(f"unknown vertex {w}")
    nbrs = g.neighbors(w)
    if step.part_p | step.part_q != nbrs:
        raise ValueError(f"parts do not partition the neighbourhood of {w}")
    for x in (step.new_u, step.new_v):
        if x in g and x != w:
            raise ValueError(f"vertex id {x} already in use")
    h = g.remove_vertices([w])
    edges = list(h.edges)
    edges += [(step.new_u, x) for x in step.part_p]
    edges += [(step.new_v, x) for x in step.part_q]
    return Graph(list(h.vertices) + [step.new_u, step.new_v], edges)


def _identify(g: Graph, a: int, b: int, into: int) -> Graph:
    nbrs = (g.neighbors(a) | g.neighbors(b)) - {a, b}
    h = g.remove_vertices([a, b])
    if into in h:
        raise ValueError(f"vertex id {into} already in use")
    return Graph(list(h.vertices) + [into], list(h.edges) + [(into, x) for x in nbrs])


def merge_back(g: Graph, step: SplitStep) -> Graph:
    """Identify ``new_u`` and ``new_v`` back into ``target``, simplifying eagerly."""
    for x in (step.new_u, step.new_v):
        if x not in g:
            raise KeyError(f"unknown vertex {x}")
    return _identify(g, step.new_u, step.new_v, step.target)


def contract_edge(g: Graph, e: tuple[int, int]) -> Graph:
    """Contract ``e``; the merged vertex keeps the smaller endpoint id."""
    u, v = norm_edge(*e)
    if not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    return _identify(g, u, v, u)


def apex_join(a: Graph, x: Iterable[int], host: Graph) -> Graph:
    """The graph A+X: ``a`` plus the vertices ``x`` and host edges from ``x`` into ``a``."""
    xs = set(x)
    if not xs <= host.vertices:
        raise ValueError("apex vertices must belong to the host")
    if xs & a.vertices or not a.is_subgraph_of(host):
        raise ValueError("a must be a subgraph of host minus x")
    av = a.vertices
    extra = [(w, y) for w in xs for y in host.neighbors(w) if y in av]
    return Graph(list(av) + sorted(xs), list(a.edges) + extra)


def split_into_parts(g: Graph, target: int, parts: list[Iterable[int]]) -> tuple[Graph, SplitLog, list[int]]:
    """Split ``target`` into one clone per part; returns the graph, the log and the clone ids.

    With a single part the vertex is kept as is (no step is recorded).
    """
    parts = [frozenset(p) for p in parts]
    if not parts:
        raise ValueError("need at least one part")
    covered = frozenset().union(*parts)
    if covered != g.neighbors(target) or sum(len(p) for p in parts) != len(covered):
        raise ValueError(f"parts do not partition the neighbourhood of {target}")
    log = SplitLog()
    clones = []
    holder = target
    for i, p in enumerate(parts[:-1]):
        rest = frozenset().union(*parts[i + 1:])
        step = SplitStep.fresh(g, holder, p, rest)
        g = split_vertex(g, step)
        log.append(step)
        clones.append(step.new_u)
        holder = step.new_v
    clones.append(holder)
    return g, log, clones


def sibling_free_log(pair: ApicalPair, parts: Mapping[int, list[Iterable[int]]]) -> tuple[Graph, SplitLog, list[frozenset[int]]]:
    g = pair.graph
    log = SplitLog()
    clones_of: dict[int, list[int]] = {}
    for x in sorted(pair.apex_set):
        plist = parts.get(x)
        if plist is None:
            plist = [g.neighbors(x)]
        g, sub, clones = split_into_parts(g, x, list(plist))
        log.extend(sub)
        clones_of[x] = clones
    width = max((len(c) for c in clones_of.values()), default=0)
    groups = [frozenset(c[j] for c in clones_of.values() if j < len(c)) for j in range(width)]
    return g, log, groups


def sibling_free_split(pair: ApicalPair, parts: Mapping[int, list[Iterable[int]]]) -> tuple[Graph, list[frozenset[int]]]:
    """Split every apex vertex into one clone per listed neighbour subset.

    Group ``j`` collects the ``j``-th clone of every apex vertex, so no group
    holds two clones of the same original vertex.
    """
    g, _, groups = sibling_free_log(pair, parts)
    return g, groups


# ---------------------------------------------------------------------------
# minor models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PieceInfo:
    """Where one Kuratowski piece of a pattern lives: kind and local->pattern vertex map."""

    kind: str
    pair_kind: str | None
    vertex_map: tuple[int, ...]


@dataclass(frozen=True)
class MinorModel:
    pattern: Graph
    branch_sets: Mapping[int, frozenset[int]]
    edge_witnesses: Mapping[Edge, Edge]
    i: int | None = None
    pieces: tuple[PieceInfo, ...] | None = None

    def problems(self, host: Graph) -> list[str]:
        """Every violated model invariant (empty when the model is valid)."""
        out = []
        seen: set[int] = set()
        for p in self.pattern.sorted_vertices():
            bs = self.branch_sets.get(p)
            if not bs:
                out.append(f"pattern vertex {p} has no branch set")
                continue
            if not bs <= host.vertices:
                out.append(f"branch set of {p} leaves the host")
                continue
            if bs & seen:
                out.append(f"branch set of {p} overlaps another")
            seen |= bs
            if not host.subgraph(bs).is_connected():
                out.append(f"branch set of {p} is disconnected")
        for a, b in self.pattern.sorted_edges():
            wit = self.edge_witnesses.get((a, b))
            if wit is None:
                out.append(f"pattern edge {(a, b)} has no witness")
                continue
            x, y = wit
            ba, bb = self.branch_sets.get(a, frozenset()), self.branch_sets.get(b, frozenset())
            if not host.has_edge(x, y) or not ((x in ba and y in bb) or (x in bb and y in ba)):
                out.append(f"witness {wit} does not join the branch sets of {(a, b)}")
        return out

    def is_valid(self, host: Graph) -> bool:
        return not self.problems(host)

    def to_json_obj(self) -> dict:
        return {
            "pattern": self.pattern.to_json_obj(),
            "branch_sets": {str(p): sorted(b) for p, b in sorted(self.branch_sets.items())},
            "edge_witnesses": [[list(e), list(w)] for e, w in sorted(self.edge_witnesses.items())],
        }


def model_from_branch_sets(host: Graph, pattern: Graph, branch_sets: Mapping[int, Iterable[int]], **kw) -> MinorModel:
    """Fill in edge witnesses for given branch sets; raises if some pattern edge has none."""
    bs = {p: frozenset(b) for p, b in branch_sets.items()}
    owner = {v: p for p, b in bs.items() for v in b}
    wits: dict[Edge, Edge] = {}
    for a, b in pattern.sorted_edges():
        found = None
        for x in sorted(bs[a]):
            for y in sorted(host.neighbors(x)):
                if owner.get(y) == b:
                    found = (x, y)
                    break
            if found:
                break
        if found is None:
            raise ValueError(f"no host edge between branch sets of {(a, b)}")
        wits[(a, b)] = found
    return MinorModel(pattern, bs, wits, **kw)
