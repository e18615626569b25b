"""Rotation systems, face tracing and exact orientable genus.

``min_genus`` is a branch-and-bound over rotation systems. It factors the
input into blocks (orientable genus is additive over blocks), strips leaves,
fixes the rotation at a maximum-degree vertex up to reflection and prunes
with a partial face count bound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import networkx as nx

from .errors import BudgetExceeded
from .graph import Graph

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic order of neighbours around every vertex."""

    rotation: Mapping[int, tuple[int, ...]]

    def __post_init__(self):
        object.__setattr__(self, "rotation", {v: tuple(r) for v, r in self.rotation.items()})

    def check(self, g: Graph) -> None:
        if set(self.rotation) != set(g.vertices):
            raise ValueError("rotation must list every vertex exactly once")
        for v, rot in self.rotation.items():
            if len(rot) != len(set(rot)) or set(rot) != g.neighbors(v):
                raise ValueError(f"rotation at {v} is not a cyclic order of its neighbours")

    def successor(self, v: int, w: int) -> int:
        rot = self.rotation[v]
        return rot[(rot.index(w) + 1) % len(rot)]

    def restrict(self, g: Graph) -> "RotationSystem":
        """Induced rotation on a subgraph of the embedded graph."""
        return RotationSystem({v: tuple(w for w in self.rotation[v] if g.has_edge(v, w)) for v in g.vertices})

    def to_json_obj(self) -> dict:
        return {str(v): list(r) for v, r in sorted(self.rotation.items())}

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "RotationSystem":
        return cls({int(v): tuple(r) for v, r in obj.items()})

    @classmethod
    def from_networkx(cls, emb: nx.PlanarEmbedding) -> "RotationSystem":
        return cls({v: tuple(emb.neighbors_cw_order(v)) for v in emb.nodes})


@dataclass
class GenusReport:
    genus: int
    face_counts: list[int]
    rotation: RotationSystem
    component_genera: list[int] = field(default_factory=list)

    def to_json_obj(self) -> dict:
        return {
            "genus": self.genus,
            "face_counts": self.face_counts,
            "component_genera": self.component_genera,
            "rotation": self.rotation.to_json_obj(),
        }


def trace_faces(g: Graph, rot: RotationSystem) -> list[list[tuple[int, int]]]:
    """Face boundary walks as lists of directed edges.

    The walk leaving along ``(u, v)`` continues along ``(v, succ_v(u))``.
    Every directed edge lands in exactly one walk.
    """
    rot.check(g)
    nxt = {}
    for v, r in rot.rotation.items():
        d = len(r)
        for i, w in enumerate(r):
            nxt[(w, v)] = (v, r[(i + 1) % d])
    faces = []
    seen = set()
    for start in sorted(nxt):
        if start in seen:
            continue
        walk = []
        dart = start
        while dart not in seen:
            seen.add(dart)
            walk.append(dart)
            dart = nxt[dart]
        faces.append(walk)
    return faces


def face_vertices(face: list[tuple[int, int]]) -> list[int]:
    return [a for a, _ in face]


def genus_of_rotation(g: Graph, rot: RotationSystem) -> GenusReport:
    faces = trace_faces(g, rot)
    comp_of = {}
    comps = g.components()
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    fcount = [0] * len(comps)
    for face in faces:
        fcount[comp_of[face[0][0]]] += 1
    genera = []
    for ci, comp in enumerate(comps):
        sub = g.subgraph(comp)
        f = fcount[ci] if sub.m else 1
        fcount[ci] = f
        chi = sub.n - sub.m + f
        if chi % 2 or chi > 2:
            raise ValueError("Euler characteristic inconsistent; rotation is not valid")
        genera.append((2 - chi) // 2)
    return GenusReport(sum(genera), fcount, rot, genera)


# ---------------------------------------------------------------------------
# exact minimum genus
# ---------------------------------------------------------------------------


def _strip_leaves(g: Graph) -> Graph:
    h = g
    while True:
        leaves = [v for v in h.vertices if h.degree(v) <= 1]
        if not leaves or h.n <= 2:
            return h
        h = h.remove_vertices(leaves)


def search_size(g: Graph) -> int:
    return math.prod(math.factorial(max(g.degree(v) - 1, 0)) for v in g.vertices)


def blocks(g: Graph) -> list[frozenset[int]]:
    """Biconnected components with at least one edge, sorted by least vertex."""
    nxg = g.to_networkx()
    return sorted((frozenset(b) for b in nx.biconnected_components(nxg)), key=lambda b: min(b))


class _BlockSearch:
    """Branch and bound for the maximum face count of one 2-connected block.

    Faces are traced one at a time. Whenever the walk reaches a vertex whose
    rotation does not yet fix the outgoing edge, every admissible successor is
    tried. Completed faces tighten the bound ``faces + remaining // minlen``.
    """

    def __init__(self, g: Graph, use_bound: bool = True):
        self.g = g
        self.use_bound = use_bound
        darts = []
        for u, v in g.sorted_edges():
            darts.append((u, v))
            darts.append((v, u))
        self.darts = darts
        self.index = {d: i for i, d in enumerate(darts)}
        self.ndarts = len(darts)
        self.minlen = 4 if nx.is_bipartite(g.to_networkx()) else 3
        euler_faces = g.m - g.n + 2
        self.parity = euler_faces % 2
        upper = min(euler_faces, 2 * g.m // self.minlen)
        if (upper - self.parity) % 2:
            upper -= 1
        self.upper = upper
        self.nodes = 0

    def run(self) -> tuple[int, dict[int, tuple[int, ...]]]:
        g = self.g
        darts = self.darts
        index = self.index
        ndarts = self.ndarts
        minlen = self.minlen
        parity = self.parity
        use_bound = self.use_bound
        deg = {v: g.degree(v) for v in g.vertices}
        nbrs = {v: sorted(g.neighbors(v)) for v in g.vertices}
        # succ[v][u] = w means w follows u in the rotation at v
        succ: dict[int, dict[int, int]] = {v: {} for v in g.vertices}
        pred: dict[int, dict[int, int]] = {v: {} for v in g.vertices}
        used = [False] * ndarts
        best = [-1, None]

        def bound(faces: int, done: int, cur_len: int) -> int:
            rest = ndarts - done - max(cur_len, minlen)
            b = faces + 1 + max(rest, 0) // minlen
            if (b - parity) % 2:
                b -= 1
            return b

        def closes_early(v: int, u: int, w: int) -> bool:
            # linking u -> w at v closes a cycle shorter than deg(v)?
            n = 1
            x = w
            while x in succ[v]:
                x = succ[v][x]
                n += 1
            return x == u and n < deg[v]

        def walk(start: int, d: int, faces: int, done: int, cur_len: int) -> bool:
            self.nodes += 1
            marked = []
            try:
                while True:
                    u, v = darts[d]
                    w = succ[v].get(u)
                    if w is None:
                        break
                    nd = index[(v, w)]
                    if nd == start:
                        return close(faces, done + cur_len)
                    used[nd] = True
                    marked.append(nd)
                    cur_len += 1
                    d = nd
                    if use_bound and bound(faces, done, cur_len) <= best[0]:
                        return False
                u, v = darts[d]
                for w in nbrs[v]:
                    if w == u or w in pred[v] or closes_early(v, u, w):
                        continue
                    succ[v][u] = w
                    pred[v][w] = u
                    nd = index[(v, w)]
                    if nd == start:
                        stop = close(faces, done + cur_len)
                    elif use_bound and bound(faces, done, cur_len + 1) <= best[0]:
                        stop = False
                    else:
                        used[nd] = True
                        stop = walk(start, nd, faces, done, cur_len + 1)
                        used[nd] = False
                    del succ[v][u]
                    del pred[v][w]
                    if stop:
                        return True
                return False
            finally:
                for x in marked:
                    used[x] = False

        def close(faces: int, done: int) -> bool:
            faces += 1
            if done == ndarts:
                if faces > best[0]:
                    best[0] = faces
                    best[1] = {v: dict(s) for v, s in succ.items()}
                return best[0] >= self.upper
            s = used.index(False)
            used[s] = True
            stop = walk(s, s, faces, done, 1)
            used[s] = False
            return stop

        used[0] = True
        walk(0, 0, 0, 0, 1)
        rotation = {}
        for v, sm in best[1].items():
            cyc = [nbrs[v][0]]
            while len(cyc) < deg[v]:
                cyc.append(sm[cyc[-1]])
            rotation[v] = tuple(cyc)
        return best[0], rotation


def _block_min_genus(block: Graph, use_bound: bool = True) -> tuple[int, dict[int, tuple[int, ...]]]:
    if block.m <= 1 or block.m == block.n:  # single edge or cycle
        rot = {v: tuple(sorted(block.neighbors(v))) for v in block.vertices}
        return 0, rot
    search = _BlockSearch(block, use_bound)
    faces, rot = search.run()
    chi = block.n - block.m + faces
    return (2 - chi) // 2, rot


def min_genus(g: Graph, cap: int = DEFAULT_BUDGET, use_bound: bool = True) -> GenusReport:
    """Minimum orientable genus with a certifying rotation system.

    ``cap`` limits the product of ``(deg-1)!`` over the vertices of every
    block after leaf stripping; larger searches raise :class:`BudgetExceeded`.
    """
    core = _strip_leaves(g)
    bl = [core.subgraph(b) for b in blocks(core)]
    for b in bl:
        size = search_size(b)
        if size > cap:
            raise BudgetExceeded(f"block with {b.n} vertices needs {size} rotations (cap {cap})")
    # cyclic order contributed by each block at each vertex, concatenated below
    pieces: dict[int, list[tuple[int, ...]]] = {v: [] for v in g.vertices}
    for b in bl:
        _, rot = _block_min_genus(b, use_bound)
        for v, r in rot.items():
            pieces[v].append(r)
    # stripped tree parts contribute their edges in any order
    stripped = g.edges - core.edges
    for u, v in sorted(stripped):
        pieces[u].append((v,))
        pieces[v].append((u,))
    rotation = {v: tuple(itertools.chain.from_iterable(ps)) for v, ps in pieces.items()}
    report = genus_of_rotation(g, RotationSystem(rotation))
    return report
