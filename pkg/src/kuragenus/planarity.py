"""Certifying planarity, flatness of rooted graphs, cofaciality and face covers.

The planarity engine is networkx's left-right test. Both certificate arms are
re-checked here by code that does not share anything with it: embeddings by
tracing faces, Kuratowski witnesses by suppressing degree-2 vertices and
matching what is left against K5 or K33.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

import networkx as nx

from .errors import BudgetExceeded, InvariantViolation
from .genus import RotationSystem, face_vertices, genus_of_rotation, trace_faces
from .graph import Graph, RootedGraph

FACE_COVER_CAP = 20


@dataclass(frozen=True)
class PlanarityCertificate:
    """Exactly one of ``embedding`` and ``witness`` is set."""

    embedding: RotationSystem | None = None
    witness: Graph | None = None
    kind: str | None = None  # "K5" or "K33" for witnesses

    @property
    def planar(self) -> bool:
        return self.embedding is not None

    def __bool__(self) -> bool:
        return self.planar

    def verify(self, g: Graph) -> None:
        """Raise :class:`InvariantViolation` unless the certificate checks out."""
        if (self.embedding is None) == (self.witness is None):
            raise InvariantViolation("certificate must have exactly one arm")
        if self.embedding is not None:
            try:
                rep = genus_of_rotation(g, self.embedding)
            except ValueError as exc:
                raise InvariantViolation(str(exc)) from exc
            if rep.genus != 0:
                raise InvariantViolation(f"embedding has genus {rep.genus}")
        else:
            if not self.witness.is_subgraph_of(g):
                raise InvariantViolation("witness is not a subgraph")
            if kuratowski_kind(self.witness) is None:
                raise InvariantViolation("witness is not a K5 or K33 subdivision")

    def to_json_obj(self) -> dict:
        if self.planar:
            return {"planar": True, "embedding": self.embedding.to_json_obj()}
        return {"planar": False, "kind": self.kind, "witness": self.witness.to_json_obj()}


def kuratowski_kind(h: Graph) -> str | None:
    """Return "K5" or "K33" if ``h`` (minus isolated vertices) subdivides one."""
    live = [v for v in h.vertices if h.degree(v) > 0]
    h = h.subgraph(live)
    degs = {v: h.degree(v) for v in h.vertices}
    branch = [v for v, d in degs.items() if d != 2]
    if len(branch) == 5 and all(degs[v] == 4 for v in branch):
        kind = "K5"
    elif len(branch) == 6 and all(degs[v] == 3 for v in branch):
        kind = "K33"
    else:
        return None
    bset = set(branch)
    links = set()
    seen_inner = set()
    for b in branch:
        for w in h.neighbors(b):
            prev, cur = b, w
            while cur not in bset:
                seen_inner.add(cur)
                nxt = [x for x in h.neighbors(cur) if x != prev]
                prev, cur = cur, nxt[0]
            if cur == b:
                return None  # closed loop through a branch vertex
            links.add(frozenset((b, cur)))
    # every degree-2 vertex must lie on a branch path (no floating cycles)
    if len(seen_inner) + len(bset) != h.n:
        return None
    if kind == "K5":
        return kind if len(links) == 10 else None
    if len(links) != 9:
        return None
    quotient = nx.Graph([tuple(e) for e in links])
    if not nx.is_bipartite(quotient):
        return None
    left, right = nx.bipartite.sets(quotient)
    return kind if len(left) == 3 and len(right) == 3 else None


def is_planar(g: Graph) -> PlanarityCertificate:
    """Planarity with a checkable certificate; both arms are re-verified."""
    ok, cert = nx.check_planarity(g.to_networkx(), counterexample=True)
    if ok:
        rot = {v: tuple(cert.neighbors_cw_order(v)) for v in cert.nodes}
        result = PlanarityCertificate(embedding=RotationSystem(rot))
    else:
        witness = Graph.from_edges(cert.edges(), cert.nodes)
        result = PlanarityCertificate(witness=witness, kind=kuratowski_kind(witness))
    result.verify(g)
    return result


def planar_quick(g: Graph) -> bool:
    """Uncertified planarity bit, for inner loops of exhaustive searches."""
    return nx.check_planarity(g.to_networkx())[0]


def flat_quick(g: Graph, roots: Iterable[int]) -> bool:
    roots = list(roots)
    if len(roots) > 3:
        raise ValueError("flatness is only decided for at most three roots")
    apex = g.max_vertex() + 1 if g.n else 0
    return planar_quick(g.add_vertex(apex, roots))


def planar_embedding(g: Graph) -> RotationSystem | None:
    cert = is_planar(g)
    return cert.embedding


def is_flat(rg: RootedGraph) -> bool:
    """Whether the graph draws in a disc with the roots on the boundary.

    With at most three roots every cyclic order on the boundary is the same
    up to reflection, so this is planarity after adding one vertex adjacent to
    all roots.
    """
    if len(rg.roots) > 3:
        raise ValueError("flatness is only decided for at most three roots")
    g = rg.graph
    apex = g.max_vertex() + 1 if g.n else 0
    return is_planar(g.add_vertex(apex, rg.roots)).planar


def cofacial_embeddable(g: Graph, u: int, v: int) -> bool:
    """Whether some planar drawing of ``g`` has ``u`` and ``v`` on one region."""
    if u == v:
        raise ValueError("u and v must differ")
    for x in (u, v):
        if x not in g:
            raise ValueError(f"unknown vertex {x}")
    if not is_planar(g).planar:
        raise ValueError("graph is not planar")
    return is_planar(g.add_vertex(g.max_vertex() + 1, (u, v))).planar


def planar_faces(g: Graph, rot: RotationSystem) -> list[tuple[int, ...]]:
    """Faces of a genus-0 rotation as vertex sequences."""
    if genus_of_rotation(g, rot).genus != 0:
        raise ValueError("embedding is not planar")
    return [tuple(face_vertices(f)) for f in trace_faces(g, rot)]


def face_cover(g: Graph, rot: RotationSystem, u_set: Iterable[int]) -> list[tuple[int, ...]]:
    """Minimum number of faces that together touch every vertex of ``u_set``.

    Faces of a disconnected drawing are traced per component; an isolated
    vertex in ``u_set`` counts as lying on a face of its own.
    """
    u_set = frozenset(u_set)
    if not u_set <= g.vertices:
        raise ValueError("u_set must be a set of vertices")
    faces = planar_faces(g, rot)
    for v in sorted(u_set):
        if g.degree(v) == 0:
            faces.append((v,))
    useful = []
    for f in faces:
        hit = frozenset(f) & u_set
        if hit and not any(hit <= frozenset(o) & u_set and (frozenset(o) & u_set) != hit for o in faces):
            useful.append((f, hit))
    # drop duplicates with equal hit sets, keeping the first
    uniq: dict[frozenset, tuple[int, ...]] = {}
    for f, hit in useful:
        uniq.setdefault(hit, f)
    cands = list(uniq.items())
    if len(cands) > FACE_COVER_CAP:
        raise BudgetExceeded(f"{len(cands)} candidate faces exceeds cap {FACE_COVER_CAP}")
    if not u_set:
        return []
    for size in range(1, len(cands) + 1):
        for combo in itertools.combinations(cands, size):
            if frozenset().union(*(h for h, _ in combo)) == u_set:
                return [f for _, f in combo]
    raise InvariantViolation("faces do not cover the vertex set")
