"""Bridges of a cycle, conflicts between them, and the two-round twist split.

Conventions: a cycle is a vertex sequence ``c[0..L-1]``. For distinct
``u, v`` on it, P1 is the forward path from u to v along the sequence and P2
is the other one. With a rotation system, the side of a bridge is read off at
an attachment: side 0 when the bridge leaves the cycle vertex inside the
rotation arc from the next cycle vertex to the previous one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx

from .errors import InvariantViolation
from .genus import RotationSystem, face_vertices, genus_of_rotation, trace_faces
from .graph import ApicalPair, Graph, SplitLog, norm_edge, split_into_parts
from .planarity import cofacial_embeddable, is_planar, planar_quick


@dataclass(frozen=True)
class Bridge:
    kernel: frozenset[int]
    attachments: tuple[int, ...]  # cycle positions, sorted
    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]
    klass: str  # "major" or "minor"
    minor_type: str | None  # "P1" or "P2" for minor bridges
    side: int | None = None

    @property
    def is_chord(self) -> bool:
        return not self.kernel

    def to_json_obj(self) -> dict:
        return {
            "kernel": sorted(self.kernel),
            "attachments": list(self.attachments),
            "klass": self.klass,
            "minor_type": self.minor_type,
            "side": self.side,
        }


@dataclass
class BridgeDecomposition:
    cycle: tuple[int, ...]
    u: int
    v: int
    bridges: list[Bridge]
    conflict_edges: list[tuple[int, int]] = field(default_factory=list)

    @property
    def p1(self) -> list[int]:
        return cycle_path(self.cycle, self.u, self.v)

    @property
    def p2(self) -> list[int]:
        return cycle_path(self.cycle[::-1], self.u, self.v)

    def conflict_graph(self) -> nx.Graph:
        k = nx.Graph()
        k.add_nodes_from(range(len(self.bridges)))
        k.add_edges_from(self.conflict_edges)
        return k

    def to_json_obj(self) -> dict:
        return {
            "cycle": list(self.cycle),
            "u": self.u,
            "v": self.v,
            "p1": self.p1,
            "p2": self.p2,
            "bridges": [b.to_json_obj() for b in self.bridges],
            "conflicts": [list(e) for e in self.conflict_edges],
        }


def cycle_path(cycle: Sequence[int], u: int, v: int) -> list[int]:
    """Vertices from u forward to v along the cyclic sequence."""
    cyc = list(cycle)
    i = cyc.index(u)
    out = []
    while True:
        out.append(cyc[i])
        if cyc[i] == v:
            return out
        i = (i + 1) % len(cyc)


def cycle_edges(cycle: Sequence[int]) -> set[tuple[int, int]]:
    return {norm_edge(cycle[j], cycle[(j + 1) % len(cycle)]) for j in range(len(cycle))}


def check_cycle(g: Graph, cycle: Sequence[int]) -> None:
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        raise ValueError("a cycle needs at least three distinct vertices")
    for a, b in cycle_edges(cycle):
        if not g.has_edge(a, b):
            raise ValueError(f"({a}, {b}) is not an edge, so this is not a cycle")


def side_of(rot: RotationSystem, cycle: Sequence[int], j: int, w: int) -> int:
    """Side of the edge from ``cycle[j]`` to ``w`` (0 or 1)."""
    c = cycle[j]
    nxt, prv = cycle[(j + 1) % len(cycle)], cycle[j - 1]
    r = list(rot.rotation[c])
    k = r.index(nxt)
    order = r[k:] + r[:k]
    return 0 if order.index(w) < order.index(prv) else 1


def bridges_of(
    g: Graph,
    cycle: Sequence[int],
    u: int,
    v: int,
    rot: RotationSystem | None = None,
    with_conflicts: bool = True,
) -> BridgeDecomposition:
    """All bridges of ``g`` relative to the cycle, classified against P1 and P2."""
    cycle = tuple(cycle)
    check_cycle(g, cycle)
    if u == v or u not in cycle or v not in cycle:
        raise ValueError("u and v must be distinct cycle vertices")
    pos = {c: j for j, c in enumerate(cycle)}
    on_p1 = set(cycle_path(cycle, u, v))
    on_p2 = set(cycle_path(cycle[::-1], u, v))
    cset = frozenset(cycle)
    cedges = cycle_edges(cycle)
    raw: list[tuple[frozenset[int], frozenset[int], frozenset]] = []
    for a, b in sorted(g.edges):
        if a in cset and b in cset and (a, b) not in cedges:
            raw.append((frozenset(), frozenset((a, b)), frozenset([(a, b)])))
    rest = g.remove_vertices(cset)
    for comp in rest.components():
        att = frozenset(w for x in comp for w in g.neighbors(x) if w in cset)
        edges = frozenset(norm_edge(x, w) for x in comp for w in g.neighbors(x) if w in comp or w in cset)
        raw.append((comp, att, edges))
    out = []
    for kernel, att, edges in raw:
        positions = tuple(sorted(pos[a] for a in att))
        if att - on_p1 and att - on_p2:
            klass, mtype = "major", None
        else:
            klass, mtype = "minor", ("P1" if att <= on_p1 else "P2")
        side = None
        if rot is not None:
            if kernel:
                c = min(att, key=lambda a: pos[a])
                w = min(x for x in g.neighbors(c) if x in kernel)
            else:
                c, w = sorted(att, key=lambda a: pos[a])
            side = side_of(rot, cycle, pos[c], w)
        out.append(Bridge(kernel, positions, kernel | att, edges, klass, mtype, side))
    out.sort(key=lambda b: (b.attachments, sorted(b.kernel)))
    dec = BridgeDecomposition(cycle, u, v, out)
    if with_conflicts:
        dec.conflict_edges = [
            (i, j) for i, j in itertools.combinations(range(len(out)), 2) if conflicts(out[i], out[j], cycle)
        ]
    return dec


def _with_apex(g: Graph, targets: Iterable[int]) -> tuple[Graph, int]:
    z = g.max_vertex() + 1
    return g.add_vertex(z, targets), z


def conflicts(d1: Bridge, d2: Bridge, cycle: Sequence[int]) -> bool:
    """Whether C, D1 and D2 cannot be drawn together with C bounding a region."""
    g = Graph(set(cycle) | d1.vertices | d2.vertices, list(cycle_edges(cycle)) + list(d1.edges) + list(d2.edges))
    h, _ = _with_apex(g, cycle)
    return not planar_quick(h)


def conflicts_combinatorial(att1: Iterable[int], att2: Iterable[int], length: int) -> bool:
    """Interleaving attachments, or equal attachment sets of size three.

    Attachments are positions on a cycle of the given length.
    """
    a1, a2 = set(att1), set(att2)
    if a1 == a2 and len(a1) == 3:
        return True
    for c1, c2, c3, c4 in itertools.combinations(range(length), 4):
        if (c1 in a1 and c3 in a1 and c2 in a2 and c4 in a2) or (c1 in a2 and c3 in a2 and c2 in a1 and c4 in a1):
            return True
    return False


# ---------------------------------------------------------------------------
# embeddings with a prescribed face
# ---------------------------------------------------------------------------


def _is_face(g: Graph, rot: RotationSystem, cycle: Sequence[int]) -> bool:
    target = list(cycle)
    n = len(target)
    for f in trace_faces(g, rot):
        fv = face_vertices(f)
        if len(fv) != n or set(fv) != set(target):
            continue
        for seq in (target, target[::-1]):
            k = seq.index(fv[0])
            if seq[k:] + seq[:k] == fv:
                return True
    return False


def embed_with_boundary(g: Graph, cycle: Sequence[int]) -> RotationSystem | None:
    """A genus-0 rotation in which the cycle bounds a face, or None.

    Planarity of ``g`` plus a vertex adjacent to the whole cycle decides the
    question. In the embedding found, anything drawn in a triangle between the
    new vertex and a cycle edge only touches that edge's ends; it is reflected
    across the edge before the new vertex is dropped.
    """
    check_cycle(g, cycle)
    cycle = list(cycle)
    h, z = _with_apex(g, cycle)
    cert = is_planar(h)
    if not cert.planar:
        return None
    rot = {v: list(r) for v, r in cert.embedding.rotation.items()}
    L = len(cycle)
    cset = set(cycle)
    moved_roots: set[int] = set()
    for j, c in enumerate(cycle):
        r = rot[c]
        k = r.index(z)
        r = r[k:] + r[:k]  # z first
        nbr_c = {cycle[(j + 1) % L], cycle[j - 1]}
        first = next(idx for idx in range(1, len(r)) if r[idx] in nbr_c)
        last = max(idx for idx in range(1, len(r)) if r[idx] in nbr_c)
        run_a = r[1:first]
        run_b = r[last + 1:]
        mid = r[first + 1:last]
        r = [z, r[first]] + run_a[::-1] + mid + run_b[::-1] + [r[last]]
        rot[c] = r
        moved_roots.update(run_a)
        moved_roots.update(run_b)
    if moved_roots & cset:
        raise InvariantViolation("a chord was drawn beside the added vertex")
    rest = g.remove_vertices(cset)
    moved = set()
    for comp in rest.components():
        if comp & moved_roots:
            moved |= comp
    for x in moved:
        rot[x] = rot[x][::-1]
    final = {v: tuple(w for w in r if w != z) for v, r in rot.items() if v != z}
    result = RotationSystem(final)
    if genus_of_rotation(g, result).genus != 0 or not _is_face(g, result, cycle):
        raise InvariantViolation("boundary surgery did not produce a planar embedding with the cycle as a face")
    return result


def cofacial_rotation(g: Graph, u: int, v: int) -> RotationSystem | None:
    """A planar rotation of ``g`` with u and v on a common face, or None."""
    h, z = _with_apex(g, (u, v))
    cert = is_planar(h)
    if not cert.planar:
        return None
    rot = {x: tuple(w for w in r if w != z) for x, r in cert.embedding.rotation.items() if x != z}
    return RotationSystem(rot)


def shares_face(g: Graph, rot: RotationSystem, u: int, v: int) -> bool:
    return any(u in fv and v in fv for fv in (face_vertices(f) for f in trace_faces(g, rot)))


# ---------------------------------------------------------------------------
# the twist split
# ---------------------------------------------------------------------------


def twist_bound(xi: int) -> int:
    return 3 * xi + 64 * xi * xi


def _boundary_cycle(h: Graph, u: int, v: int) -> list[int] | None:
    """A cycle of the 2-connected graph h through u, v bounding a face of some
    planar drawing; None when u and v are adjacent."""
    if h.has_edge(u, v):
        return None
    huv = h.add_edges([(u, v)])
    rot = is_planar(huv).embedding
    faces = trace_faces(huv, rot)
    f1 = next(f for f in faces if (u, v) in f)
    f2 = next(f for f in faces if (v, u) in f)
    k1 = f1.index((u, v))
    walk1 = [a for a, _ in f1[k1:] + f1[:k1]]  # u, v, ..., back before u
    k2 = f2.index((v, u))
    walk2 = [a for a, _ in f2[k2:] + f2[:k2]]  # v, u, ..., back before v
    cycle = [u] + walk2[2:] + [v] + walk1[2:]
    if len(set(cycle)) != len(cycle):
        raise InvariantViolation("face boundaries of a 2-connected graph should meet only in u, v")
    return cycle


def _region_of(hp: Graph, rot_all: RotationSystem, g: Graph, x: int) -> tuple[int, ...]:
    """Vertices of the face of hp (drawn by restriction) that contains x."""
    hv = hp.vertices
    comp = None
    for c in g.remove_vertices(hv).components():
        if x in c:
            comp = c
            break
    # an edge from the component to hp, and the hp-face at that corner
    for y in sorted(comp):
        for h in sorted(g.neighbors(y)):
            if h in hv:
                r = [w for w in rot_all.rotation[h] if w in hp.neighbors(h) or w == y]
                k = r.index(y)
                a = r[k - 1]
                hp_rot = rot_all.restrict(hp)
                for f in trace_faces(hp, hp_rot):
                    if (a, h) in f:
                        return tuple(face_vertices(f))
    raise InvariantViolation(f"vertex {x} does not reach the cycle")


def _groups_round1(x: int, g: Graph, dec: BridgeDecomposition, owner: dict[int, int]) -> list[set[int]]:
    on_p1 = set(dec.p1)
    groups: dict[tuple, set[int]] = {}
    for w in sorted(g.neighbors(x)):
        if w in owner:
            b = dec.bridges[owner[w]]
            key = ("major", owner[w]) if b.klass == "major" else ("P", b.minor_type)
        else:
            key = ("P", "P1" if w in on_p1 else "P2")
        groups.setdefault(key, set()).add(w)
    return [groups[k] for k in sorted(groups, key=str)]


def twist_planarize(pair: ApicalPair, u: int, v: int) -> tuple[SplitLog, RotationSystem]:
    """Split apex vertices so the graph is planar with u and v on one face.

    Round one splits each apex vertex by bridge class (a major bridge, or P1
    or P2 with their minor bridges); round two splits the clones drawn inside
    the cycle by the interval of important vertices their bridges attach to.
    The log records ``meta['route']``: "direct", "twist" or "pendant" (the
    last is a safety net that splits every apex vertex into leaves).
    """
    g = pair.graph
    X = pair.apex_set
    h = pair.skeleton
    if not planar_quick(g):
        raise ValueError("the graph must be planar")
    if h.n < 3 or not nx.is_biconnected(h.to_networkx()):
        raise ValueError("the graph minus the apex set must be 2-connected")
    if u == v or u in X or v in X or u not in h or v not in h:
        raise ValueError("u and v must be distinct non-apex vertices")
    if not cofacial_embeddable(h, u, v):
        raise ValueError("u and v are not on a common face of any drawing of the skeleton")
    log = SplitLog()
    cycle = _boundary_cycle(h, u, v)
    if not X or cycle is None:
        log.meta["route"] = "direct"
        rot = cofacial_rotation(g, u, v)
        if rot is None:
            raise InvariantViolation("planar graph with adjacent u, v lacks a common face")
        return log, rot
    log.meta["cycle"] = list(cycle)
    try:
        g2, log2 = _twist_rounds(g, X, h, cycle, u, v)
        rot = cofacial_rotation(g2, u, v)
        if rot is not None and len(log2) <= twist_bound(len(X)):
            log2.meta.update(log.meta)
            log2.meta["route"] = "twist"
            return log2, rot
    except InvariantViolation:
        pass
    # safety net: every apex neighbour gets its own clone
    cur = g
    for x in sorted(X):
        cur, sub, _ = split_into_parts(cur, x, [[w] for w in sorted(cur.neighbors(x))] or [[]])
        log.extend(sub)
    log.meta["route"] = "pendant"
    rot = cofacial_rotation(cur, u, v)
    if rot is None:
        raise InvariantViolation("pendant split failed to make u, v cofacial")
    return log, rot


def _twist_rounds(g: Graph, X: frozenset[int], h: Graph, cycle: list[int], u: int, v: int) -> tuple[Graph, SplitLog]:
    log = SplitLog()
    hdec = bridges_of(h, cycle, u, v, with_conflicts=False)
    owner = {w: j for j, b in enumerate(hdec.bridges) for w in b.kernel}
    # round one: split by bridge class
    g1 = g
    clones: list[int] = []
    for x in sorted(X):
        if g.degree(x) == 0:
            clones.append(x)
            continue
        groups = _groups_round1(x, g, hdec, owner)
        g1, sub, cl = split_into_parts(g1, x, groups)
        log.extend(sub)
        clones.extend(cl)
    x1 = [c for c in clones if g1.degree(c) > 0]
    cert = is_planar(g1)
    if not cert.planar:
        raise InvariantViolation("round-one split is not planar")
    rot1 = cert.embedding
    gdec = bridges_of(g1, cycle, u, v, rot=rot1, with_conflicts=False)
    gside = {w: b.side for b in gdec.bridges for w in b.kernel}
    # H-bridge sides, read from the G-bridge that contains each one
    hside = []
    for b in hdec.bridges:
        if b.kernel:
            hside.append(gside[min(b.kernel)])
        else:
            chord = next(gb for gb in gdec.bridges if gb.is_chord and gb.edges == b.edges)
            hside.append(chord.side)
    # the side holding a major H-bridge in the drawing of H is "outer" when some
    # major bridge lies there; inner is the other side
    outer = 1
    major_sides = {s for b, s in zip(hdec.bridges, hside) if b.klass == "major"}
    if major_sides == {0}:
        outer = 0
    p1, p2 = hdec.p1, hdec.p2
    pos1 = {w: j for j, w in enumerate(p1)}
    pos2 = {w: j for j, w in enumerate(p2)}
    cset = set(cycle)
    hp_edges = set(cycle_edges(cycle))
    for b, s in zip(hdec.bridges, hside):
        if b.klass == "major" and s == outer:
            hp_edges |= set(b.edges)
    hp = Graph.from_edges(hp_edges, cset)
    imp1, imp2 = {u, v}, {u, v}
    for x in x1:
        if gside.get(x) != outer:
            continue
        region = _region_of(hp, rot1, g1, x)
        rset = set(region)
        if not (rset & (cset - set(p1)) and rset & (cset - set(p2))):
            continue
        for path, pos, imp in ((p1, pos1, imp1), (p2, pos2, imp2)):
            on = [w for w in rset if w in pos]
            if len(on) >= 2:
                imp.add(min(on, key=pos.get))
                imp.add(max(on, key=pos.get))
    a = sorted(imp1, key=pos1.get)
    b = sorted(imp2, key=pos2.get)
    log.meta["important_p1"] = a
    log.meta["important_p2"] = b

    def segment(path_pos: dict[int, int], marks: list[int], pts: Iterable[int]) -> int | None:
        ps = [path_pos[p] for p in pts]
        lo, hi = min(ps), max(ps)
        for i in range(len(marks) - 1):
            if path_pos[marks[i]] <= lo and hi <= path_pos[marks[i + 1]]:
                return i
        return None

    # round two: split inner clones of P-type by i-value
    g2 = g1
    for x in x1:
        if gside.get(x) == outer:
            continue
        nbrs = sorted(g1.neighbors(x))
        kinds = {hdec.bridges[owner[w]].klass for w in nbrs if w in owner}
        if "major" in kinds:
            continue
        on_p1 = any(w in owner and hdec.bridges[owner[w]].minor_type == "P1" for w in nbrs) or all(
            w in pos1 for w in nbrs
        )
        path_pos, marks = (pos1, a) if on_p1 else (pos2, b)
        groups: dict[int, set[int]] = {}
        pending = []
        for w in nbrs:
            if w in owner:
                hb = hdec.bridges[owner[w]]
                att = [cycle[p] for p in hb.attachments]
                iv = segment(path_pos, marks, att)
                if iv is None:
                    raise InvariantViolation("a minor inner bridge is not local")
                groups.setdefault(iv, set()).add(w)
            else:
                pending.append(w)
        for w in pending:
            if w not in path_pos:
                raise InvariantViolation("round-one class mixes both paths")
            fits = [i for i in range(len(marks) - 1) if path_pos[marks[i]] <= path_pos[w] <= path_pos[marks[i + 1]]]
            chosen = next((i for i in fits if i in groups), fits[0])
            groups.setdefault(chosen, set()).add(w)
        if len(groups) > 1:
            g2, sub, _ = split_into_parts(g2, x, [groups[i] for i in sorted(groups)])
            log.extend(sub)
    return g2, log
