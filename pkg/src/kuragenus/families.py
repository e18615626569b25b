"""(k,i)-Kuratowski graphs, junctions, packing numbers and minor extraction.

Labelling of generated graphs: the identified vertices come first (one for
i=1, two for i=2), then the remaining vertices of each piece in piece order.
For i=3 the graph is K_{k,3} with the three-side labelled 0, 1, 2.

Local piece labels: K5 uses 0..4; K33 uses sides {0,1,2} and {3,4,5}. For
i=2 the identified pair is (0,1) for K5 and for a K33 nonedge, and (0,3) for
a K33 edge.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .errors import BudgetExceeded, InvariantViolation
from .graph import Graph, MinorModel, PieceInfo, RootedGraph, model_from_branch_sets, norm_edge
from .minors import DEFAULT_SIZE_CAP, has_minor
from .planarity import flat_quick, is_flat, is_planar, kuratowski_kind, planar_quick

JUNCTION_CAP = 12
SIGMA_CAP = 10

_K5 = Graph.complete(5)
_K33 = Graph.complete_bipartite(3, 3)


@dataclass(frozen=True)
class PieceKind:
    kind: str  # "K5" or "K33"
    pair_kind: str | None = None  # "edge" or "nonedge", only for K33 pieces with i=2

    def __post_init__(self):
        if self.kind not in ("K5", "K33"):
            raise ValueError(f"unknown piece kind {self.kind!r}")
        if self.pair_kind not in (None, "edge", "nonedge"):
            raise ValueError(f"unknown pair kind {self.pair_kind!r}")
        if self.kind == "K5" and self.pair_kind == "nonedge":
            raise ValueError("K5 has no nonadjacent pair")

    @classmethod
    def parse(cls, text: str) -> "PieceKind":
        table = {
            "k5": cls("K5"),
            "k33": cls("K33"),
            "k33e": cls("K33", "edge"),
            "k33n": cls("K33", "nonedge"),
        }
        key = text.strip().lower().replace(",", "").replace("_", "")
        if key not in table:
            raise ValueError(f"unknown piece {text!r}; use k5, k33, k33e or k33n")
        return table[key]

    def label(self) -> str:
        if self.kind == "K5":
            return "k5"
        return {"edge": "k33e", "nonedge": "k33n", None: "k33"}[self.pair_kind]


def _normalize(i: int, pieces: Sequence[PieceKind | str]) -> list[PieceKind]:
    out = []
    for p in pieces:
        p = PieceKind.parse(p) if isinstance(p, str) else p
        if i == 2 and p.kind == "K33" and p.pair_kind is None:
            p = PieceKind("K33", "edge")
        if i == 2 and p.kind == "K5":
            p = PieceKind("K5", "edge")
        if i != 2 and p.pair_kind is not None:
            p = PieceKind(p.kind)
        out.append(p)
    return out


def _local(p: PieceKind) -> Graph:
    return _K5 if p.kind == "K5" else _K33


def _local_pair(p: PieceKind) -> tuple[int, int]:
    if p.kind == "K33" and p.pair_kind == "edge":
        return (0, 3)
    return (0, 1)


def kuratowski_layout(k: int, i: int, pieces: Sequence[PieceKind | str] = ()) -> tuple[Graph, tuple[PieceInfo, ...]]:
    """The (k,i)-Kuratowski graph together with where each piece sits in it."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if i not in (0, 1, 2, 3):
        raise ValueError("i must be 0, 1, 2 or 3")
    if i == 3:
        g = Graph.complete_bipartite(3, k)
        infos = tuple(PieceInfo("claw", None, (0, 1, 2, 3 + j)) for j in range(k))
        return g, infos
    pieces = _normalize(i, pieces)
    if len(pieces) != k:
        raise ValueError(f"need exactly {k} pieces, got {len(pieces)}")
    nxt = i
    edges = []
    vertices = list(range(i))
    infos = []
    for p in pieces:
        loc = _local(p)
        shared = () if i == 0 else (0,) if i == 1 else _local_pair(p)
        vmap = []
        for lv in range(loc.n):
            if lv in shared:
                vmap.append(shared.index(lv))
            else:
                vmap.append(nxt)
                vertices.append(nxt)
                nxt += 1
        for a, b in loc.sorted_edges():
            if i == 2 and {a, b} == set(shared):
                continue
            edges.append((vmap[a], vmap[b]))
        infos.append(PieceInfo(p.kind, p.pair_kind if i == 2 else None, tuple(vmap)))
    return Graph(vertices, edges), tuple(infos)


def make_kuratowski(k: int, i: int, pieces: Sequence[PieceKind | str] = ()) -> Graph:
    """The (k,i)-Kuratowski graph on the given piece list (ignored for i=3)."""
    return kuratowski_layout(k, i, pieces)[0]


def piece_mixes(k: int, i: int) -> list[list[PieceKind]]:
    """Every multiset of piece kinds for a (k,i)-Kuratowski graph."""
    if i == 3:
        return [[]]
    kinds = [PieceKind("K5"), PieceKind("K33")]
    if i == 2:
        kinds = [PieceKind("K5", "edge"), PieceKind("K33", "edge"), PieceKind("K33", "nonedge")]
    return [list(c) for c in itertools.combinations_with_replacement(kinds, k)]


def detect_kuratowski_minor(g: Graph, k: int, i: int, size_cap: int = DEFAULT_SIZE_CAP) -> MinorModel | None:
    """A minor model of some (k,i)-Kuratowski graph in ``g``, trying every piece mix."""
    if g.n > size_cap:
        raise BudgetExceeded(f"graph has {g.n} vertices, cap is {size_cap}")
    mixes = piece_mixes(k, i)
    layouts = [kuratowski_layout(k, i, mix) for mix in mixes]
    layouts.sort(key=lambda lay: (lay[0].n, lay[0].m))
    for pattern, infos in layouts:
        if pattern.n > g.n or pattern.m > g.m:
            continue
        model = has_minor(g, pattern, size_cap)
        if model is not None:
            return replace(model, i=i, pieces=infos)
    return None


# ---------------------------------------------------------------------------
# junctions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JunctionWitness:
    """A (k,i)-junction inside a graph: roots plus k piece vertex sets containing them."""

    i: int
    roots: tuple[int, ...]
    pieces: tuple[frozenset[int], ...]
    evidence: tuple[dict, ...] = field(default=(), compare=False)

    @property
    def k(self) -> int:
        return len(self.pieces)

    def problems(self, g: Graph) -> list[str]:
        out = []
        R = frozenset(self.roots)
        if len(R) != self.i:
            out.append(f"expected {self.i} roots, got {len(R)}")
        for a, b in itertools.combinations(range(len(self.pieces)), 2):
            if self.pieces[a] & self.pieces[b] != R:
                out.append(f"pieces {a} and {b} meet outside the roots")
        for j, p in enumerate(self.pieces):
            if not R <= p or not p <= g.vertices:
                out.append(f"piece {j} does not contain the roots or leaves the graph")
                continue
            h = g.subgraph(p)
            if self.i <= 1:
                if is_planar(h).planar:
                    out.append(f"piece {j} is planar")
            elif self.i == 2:
                if is_flat(RootedGraph(h, tuple(sorted(R)))):
                    out.append(f"piece {j} is flat")
            else:
                if not h.is_connected():
                    out.append(f"piece {j} is disconnected")
                for r in R:
                    if not h.neighbors(r) - R:
                        out.append(f"root {r} has no neighbour inside piece {j}")
        return out

    def validate(self, g: Graph) -> None:
        probs = self.problems(g)
        if probs:
            raise InvariantViolation("; ".join(probs))

    def to_json_obj(self) -> dict:
        return {
            "i": self.i,
            "k": self.k,
            "roots": list(self.roots),
            "pieces": [sorted(p) for p in self.pieces],
            "evidence": list(self.evidence),
        }


def _mask(vs: Iterable[int], idx: dict[int, int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << idx[v]
    return m


def _unmask(m: int, order: Sequence[int]) -> frozenset[int]:
    return frozenset(order[b] for b in range(len(order)) if m >> b & 1)


def minimal_valid_sets(universe: Sequence[int], valid, min_size: int = 1) -> list[int]:
    """Inclusion-minimal subsets (as bitmasks over ``universe``) accepted by ``valid``.

    Subsets are tried by increasing size and supersets of accepted sets are
    skipped, so every accepted set is minimal among accepted sets.
    """
    n = len(universe)
    found: list[int] = []
    for size in range(max(min_size, 1), n + 1):
        for combo in itertools.combinations(range(n), size):
            m = 0
            for b in combo:
                m |= 1 << b
            if any(f & ~m == 0 for f in found):
                continue
            if valid(frozenset(universe[b] for b in combo)):
                found.append(m)
    return found


def max_packing(masks: Sequence[int], target: int | None = None) -> list[int]:
    """A largest family of pairwise disjoint masks (stops early at ``target``)."""
    masks = sorted(set(masks), key=lambda m: (bin(m).count("1"), m))
    best: list[int] = []

    def rec(start: int, used: int, chosen: list[int]) -> bool:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
            if target is not None and len(best) >= target:
                return True
        for j in range(start, len(masks)):
            if len(chosen) + (len(masks) - j) <= len(best):
                return False
            m = masks[j]
            if m & used:
                continue
            chosen.append(m)
            if rec(j + 1, used | m, chosen):
                return True
            chosen.pop()
        return False

    rec(0, 0, [])
    return best


def _junction_valid(g: Graph, i: int, R: frozenset[int]):
    def valid(s: frozenset[int]) -> bool:
        h = g.subgraph(s | R)
        if i <= 1:
            return h.m >= 9 and not planar_quick(h)
        if i == 2:
            return h.m >= 8 and not flat_quick(h, sorted(R))
        if not h.is_connected():
            return False
        return all(h.neighbors(r) & s for r in R)

    return valid


def _evidence(g: Graph, i: int, R: frozenset[int], piece: frozenset[int]) -> dict:
    h = g.subgraph(piece)
    if i <= 1:
        return {"nonplanar": True, "kuratowski": is_planar(h).kind}
    if i == 2:
        return {"flat": False}
    return {"connected": True, "root_neighbours": {str(r): sorted(h.neighbors(r) - R) for r in sorted(R)}}


def detect_junction(
    g: Graph,
    k: int,
    i: int,
    roots: Iterable[int] | None = None,
    size_cap: int = JUNCTION_CAP,
) -> JunctionWitness | None:
    """A (k,i)-junction that is a subgraph of ``g``, or None.

    Searches every root set of size ``i`` (or just ``roots``) and every family
    of k pairwise disjoint private parts; pieces are induced subgraphs.
    """
    if g.n > size_cap:
        raise BudgetExceeded(f"graph has {g.n} vertices, cap is {size_cap}")
    if k < 1:
        raise ValueError("k must be at least 1")
    if i not in (0, 1, 2, 3):
        raise ValueError("i must be 0, 1, 2 or 3")
    if roots is not None:
        root_sets = [tuple(sorted(roots))]
        if len(root_sets[0]) != i:
            raise ValueError(f"need exactly {i} roots")
    else:
        root_sets = list(itertools.combinations(g.sorted_vertices(), i))
    min_size = {0: 5, 1: 4, 2: 3, 3: 1}[i]
    for R in root_sets:
        Rs = frozenset(R)
        universe = [v for v in g.sorted_vertices() if v not in Rs]
        if len(universe) < k * min_size:
            continue
        masks = minimal_valid_sets(universe, _junction_valid(g, i, Rs), min_size)
        pack = max_packing(masks, k)
        if len(pack) >= k:
            pieces = tuple(_unmask(m, universe) | Rs for m in pack[:k])
            ev = tuple(_evidence(g, i, Rs, p) for p in pieces)
            w = JunctionWitness(i, R, pieces, ev)
            w.validate(g)
            return w
    return None


# ---------------------------------------------------------------------------
# packing numbers
# ---------------------------------------------------------------------------


def _sigma_valid(g: Graph, x_set: frozenset[int]):
    xs = sorted(x_set)
    small = [tuple(xs)] if len(xs) <= 2 else list(itertools.combinations(xs, 2))
    triples = list(itertools.combinations(xs, 3))

    def valid(s: frozenset[int]) -> bool:
        for t in small:
            h = g.subgraph(s | set(t))
            if h.m >= 9 and not planar_quick(h):
                return True
        if not g.subgraph(s).is_connected():
            return False
        return any(g.subgraph(s | set(t)).is_connected() for t in triples)

    return valid


def sigma_pieces(x_set: Iterable[int], g: Graph) -> list[frozenset[int]]:
    """A maximum family of pieces for the packing number sigma(X, G).

    Pieces are returned as their vertex sets outside X.
    """
    x_set = frozenset(x_set)
    universe = [v for v in g.sorted_vertices() if v not in x_set]
    if len(universe) > SIGMA_CAP:
        raise BudgetExceeded(f"{len(universe)} non-apex vertices, cap is {SIGMA_CAP}")
    masks = minimal_valid_sets(universe, _sigma_valid(g, x_set))
    return [_unmask(m, universe) for m in max_packing(masks)]


def sigma(x_set: Iterable[int], g: Graph) -> int:
    """sigma(X, G): most subgraphs meeting only inside X, each with at most three
    vertices of X, nonplanar when it has at most two of them and connected with
    and without X when it has three."""
    return len(sigma_pieces(x_set, g))


def sigma_at(x_set: Iterable[int], v: int, g: Graph) -> int:
    """sigma(X, v, G): most nonplanar subgraphs through v, each with at most two
    vertices of X, pairwise meeting only inside X plus v."""
    x_set = frozenset(x_set)
    if v in x_set or v not in g:
        raise ValueError("v must be a vertex outside X")
    universe = [w for w in g.sorted_vertices() if w not in x_set and w != v]
    if len(universe) > SIGMA_CAP:
        raise BudgetExceeded(f"{len(universe)} non-apex vertices, cap is {SIGMA_CAP}")
    xs = sorted(x_set)
    small = [tuple(xs)] if len(xs) <= 2 else list(itertools.combinations(xs, 2))

    def valid(s: frozenset[int]) -> bool:
        for t in small:
            h = g.subgraph(s | {v} | set(t))
            if h.m >= 9 and not planar_quick(h):
                return True
        return False

    return len(max_packing(minimal_valid_sets(universe, valid)))


# ---------------------------------------------------------------------------
# extraction of Kuratowski minors from junctions
# ---------------------------------------------------------------------------


@dataclass
class _Subdivision:
    kind: str
    branch: list[int]
    side: dict[int, int]  # K33 side of each branch vertex (0 or 1); all 0 for K5
    paths: dict[frozenset, list[int]]  # branch pair -> path listed from min to max endpoint

    def locate(self, r: int):
        """("branch", r) or ("path", key, position) for a vertex of the subdivision."""
        if r in self.side:
            return ("branch", r)
        for key, p in self.paths.items():
            if r in p:
                return ("path", key, p.index(r))
        return None


def subdivision_parts(h: Graph) -> _Subdivision:
    """Branch vertices and branch paths of a K5 or K33 subdivision."""
    kind = kuratowski_kind(h)
    if kind is None:
        raise ValueError("not a Kuratowski subdivision")
    h = h.subgraph([v for v in h.vertices if h.degree(v) > 0])
    branch = sorted(v for v in h.vertices if h.degree(v) != 2)
    bset = set(branch)
    paths: dict[frozenset, list[int]] = {}
    for b in branch:
        for w in sorted(h.neighbors(b)):
            walk = [b]
            prev, cur = b, w
            while cur not in bset:
                walk.append(cur)
                prev, cur = cur, next(x for x in h.neighbors(cur) if x != prev)
            walk.append(cur)
            if b < cur:
                paths[frozenset((b, cur))] = walk
    side = {v: 0 for v in branch}
    if kind == "K33":
        first = branch[0]
        for v in branch:
            side[v] = 0 if v == first or frozenset((first, v)) not in paths else 1
    return _Subdivision(kind, branch, side, paths)


def _branch_sets(sd: _Subdivision, cuts: dict[frozenset, int]) -> dict[int, set[int]]:
    """Assign path interiors to endpoints: the first ``cut`` interior vertices go to the smaller end."""
    bs = {v: {v} for v in sd.branch}
    for key, p in sd.paths.items():
        inner = p[1:-1]
        t = cuts.get(key, len(inner))
        bs[p[0]].update(inner[:t])
        bs[p[-1]].update(inner[t:])
    return bs


def _anchor(sd: _Subdivision, r1: int | None, r2: int | None) -> tuple[dict[int, set[int]], int | None, int | None]:
    """Branch sets with r1 and r2 (when present) placed in different branch sets."""
    cuts: dict[frozenset, int] = {}

    def options(r):
        loc = sd.locate(r)
        if loc[0] == "branch":
            return [(r, None)]
        _, key, pos = loc
        p = sd.paths[key]
        # r at index pos of p; joining p[0] needs cut >= pos, joining p[-1] needs cut < pos
        return [(p[0], (key, pos, "low")), (p[-1], (key, pos, "high"))]

    def apply(opt):
        if opt is None:
            return True
        key, pos, way = opt
        lo, hi = 0, len(sd.paths[key]) - 2
        cur_lo, cur_hi = cuts.get((key, "lo"), lo), cuts.get((key, "hi"), hi)
        if way == "low":
            cur_lo = max(cur_lo, pos)
        else:
            cur_hi = min(cur_hi, pos - 1)
        if cur_lo > cur_hi:
            return False
        cuts[(key, "lo")], cuts[(key, "hi")] = cur_lo, cur_hi
        return True

    x = y = None
    if r1 is None:
        return _branch_sets(sd, {}), None, None
    for bx, ox in options(r1):
        for by, oy in (options(r2) if r2 is not None else [(None, None)]):
            if r2 is not None and bx == by:
                continue
            cuts.clear()
            if apply(ox) and apply(oy):
                x, y = bx, by
                break
        if x is not None:
            break
    if x is None:
        raise InvariantViolation("could not separate the roots into distinct branch sets")
    final = {key: cuts[(key, "lo")] for key in sd.paths if (key, "lo") in cuts}
    return _branch_sets(sd, final), x, y


def _local_order(sd: _Subdivision, x: int | None, y: int | None) -> tuple[PieceKind, list[int]]:
    """Map local piece labels to branch vertices, with x (and y) at the identified labels."""
    if sd.kind == "K5":
        rest = [v for v in sd.branch if v not in (x, y)]
        head = [v for v in (x, y) if v is not None]
        return PieceKind("K5", "edge" if y is not None else None), head + rest
    first = x if x is not None else sd.branch[0]
    a = sorted(v for v in sd.branch if sd.side[v] == sd.side[first])
    b = sorted(v for v in sd.branch if sd.side[v] != sd.side[first])
    a.remove(first)
    a = [first] + a
    if y is None:
        return PieceKind("K33"), a + b
    if y in a:
        a.remove(y)
        return PieceKind("K33", "nonedge"), [a[0], y, a[1]] + b
    b.remove(y)
    return PieceKind("K33", "edge"), a + [y] + b


def _assemble(g: Graph, i: int, items: list[tuple[_Subdivision, dict[int, set[int]], int | None, int | None]]) -> MinorModel:
    kinds = []
    orders = []
    for sd, bs, x, y in items:
        pk, order = _local_order(sd, x, y)
        kinds.append(pk)
        orders.append(order)
    pattern, infos = kuratowski_layout(len(items), i, kinds)
    branch: dict[int, set[int]] = {}
    for (sd, bs, _, _), order, info in zip(items, orders, infos):
        for local, hv in enumerate(order):
            branch.setdefault(info.vertex_map[local], set()).update(bs[hv])
    model = model_from_branch_sets(g, pattern, branch, i=i, pieces=infos)
    probs = model.problems(g)
    if probs:
        raise InvariantViolation("; ".join(probs))
    return model


def _witness_subdivision(g: Graph, vertices: frozenset[int]) -> _Subdivision:
    cert = is_planar(g.subgraph(vertices))
    if cert.planar:
        raise ValueError("piece is planar")
    return subdivision_parts(cert.witness)


def junction_to_kuratowski(g: Graph, w: JunctionWitness, k: int) -> MinorModel:
    """A (k,j)-Kuratowski minor built from a junction with at least 8k pieces.

    Follows the counting argument: Kuratowski subdivisions inside nonplanar
    pieces (or unions of two non-flat pieces for i=2), then a pigeonhole on
    how they meet the roots.
    """
    w.validate(g)
    if w.k < 8 * k:
        raise ValueError(f"need at least {8 * k} pieces, got {w.k}")
    R = list(w.roots)
    if w.i == 0:
        sds = [_witness_subdivision(g, p) for p in w.pieces[:k]]
        return _assemble(g, 0, [(sd, *_anchor(sd, None, None)) for sd in sds])
    if w.i == 1:
        r = R[0]
        sds = [_witness_subdivision(g, p) for p in w.pieces]
        avoid = [sd for sd in sds if sd.locate(r) is None]
        hit = [sd for sd in sds if sd.locate(r) is not None]
        if len(avoid) >= k:
            return _assemble(g, 0, [(sd, *_anchor(sd, None, None)) for sd in avoid[:k]])
        return _assemble(g, 1, [(sd, *_anchor(sd, r, None)) for sd in hit[:k]])
    if w.i == 2:
        sds = []
        for j in range(len(w.pieces) // 2):
            union = w.pieces[2 * j] | w.pieces[2 * j + 1]
            sds.append(_witness_subdivision(g, union))
        classes: dict[tuple[int, ...], list[_Subdivision]] = {}
        for sd in sds:
            key = tuple(r for r in R if sd.locate(r) is not None)
            classes.setdefault(key, []).append(sd)
        key, group = max(classes.items(), key=lambda kv: (len(kv[1]), -len(kv[0])))
        group = group[:k]
        if len(group) < k:
            raise InvariantViolation("pigeonhole on root intersections failed")
        if len(key) == 0:
            return _assemble(g, 0, [(sd, *_anchor(sd, None, None)) for sd in group])
        if len(key) == 1:
            return _assemble(g, 1, [(sd, *_anchor(sd, key[0], None)) for sd in group])
        return _assemble(g, 2, [(sd, *_anchor(sd, R[0], R[1])) for sd in group])
    # i == 3: one component of the piece minus the roots must see all three roots
    Rs = frozenset(R)
    centres = []
    for p in w.pieces:
        inner = g.subgraph(p - Rs)
        for comp in inner.components():
            if all(g.neighbors(r) & comp for r in R):
                centres.append(comp)
                break
        if len(centres) == k:
            break
    if len(centres) < k:
        raise ValueError(
            f"only {len(centres)} pieces have a part seeing all three roots; "
            "a connected piece whose roots only have private neighbours in different parts gives no K_{k,3} branch set"
        )
    pattern, infos = kuratowski_layout(k, 3)
    bs = {j: {R[j]} for j in range(3)}
    for j, comp in enumerate(centres):
        bs[3 + j] = set(comp)
    model = model_from_branch_sets(g, pattern, bs, i=3, pieces=infos)
    if not model.is_valid(g):
        raise InvariantViolation("; ".join(model.problems(g)))
    return model


def purify(model: MinorModel, k: int) -> MinorModel:
    """Keep k pieces of the majority kind (split by pair kind when i=2).

    Branch sets and edge witnesses are carried over from the kept pieces, so
    no host graph is needed.
    """
    if model.pieces is None or model.i is None:
        raise ValueError("model has no piece annotation")
    pieces = list(model.pieces)
    classes = {0: 2, 1: 2, 2: 3, 3: 1}[model.i]
    if len(pieces) < classes * k:
        raise ValueError(f"need at least {classes * k} pieces, got {len(pieces)}")
    counts = Counter((p.kind, p.pair_kind) for p in pieces)
    order = [("K5", None), ("K5", "edge"), ("K33", None), ("K33", "edge"), ("K33", "nonedge"), ("claw", None)]
    best = max(counts, key=lambda c: (counts[c], -order.index(c)))
    keep = [p for p in pieces if (p.kind, p.pair_kind) == best][:k]
    if model.i == 3:
        pattern, infos = kuratowski_layout(k, 3)
        local = Graph.complete_bipartite(3, 1)
    else:
        kind = PieceKind(best[0], best[1])
        pattern, infos = kuratowski_layout(k, model.i, [kind] * k)
        local = _local(kind)
    bs: dict[int, frozenset[int]] = {}
    wits = {}
    for old, new in zip(keep, infos):
        for lo, ln in zip(old.vertex_map, new.vertex_map):
            bs[ln] = model.branch_sets[lo]
        for a, b in local.sorted_edges():
            e_new = norm_edge(new.vertex_map[a], new.vertex_map[b])
            if pattern.has_edge(*e_new):
                wits[e_new] = model.edge_witnesses[norm_edge(old.vertex_map[a], old.vertex_map[b])]
    return MinorModel(pattern, bs, wits, i=model.i, pieces=infos)


def layout_junction(k: int, i: int, pieces: Sequence[PieceKind | str] = ()) -> tuple[Graph, JunctionWitness]:
    """A (k,i)-Kuratowski graph read as a (k,i)-junction, one piece per Kuratowski piece."""
    g, infos = kuratowski_layout(k, i, pieces)
    R = tuple(range(i))
    w = JunctionWitness(i, R, tuple(frozenset(info.vertex_map) for info in infos))
    w.validate(g)
    return g, w
