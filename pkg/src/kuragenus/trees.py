"""Splitting marked trees into disjoint subtrees, and what that buys for minors.

The lemmas here are about trees T_1..T_t of maximum degree below d, with a
vertex v^s_i of T_s marked for every index i. Subtrees are returned as vertex
sets of the tree they live in. Logarithms are base two.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx

from .errors import InvariantViolation
from .families import JunctionWitness
from .graph import Graph, MinorModel, norm_edge
from .ledger import f_tree, tree_threshold


def _check_tree(tree: Graph) -> None:
    if tree.n == 0 or tree.m != tree.n - 1 or not tree.is_connected():
        raise ValueError("not a tree")


def _max_degree(tree: Graph) -> int:
    return max((tree.degree(v) for v in tree.vertices), default=0)


@dataclass(frozen=True)
class MarkedForest:
    """Trees with ``marks[s][i]`` the vertex v^s_i of tree s; ``d`` exceeds every degree."""

    trees: tuple[Graph, ...]
    marks: tuple[tuple[int, ...], ...]
    d: int

    def __post_init__(self):
        object.__setattr__(self, "trees", tuple(self.trees))
        object.__setattr__(self, "marks", tuple(tuple(m) for m in self.marks))
        if len(self.trees) != len(self.marks):
            raise ValueError("one mark list per tree")
        if self.d < 2:
            raise ValueError("d must be at least 2")
        n = len(self.marks[0]) if self.marks else 0
        for tree, mk in zip(self.trees, self.marks):
            _check_tree(tree)
            if len(mk) != n:
                raise ValueError("every tree needs the same number of marks")
            if len(set(mk)) != n:
                raise ValueError("marks within a tree must be distinct")
            if not set(mk) <= tree.vertices:
                raise ValueError("marks must be vertices of their tree")
            if _max_degree(tree) >= self.d:
                raise ValueError("tree degree must be less than d")

    @property
    def t(self) -> int:
        return len(self.trees)

    @property
    def n(self) -> int:
        return len(self.marks[0]) if self.marks else 0


# ---------------------------------------------------------------------------
# one balanced edge
# ---------------------------------------------------------------------------


def _side(tree: Graph, e: tuple[int, int], start: int) -> frozenset[int]:
    """Vertices reachable from ``start`` without using edge ``e``."""
    a, b = e
    seen = {start}
    todo = deque([start])
    while todo:
        v = todo.popleft()
        for w in tree.neighbors(v):
            if {v, w} == {a, b} or w in seen:
                continue
            seen.add(w)
            todo.append(w)
    return frozenset(seen)


def balanced_edge(tree: Graph, marks: Iterable[int], d: int) -> tuple[int, int]:
    """An edge leaving at least (|P|-1)/(d-1) marks on each side.

    Every vertex v picks the first neighbour whose side of v holds that many
    marks (a "good pair"); there are more vertices than edges, so some edge
    is picked from both ends, and that edge works.
    """
    _check_tree(tree)
    if tree.n < 2:
        raise ValueError("tree needs at least two vertices")
    if d < 2 or _max_degree(tree) >= d:
        raise ValueError("need d >= 2 exceeding every degree")
    P = frozenset(marks)
    if not P <= tree.vertices:
        raise ValueError("marks must be tree vertices")
    need = len(P) - 1  # compare count*(d-1) >= |P|-1 to stay in integers
    root = min(tree.vertices)
    parent = {root: None}
    order = [root]
    for v in order:
        for w in sorted(tree.neighbors(v)):
            if w not in parent:
                parent[w] = v
                order.append(w)
    below = {v: int(v in P) for v in order}
    for v in reversed(order[1:]):
        below[parent[v]] += below[v]
    picked: dict[tuple[int, int], int] = {}
    for v in sorted(tree.vertices):
        for w in sorted(tree.neighbors(v)):
            cnt = below[w] if parent.get(w) == v else len(P) - below[v]
            if cnt * (d - 1) >= need:
                e = norm_edge(v, w)
                picked[e] = picked.get(e, 0) + 1
                if picked[e] == 2:
                    return e
                break
    raise InvariantViolation("no edge was picked twice")


def edge_sides(tree: Graph, e: tuple[int, int]) -> tuple[frozenset[int], frozenset[int]]:
    """(side of the smaller endpoint, side of the larger one)."""
    a, b = norm_edge(*e)
    return _side(tree, (a, b), a), _side(tree, (a, b), b)


# ---------------------------------------------------------------------------
# complementary subtrees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComplementarySplit:
    pairs: tuple[tuple[frozenset[int], frozenset[int]], ...]
    X: frozenset[int]
    Y: frozenset[int]


def _split_once(trees: Sequence[Graph], marks: Sequence[Sequence[int]], idx: Sequence[int], d: int) -> ComplementarySplit:
    """Complementary subtrees of every tree with index sets X, Y on the A and B sides."""
    pairs = []
    X = list(idx)
    Y: list[int] | None = None
    for s, tree in enumerate(trees):
        mk = marks[s]
        e = balanced_edge(tree, [mk[i] for i in X], d)
        A, B = edge_sides(tree, e)
        if Y is None:
            X, Y = [i for i in X if mk[i] in A], [i for i in X if mk[i] in B]
        else:
            # B gets the side holding at least half of Y; ties keep the first side as A
            if sum(mk[i] in A for i in Y) > sum(mk[i] in B for i in Y):
                A, B = B, A
            X = [i for i in X if mk[i] in A]
            Y = [i for i in Y if mk[i] in B]
        pairs.append((A, B))
    return ComplementarySplit(tuple(pairs), frozenset(X), frozenset(Y or ()))


def complementary_split(forest: MarkedForest) -> ComplementarySplit:
    """Complementary subtrees A_s, B_s of every tree and disjoint index sets
    X, Y of size at least n/d^t, X marked inside every A_s and Y inside every B_s."""
    n, t, d = forest.n, forest.t, forest.d
    if n < d**t:
        raise ValueError(f"need n >= d^t = {d**t}, got {n}")
    out = _split_once(forest.trees, forest.marks, range(n), d)
    if min(len(out.X), len(out.Y)) * d**t < n:
        raise InvariantViolation("index sets below n/d^t")
    return out


def recursive_split(forest: MarkedForest, c: int) -> list[tuple[tuple[frozenset[int], ...], frozenset[int]]]:
    """2^c groups (one subtree per tree, index set), subtrees disjoint per
    tree, index sets disjoint and of size at least n/d^(ct)."""
    n, t, d = forest.n, forest.t, forest.d
    if c < 0:
        raise ValueError("c must be nonnegative")
    if n < d ** (c * t):
        raise ValueError(f"need n >= d^(ct) = {d ** (c * t)}, got {n}")

    def rec(verts: list[frozenset[int]], idx: list[int], depth: int):
        if depth == 0:
            return [(tuple(verts), frozenset(idx))]
        trees = [forest.trees[s].subgraph(verts[s]) for s in range(t)]
        sp = _split_once(trees, forest.marks, idx, d)
        left = rec([a for a, _ in sp.pairs], sorted(sp.X), depth - 1)
        right = rec([b for _, b in sp.pairs], sorted(sp.Y), depth - 1)
        return left + right

    groups = rec([tr.vertices for tr in forest.trees], list(range(n)), c)
    floor = n / d ** (c * t)
    if any(len(ix) < floor for _, ix in groups):
        raise InvariantViolation("a group fell below n/d^(ct)")
    return groups


# ---------------------------------------------------------------------------
# disjoint triples
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DisjointTriples:
    subtrees: tuple[tuple[frozenset[int], ...], ...]  # [s][i]
    triples: tuple[tuple[int, int, int], ...]

    def problems(self, forest: MarkedForest) -> list[str]:
        out = []
        k = len(self.triples)
        used = [i for tr in self.triples for i in tr]
        if len(set(used)) != len(used) or any(len(set(tr)) != 3 for tr in self.triples):
            out.append("triples are not disjoint")
        for s, tree in enumerate(forest.trees):
            subs = self.subtrees[s]
            if len(subs) != k:
                out.append(f"tree {s} has {len(subs)} subtrees")
                continue
            for a, b in itertools.combinations(range(k), 2):
                if subs[a] & subs[b]:
                    out.append(f"subtrees {a},{b} of tree {s} meet")
            for i, sub in enumerate(subs):
                if not sub or not tree.subgraph(sub).is_connected():
                    out.append(f"subtree {i} of tree {s} is not a subtree")
                for j in self.triples[i]:
                    if forest.marks[s][j] not in sub:
                        out.append(f"mark {j} of tree {s} is outside subtree {i}")
        return out


def disjoint_triples(forest: MarkedForest, k: int) -> DisjointTriples:
    """k disjoint subtrees per tree and k disjoint index triples, triple i
    marked inside subtree i of every tree. Needs n >= 3 d^(t log 2k)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    n, t, d = forest.n, forest.t, forest.d
    need = tree_threshold(d, t, k)
    if n < need:
        raise ValueError(f"need n >= {need}, got {n}")
    c = (k - 1).bit_length()  # smallest c with 2^c >= k
    groups = recursive_split(forest, c)
    groups = groups[:k]
    triples = []
    for _, ix in groups:
        if len(ix) < 3:  # pragma: no cover - excluded by the threshold
            raise InvariantViolation("group smaller than three")
        triples.append(tuple(sorted(ix)[:3]))
    subtrees = tuple(tuple(g[0][s] for g in groups) for s in range(t))
    out = DisjointTriples(subtrees, tuple(triples))
    probs = out.problems(forest)
    if probs:
        raise InvariantViolation("; ".join(probs))
    return out


# ---------------------------------------------------------------------------
# many subtrees of one tree
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Trichotomy:
    """kind "disjoint": ``indices`` pairwise disjoint; "edge": all contain
    ``edge``; "vertex": pairwise meet exactly in ``vertex``."""

    kind: str
    indices: tuple[int, ...]
    edge: tuple[int, int] | None = None
    vertex: int | None = None

    def problems(self, subtrees: Sequence[frozenset[int]], size: int) -> list[str]:
        out = []
        if len(set(self.indices)) != size or len(self.indices) != size:
            out.append(f"need {size} distinct indices")
        sets = [subtrees[i] for i in self.indices]
        if self.kind == "disjoint":
            if any(a & b for a, b in itertools.combinations(sets, 2)):
                out.append("subtrees are not pairwise disjoint")
        elif self.kind == "edge":
            if not all(set(self.edge) <= s for s in sets):
                out.append("an indexed subtree misses the edge")
        elif self.kind == "vertex":
            if any(a & b != {self.vertex} for a, b in itertools.combinations(sets, 2)):
                out.append("subtrees do not pairwise meet exactly in the vertex")
            if size == 1 and self.vertex not in sets[0]:
                out.append("subtree misses the vertex")
        else:
            out.append(f"unknown kind {self.kind}")
        return out


def _disjoint_greedy(tree: Graph, subtrees: Sequence[frozenset[int]]) -> tuple[list[int], list[int]]:
    """A maximum packing of pairwise disjoint subtrees and a hitting set of the same size.

    Subtrees are taken deepest top vertex first; each pick adds its top vertex
    to the hitting set, and any subtree meeting a chosen one contains its top.
    """
    root = min(tree.vertices)
    depth = nx.single_source_shortest_path_length(tree.to_networkx(), root)
    tops = [min(s, key=lambda v: (depth[v], v)) for s in subtrees]
    order = sorted(range(len(subtrees)), key=lambda i: (-depth[tops[i]], i))
    hit: set[int] = set()
    packing, hitting = [], []
    for i in order:
        if subtrees[i] & hit:
            continue
        packing.append(i)
        hitting.append(tops[i])
        hit.add(tops[i])
    return packing, hitting


def subtree_trichotomy(
    tree: Graph, subtrees: Sequence[Iterable[int]], a: int, b: int, c: int, d: int
) -> Trichotomy:
    """With at least abcd subtrees of max degree at most d: a pairwise disjoint
    ones, or an edge in b of them, or c meeting pairwise exactly in one vertex."""
    _check_tree(tree)
    subs = [frozenset(s) for s in subtrees]
    n = len(subs)
    if min(a, b, c, d) < 1:
        raise ValueError("a, b, c, d must be positive")
    if n < a * b * c * d:
        raise ValueError(f"need at least abcd = {a * b * c * d} subtrees, got {n}")
    for s in subs:
        if not s or not s <= tree.vertices or not tree.subgraph(s).is_connected():
            raise ValueError("every member must be a subtree")
        if _max_degree(tree.subgraph(s)) > d:
            raise ValueError("subtree degree exceeds d")
    packing, hitting = _disjoint_greedy(tree, subs)
    if len(packing) >= a:
        return Trichotomy("disjoint", tuple(sorted(packing[:a])))
    # fewer than a hitting vertices: one of them lies in at least n/(a-1) subtrees
    v = max(hitting, key=lambda h: (sum(h in s for s in subs), -h))
    through = [i for i, s in enumerate(subs) if v in s]
    for e in sorted(tree.edges):
        holders = [i for i, s in enumerate(subs) if set(e) <= s]
        if len(holders) >= b:
            return Trichotomy("edge", tuple(holders[:b]), edge=e)
    chosen: list[int] = []
    for i in through:
        if all(subs[i] & subs[j] == {v} for j in chosen):
            chosen.append(i)
            if len(chosen) == c:
                return Trichotomy("vertex", tuple(chosen), vertex=v)
    raise InvariantViolation("no outcome found above the threshold")


# ---------------------------------------------------------------------------
# junctions from K_{k',3} minors
# ---------------------------------------------------------------------------


def _spanning_tree(g: Graph, verts: frozenset[int]) -> Graph:
    h = g.subgraph(verts)
    root = min(verts)
    edges = []
    seen = {root}
    todo = deque([root])
    while todo:
        v = todo.popleft()
        for w in sorted(h.neighbors(v)):
            if w not in seen:
                seen.add(w)
                edges.append((v, w))
                todo.append(w)
    return Graph(verts, edges)


def _minimal_subtree(tree: Graph, keep: Iterable[int]) -> Graph:
    """Repeatedly delete leaves outside ``keep``."""
    keep = set(keep)
    verts = set(tree.vertices)
    cur = tree
    changed = True
    while changed and len(verts) > 1:
        changed = False
        for v in sorted(verts):
            if v not in keep and cur.degree(v) <= 1 and len(verts) > 1:
                verts.discard(v)
                cur = tree.subgraph(verts)
                changed = True
    return cur


def _star_sides(model: MinorModel) -> tuple[list[int], list[int]]:
    pat = model.pattern
    left, right = nx.bipartite.sets(pat.to_networkx())
    left, right = sorted(left), sorted(right)
    if len(left) == 3 and (len(right) != 3 or min(left) < min(right)):
        return left, right
    if len(right) == 3:
        return right, left
    raise ValueError("pattern is not K_{k',3}")


def star_minor_to_junction(g: Graph, model: MinorModel, k: int) -> JunctionWitness:
    """A (k,j)-junction subgraph of ``g`` from a K_{k',3} minor model with k' >= f(k,t),
    t the number of branch sets on the three-side with more than one vertex.

    Follows the induction on the number t of branch trees with more than one
    vertex: repeated attachment vertices and high-degree vertices collapse a
    tree to a single vertex; otherwise the tree lemma gives k disjoint
    subtrees per tree and k disjoint triples of the other side.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    probs = model.problems(g)
    if probs:
        raise ValueError("invalid model: " + "; ".join(probs))
    three, many = _star_sides(model)
    kp = len(many)
    trees = [_spanning_tree(g, frozenset(model.branch_sets[r])) for r in three]
    t = sum(tr.n > 1 for tr in trees)
    if kp < f_tree(k, t):
        raise ValueError(f"k' = {kp} is below f(k,{t}) = {f_tree(k, t)}")
    comps = [frozenset(model.branch_sets[c]) for c in many]
    w = _extract(g, trees, comps, k)
    w.validate(g)
    return w


def _junction_from_singletons(trees: list[Graph], comps: list[frozenset[int]], k: int) -> JunctionWitness:
    R = tuple(sorted(next(iter(t.vertices)) for t in trees))
    pieces = tuple(c | set(R) for c in comps[:k])
    return JunctionWitness(3, R, pieces, tuple({"component": sorted(c)} for c in comps[:k]))


def _attach(g: Graph, tree: Graph, comp: frozenset[int]) -> int:
    return min(v for v in tree.vertices if g.neighbors(v) & comp)


def _extract(g: Graph, trees: list[Graph], comps: list[frozenset[int]], k: int) -> JunctionWitness:
    multi = [s for s, tr in enumerate(trees) if tr.n > 1]
    t = len(multi)
    if t == 0:
        return _junction_from_singletons(trees, comps, k)
    f_prev = f_tree(k, t - 1)
    marks = {s: [_attach(g, trees[s], c) for c in comps] for s in multi}
    # a vertex carrying f(k,t-1) attachments collapses its tree
    for s in multi:
        counts: dict[int, list[int]] = {}
        for i, v in enumerate(marks[s]):
            counts.setdefault(v, []).append(i)
        for v, idx in sorted(counts.items()):
            if len(idx) >= f_prev:
                new_trees = list(trees)
                new_trees[s] = Graph([v])
                return _extract(g, new_trees, [comps[i] for i in idx], k)
    # indices whose attachment vertices are distinct in every tree
    used = {s: set() for s in multi}
    I = []
    for i in range(len(comps)):
        if all(marks[s][i] not in used[s] for s in multi):
            I.append(i)
            for s in multi:
                used[s].add(marks[s][i])
    pruned = {s: _minimal_subtree(trees[s], [marks[s][i] for i in I]) for s in multi}
    # a vertex of degree at least f(k,t-1) collapses its tree, extending
    # each chosen component along its branch of the tree
    for s in multi:
        tr = pruned[s]
        for v in sorted(tr.vertices):
            if tr.degree(v) < f_prev:
                continue
            rest = tr.remove_vertices([v])
            picked: list[int] = []
            ext: list[frozenset[int]] = []
            for comp in rest.components():
                i = next(i for i in I if marks[s][i] in comp)
                branch = _minimal_subtree(tr.subgraph(comp), [marks[s][i]] + [w for w in comp if tr.has_edge(v, w)])
                picked.append(i)
                ext.append(comps[i] | branch.vertices)
                if len(picked) == f_prev:
                    break
            new_trees = list(trees)
            new_trees[s] = Graph([v])
            return _extract(g, new_trees, ext, k)
    d = max(f_prev, 2)
    forest = MarkedForest(tuple(pruned[s] for s in multi), tuple(tuple(marks[s][i] for i in I) for s in multi), d)
    need = tree_threshold(d, t, k)
    if forest.n < need:
        raise InvariantViolation(
            f"only {forest.n} indices with distinct attachments, tree lemma needs {need}"
        )
    dt = disjoint_triples(forest, k)
    singles = [next(iter(trees[s].vertices)) for s in range(len(trees)) if s not in multi]
    R = tuple(sorted(singles))
    pieces = []
    for j, trip in enumerate(dt.triples):
        verts = set(R)
        for pos in range(t):
            verts |= dt.subtrees[pos][j]
        for x in trip:
            verts |= comps[I[x]]
        pieces.append(frozenset(verts))
    ev = tuple({"triple": [I[x] for x in trip]} for trip in dt.triples)
    return JunctionWitness(len(R), R, tuple(pieces), ev)
