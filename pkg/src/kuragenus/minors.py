"""Exhaustive minor containment for small hosts.

Branch sets are found by partitioning a union of host components into exactly
as many connected blocks as the pattern has vertices. Restricting to full
partitions loses nothing: a vertex left out of every branch set but inside a
used component can always be absorbed into a neighbouring block.
"""

from __future__ import annotations

import itertools
from typing import Iterator

import networkx as nx
from networkx.algorithms import isomorphism

from .errors import BudgetExceeded
from .graph import Graph, MinorModel, model_from_branch_sets

DEFAULT_SIZE_CAP = 14


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _connected_sets(root: int, allowed: int, nbr: list[int]) -> Iterator[int]:
    """Every connected vertex set inside ``allowed`` that contains ``root``, once each."""

    def grow(s: int, ext: int, forb: int) -> Iterator[int]:
        yield s
        while ext:
            low = ext & -ext
            ext ^= low
            forb |= low
            w = low.bit_length() - 1
            yield from grow(s | low, ext | (nbr[w] & allowed & ~forb), forb)

    start = 1 << root
    yield from grow(start, nbr[root] & allowed & ~start, start)


def _component_count(mask: int, nbr: list[int]) -> int:
    count = 0
    while mask:
        seed = mask & -mask
        comp = seed
        frontier = seed
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            new = nbr[low.bit_length() - 1] & mask & ~comp
            comp |= new
            frontier |= new
        mask &= ~comp
        count += 1
    return count


def connected_partitions(host: Graph, vertices: frozenset[int], blocks: int) -> Iterator[list[frozenset[int]]]:
    """Partitions of ``vertices`` into exactly ``blocks`` sets, each inducing a connected subgraph."""
    order = sorted(host.vertices)
    idx = {v: i for i, v in enumerate(order)}
    nbr = [0] * len(order)
    for v in order:
        for w in host.neighbors(v):
            nbr[idx[v]] |= 1 << idx[w]
    full = 0
    for v in vertices:
        full |= 1 << idx[v]

    def rec(rest: int, left: int, acc: list[int]) -> Iterator[list[int]]:
        if left == 0:
            if rest == 0:
                yield acc
            return
        if rest == 0 or bin(rest).count("1") < left:
            return
        root = (rest & -rest).bit_length() - 1
        for s in _connected_sets(root, rest, nbr):
            remain = rest & ~s
            if left == 1:
                if remain:
                    continue
            elif not remain or _component_count(remain, nbr) > left - 1:
                continue
            yield from rec(remain, left - 1, acc + [s])

    for parts in rec(full, blocks, []):
        yield [frozenset(order[i] for i in _bits(p)) for p in parts]


def _quotient(host: Graph, parts: list[frozenset[int]]) -> nx.Graph:
    owner = {v: i for i, p in enumerate(parts) for v in p}
    q = nx.Graph()
    q.add_nodes_from(range(len(parts)))
    for u, v in host.edges:
        a, b = owner.get(u), owner.get(v)
        if a is not None and b is not None and a != b:
            q.add_edge(a, b)
    return q


def _degree_dominates(big: list[int], small: list[int]) -> bool:
    return all(x >= y for x, y in zip(sorted(big, reverse=True), sorted(small, reverse=True)))


def has_minor(host: Graph, pattern: Graph, size_cap: int = DEFAULT_SIZE_CAP) -> MinorModel | None:
    """A certified minor model of ``pattern`` in ``host``, or None if there is none.

    Deterministic: the first model in the enumeration order is returned.
    """
    if host.n > size_cap:
        raise BudgetExceeded(f"host has {host.n} vertices, cap is {size_cap}")
    p = pattern.n
    if p == 0:
        return MinorModel(pattern, {}, {})
    if host.n < p or host.m < pattern.m:
        return None
    from .planarity import is_planar

    if is_planar(host).planar and not is_planar(pattern).planar:
        return None
    pnx = pattern.to_networkx()
    pdeg = [pattern.degree(v) for v in pattern.vertices]
    # fast path: pattern is already a subgraph
    gm = isomorphism.GraphMatcher(host.to_networkx(), pnx)
    for mapping in gm.subgraph_monomorphisms_iter():
        inv = {pv: {hv} for hv, pv in mapping.items()}
        return model_from_branch_sets(host, pattern, inv)
    comps = host.components()
    for r in range(1, len(comps) + 1):
        for chosen in itertools.combinations(comps, r):
            verts = frozenset().union(*chosen)
            if len(verts) < p:
                continue
            for parts in connected_partitions(host, verts, p):
                q = _quotient(host, parts)
                if q.number_of_edges() < pattern.m:
                    continue
                if not _degree_dominates([d for _, d in q.degree()], pdeg):
                    continue
                qm = isomorphism.GraphMatcher(q, pnx)
                for mapping in qm.subgraph_monomorphisms_iter():
                    bs = {pv: parts[qv] for qv, pv in mapping.items()}
                    return model_from_branch_sets(host, pattern, bs)
    return None
