import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kuragenus.errors import BudgetExceeded, InvariantViolation
from kuragenus.genus import RotationSystem, genus_of_rotation, min_genus, trace_faces
from kuragenus.graph import Graph, RootedGraph
from kuragenus.planarity import (
    cofacial_embeddable,
    face_cover,
    is_flat,
    is_planar,
    kuratowski_kind,
    planar_embedding,
    planar_faces,
)


def all_rotations(g: Graph):
    order = g.sorted_vertices()
    per = []
    for v in order:
        nb = sorted(g.neighbors(v))
        if len(nb) <= 2:
            per.append([tuple(nb)])
        else:
            per.append([(nb[0],) + p for p in itertools.permutations(nb[1:])])
    for combo in itertools.product(*per):
        yield RotationSystem(dict(zip(order, combo)))


def drawn_with_roots_on_a_face(g: Graph, roots) -> bool:
    """Brute force: some planar rotation has a face through every root."""
    if g.m == 0:
        return True
    for rot in all_rotations(g):
        if genus_of_rotation(g, rot).genus != 0:
            continue
        faces = [set(f) for f in planar_faces(g, rot)]
        if any(set(roots) <= f for f in faces):
            return True
    return False


# ---------------------------------------------------------------- genus


def test_k4_planar_rotation_has_four_faces():
    rot = planar_embedding(Graph.complete(4))
    assert len(trace_faces(Graph.complete(4), rot)) == 4


def test_k5_face_counts_by_enumeration():
    k5 = Graph.complete(5)
    counts = {len(trace_faces(k5, rot)) for rot in all_rotations(k5)}
    assert all(f % 2 == 1 for f in counts)
    assert max(counts) == 5
    best = next(r for r in all_rotations(k5) if len(trace_faces(k5, r)) == 5)
    assert genus_of_rotation(k5, best).genus == 1


def test_single_edge_one_face_of_length_two():
    g = Graph([0, 1], [(0, 1)])
    faces = trace_faces(g, RotationSystem({0: (1,), 1: (0,)}))
    assert len(faces) == 1 and len(faces[0]) == 2


@pytest.mark.parametrize(
    "g, genus",
    [
        (Graph.complete(5), 1),
        (Graph.complete_bipartite(3, 3), 1),
        (Graph.complete(5).disjoint_union(Graph.complete_bipartite(3, 3)), 2),
        (Graph.complete(6), 1),
        (Graph.complete(7), 1),
        (Graph.complete(8), 2),
        (Graph.petersen(), 1),
        (Graph.cycle(6), 0),
        (Graph.complete_bipartite(4, 4), 1),
    ],
)
def test_min_genus_values(g, genus):
    rep = min_genus(g, cap=10**30)
    assert rep.genus == genus
    assert genus_of_rotation(g, rep.rotation).genus == genus


def test_min_genus_budget():
    with pytest.raises(BudgetExceeded):
        min_genus(Graph.complete(6), cap=100)


def test_block_additivity_over_cut_vertex():
    g = Graph.complete(5).union(Graph.complete(5).relabel({i: i + 4 for i in range(5)}))
    assert min_genus(g, cap=10**30).genus == 2


def test_bad_rotation_rejected():
    with pytest.raises(ValueError):
        genus_of_rotation(Graph.complete(3), RotationSystem({0: (1,), 1: (0, 2), 2: (0, 1)}))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_trees_and_cycles_have_genus_zero_under_any_rotation(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 9)
    tree = Graph(range(n), [(i, rng.randrange(i)) for i in range(1, n)])
    rot = RotationSystem({v: tuple(rng.sample(sorted(tree.neighbors(v)), tree.degree(v))) for v in tree.vertices})
    assert genus_of_rotation(tree, rot).genus == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_euler_genus_is_a_nonnegative_integer(seed):
    rng = random.Random(seed)
    g = Graph.complete(rng.randint(3, 6))
    rot = RotationSystem({v: tuple(rng.sample(sorted(g.neighbors(v)), g.degree(v))) for v in g.vertices})
    rep = genus_of_rotation(g, rot)
    assert rep.genus >= 0
    assert g.n - g.m + sum(rep.face_counts) == 2 - 2 * rep.genus


# ---------------------------------------------------------------- planarity


def test_planarity_certificates():
    assert is_planar(Graph.complete(4)).planar
    cert = is_planar(Graph.complete(5))
    assert not cert.planar and cert.witness == Graph.complete(5) and cert.kind == "K5"
    k33 = Graph.complete_bipartite(3, 3).remove_edges([(0, 3)]).add_edges([(0, 9), (9, 3)])
    cert = is_planar(k33)
    assert cert.kind == "K33"
    assert kuratowski_kind(cert.witness) == "K33"


def test_tampered_certificate_is_caught():
    cert = is_planar(Graph.complete(4))
    with pytest.raises(InvariantViolation):
        cert.verify(Graph.complete(5))


def test_flatness_examples():
    assert is_flat(RootedGraph(Graph.complete(4), (0, 1, 2)))
    k5e = Graph.complete(5).remove_edges([(0, 1)])
    assert not is_flat(RootedGraph(k5e, (0, 1)))
    assert is_flat(RootedGraph(Graph([0, 1], [(0, 1)]), (0, 1)))


def test_flatness_matches_drawings_on_tiny_graphs():
    rng = random.Random(7)
    checked = 0
    while checked < 60:
        n = rng.randint(3, 6)
        g = Graph(range(n), [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5])
        if not g.is_connected() or not is_planar(g).planar:
            continue
        roots = tuple(rng.sample(range(n), rng.randint(1, 3)))
        assert is_flat(RootedGraph(g, roots)) == drawn_with_roots_on_a_face(g, roots)
        checked += 1


def test_cofacial_examples():
    assert cofacial_embeddable(Graph.cycle(4), 0, 2)
    g = Graph.complete(4).add_edges([(0, 4), (1, 5)])
    assert cofacial_embeddable(g, 4, 5)
    # the octahedron is a triangulation, so opposite vertices never share a face
    octa = Graph.complete(6).remove_edges([(0, 1), (2, 3), (4, 5)])
    assert not cofacial_embeddable(octa, 0, 1)
    assert cofacial_embeddable(octa, 0, 2)


def test_face_cover_examples():
    c6 = Graph.cycle(6)
    assert len(face_cover(c6, planar_embedding(c6), c6.vertices)) == 1
    grid = Graph.grid(3, 3)
    assert len(face_cover(grid, planar_embedding(grid), grid.vertices)) == 2
    k4 = Graph.complete(4)
    assert len(face_cover(k4, planar_embedding(k4), [0, 1, 2])) == 1
