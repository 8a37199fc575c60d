from __future__ import annotations

import random

import pytest

from brauergraph.core import (
    BrauerGraph,
    Grading,
    connected_components,
    euler_characteristics,
    faces,
    gen_random,
    grading_violations,
    is_bipartite,
    oz_invariants,
    random_ih_stable_subset,
    validate,
    vertices,
    zero_grading,
)
from brauergraph.covering import default_grading
from brauergraph.moves import move_set
from brauergraph.core import GradedGraph
from brauergraph.permutations import Permutation

from conftest import build_graph


def test_ex1_is_valid(ex1):
    assert validate(ex1) == []
    assert not ex1.is_skew
    assert ex1.m_bar == 2


def test_multiplicity_not_constant_reported(ex1):
    m = dict(ex1.multiplicity)
    m["4-"] = 2  # same sigma-orbit as 1-, which stays at 1
    broken = BrauerGraph(ex1.half_edges, ex1.pairing, ex1.orientation, m)
    assert any("constant on sigma-orbit" in p for p in validate(broken))


def test_excluded_single_edge_component():
    graph = build_graph(["1+", "1-"], [("1+", "1-")], [])
    assert any("excluded component" in p for p in validate(graph))
    # the same component with a multiplicity is a perfectly good graph
    graph2 = build_graph(["1+", "1-"], [("1+", "1-")], [], {"1+": 2})
    assert validate(graph2) == []


def test_excluded_single_skew_leg():
    graph = BrauerGraph(
        frozenset(["2"]),
        Permutation.identity(["2"]),
        Permutation.identity(["2"]),
        {"2": 1},
    )
    report = validate(graph)
    assert any("fixed by both" in p for p in report)


def test_vertices_ex1(ex1):
    circ, cross = vertices(ex1)
    data = {v.half_edges: v.multiplicity for v in circ}
    assert data == {
        ("1-", "4-", "3-", "2-"): 1,
        ("2+", "3+"): 2,
        ("1+",): 2,
        ("4+",): 1,
    }
    assert cross == []


def test_vertices_ex2(ex2):
    circ, cross = vertices(ex2)
    data = {v.half_edges: v.multiplicity for v in circ}
    assert data == {
        ("1-", "3", "2"): 2,
        ("1+", "4+", "5+"): 1,
        ("4-",): 3,
        ("5-",): 1,
    }
    assert cross == ["2", "3"]


def test_vertices_empty_graph():
    empty = BrauerGraph(frozenset(), Permutation({}), Permutation({}), {})
    assert validate(empty) == []
    assert vertices(empty) == ([], [])


def test_vertex_partition_counts(ex2):
    circ, cross = vertices(ex2)
    assert sum(len(v.half_edges) for v in circ) == len(ex2.half_edges)
    assert len(cross) == len(ex2.cross_half_edges)
    # vertex set of the graph: sigma-orbits plus the cross vertices
    assert len(circ) + len(cross) == 6


def test_faces_ex1(ex1):
    perimeters = sorted(len(f) for f in faces(ex1))
    assert perimeters == [2, 6]


def test_faces_single_loop():
    graph = build_graph(["a", "b"], [("a", "b")], [("a", "b")])
    assert validate(graph) == []
    assert sorted(len(f) for f in faces(graph)) == [1, 1]


def test_faces_after_move(ex1_graded, ex1_subset):
    moved = move_set(ex1_graded, ex1_subset)
    assert sorted(len(f) for f in faces(moved.graph)) == [2, 6]


def test_faces_reject_skew(ex2):
    with pytest.raises(ValueError):
        faces(ex2)


def test_oz_invariants_ex1(ex1):
    inv = oz_invariants(ex1)
    assert inv.edge_count == 4
    assert inv.circ_vertex_count == 4
    assert inv.cross_vertex_count == 0
    assert inv.face_count == 2
    assert inv.perimeter_multiset == (2, 6)
    assert inv.multiplicity_multiset == (1, 1, 2, 2)
    assert inv.bipartite is True


def test_oz_invariants_ex2(ex2):
    inv = oz_invariants(ex2)
    assert inv.edge_count == 5
    assert inv.circ_vertex_count == 4
    assert inv.cross_vertex_count == 2
    assert inv.multiplicity_multiset == (1, 1, 2, 3)
    assert inv.face_count is None and inv.perimeter_multiset is None


def test_oz_invariance_under_move(ex1, ex1_graded, ex1_subset):
    moved = move_set(ex1_graded, ex1_subset)
    assert oz_invariants(ex1) == oz_invariants(moved.graph)


def test_euler_characteristic_even(ex1):
    assert all(chi % 2 == 0 for chi in euler_characteristics(ex1))


def test_paper_grading_admissible(ex1, ex1_grading):
    assert grading_violations(ex1, ex1_grading) == []


def test_zero_grading_homogeneous_for_skew(ex2):
    assert grading_violations(ex2, zero_grading(ex2)) == []


def test_grading_modulus_mismatch(ex1):
    bad = Grading(3, {h: 0 for h in ex1.half_edges})
    assert any("modulus" in p for p in grading_violations(ex1, bad))


def test_gen_random_deterministic():
    a = gen_random(1, n_half=8, allow_skew=False)
    b = gen_random(1, n_half=8, allow_skew=False)
    assert a == b
    assert validate(a) == []
    assert not a.is_skew


def test_gen_random_flags():
    g = gen_random(2, n_half=9, allow_skew=True, max_multiplicity=3)
    assert validate(g) == []
    assert all(v <= 3 for v in g.multiplicity.values())


def test_gen_random_fuzz_valid():
    for seed in range(300):
        g = gen_random(seed, n_half=8, allow_skew=(seed % 2 == 1), max_multiplicity=3)
        assert validate(g) == [], seed


def test_bipartite_triangle_with_legs():
    # circ triangle: not bipartite, regardless of the skew legs
    graph = build_graph(
        ["1+", "1-", "2+", "2-", "3+", "3-"],
        [("1+", "1-"), ("2+", "2-"), ("3+", "3-")],
        [("1-", "2+"), ("2-", "3+"), ("3-", "1+")],
    )
    assert validate(graph) == []
    assert not is_bipartite(graph)


def test_connected_components(ex1):
    assert connected_components(ex1) == [frozenset(ex1.half_edges)]


def test_skew_moves_can_flip_bipartiteness():
    # Moving a sector across a skew leg can create an odd cycle; everything
    # else in the invariant tuple is preserved.
    g = gen_random(4, n_half=8, allow_skew=True, max_multiplicity=3)
    rng = random.Random(30_004)
    subset = random_ih_stable_subset(g, rng)
    moved = move_set(GradedGraph(g, default_grading(g, subset)), subset)
    before, after = oz_invariants(g), oz_invariants(moved.graph)
    assert before.bipartite and not after.bipartite
    assert (before.edge_count, before.circ_vertex_count, before.cross_vertex_count) == (
        after.edge_count,
        after.circ_vertex_count,
        after.cross_vertex_count,
    )
    assert before.multiplicity_multiset == after.multiplicity_multiset
