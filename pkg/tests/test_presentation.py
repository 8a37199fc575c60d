from __future__ import annotations

from fractions import Fraction

import pytest

from brauergraph.core import BrauerGraph, GradedGraph, gen_random, zero_grading
from brauergraph.covering import cover
from brauergraph.permutations import Permutation
from brauergraph.presentation import (
    admissible_cut,
    gentle_violations,
    induces_arrow,
    n_cross,
    presentation,
    quiver,
    relation_violations,
    relations,
    render_path,
    render_relation,
    special_cycles,
    to_dot,
    truncation_presentation,
)

from conftest import build_graph


def rendered_relations(graph):
    return {render_relation(rel) for rel in relations(graph)}


def test_quiver_ex1(ex1):
    q = quiver(ex1)
    assert len(q.vertices) == 4
    assert len(q.arrows) == 7
    loop = q.arrow("1+", None, None)
    assert loop.source == loop.target == ("1", None)
    with pytest.raises(KeyError):
        q.arrow("4+", None, None)


def test_quiver_ex2(ex2):
    q = quiver(ex2)
    names = {f"{v[0]}" if v[1] is None else f"{v[0]}_{v[1]}" for v in q.vertices}
    assert names == {"1", "4", "5", "2_0", "2_1", "3_0", "3_1"}
    threes = [a for a in q.arrows if a.h == "3"]
    assert len(threes) == 4
    assert not any(a.h == "5-" for a in q.arrows)


def test_quiver_loop_graph(loop_graph):
    q = quiver(loop_graph)
    assert len(q.vertices) == 1
    assert len(q.arrows) == 1
    assert q.arrows[0].h == "a"


def test_special_cycle_ex1(ex1):
    (cycle,) = special_cycles(ex1, "1-")
    assert render_path(cycle) == "a[2-] a[3-] a[4-] a[1-]"


def test_special_cycles_ex2(ex2):
    cycles = special_cycles(ex2, "1-")
    assert len(cycles) == 4
    assert n_cross(ex2, "1-") == 2
    with pytest.raises(ValueError):
        special_cycles(ex2, "2")  # index required at a skew leg
    assert len(special_cycles(ex2, "2", 0)) == 2


def test_special_cycles_require_arrow(ex1):
    with pytest.raises(ValueError):
        special_cycles(ex1, "4+")


def test_special_cycle_count_fuzz():
    for seed in range(100):
        g = gen_random(seed, n_half=8, allow_skew=True, max_multiplicity=2)
        for h in g.half_edges:
            if not induces_arrow(g, h):
                continue
            index = 0 if h in g.cross_half_edges else None
            expected = 2 ** sum(
                1
                for x in g.sigma_orbit_of(h)
                if x != h and x in g.cross_half_edges
            )
            assert len(special_cycles(g, h, index)) == expected


def test_relations_ex1(ex1):
    rendered = rendered_relations(ex1)
    assert "a[1+] a[1+] - a[2-] a[3-] a[4-] a[1-]" in rendered
    assert "a[1+] a[1+] a[1+]" in rendered
    assert "a[1+] a[2-]" in rendered
    assert "a[1-] a[1+]" in rendered
    assert len(relations(ex1)) == 16


def test_relations_ex2_coefficients(ex2):
    found = [
        rel
        for rel in relations(ex2)
        if len(rel.terms) == 2 and {abs(c) for c, _ in rel.terms} == {1, Fraction(16)}
    ]
    # one instance per route pair: 4 routes on the thick side, 1 opposite
    assert len(found) == 4
    for rel in found:
        thick = next(path for c, path in rel.terms if abs(c) == 16)
        thin = next(path for c, path in rel.terms if abs(c) == 1)
        assert len(thick) == 6  # the squared three-arrow cycle, same route twice
        assert thick[:3] == thick[3:]
        assert [a.h for a in thin] == ["1+", "4+", "5+"]


def test_relations_ex2_route_difference(ex2):
    rendered = rendered_relations(ex2)
    assert "0a[3]0 0a[1-] - 0a[3]1 1a[1-]" in rendered
    assert "1a[3]0 0a[1-] - 1a[3]1 1a[1-]" in rendered


def test_relations_empty_graph():
    empty = BrauerGraph(frozenset(), Permutation({}), Permutation({}), {})
    assert relations(empty) == []


def test_relation_well_formedness_fuzz():
    for seed in range(100):
        g = gen_random(seed, n_half=8, allow_skew=(seed % 2 == 0), max_multiplicity=2)
        assert relation_violations(presentation(g)) == [], seed


def test_arrow_count_formula_fuzz():
    for seed in range(100):
        g = gen_random(seed, n_half=8, allow_skew=False, max_multiplicity=3)
        q = quiver(g)
        expected = sum(1 for h in g.half_edges if g.orientation(h) != h) + sum(
            1
            for h in g.half_edges
            if g.orientation(h) == h and g.multiplicity[h] > 1
        )
        assert len(q.arrows) == expected


def test_truncation_presentation_ordinary(ex1, ex1_graded):
    covered = cover(ex1_graded)
    primed = truncation_presentation(covered)
    assert primed.symbol == "b"
    base = presentation(ex1)
    assert primed.quiver == base.quiver
    assert primed.relations == base.relations
    assert (
        render_relation(primed.relations[0], "b")
        == "b[1+] b[1+] - b[2-] b[3-] b[4-] b[1-]"
    )


def test_truncation_presentation_trivial_cover():
    graph = build_graph(
        ["1+", "1-", "2+", "2-"],
        [("1+", "1-"), ("2+", "2-")],
        [("1-", "2+"), ("1+", "2-")],
    )
    covered = cover(GradedGraph(graph, zero_grading(graph)))
    primed = truncation_presentation(covered)
    assert primed.relations == tuple(relations(graph))


def test_truncation_presentation_skew(ex2, ex2_graded):
    covered = cover(ex2_graded)
    primed = truncation_presentation(covered)
    # (IV') difference relations appear exactly for h with sigma h a skew leg
    diffs = [rel for rel in primed.relations if len(rel.terms) == 2
             and rel.terms[0][0] == 1 and rel.terms[1][0] == -1
             and len(rel.terms[0][1]) == 2]
    heads = {rel.terms[0][1][0].h for rel in diffs}
    assert heads == {"1-", "3"}
    # (V') monomial quadratics sit where sigma h is ordinary
    monos = [rel for rel in primed.relations if len(rel.terms) == 1
             and len(rel.terms[0][1]) == 2]
    assert {rel.terms[0][1][0].h for rel in monos} == {"1+", "2", "4-", "5+"}


def test_truncation_relations_vanish_in_model(ex2, ex2_graded):
    from brauergraph.models import truncation_model

    covered = cover(ex2_graded)
    model = truncation_model(covered)
    primed = truncation_presentation(covered)
    for rel in primed.relations:
        assert model.evaluate_relation(rel) == {}


def test_admissible_cut_requires_transversal(ex2_multiplicity_one):
    with pytest.raises(ValueError):
        admissible_cut(ex2_multiplicity_one, frozenset(["1-"]))


def test_admissible_cut_requires_multiplicity_one(ex2):
    with pytest.raises(ValueError):
        admissible_cut(ex2, frozenset(["1-", "1+", "4-", "5-"]))


def test_admissible_cut_presentation(ex2_multiplicity_one):
    delta = frozenset(["1-", "1+", "4-", "5-"])
    p = admissible_cut(ex2_multiplicity_one, delta)
    assert all(a.h not in delta for a in p.quiver.arrows)
    # all cycle relations die with the cut; only short monomials and route
    # differences survive
    assert all(len(path) == 2 for _, path in
               (term for rel in p.relations for term in rel.terms))


def test_covering_cut_is_gentle(ex2_multiplicity_one):
    covered = cover(GradedGraph(ex2_multiplicity_one, zero_grading(ex2_multiplicity_one)))
    delta_d = frozenset(
        f"{h}_{i}" for h in ["1-", "1+", "4-", "5-"] for i in (0, 1)
    )
    cut = admissible_cut(covered.total, delta_d)
    assert gentle_violations(cut) == []


def test_cut_ex1_multiplicity_one(ex1):
    flat = BrauerGraph(
        ex1.half_edges, ex1.pairing, ex1.orientation, {h: 1 for h in ex1.half_edges}
    )
    delta = frozenset(["1-", "2+", "1+", "4+"])
    p = admissible_cut(flat, delta)
    # the cut drops the loop (1+ has no arrow at multiplicity one) and per
    # vertex at most two arrows remain in and out
    assert gentle_violations(p) == []


def test_dot_output(ex1):
    dot = to_dot(presentation(ex1))
    assert dot.startswith("digraph")
    assert '"1" -> "4"' in dot
    assert "relations:" in dot
