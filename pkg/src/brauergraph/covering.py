"""Coverings of graded graphs and the covering/move commutativity check.

An ordinary graph with an admissible Z/mZ-grading unfolds to a graph of
multiplicity one on m sheets; a skew graph with a 0-homogeneous Z/2Z-grading
unfolds to an ordinary graph on two sheets, with skew legs joining up across
the sheets.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .core import (
    BrauerGraph,
    GradedGraph,
    Grading,
    grading_violations,
    zero_grading,
)
from .moves import maximal_sectors, move_set, move_set_underlying
from .permutations import Permutation


@dataclass(frozen=True)
class CoveredGraph:
    base: GradedGraph
    total: BrauerGraph
    sheet_of: Mapping[str, tuple[str, int]]
    group_order: int

    def lift(self, h: str, sheet: int) -> str:
        return sheet_label(h, sheet % self.group_order)


def sheet_label(h: str, sheet: int) -> str:
    return f"{h}_{sheet}"


def cover(g: GradedGraph) -> CoveredGraph:
    """The covering graph on ``modulus`` sheets."""
    graph, grading = g.graph, g.grading
    problems = grading_violations(graph, grading)
    if problems:
        raise ValueError("invalid grading: " + "; ".join(problems))
    n = grading.modulus
    cross = graph.cross_half_edges
    sheet_of: dict[str, tuple[str, int]] = {}
    for h in graph.half_edges:
        for i in range(n):
            sheet_of[sheet_label(h, i)] = (h, i)
    if len(sheet_of) != len(graph.half_edges) * n:
        raise ValueError("half-edge names collide under sheet labelling")
    pairing = {}
    orientation = {}
    multiplicity = {}
    for label, (h, i) in sheet_of.items():
        if h in cross:
            pairing[label] = sheet_label(h, (i + 1) % n)
        else:
            pairing[label] = sheet_label(graph.pairing(h), i)
        orientation[label] = sheet_label(
            graph.orientation(h), (i + grading(h)) % n
        )
        multiplicity[label] = graph.multiplicity[h] if graph.is_skew else 1
    total = BrauerGraph(
        frozenset(sheet_of),
        Permutation(pairing),
        Permutation(orientation),
        multiplicity,
    )
    return CoveredGraph(base=g, total=total, sheet_of=sheet_of, group_order=n)


def lift_subset(c: CoveredGraph, subset: frozenset[str]) -> frozenset[str]:
    """Full preimage of a pairing-stable subset under the projection."""
    stray = frozenset(subset) - c.base.graph.half_edges
    if stray:
        raise ValueError(f"subset contains unknown half-edges: {sorted(stray)}")
    return frozenset(
        sheet_label(h, i) for h in subset for i in range(c.group_order)
    )


def default_grading(graph: BrauerGraph, subset: frozenset[str] = frozenset()) -> Grading:
    """The grading recipe used to set up coverings for a planned move of ``subset``.

    Skew graphs get the zero grading.  On an ordinary graph each circ vertex
    concentrates its required degree sum on one half-edge: for a vertex
    meeting both the subset and its complement, the predecessor of its
    smallest maximal sector; otherwise the smallest half-edge at the vertex.
    """
    if graph.is_skew:
        return zero_grading(graph)
    m_bar = graph.m_bar
    degrees = {h: 0 for h in graph.half_edges}
    sector_by_orbit: dict[str, list] = {}
    if subset:
        for s in maximal_sectors(graph, frozenset(subset)):
            key = min(graph.sigma_orbit_of(s.h))
            sector_by_orbit.setdefault(key, []).append(s)
    inv = graph.orientation.inverse()
    for orbit in graph.sigma_orbits:
        orbit_set = set(orbit)
        meets_subset = bool(orbit_set & subset)
        meets_complement = bool(orbit_set - subset)
        if meets_subset and meets_complement:
            candidates = sorted(sector_by_orbit[min(orbit)], key=lambda s: s.h)
            chosen = inv(candidates[0].h)
        else:
            chosen = min(orbit)
        degrees[chosen] = (m_bar // graph.multiplicity[chosen]) % m_bar
    return Grading(m_bar, degrees)


def move_with_default_grading(
    graph: BrauerGraph, subset: frozenset[str]
) -> GradedGraph:
    """Convenience move for callers without a grading in hand."""
    return move_set(GradedGraph(graph, default_grading(graph, subset)), subset)


def check_cover_commutes(g: GradedGraph, subset: frozenset[str]) -> bool:
    """Does covering the moved graph equal moving the covered graph?

    Both sides are compared as labelled combinatorial maps under the
    identification that keeps every sheet label fixed.
    """
    subset = frozenset(subset)
    covered = cover(g)
    moved_then_covered = cover(move_set(g, subset)).total
    covered_then_moved = move_set_underlying(
        covered.total, lift_subset(covered, subset)
    )
    return moved_then_covered == covered_then_moved
