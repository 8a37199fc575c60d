"""Quivers with relations for (skew) Brauer graph algebras.

Quiver vertices are edges of the graph, with the edges at cross vertices
doubled into two copies.  Paths are stored in application order (first arrow
traversed first) and rendered right to left, matching the composition
convention used throughout the package.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import BrauerGraph
from .covering import CoveredGraph

QVertex = tuple[str, int | None]


def edge_name(graph: BrauerGraph, h: str) -> str:
    """Canonical edge label: common stem of a +/- pair, else the smaller name."""
    other = graph.pairing(h)
    if other == h:
        return h
    if h[:-1] == other[:-1] and {h[-1], other[-1]} == {"+", "-"}:
        return h[:-1]
    return min(h, other)


def vertex_indices(graph: BrauerGraph, h: str) -> tuple[int | None, ...]:
    """Quiver-vertex copies of the edge through ``h``: doubled iff h is a skew leg."""
    return (0, 1) if h in graph.cross_half_edges else (None,)


def induces_arrow(graph: BrauerGraph, h: str) -> bool:
    return graph.orientation(h) != h or graph.multiplicity[h] > 1


@dataclass(frozen=True, order=True)
class Arrow:
    h: str
    source: QVertex
    target: QVertex


Path = tuple[Arrow, ...]


@dataclass(frozen=True)
class Relation:
    terms: tuple[tuple[Fraction, Path], ...]


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[QVertex, ...]
    arrows: tuple[Arrow, ...]

    def arrow(self, h: str, i: int | None, j: int | None) -> Arrow:
        for a in self.arrows:
            if a.h == h and a.source[1] == i and a.target[1] == j:
                return a
        raise KeyError(f"no arrow for half-edge {h!r} with indices ({i}, {j})")


@dataclass(frozen=True)
class Presentation:
    quiver: Quiver
    relations: tuple[Relation, ...]
    symbol: str = "a"


def _arrow(graph: BrauerGraph, h: str, i: int | None, j: int | None) -> Arrow:
    source = (edge_name(graph, h), i)
    target = (edge_name(graph, graph.orientation(h)), j)
    return Arrow(h, source, target)


def quiver(graph: BrauerGraph) -> Quiver:
    vertices: list[QVertex] = []
    for edge in graph.edges:
        name = edge_name(graph, edge[0])
        for i in vertex_indices(graph, edge[0]):
            vertices.append((name, i))
    vertices.sort(key=lambda v: (v[0], -1 if v[1] is None else v[1]))
    arrows: list[Arrow] = []
    for h in sorted(graph.half_edges):
        if not induces_arrow(graph, h):
            continue
        for i in vertex_indices(graph, h):
            for j in vertex_indices(graph, graph.orientation(h)):
                arrows.append(_arrow(graph, h, i, j))
    return Quiver(tuple(vertices), tuple(arrows))


def _walk_paths(
    graph: BrauerGraph,
    h: str,
    start_index: int | None,
    n_arrows: int,
    final_index: int | None,
) -> list[Path]:
    """All index-resolved walks of ``n_arrows`` arrows along the sigma-orbit of h.

    Intermediate indices range over the copies of each visited vertex; the
    start and final indices are pinned.  Walk step k uses the arrow induced
    by sigma^k h.
    """
    orbit = graph.sigma_orbit_of(h)
    steps = [orbit[k % len(orbit)] for k in range(n_arrows)]
    choice_sets = []
    for k in range(1, n_arrows):
        choice_sets.append(vertex_indices(graph, orbit[k % len(orbit)]))
    paths: list[Path] = []
    for choices in itertools.product(*choice_sets):
        indices = (start_index,) + choices + (final_index,)
        paths.append(
            tuple(
                _arrow(graph, steps[k], indices[k], indices[k + 1])
                for k in range(n_arrows)
            )
        )
    return paths


def special_cycles(
    graph: BrauerGraph, h: str, index: int | None = None
) -> list[Path]:
    """The special cycles at a quiver vertex of the edge through ``h``."""
    if not induces_arrow(graph, h):
        raise ValueError(f"half-edge {h!r} induces no arrow")
    if h in graph.cross_half_edges:
        if index not in (0, 1):
            raise ValueError("a copy index 0 or 1 is required at a skew leg")
    elif index is not None:
        raise ValueError(f"half-edge {h!r} has no copy index")
    n = len(graph.sigma_orbit_of(h))
    return _walk_paths(graph, h, index, n, index)


def n_cross(graph: BrauerGraph, h: str) -> int:
    """Number of skew legs on the sigma-orbit of ``h``."""
    return sum(1 for x in graph.sigma_orbit_of(h) if x in graph.cross_half_edges)


def _repeat_cycle(route: Path, times: int) -> Path:
    return route * times


def relations(graph: BrauerGraph) -> list[Relation]:
    """The generating relations of the (skew) Brauer graph algebra."""
    sigma = graph.orientation
    cross = graph.cross_half_edges
    out: list[Relation] = []

    # (I) equality of weighted cycle powers across each non-degenerate edge.
    for edge in graph.edges:
        if len(edge) != 2:
            continue
        h, other = min(edge), max(edge)
        if not (induces_arrow(graph, h) and induces_arrow(graph, other)):
            continue
        c_h = Fraction(2 ** n_cross(graph, h)) ** graph.multiplicity[h]
        c_o = Fraction(2 ** n_cross(graph, other)) ** graph.multiplicity[other]
        for route_h in special_cycles(graph, h):
            for route_o in special_cycles(graph, other):
                out.append(
                    Relation(
                        (
                            (c_h, _repeat_cycle(route_h, graph.multiplicity[h])),
                            (-c_o, _repeat_cycle(route_o, graph.multiplicity[other])),
                        )
                    )
                )

    # (II) a cycle power followed by its own first arrow.
    for h in sorted(graph.half_edges):
        if not induces_arrow(graph, h):
            continue
        for i in vertex_indices(graph, h):
            for route in special_cycles(graph, h, i):
                path = _repeat_cycle(route, graph.multiplicity[h]) + (route[0],)
                out.append(Relation(((Fraction(1), path),)))

    # (III) crossing to the other side of the next edge.
    for h in sorted(graph.half_edges):
        if not induces_arrow(graph, h):
            continue
        nxt = sigma(h)
        if nxt in cross:
            continue
        partner = graph.pairing(nxt)
        if not induces_arrow(graph, partner):
            continue
        for i in vertex_indices(graph, h):
            for j in vertex_indices(graph, sigma(partner)):
                out.append(
                    Relation(
                        (
                            (
                                Fraction(1),
                                (
                                    _arrow(graph, h, i, None),
                                    _arrow(graph, partner, None, j),
                                ),
                            ),
                        )
                    )
                )

    # (IV) full cycle powers at a skew leg land on the other copy.
    for h in sorted(cross):
        if not induces_arrow(graph, h):
            continue
        for i in (0, 1):
            for route in special_cycles(graph, h, i):
                last = route[-1]
                shifted = route[:-1] + (
                    Arrow(last.h, last.source, (last.target[0], (i + 1) % 2)),
                )
                path = _repeat_cycle(route, graph.multiplicity[h] - 1) + shifted
                out.append(Relation(((Fraction(1), path),)))

    # (V) the two routes through a doubled vertex agree.
    for h in sorted(graph.half_edges):
        if sigma(h) == h or sigma(h) not in cross:
            continue
        for i in vertex_indices(graph, h):
            for j in vertex_indices(graph, sigma(sigma(h))):
                out.append(
                    Relation(
                        (
                            (
                                Fraction(1),
                                (
                                    _arrow(graph, h, i, 0),
                                    _arrow(graph, sigma(h), 0, j),
                                ),
                            ),
                            (
                                Fraction(-1),
                                (
                                    _arrow(graph, h, i, 1),
                                    _arrow(graph, sigma(h), 1, j),
                                ),
                            ),
                        )
                    )
                )
    return out


def presentation(graph: BrauerGraph) -> Presentation:
    return Presentation(quiver(graph), tuple(relations(graph)))


def relation_violations(p: Presentation) -> list[str]:
    """Well-formedness: all terms of a relation share source and target."""
    known = set(p.quiver.arrows)
    problems = []
    for k, rel in enumerate(p.relations):
        ends = set()
        for _, path in rel.terms:
            if not path:
                problems.append(f"relation {k} has an empty path")
                continue
            for a in path:
                if a not in known:
                    problems.append(f"relation {k} uses unknown arrow {a}")
            for a, b in zip(path, path[1:]):
                if a.target != b.source:
                    problems.append(f"relation {k} has a non-composable path")
            ends.add((path[0].source, path[-1].target))
        if len(ends) > 1:
            problems.append(f"relation {k} mixes sources or targets")
    return problems


def truncation_presentation(c: CoveredGraph) -> Presentation:
    """Quiver and relations of the sheet-group truncation of the covering algebra.

    Relations come from representatives of the group orbits of the covering
    relations; on skew bases the arrows appear summed over their copy
    indices, which expands to the free-index walks below.
    """
    base = c.base.graph
    q = quiver(base)
    if not base.is_skew:
        return Presentation(q, tuple(relations(base)), symbol="b")

    sigma = base.orientation
    cross = base.cross_half_edges
    rels: list[Relation] = []

    # (I') full cycle powers at a skew leg land on the other copy, all routes.
    for h in sorted(cross):
        for i in (0, 1):
            n = len(base.sigma_orbit_of(h))
            length = n * base.multiplicity[h]
            paths = _walk_paths(base, h, i, length, (i + 1) % 2)
            rels.append(Relation(tuple((Fraction(1), p) for p in paths)))

    # (II') equality of summed cycle powers across non-degenerate edges.
    for edge in base.edges:
        if len(edge) != 2:
            continue
        h, other = min(edge), max(edge)
        if not (induces_arrow(base, h) and induces_arrow(base, other)):
            continue
        terms: list[tuple[Fraction, Path]] = []
        for x, sign in ((h, Fraction(1)), (other, Fraction(-1))):
            n = len(base.sigma_orbit_of(x))
            length = n * base.multiplicity[x]
            for p in _walk_paths(base, x, None, length, None):
                terms.append((sign, p))
        rels.append(Relation(tuple(terms)))

    # (III') overruns of summed cycle powers vanish.
    for h in sorted(base.half_edges):
        if not induces_arrow(base, h):
            continue
        n = len(base.sigma_orbit_of(h))
        length = n * base.multiplicity[h] + 1
        for i in vertex_indices(base, h):
            for j in vertex_indices(base, sigma(h)):
                paths = _walk_paths(base, h, i, length, j)
                rels.append(Relation(tuple((Fraction(1), p) for p in paths)))

    # (IV') the two routes through a doubled vertex agree.
    for h in sorted(base.half_edges):
        if sigma(h) == h or sigma(h) not in cross:
            continue
        for i in vertex_indices(base, h):
            for j in vertex_indices(base, sigma(sigma(h))):
                rels.append(
                    Relation(
                        (
                            (
                                Fraction(1),
                                (_arrow(base, h, i, 0), _arrow(base, sigma(h), 0, j)),
                            ),
                            (
                                Fraction(-1),
                                (_arrow(base, h, i, 1), _arrow(base, sigma(h), 1, j)),
                            ),
                        )
                    )
                )

    # (V') crossing to the other side of the next edge.
    for h in sorted(base.half_edges):
        if not induces_arrow(base, h):
            continue
        nxt = sigma(h)
        if nxt in cross:
            continue
        partner = base.pairing(nxt)
        if not induces_arrow(base, partner):
            continue
        for i in vertex_indices(base, h):
            for j in vertex_indices(base, sigma(partner)):
                rels.append(
                    Relation(
                        (
                            (
                                Fraction(1),
                                (
                                    _arrow(base, h, i, None),
                                    _arrow(base, partner, None, j),
                                ),
                            ),
                        )
                    )
                )
    return Presentation(q, tuple(rels), symbol="b")


def admissible_cut(graph: BrauerGraph, delta: frozenset[str]) -> Presentation:
    """Presentation of the cut algebra: drop the arrows induced by ``delta``.

    ``delta`` must pick exactly one half-edge per sigma-orbit and the graph
    must have multiplicity one everywhere.
    """
    delta = frozenset(delta)
    stray = delta - graph.half_edges
    if stray:
        raise ValueError(f"cut contains unknown half-edges: {sorted(stray)}")
    if any(m != 1 for m in graph.multiplicity.values()):
        raise ValueError("admissible cuts require multiplicity one everywhere")
    for orbit in graph.sigma_orbits:
        hits = [h for h in orbit if h in delta]
        if len(hits) != 1:
            raise ValueError(
                "cut must contain exactly one half-edge per sigma-orbit; "
                f"orbit ({' '.join(orbit)}) has {len(hits)}"
            )
    q = quiver(graph)
    kept = tuple(a for a in q.arrows if a.h not in delta)
    cut_quiver = Quiver(q.vertices, kept)
    rels: list[Relation] = []
    for rel in relations(graph):
        terms = tuple(
            (c, path)
            for c, path in rel.terms
            if all(a.h not in delta for a in path)
        )
        if terms:
            rels.append(Relation(terms))
    return Presentation(cut_quiver, tuple(rels))


def gentle_violations(p: Presentation) -> list[str]:
    """Check the standard gentle conditions on a monomial quadratic presentation."""
    problems: list[str] = []
    forbidden: set[tuple[Arrow, Arrow]] = set()
    for rel in p.relations:
        if len(rel.terms) != 1:
            problems.append("relation is not monomial")
            continue
        _, path = rel.terms[0]
        if len(path) != 2:
            problems.append("relation is not quadratic")
            continue
        forbidden.add((path[0], path[1]))
    arrows = p.quiver.arrows
    for v in p.quiver.vertices:
        if sum(1 for a in arrows if a.source == v) > 2:
            problems.append(f"more than two arrows out of {v}")
        if sum(1 for a in arrows if a.target == v) > 2:
            problems.append(f"more than two arrows into {v}")
    for a in arrows:
        nexts = [b for b in arrows if b.source == a.target]
        killed = [b for b in nexts if (a, b) in forbidden]
        alive = [b for b in nexts if (a, b) not in forbidden]
        if len(killed) > 1 or len(alive) > 1:
            problems.append(f"gentle successor condition fails after {a}")
        prevs = [b for b in arrows if b.target == a.source]
        pkilled = [b for b in prevs if (b, a) in forbidden]
        palive = [b for b in prevs if (b, a) not in forbidden]
        if len(pkilled) > 1 or len(palive) > 1:
            problems.append(f"gentle predecessor condition fails before {a}")
    return problems


def render_vertex(v: QVertex) -> str:
    name, i = v
    return name if i is None else f"{name}_{i}"


def render_arrow(a: Arrow, symbol: str = "a") -> str:
    i, j = a.source[1], a.target[1]
    if i is None and j is None:
        return f"{symbol}[{a.h}]"
    left = "" if j is None else str(j)
    right = "" if i is None else str(i)
    return f"{left}{symbol}[{a.h}]{right}"


def render_path(path: Path, symbol: str = "a") -> str:
    return " ".join(render_arrow(a, symbol) for a in reversed(path))


def render_relation(rel: Relation, symbol: str = "a") -> str:
    parts: list[str] = []
    for coeff, path in rel.terms:
        body = render_path(path, symbol)
        if coeff == 1:
            chunk = body
        elif coeff == -1:
            chunk = f"- {body}"
        else:
            chunk = f"{coeff} {body}"
        if parts and not chunk.startswith("-"):
            parts.append("+ " + chunk)
        else:
            parts.append(chunk)
    return " ".join(parts)


def render_presentation(p: Presentation) -> str:
    lines = ["vertices: " + " ".join(render_vertex(v) for v in p.quiver.vertices)]
    for a in p.quiver.arrows:
        lines.append(
            f"arrow {render_arrow(a, p.symbol)} : "
            f"{render_vertex(a.source)} -> {render_vertex(a.target)}"
        )
    for rel in p.relations:
        lines.append("relation " + render_relation(rel, p.symbol))
    return "\n".join(lines) + "\n"


def to_dot(p: Presentation) -> str:
    lines = ["digraph quiver {"]
    for v in p.quiver.vertices:
        lines.append(f'  "{render_vertex(v)}";')
    for a in p.quiver.arrows:
        lines.append(
            f'  "{render_vertex(a.source)}" -> "{render_vertex(a.target)}"'
            f' [label="{render_arrow(a, p.symbol)}"];'
        )
    lines.append("  /* relations:")
    for rel in p.relations:
        lines.append("   * " + render_relation(rel, p.symbol))
    lines.append("   */")
    lines.append("}")
    return "\n".join(lines) + "\n"
