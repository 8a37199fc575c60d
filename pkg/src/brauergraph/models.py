"""Algebra models attached to graphs.

Ordinary graphs get their algebra table directly from the normal form
basis.  Skew graph algebras are modelled exclusively through the covering:
take the covering's algebra, form the skew group algebra for the sheet
shift, and compress by the sheet-zero idempotents.  The same route validates
the direct presentations.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    AlgebraTable,
    BasisKey,
    Element,
    GroupActionTable,
    ONE,
    bga_table_with_keys,
    skew_group_table,
    truncate,
)
from .core import BrauerGraph, GradedGraph, Grading, zero_grading
from .covering import CoveredGraph, cover, sheet_label
from .linalg import vec_add
from .presentation import (
    Arrow,
    Path,
    Presentation,
    QVertex,
    edge_name,
    induces_arrow,
    quiver,
    relations,
    render_relation,
    special_cycles,
    vertex_indices,
)


@dataclass
class GraphAlgebraModel:
    """A table together with the quiver dictionary needed to evaluate paths."""

    graph: BrauerGraph
    table: AlgebraTable
    vertex_position: dict[QVertex, int]
    arrow_element: dict[tuple[str, int | None, int | None], Element]
    twist: Element | None = None
    grading: Grading | None = None
    covered: CoveredGraph | None = None

    def full_arrow(self, h: str) -> Element:
        out: Element = {}
        for (hh, _, _), elem in self.arrow_element.items():
            if hh == h:
                out = vec_add(out, elem)
        return out

    def walk_element(self, h: str, length: int) -> Element:
        """Product of the full arrows along h, sigma h, ..., sigma^{length-1} h."""
        if length < 1:
            raise ValueError("walks have at least one arrow")
        acc = self.full_arrow(h)
        x = h
        for _ in range(length - 1):
            x = self.graph.orientation(x)
            acc = self.table.mul(self.full_arrow(x), acc)
        return acc

    def edge_positions(self, h: str) -> list[int]:
        name = edge_name(self.graph, h)
        return [
            self.vertex_position[(name, i)] for i in vertex_indices(self.graph, h)
        ]

    def evaluate_path(self, path: Path) -> Element:
        acc = self.arrow_element[(path[0].h, path[0].source[1], path[0].target[1])]
        for a in path[1:]:
            acc = self.table.mul(
                self.arrow_element[(a.h, a.source[1], a.target[1])], acc
            )
        return acc

    def evaluate_relation(self, rel) -> Element:
        out: Element = {}
        for coeff, path in rel.terms:
            out = vec_add(out, self.evaluate_path(path), coeff)
        return out


def ordinary_model(graph: BrauerGraph) -> GraphAlgebraModel:
    table, keys, index_of = bga_table_with_keys(graph)
    vertex_position = {
        (name, None): p for p, (name, _) in enumerate(table.idempotents)
    }
    arrow_element = {
        (h, None, None): {index_of[("w", h, 1)]: ONE}
        for h in graph.half_edges
        if induces_arrow(graph, h)
    }
    return GraphAlgebraModel(graph, table, vertex_position, arrow_element)


def sheet_shift_action(
    covered: CoveredGraph, keys: list[BasisKey], index_of: dict[BasisKey, int]
) -> GroupActionTable:
    """The sheet shift h_i -> h_{i+1} on the covering algebra's path basis."""
    total = covered.total
    n = covered.group_order

    def shift_half(label: str) -> str:
        h, i = covered.sheet_of[label]
        return sheet_label(h, (i + 1) % n)

    edge_rep: dict[str, str] = {}
    for edge in total.edges:
        edge_rep[edge_name(total, edge[0])] = edge[0]

    def shift_key(key: BasisKey) -> BasisKey:
        if key[0] == "w":
            return ("w", shift_half(key[1]), key[2])
        return (key[0], edge_name(total, shift_half(edge_rep[key[1]])))

    images = tuple(index_of[shift_key(k)] for k in keys)
    return GroupActionTable(n, tuple(ONE for _ in keys), images)


def truncation_idempotents(
    covered: CoveredGraph, bd_dim: int, index_of: dict[BasisKey, int]
) -> list[tuple[QVertex, Element]]:
    """The sheet-zero idempotents, split in two at each skew leg."""
    base = covered.base.graph
    total = covered.total
    out: list[tuple[QVertex, Element]] = []
    for v in quiver(base).vertices:
        name, copy = v
        edge = next(e for e in base.edges if edge_name(base, e[0]) == name)
        h0 = sheet_label(edge[0], 0)
        e_index = index_of[("e", edge_name(total, h0))]
        if copy is None:
            out.append((v, {e_index: ONE}))
        else:
            half = Fraction(1, 2)
            sign = half if copy == 0 else -half
            out.append((v, {e_index: half, bd_dim + e_index: sign}))
    return out


def truncation_model(covered: CoveredGraph) -> GraphAlgebraModel:
    """Model of the base algebra as the compressed skew group algebra of the cover."""
    base = covered.base.graph
    grading = covered.base.grading
    n = covered.group_order
    bd, keys, index_of = bga_table_with_keys(covered.total)
    action = sheet_shift_action(covered, keys, index_of)
    skew = skew_group_table(bd, action)
    chosen = truncation_idempotents(covered, bd.dim, index_of)
    trunc = truncate(skew, [(str(v), elem) for v, elem in chosen])
    vertex_position = {v: p for p, (v, _) in enumerate(chosen)}

    arrow_element: dict[tuple[str, int | None, int | None], Element] = {}
    f_vectors = [elem for _, elem in chosen]
    f_total: Element = {}
    for f in f_vectors:
        f_total = vec_add(f_total, f)

    def compress(x: Element) -> Element:
        return skew.mul(skew.mul(f_total, x), f_total)

    for h in sorted(base.half_edges):
        if not induces_arrow(base, h):
            continue
        sheet = (-grading(h)) % n
        w_index = index_of[("w", sheet_label(h, sheet), 1)]
        raw = {sheet * bd.dim + w_index: ONE}
        for i in vertex_indices(base, h):
            fi = f_vectors[vertex_position[(edge_name(base, h), i)]]
            for j in vertex_indices(base, base.orientation(h)):
                fj = f_vectors[
                    vertex_position[(edge_name(base, base.orientation(h)), j)]
                ]
                corner = skew.mul(skew.mul(fj, raw), fi)
                if corner:
                    arrow_element[(h, i, j)] = trunc.express(corner)

    twist: Element | None = None
    if base.is_skew:
        one_g = {
            1 * bd.dim + index: ONE for _, index in bd.idempotents
        }
        twist = trunc.express(compress(one_g))

    model = GraphAlgebraModel(
        graph=base,
        table=trunc.table,
        vertex_position=vertex_position,
        arrow_element=arrow_element,
        twist=twist,
        grading=grading,
        covered=covered,
    )
    return model


def skew_model(graph: BrauerGraph, grading: Grading | None = None) -> GraphAlgebraModel:
    if grading is None:
        grading = zero_grading(graph)
    return truncation_model(cover(GradedGraph(graph, grading)))


def model_for(graph: BrauerGraph, grading: Grading | None = None) -> GraphAlgebraModel:
    if graph.is_skew:
        return skew_model(graph, grading)
    return ordinary_model(graph)


def edge_cartan(model: GraphAlgebraModel) -> tuple[list[str], list[list[int]]]:
    """Cartan matrix aggregated to edges (summing over doubled vertices)."""
    vertex_cartan = model.table.cartan()
    edges = sorted(edge_name(model.graph, e[0]) for e in model.graph.edges)
    index = {name: k for k, name in enumerate(edges)}
    out = [[0] * len(edges) for _ in edges]
    positions = list(model.vertex_position.items())
    for (name_i, _), pi in positions:
        for (name_j, _), pj in positions:
            out[index[name_i]][index[name_j]] += vertex_cartan[pi][pj]
    return edges, out


def skew_dimension_oracle(covered: CoveredGraph) -> int:
    """Corner-count formula for the dimension of the compressed algebra.

    Sums, over ordered pairs of base edges, the dimensions of the covering
    algebra corners from the sheet-zero idempotent to the sheet-zero and
    sheet-one idempotents.
    """
    base = covered.base.graph
    total = covered.total
    bd, _, _ = bga_table_with_keys(total)
    cartan = bd.cartan()
    position = {name: p for p, (name, _) in enumerate(bd.idempotents)}

    def cover_edge_position(h: str, sheet: int) -> int:
        return position[edge_name(total, sheet_label(h, sheet))]

    dims = 0
    for e1 in base.edges:
        for e2 in base.edges:
            row = cover_edge_position(e1[0], 0)
            dims += cartan[row][cover_edge_position(e2[0], 0)]
            dims += cartan[row][cover_edge_position(e2[0], 1 % covered.group_order)]
    return dims


@dataclass
class MatchReport:
    ok: bool
    problems: list[str]
    model_dim: int
    expected_dim: int


def presentations_match(graph: BrauerGraph, covered: CoveredGraph) -> MatchReport:
    """Verify the direct presentation against the compressed covering model.

    Checks that quiver vertices and arrows correspond, that every generating
    relation evaluates to zero in the model, that all special cycles at a
    vertex agree there, and that the dimensions match the independent count.
    """
    problems: list[str] = []
    try:
        model = truncation_model(covered)
    except (ValueError, KeyError) as exc:
        return MatchReport(False, [f"model construction failed: {exc}"], -1, -1)
    q = quiver(graph)
    if set(q.vertices) != set(model.vertex_position):
        problems.append("quiver vertices do not match the model idempotents")
    expected_arrows = {
        (a.h, a.source[1], a.target[1]) for a in q.arrows
    }
    if expected_arrows != set(model.arrow_element):
        problems.append("quiver arrows do not match the model arrows")
    else:
        for key, elem in model.arrow_element.items():
            if not elem:
                problems.append(f"arrow {key} maps to zero in the model")
    for rel in relations(graph):
        try:
            value = model.evaluate_relation(rel)
        except KeyError:
            problems.append(f"relation uses a missing arrow: {render_relation(rel)}")
            continue
        if value:
            problems.append(f"relation does not vanish: {render_relation(rel)}")
    for h in sorted(graph.half_edges):
        if not induces_arrow(graph, h):
            continue
        for i in vertex_indices(graph, h):
            values = [
                tuple(sorted(model.evaluate_path(route).items()))
                for route in special_cycles(graph, h, i)
            ]
            if len(set(values)) > 1:
                problems.append(f"special cycles at ({h}, {i}) differ in the model")
    if graph.is_skew:
        expected_dim = skew_dimension_oracle(covered)
    else:
        expected_dim = bga_table_with_keys(graph)[0].dim
    if model.table.dim != expected_dim:
        problems.append(
            f"model dimension {model.table.dim} differs from expected {expected_dim}"
        )
    return MatchReport(not problems, problems, model.table.dim, expected_dim)


# ---------------------------------------------------------------------------
# Monomial quotients and admissible cut models
# ---------------------------------------------------------------------------


def monomial_table(
    p: Presentation, cap: int = 20_000
) -> tuple[AlgebraTable, list[Path], dict[Path, int]]:
    """Table of a quotient by monomial relations.

    The basis is the vertex idempotents followed by every path avoiding the
    forbidden subwords; products are concatenation or zero, so the table is
    exact by construction.
    """
    forbidden: list[Path] = []
    for rel in p.relations:
        if len(rel.terms) != 1:
            raise ValueError("monomial tables need single-term relations")
        forbidden.append(rel.terms[0][1])

    def clean(path: Path) -> bool:
        for pat in forbidden:
            k = len(pat)
            for s in range(len(path) - k + 1):
                if path[s : s + k] == pat:
                    return False
        return True

    by_source: dict[QVertex, list[Arrow]] = {}
    for a in p.quiver.arrows:
        by_source.setdefault(a.source, []).append(a)

    vertices = list(p.quiver.vertices)
    vertex_pos = {v: k for k, v in enumerate(vertices)}
    paths: list[Path] = []
    frontier: list[Path] = [(a,) for a in sorted(p.quiver.arrows) if clean((a,))]
    while frontier:
        paths.extend(frontier)
        if len(paths) > cap:
            raise RuntimeError("path enumeration exceeded the cap; not finite?")
        new: list[Path] = []
        for path in frontier:
            for a in sorted(by_source.get(path[-1].target, [])):
                ext = path + (a,)
                if clean(ext):
                    new.append(ext)
        frontier = new

    from .presentation import render_vertex

    labels = ["e[" + render_vertex(v) + "]" for v in vertices]
    src = [k for k in range(len(vertices))]
    tgt = [k for k in range(len(vertices))]
    index_of: dict[Path, int] = {}
    for path in paths:
        index_of[path] = len(labels)
        labels.append("p[" + " ".join(a.h for a in path) + "]")
        src.append(vertex_pos[path[0].source])
        tgt.append(vertex_pos[path[-1].target])
    n_vertices = len(vertices)

    def product(i: int, j: int) -> Element:
        if i < n_vertices:
            return {j: ONE}
        if j < n_vertices:
            return {i: ONE}
        combined = paths[j - n_vertices] + paths[i - n_vertices]
        if clean(combined):
            return {index_of[combined]: ONE}
        return {}

    idempotents = tuple((render_vertex(v), k) for k, v in enumerate(vertices))
    table = AlgebraTable(labels, src, tgt, idempotents, product)
    return table, paths, index_of


def cut_cover_table(
    covered: CoveredGraph, delta: frozenset[str]
) -> tuple[AlgebraTable, GroupActionTable, Presentation]:
    """Gentle cut of the covering algebra, with the sheet-shift action."""
    from .presentation import admissible_cut

    total = covered.total
    n = covered.group_order
    delta_d = frozenset(
        sheet_label(h, i) for h in delta for i in range(n)
    )
    cut_presentation = admissible_cut(total, delta_d)
    table, paths, index_of = monomial_table(cut_presentation)

    def shift_half(label: str) -> str:
        h, i = covered.sheet_of[label]
        return sheet_label(h, (i + 1) % n)

    def shift_vertex(v: QVertex) -> QVertex:
        name, copy = v
        edge = next(e for e in total.edges if edge_name(total, e[0]) == name)
        return (edge_name(total, shift_half(edge[0])), copy)

    def shift_arrow(a: Arrow) -> Arrow:
        return Arrow(shift_half(a.h), shift_vertex(a.source), shift_vertex(a.target))

    n_vertices = len(cut_presentation.quiver.vertices)
    vertex_pos = {v: k for k, v in enumerate(cut_presentation.quiver.vertices)}
    images = []
    for k, v in enumerate(cut_presentation.quiver.vertices):
        images.append(vertex_pos[shift_vertex(v)])
    for path in paths:
        shifted = tuple(shift_arrow(a) for a in path)
        images.append(index_of[shifted])
    action = GroupActionTable(
        n, tuple(ONE for _ in range(table.dim)), tuple(images)
    )
    return table, action, cut_presentation


def cut_model_table(graph: BrauerGraph, delta: frozenset[str]) -> AlgebraTable:
    """Model of the cut algebra via the covering (works for skew graphs too)."""
    from .presentation import render_vertex

    covered = cover(GradedGraph(graph, zero_grading(graph)))
    table, action, _ = cut_cover_table(covered, frozenset(delta))
    skew = skew_group_table(table, action)
    chosen = []
    total = covered.total
    position = {name: p for p, (name, _) in enumerate(table.idempotents)}
    for v in quiver(graph).vertices:
        name, copy = v
        edge = next(e for e in graph.edges if edge_name(graph, e[0]) == name)
        h0 = sheet_label(edge[0], 0)
        cover_vertex = (edge_name(total, h0), None)
        e_index = table.idempotents[position[render_vertex(cover_vertex)]][1]
        if copy is None:
            chosen.append((render_vertex(v), {e_index: ONE}))
        else:
            half = Fraction(1, 2)
            sign = half if copy == 0 else -half
            chosen.append(
                (render_vertex(v), {e_index: half, table.dim + e_index: sign})
            )
    return truncate(skew, chosen).table
