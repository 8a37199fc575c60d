"""Command line interface.

Every subcommand reads a graph file, runs one library pipeline and prints a
deterministic report; ``--json`` swaps the human output for one JSON object
on stdout and machine-readable errors on stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import covering, homotopy, models, moves
from .core import (
    BrauerGraph,
    GradedGraph,
    grading_violations,
    oz_invariants,
    validate,
    zero_grading,
)
from .graphfile import GraphFileError, ParsedGraph, emit, parse
from .presentation import (
    admissible_cut,
    edge_name,
    presentation,
    render_presentation,
    render_relation,
    render_vertex,
    to_dot,
)


class CommandError(Exception):
    pass


@dataclass
class Outcome:
    lines: list[str]
    payload: dict
    code: int = 0


def _load(path: str) -> ParsedGraph:
    try:
        with open(path, encoding="utf-8") as fh:
            parsed = parse(fh.read())
    except OSError as exc:
        raise CommandError(f"cannot read {path}: {exc}") from exc
    except GraphFileError as exc:
        raise CommandError(f"{path}: {exc}") from exc
    return parsed


def _require_valid(graph: BrauerGraph) -> None:
    problems = validate(graph)
    if problems:
        raise CommandError("invalid graph: " + "; ".join(problems))


def _edge_map(parsed: ParsedGraph) -> dict[str, tuple[str, ...]]:
    graph = parsed.graph
    out = {edge_name(graph, e[0]): tuple(e) for e in graph.edges}
    for alias, members in parsed.aliases.items():
        out[alias] = members
    return out


def _subset_from_edges(parsed: ParsedGraph, listing: str) -> frozenset[str]:
    table = _edge_map(parsed)
    chosen: set[str] = set()
    for token in listing.split(","):
        token = token.strip()
        if not token:
            continue
        if token not in table:
            raise CommandError(
                f"unknown edge {token!r}; known edges: {', '.join(sorted(table))}"
            )
        chosen.update(table[token])
    return frozenset(chosen)


def _graded(parsed: ParsedGraph, choice: str, subset: frozenset[str]) -> GradedGraph:
    graph = parsed.graph
    if choice == "file" or (choice == "auto" and parsed.grading is not None):
        if parsed.grading is None:
            raise CommandError("the file carries no grading")
        grading = parsed.grading
    else:
        grading = covering.default_grading(graph, subset)
    problems = grading_violations(graph, grading)
    if problems:
        raise CommandError("invalid grading: " + "; ".join(problems))
    return GradedGraph(graph, grading)


def _model(parsed: ParsedGraph) -> models.GraphAlgebraModel:
    graph = parsed.graph
    if graph.is_skew:
        grading = parsed.grading if parsed.grading is not None else zero_grading(graph)
        problems = grading_violations(graph, grading)
        if problems:
            raise CommandError("invalid grading: " + "; ".join(problems))
        return models.skew_model(graph, grading)
    model = models.ordinary_model(graph)
    model.grading = parsed.grading
    return model


def _write_output(text: str, path: str | None, lines: list[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        lines.append(f"wrote {path}")
    else:
        lines.extend(text.rstrip("\n").split("\n"))


def cmd_validate(args) -> Outcome:
    parsed = _load(args.file)
    problems = validate(parsed.graph)
    if problems:
        return Outcome(
            ["invalid:"] + ["  " + p for p in problems],
            {"valid": False, "violations": problems},
            1,
        )
    return Outcome(["valid"], {"valid": True, "violations": []})


def cmd_invariants(args) -> Outcome:
    parsed = _load(args.file)
    _require_valid(parsed.graph)
    inv = oz_invariants(parsed.graph)
    payload = {
        "edges": inv.edge_count,
        "circ_vertices": inv.circ_vertex_count,
        "cross_vertices": inv.cross_vertex_count,
        "faces": inv.face_count,
        "perimeters": None
        if inv.perimeter_multiset is None
        else list(inv.perimeter_multiset),
        "multiplicities": list(inv.multiplicity_multiset),
        "bipartite": inv.bipartite,
    }
    lines = [
        f"edges: {inv.edge_count}",
        f"circ vertices: {inv.circ_vertex_count}",
        f"cross vertices: {inv.cross_vertex_count}",
        f"faces: {inv.face_count if inv.face_count is not None else 'undefined (skew)'}",
        "perimeters: "
        + (
            " ".join(map(str, inv.perimeter_multiset))
            if inv.perimeter_multiset is not None
            else "undefined (skew)"
        ),
        "multiplicities: " + " ".join(map(str, inv.multiplicity_multiset)),
        f"bipartite: {str(inv.bipartite).lower()}",
    ]
    return Outcome(lines, payload)


def cmd_quiver(args) -> Outcome:
    parsed = _load(args.file)
    _require_valid(parsed.graph)
    p = presentation(parsed.graph)
    lines = render_presentation(p).rstrip("\n").split("\n")
    lines = [l for l in lines if not l.startswith("relation ")]
    payload = {
        "vertices": [render_vertex(v) for v in p.quiver.vertices],
        "arrows": len(p.quiver.arrows),
    }
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(p))
        lines.append(f"wrote {args.dot}")
        payload["dot"] = args.dot
    return Outcome(lines, payload)


def cmd_relations(args) -> Outcome:
    parsed = _load(args.file)
    _require_valid(parsed.graph)
    p = presentation(parsed.graph)
    rendered = [render_relation(rel, p.symbol) for rel in p.relations]
    return Outcome(rendered, {"relations": rendered})


def cmd_dim(args) -> Outcome:
    parsed = _load(args.file)
    _require_valid(parsed.graph)
    model = _model(parsed)
    return Outcome([f"dim = {model.table.dim}"], {"dim": model.table.dim})


def cmd_cartan(args) -> Outcome:
    parsed = _load(args.file)
    _require_valid(parsed.graph)
    model = _model(parsed)
    cartan = model.table.cartan()
    order = sorted(model.vertex_position, key=lambda v: model.vertex_position[v])
    labels = [render_vertex(v) for v in order]
    lines = ["vertices: " + " ".join(labels)]
    lines += [" ".join(str(x) for x in row) for row in cartan]
    return Outcome(lines, {"vertices": labels, "cartan": cartan})


def cmd_move(args) -> Outcome:
    parsed = _load(args.file)
    _require_valid(parsed.graph)
    subset = _subset_from_edges(parsed, args.edges)
    graded = _graded(parsed, args.grading, subset)
    moved = moves.move_set(graded, subset)
    text = emit(moved.graph, moved.grading, parsed.aliases or None)
    lines: list[str] = []
    _write_output(text, args.output, lines)
    return Outcome(lines, {"moved": text})


def cmd_cover(args) -> Outcome:
    parsed = _load(args.file)
    _require_valid(parsed.graph)
    graded = _graded(parsed, args.grading, frozenset())
    covered = covering.cover(graded)
    text = emit(covered.total)
    lines: list[str] = []
    _write_output(text, args.output, lines)
    return Outcome(lines, {"total": text, "sheets": covered.group_order})


def cmd_check_commute(args) -> Outcome:
    parsed = _load(args.file)
    _require_valid(parsed.graph)
    subset = _subset_from_edges(parsed, args.edges)
    graded = _graded(parsed, args.grading, subset)
    result = covering.check_cover_commutes(graded, subset)
    text = f"commutes: {str(result).lower()}"
    return Outcome([text], {"commutes": result}, 0 if result else 1)


def cmd_mutate(args) -> Outcome:
    parsed = _load(args.file)
    _require_valid(parsed.graph)
    subset = _subset_from_edges(parsed, args.edges)
    model = _model(parsed)
    summands = homotopy.mutation_object(model, subset)
    lines = []
    payload: dict = {"summands": []}
    for name, comp in summands:
        if not comp.deg_minus1:
            desc = "stalk"
        else:
            desc = f"cone with {len(comp.deg_0)} target component(s)"
        lines.append(f"edge {name}: {desc}")
        payload["summands"].append({"edge": name, "kind": desc})
    code = 0
    if args.verify:
        report = homotopy.mutation_verification(model, subset)
        checks = [
            ("silting", report.silting),
            ("tilting", report.tilting),
            ("left-minimal", report.left_minimal),
        ]
        for label, flag in checks:
            lines.append(f"{label}: {'ok' if flag else 'FAIL'}")
        lines.append(f"dim End(T) = {report.dim_end}")
        lines.append(f"dim moved algebra = {report.dim_moved}")
        lines.append(f"cartan match: {'ok' if report.cartan_equal else 'FAIL'}")
        payload["verify"] = {
            "silting": report.silting,
            "tilting": report.tilting,
            "left_minimal": report.left_minimal,
            "dim_end": report.dim_end,
            "dim_moved": report.dim_moved,
            "cartan_equal": report.cartan_equal,
        }
        code = 0 if report.ok else 1
    return Outcome(lines, payload, code)


def cmd_cut(args) -> Outcome:
    parsed = _load(args.file)
    _require_valid(parsed.graph)
    delta = frozenset(t.strip() for t in args.delta.split(",") if t.strip())
    p = admissible_cut(parsed.graph, delta)
    text = render_presentation(p)
    return Outcome(text.rstrip("\n").split("\n"), {"presentation": text})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brauergraph",
        description="Brauer graphs, Kauer moves, coverings and algebra models.",
    )
    parser.add_argument("--json", action="store_true", help="structured output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("file", help="graph file")
        p.set_defaults(handler=fn)
        return p

    add("validate", cmd_validate, help="report violated invariants")
    add("invariants", cmd_invariants, help="derived invariants of the graph")
    p = add("quiver", cmd_quiver, help="quiver of the algebra")
    p.add_argument("--dot", help="also write a DOT file")
    add("relations", cmd_relations, help="generating relations")
    add("dim", cmd_dim, help="dimension of the algebra model")
    add("cartan", cmd_cartan, help="Cartan matrix of the algebra model")
    p = add("move", cmd_move, help="graded generalized Kauer move")
    p.add_argument("--edges", required=True, help="comma-separated edge names")
    p.add_argument("--grading", choices=["default", "file", "auto"], default="auto")
    p.add_argument("-o", "--output", help="write the moved graph here")
    p = add("cover", cmd_cover, help="covering graph")
    p.add_argument("--grading", choices=["default", "file", "auto"], default="auto")
    p.add_argument("-o", "--output", help="write the covering here")
    p = add("check-commute", cmd_check_commute, help="covering/move commutativity")
    p.add_argument("--edges", required=True)
    p.add_argument("--grading", choices=["default", "file", "auto"], default="auto")
    p = add("mutate", cmd_mutate, help="left mutation over the unmoved projectives")
    p.add_argument("--edges", required=True)
    p.add_argument("--verify", action="store_true", help="run the full checks")
    p = add("cut", cmd_cut, help="admissible cut presentation")
    p.add_argument("--delta", required=True, help="comma-separated half-edges")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        outcome = args.handler(args)
    except (CommandError, ValueError, RuntimeError) as exc:
        if args.json:
            print(json.dumps({"error": str(exc)}), file=sys.stderr)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(outcome.payload, sort_keys=True))
    else:
        for line in outcome.lines:
            print(line)
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
