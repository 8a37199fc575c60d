"""Finite dimensional algebra models with exact rational structure constants.

Tables multiply like paths: in ``x * y`` the right factor acts first, so a
product of basis elements b_i * b_j is nonzero only when the source
idempotent of b_i matches the target idempotent of b_j.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .core import BrauerGraph
from .linalg import RationalSpan, vec_add, vec_scale
from .presentation import (
    Arrow,
    edge_name,
    induces_arrow,
    quiver,
    relations,
)

Element = dict[int, Fraction]

ONE = Fraction(1)


class AlgebraTable:
    """Basis, corner data and structure constants of a finite dimensional algebra."""

    def __init__(
        self,
        labels: Sequence[str],
        src: Sequence[int],
        tgt: Sequence[int],
        idempotents: Sequence[tuple[str, int]],
        product_fn: Callable[[int, int], Element],
    ):
        self.labels = tuple(labels)
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.idempotents = tuple(idempotents)
        self._product_fn = product_fn
        self._memo: dict[tuple[int, int], Element] = {}

    @property
    def dim(self) -> int:
        return len(self.labels)

    def pairwise(self, i: int, j: int) -> Element:
        """Structure constants of b_i * b_j (right factor first)."""
        if self.src[i] != self.tgt[j]:
            return {}
        key = (i, j)
        out = self._memo.get(key)
        if out is None:
            out = self._product_fn(i, j)
            self._memo[key] = out
        return out

    def mul(self, x: Element, y: Element) -> Element:
        out: Element = {}
        for i, ci in x.items():
            for j, cj in y.items():
                if self.src[i] != self.tgt[j]:
                    continue
                c = ci * cj
                for k, ck in self.pairwise(i, j).items():
                    new = out.get(k, Fraction(0)) + c * ck
                    if new:
                        out[k] = new
                    else:
                        del out[k]
        return out

    def idempotent_element(self, position: int) -> Element:
        return {self.idempotents[position][1]: ONE}

    def unit(self) -> Element:
        return {index: ONE for _, index in self.idempotents}

    def cartan(self) -> list[list[int]]:
        n = len(self.idempotents)
        matrix = [[0] * n for _ in range(n)]
        for b in range(self.dim):
            matrix[self.tgt[b]][self.src[b]] += 1
        return matrix

    def corner_basis(self, target: int, source: int) -> list[int]:
        return [
            b
            for b in range(self.dim)
            if self.tgt[b] == target and self.src[b] == source
        ]

    def radical_coefficient_free(self, x: Element) -> bool:
        """True when x has no component on any idempotent basis element."""
        idem = {index for _, index in self.idempotents}
        return all(k not in idem for k in x)


def check_table(table: AlgebraTable, seed: int = 0, cap: int = 40) -> list[str]:
    """Associativity, unit law and idempotent axioms; exhaustive up to ``cap``."""
    problems = []
    unit = table.unit()
    for b in range(table.dim):
        e = {b: ONE}
        if table.mul(unit, e) != e or table.mul(e, unit) != e:
            problems.append(f"unit law fails on {table.labels[b]}")
    for p, (_, i) in enumerate(table.idempotents):
        ei = {i: ONE}
        if table.mul(ei, ei) != ei:
            problems.append(f"idempotent {p} is not idempotent")
        for q, (_, j) in enumerate(table.idempotents):
            if p != q and table.mul(ei, {j: ONE}):
                problems.append(f"idempotents {p}, {q} not orthogonal")
    if table.dim <= cap:
        triples = (
            (a, b, c)
            for a in range(table.dim)
            for b in range(table.dim)
            for c in range(table.dim)
        )
    else:
        rng = random.Random(seed)
        triples = (
            (rng.randrange(table.dim), rng.randrange(table.dim), rng.randrange(table.dim))
            for _ in range(10_000)
        )
    for a, b, c in triples:
        ea, eb, ec = {a: ONE}, {b: ONE}, {c: ONE}
        left = table.mul(table.mul(ea, eb), ec)
        right = table.mul(ea, table.mul(eb, ec))
        if left != right:
            problems.append(
                f"associativity fails on ({table.labels[a]}, {table.labels[b]}, "
                f"{table.labels[c]})"
            )
            break
    return problems


# ---------------------------------------------------------------------------
# Brauer graph algebra tables
# ---------------------------------------------------------------------------

BasisKey = tuple  # ("e", edge) | ("w", half_edge, length) | ("z", edge)


def bga_basis_keys(graph: BrauerGraph) -> list[BasisKey]:
    """Normal form basis: idempotents, proper cycle-power prefixes, socles."""
    keys: list[BasisKey] = []
    edge_names = sorted(edge_name(graph, e[0]) for e in graph.edges)
    keys.extend(("e", name) for name in edge_names)
    for h in sorted(graph.half_edges):
        if not induces_arrow(graph, h):
            continue
        top = len(graph.sigma_orbit_of(h)) * graph.multiplicity[h]
        keys.extend(("w", h, t) for t in range(1, top))
    keys.extend(("z", name) for name in edge_names)
    return keys


def bga_table_with_keys(
    graph: BrauerGraph,
) -> tuple[AlgebraTable, list[BasisKey], dict[BasisKey, int]]:
    if graph.is_skew:
        raise ValueError("Brauer graph algebra tables require an ordinary graph")
    sigma = graph.orientation
    keys = bga_basis_keys(graph)
    index_of = {k: i for i, k in enumerate(keys)}
    edge_names = [k[1] for k in keys if k[0] == "e"]
    edge_pos = {name: p for p, name in enumerate(edge_names)}
    socle_len = {
        h: len(graph.sigma_orbit_of(h)) * graph.multiplicity[h]
        for h in graph.half_edges
        if induces_arrow(graph, h)
    }

    def endpoints(key: BasisKey) -> tuple[int, int]:
        if key[0] == "w":
            _, h, t = key
            return edge_pos[edge_name(graph, graph.orientation.power(t, h))], edge_pos[
                edge_name(graph, h)
            ]
        return edge_pos[key[1]], edge_pos[key[1]]

    tgt, src = zip(*(endpoints(k) for k in keys))

    def product(i: int, j: int) -> Element:
        left, right = keys[i], keys[j]
        if left[0] == "e":
            return {j: ONE}
        if right[0] == "e":
            return {i: ONE}
        if left[0] == "z" or right[0] == "z":
            return {}
        _, lh, lt = left
        _, rh, rt = right
        if lh != sigma.power(rt, rh):
            return {}
        total = lt + rt
        if total < socle_len[rh]:
            return {index_of[("w", rh, total)]: ONE}
        if total == socle_len[rh]:
            return {index_of[("z", edge_name(graph, rh))]: ONE}
        return {}

    labels = []
    for k in keys:
        if k[0] == "e":
            labels.append(f"e[{k[1]}]")
        elif k[0] == "w":
            labels.append(f"w[{k[1]}:{k[2]}]")
        else:
            labels.append(f"z[{k[1]}]")
    idempotents = tuple((name, index_of[("e", name)]) for name in edge_names)
    table = AlgebraTable(labels, src, tgt, idempotents, product)
    return table, keys, index_of


def bga_table(graph: BrauerGraph) -> AlgebraTable:
    return bga_table_with_keys(graph)[0]


def bga_dimension_formula(graph: BrauerGraph) -> int:
    """Closed count: sum over circ vertices of multiplicity times valency squared."""
    return sum(
        graph.multiplicity[orbit[0]] * len(orbit) ** 2
        for orbit in graph.sigma_orbits
    )


# ---------------------------------------------------------------------------
# Independent oracle: exhaustive path rewriting from the printed relations
# ---------------------------------------------------------------------------


def dimension_by_rewriting(graph: BrauerGraph) -> int:
    """Count a spanning set of paths reduced by the generating relations.

    Enumerates quiver paths in normal form, killing subwords from the
    monomial relations and rewriting longer cycle powers to shorter ones,
    and certifies the length bound by checking the frontier dies out.
    """
    if graph.is_skew:
        raise ValueError("the rewriting oracle handles ordinary graphs")
    q = quiver(graph)
    zero_words: set[tuple[Arrow, ...]] = set()
    rewrites: dict[tuple[Arrow, ...], tuple[Arrow, ...]] = {}

    def word_key(w: tuple[Arrow, ...]):
        return (len(w), tuple((a.h, a.source, a.target) for a in w))

    for rel in relations(graph):
        if len(rel.terms) == 1:
            zero_words.add(rel.terms[0][1])
        else:
            (_, w1), (_, w2) = rel.terms
            big, small = (w1, w2) if word_key(w1) > word_key(w2) else (w2, w1)
            rewrites[big] = small

    def find_subword(word, patterns):
        for pat in patterns:
            n = len(pat)
            for s in range(len(word) - n + 1):
                if word[s : s + n] == pat:
                    return pat, s
        return None

    def reduce(word: tuple[Arrow, ...]) -> tuple[Arrow, ...] | None:
        while True:
            if find_subword(word, zero_words):
                return None
            hit = find_subword(word, rewrites)
            if hit is None:
                return word
            pat, s = hit
            word = word[:s] + rewrites[pat] + word[s + len(pat) :]

    by_source: dict[tuple, list[Arrow]] = {}
    for a in q.arrows:
        by_source.setdefault(a.source, []).append(a)

    max_len = max(
        (
            len(graph.sigma_orbit_of(h)) * graph.multiplicity[h]
            for h in graph.half_edges
            if induces_arrow(graph, h)
        ),
        default=0,
    )
    count = len(q.vertices)
    frontier: list[tuple[Arrow, ...]] = [(a,) for a in q.arrows]
    frontier = [w for w in frontier if reduce(w) == w]
    length = 1
    while frontier:
        if length > max_len:
            raise RuntimeError("rewriting frontier outlived the length bound")
        count += len(frontier)
        new_frontier = []
        for word in frontier:
            for a in by_source.get(word[-1].target, []):
                ext = word + (a,)
                if reduce(ext) == ext:
                    new_frontier.append(ext)
        frontier = new_frontier
        length += 1
    return count


# ---------------------------------------------------------------------------
# Group actions and skew group algebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupActionTable:
    """A monomial action of a cyclic group generator on a table's basis."""

    order: int
    scalars: tuple[Fraction, ...]
    images: tuple[int, ...]

    def apply(self, power: int, index: int) -> tuple[Fraction, int]:
        power %= self.order
        scalar = ONE
        for _ in range(power):
            scalar *= self.scalars[index]
            index = self.images[index]
        return scalar, index

    def apply_element(self, power: int, x: Element) -> Element:
        out: Element = {}
        for i, c in x.items():
            s, j = self.apply(power, i)
            out[j] = out.get(j, Fraction(0)) + s * c
        return {k: v for k, v in out.items() if v}


def action_violations(
    table: AlgebraTable, act: GroupActionTable, seed: int = 0
) -> list[str]:
    problems = []
    if sorted(act.images) != list(range(table.dim)):
        return ["action images do not permute the basis"]
    for b in range(table.dim):
        s, i = act.apply(act.order, b)
        if (s, i) != (ONE, b):
            problems.append(f"action order is not {act.order} at {table.labels[b]}")
            break
    for p, (_, i) in enumerate(table.idempotents):
        s, j = act.apply(1, i)
        if s != ONE or all(j != idx for _, idx in table.idempotents):
            problems.append(f"action does not permute the idempotents at {p}")
    n = table.dim
    if n <= 80:
        pairs = ((i, j) for i in range(n) for j in range(n))
    else:
        rng = random.Random(seed)
        pairs = ((rng.randrange(n), rng.randrange(n)) for _ in range(2000))
    for i, j in pairs:
        product = table.pairwise(i, j)
        si, ii = act.apply(1, i)
        sj, jj = act.apply(1, j)
        lhs = act.apply_element(1, product)
        rhs = vec_scale(table.pairwise(ii, jj), si * sj)
        if lhs != rhs:
            problems.append(
                f"action is not multiplicative on ({table.labels[i]}, {table.labels[j]})"
            )
            break
    return problems


def idempotent_permutation(table: AlgebraTable, act: GroupActionTable) -> list[int]:
    position_of = {index: p for p, (_, index) in enumerate(table.idempotents)}
    out = []
    for _, index in table.idempotents:
        _, image = act.apply(1, index)
        out.append(position_of[image])
    return out


def skew_group_table(table: AlgebraTable, act: GroupActionTable) -> AlgebraTable:
    """The skew group algebra: basis b (x) g^k, product twisting by the action."""
    problems = action_violations(table, act)
    if problems:
        raise ValueError("; ".join(problems))
    n = act.order
    dim = table.dim
    pi = idempotent_permutation(table, act)
    pi_inv = [0] * len(pi)
    for p, q in enumerate(pi):
        pi_inv[q] = p

    def pi_inv_power(power: int, p: int) -> int:
        for _ in range(power % n):
            p = pi_inv[p]
        return p

    labels = []
    src = []
    tgt = []
    for k in range(n):
        for b in range(dim):
            labels.append(f"{table.labels[b]}|g{k}")
            src.append(pi_inv_power(k, table.src[b]))
            tgt.append(table.tgt[b])

    def product(i: int, j: int) -> Element:
        k, b = divmod(i, dim)
        l, c = divmod(j, dim)
        scalar, c2 = act.apply(k, c)
        sheet = (k + l) % n
        return {
            sheet * dim + d: scalar * coeff
            for d, coeff in table.pairwise(b, c2).items()
        }

    idempotents = tuple(
        (label, index) for (label, index) in table.idempotents
    )
    return AlgebraTable(labels, src, tgt, idempotents, product)


# ---------------------------------------------------------------------------
# Idempotent truncation
# ---------------------------------------------------------------------------


@dataclass
class Truncation:
    table: AlgebraTable
    ambient: AlgebraTable
    chosen: tuple[tuple[str, Element], ...]
    _spans: dict[tuple[int, int], RationalSpan]
    _offsets: dict[tuple[int, int], list[int]]

    def express(self, x: Element) -> Element:
        """Coordinates of an f-compressed ambient element in the corner basis."""
        out: Element = {}
        for (ti, si), span in self._spans.items():
            fi = self.chosen[ti][1]
            fj = self.chosen[si][1]
            proj = self.ambient.mul(self.ambient.mul(fi, x), fj)
            if not proj:
                continue
            coords = span.express(proj)
            if coords is None:
                raise ValueError("element does not lie in the truncation")
            for local, c in coords.items():
                out[self._offsets[(ti, si)][local]] = c
        return {k: v for k, v in out.items() if v}


def truncate(
    table: AlgebraTable, chosen: Sequence[tuple[str, Element]]
) -> Truncation:
    """Corner algebra f A f for f the sum of the chosen orthogonal idempotents."""
    for label, x in chosen:
        if table.mul(x, x) != x:
            raise ValueError(f"chosen element {label!r} is not idempotent")
    for a, (la, xa) in enumerate(chosen):
        for b, (lb, xb) in enumerate(chosen):
            if a != b and table.mul(xa, xb):
                raise ValueError(f"chosen idempotents {la!r}, {lb!r} not orthogonal")

    spans: dict[tuple[int, int], RationalSpan] = {}
    offsets: dict[tuple[int, int], list[int]] = {}
    vectors: list[Element] = []
    labels: list[str] = []
    src: list[int] = []
    tgt: list[int] = []
    idempotents: list[tuple[str, int]] = []

    def admit(corner: tuple[int, int], vec: Element, label: str) -> None:
        span = spans.setdefault(corner, RationalSpan())
        if span.add(vec) is None:
            return
        offsets.setdefault(corner, []).append(len(vectors))
        vectors.append(vec)
        labels.append(label)
        tgt.append(corner[0])
        src.append(corner[1])

    for p, (label, x) in enumerate(chosen):
        idempotents.append((label, len(vectors)))
        admit((p, p), x, label)
    for b in range(table.dim):
        xb = {b: ONE}
        for p, (_, fp) in enumerate(chosen):
            left = table.mul(fp, xb)
            if not left:
                continue
            for q, (_, fq) in enumerate(chosen):
                vec = table.mul(left, fq)
                if vec:
                    admit((p, q), vec, f"t{len(vectors)}[{p}.{q}]")

    def product(i: int, j: int) -> Element:
        raw = table.mul(vectors[i], vectors[j])
        if not raw:
            return {}
        corner = (tgt[i], src[j])
        span = spans.get(corner)
        coords = span.express(raw) if span is not None else None
        if coords is None:
            raise ValueError("truncation is not multiplicatively closed")
        return {offsets[corner][local]: c for local, c in coords.items() if c}

    corner_table = AlgebraTable(labels, src, tgt, idempotents, product)
    return Truncation(
        table=corner_table,
        ambient=table,
        chosen=tuple(chosen),
        _spans=spans,
        _offsets=offsets,
    )


# ---------------------------------------------------------------------------
# Trivial extensions
# ---------------------------------------------------------------------------


def trivial_extension(table: AlgebraTable) -> AlgebraTable:
    """The symmetric algebra A (+) D(A) with square-zero dual part."""
    dim = table.dim
    labels = list(table.labels) + [f"D({lbl})" for lbl in table.labels]
    src = list(table.src) + list(table.tgt)
    tgt = list(table.tgt) + list(table.src)

    # x * dual(b) = sum_c coeff_b(c * x) dual(c);  dual(b) * y = sum_c coeff_b(y * c) dual(c)
    right_by_dual: dict[tuple[int, int], Element] = {}
    left_by_dual: dict[tuple[int, int], Element] = {}
    for c in range(dim):
        for x in range(dim):
            for b, coeff in table.pairwise(c, x).items():
                entry = right_by_dual.setdefault((x, b), {})
                entry[dim + c] = entry.get(dim + c, Fraction(0)) + coeff
            for b, coeff in table.pairwise(x, c).items():
                entry = left_by_dual.setdefault((x, b), {})
                entry[dim + c] = entry.get(dim + c, Fraction(0)) + coeff

    def product(i: int, j: int) -> Element:
        if i < dim and j < dim:
            return dict(table.pairwise(i, j))
        if i < dim:
            return dict(right_by_dual.get((i, j - dim), {}))
        if j < dim:
            return dict(left_by_dual.get((j, i - dim), {}))
        return {}

    return AlgebraTable(labels, src, tgt, table.idempotents, product)


def extend_action_to_trivial_extension(
    table: AlgebraTable, act: GroupActionTable
) -> GroupActionTable:
    """g . dual(b) = (1/s) dual(b') where g . b = s b'."""
    dim = table.dim
    scalars = list(act.scalars)
    images = list(act.images)
    for b in range(dim):
        s, b2 = act.apply(1, b)
        scalars.append(ONE / s)
        images.append(dim + b2)
    return GroupActionTable(act.order, tuple(scalars), tuple(images))


def trivial_extension_iso_report(
    table: AlgebraTable, act: GroupActionTable
) -> tuple[bool, str | None]:
    """Verify Triv(A G) ~ Triv(A) G via the explicit basis-wise map."""
    lhs_inner = skew_group_table(table, act)
    lhs = trivial_extension(lhs_inner)
    rhs = skew_group_table(
        trivial_extension(table), extend_action_to_trivial_extension(table, act)
    )
    n = act.order
    dim = table.dim
    dim_lg = lhs_inner.dim  # = n * dim
    dim_triv = 2 * dim

    def phi_basis(i: int) -> Element:
        if i < dim_lg:
            k, b = divmod(i, dim)
            return {k * dim_triv + b: ONE}
        k, b = divmod(i - dim_lg, dim)
        # phi(dual(b (x) g^k)) = (1/s') dual(b') (x) g^{-k} where g^{-k} . b = s' b'
        s_prime, b_prime = act.apply((-k) % n, b)
        k_out = (-k) % n
        return {k_out * dim_triv + dim + b_prime: ONE / s_prime}

    images = [phi_basis(i) for i in range(lhs.dim)]
    span = RationalSpan()
    for img in images:
        if span.add(img) is None:
            return False, "phi is not injective"
    if span.rank != rhs.dim:
        return False, "phi is not surjective"
    for i in range(lhs.dim):
        for j in range(lhs.dim):
            lhs_prod = lhs.pairwise(i, j)
            expected: Element = {}
            for k, c in lhs_prod.items():
                expected = vec_add(expected, images[k], c)
            got = rhs.mul(images[i], images[j])
            if got != expected:
                return (
                    False,
                    f"phi not multiplicative on ({lhs.labels[i]}, {lhs.labels[j]})",
                )
    return True, None


def cartan_determinant(table: AlgebraTable) -> int:
    from .linalg import determinant

    det = determinant([[int(x) for x in row] for row in table.cartan()])
    return int(det)
