"""Exact rational linear algebra over sparse coefficient vectors.

Vectors are dicts mapping hashable keys to nonzero Fractions; the span
tracker keeps a forward-eliminated pivot table so that membership tests and
coordinate extraction stay cheap on the small systems this package solves.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping

Vector = dict[Hashable, Fraction]


def vec_add(u: Mapping, v: Mapping, scale: Fraction = Fraction(1)) -> Vector:
    out: Vector = dict(u)
    for k, c in v.items():
        new = out.get(k, Fraction(0)) + scale * c
        if new:
            out[k] = new
        else:
            out.pop(k, None)
    return out


def vec_scale(u: Mapping, scale: Fraction) -> Vector:
    if not scale:
        return {}
    return {k: scale * c for k, c in u.items()}


class RationalSpan:
    """Incremental span of sparse vectors with coordinate tracking.

    Basis vectors are the added vectors that increased the rank, numbered in
    insertion order; ``express`` writes any vector of the span in terms of
    them.
    """

    def __init__(self) -> None:
        self._pivots: dict[Hashable, tuple[int, Vector, dict[int, Fraction]]] = {}
        self._order: list[Hashable] = []
        self._rank = 0

    @property
    def rank(self) -> int:
        return self._rank

    def _reduce(self, vec: Mapping) -> tuple[Vector, dict[int, Fraction]]:
        residual: Vector = dict(vec)
        combo: dict[int, Fraction] = {}
        while True:
            hit = None
            for key in self._order:
                if key in residual:
                    hit = key
                    break
            if hit is None:
                return residual, combo
            _, row, row_combo = self._pivots[hit]
            coeff = residual[hit]
            residual = vec_add(residual, row, -coeff)
            for idx, c in row_combo.items():
                new = combo.get(idx, Fraction(0)) + coeff * c
                if new:
                    combo[idx] = new
                else:
                    combo.pop(idx, None)

    def add(self, vec: Mapping) -> int | None:
        """Add a vector; return its basis index if independent, else None."""
        residual, combo = self._reduce(vec)
        if not residual:
            return None
        pivot = min(residual, key=repr)
        inv = Fraction(1) / residual[pivot]
        row = vec_scale(residual, inv)
        index = self._rank
        # row = inv * (vec - combo . basis), so express row over the basis:
        row_combo = {i: -inv * c for i, c in combo.items()}
        row_combo[index] = inv
        self._pivots[pivot] = (index, row, row_combo)
        self._order.append(pivot)
        self._rank += 1
        return index

    def contains(self, vec: Mapping) -> bool:
        residual, _ = self._reduce(vec)
        return not residual

    def express(self, vec: Mapping) -> dict[int, Fraction] | None:
        """Coordinates of ``vec`` over the basis, or None if outside the span."""
        residual, combo = self._reduce(vec)
        if residual:
            return None
        return combo


def rank_of(vectors: Iterable[Mapping]) -> int:
    span = RationalSpan()
    for v in vectors:
        span.add(v)
    return span.rank


def solve_homogeneous(
    rows: list[Mapping], unknowns: list[Hashable]
) -> list[Vector]:
    """Basis of the solution space of ``rows . x = 0`` over the unknown keys."""
    reduced: list[Vector] = []
    pivot_of_row: list[Hashable] = []
    pivot_cols: set[Hashable] = set()
    for raw in rows:
        vec: Vector = {k: Fraction(c) for k, c in raw.items() if c}
        for row, pivot in zip(reduced, pivot_of_row):
            if pivot in vec:
                vec = vec_add(vec, row, -vec[pivot])
        if not vec:
            continue
        pivot = min(vec, key=repr)
        vec = vec_scale(vec, Fraction(1) / vec[pivot])
        for i, row in enumerate(reduced):
            if pivot in row:
                reduced[i] = vec_add(row, vec, -row[pivot])
        reduced.append(vec)
        pivot_of_row.append(pivot)
        pivot_cols.add(pivot)
    free = [k for k in unknowns if k not in pivot_cols]
    basis: list[Vector] = []
    for k in free:
        sol: Vector = {k: Fraction(1)}
        for row, pivot in zip(reduced, pivot_of_row):
            if k in row:
                sol[pivot] = -row[k]
        basis.append(sol)
    return basis


def determinant(matrix: list[list[int]]) -> Fraction:
    """Determinant of a square integer matrix by fraction-free-ish elimination."""
    n = len(matrix)
    rows = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            det = -det
        det *= rows[col][col]
        inv = Fraction(1) / rows[col][col]
        for r in range(col + 1, n):
            if rows[r][col]:
                factor = rows[r][col] * inv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return det
