"""Brauer graphs, skew Brauer graphs, Kauer moves and their algebras."""

from .core import (
    BrauerGraph,
    GradedGraph,
    Grading,
    OZInvariants,
    Vertex,
    faces,
    gen_random,
    grading_violations,
    oz_invariants,
    validate,
    vertices,
    zero_grading,
)
from .covering import CoveredGraph, check_cover_commutes, cover, default_grading, lift_subset
from .moves import Sector, maximal_sectors, move_sector, move_set, sectors
from .permutations import Permutation, cycle_string
from .presentation import (
    Presentation,
    Quiver,
    Relation,
    admissible_cut,
    quiver,
    relations,
    special_cycles,
    truncation_presentation,
)

__all__ = [
    "BrauerGraph",
    "CoveredGraph",
    "GradedGraph",
    "Grading",
    "OZInvariants",
    "Permutation",
    "Presentation",
    "Quiver",
    "Relation",
    "Sector",
    "Vertex",
    "admissible_cut",
    "check_cover_commutes",
    "cover",
    "cycle_string",
    "default_grading",
    "faces",
    "gen_random",
    "grading_violations",
    "lift_subset",
    "maximal_sectors",
    "move_sector",
    "move_set",
    "oz_invariants",
    "quiver",
    "relations",
    "sectors",
    "special_cycles",
    "truncation_presentation",
    "validate",
    "vertices",
    "zero_grading",
]
