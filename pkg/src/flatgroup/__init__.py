"""Exact-arithmetic toolkit for crystallographic and Bieberbach groups.

Represents n-dimensional crystallographic groups over exact integers and
rationals, tests torsion-freeness, computes generator ranks of Z^n as a
module over the holonomy group, and constructs small generating sets whose
correctness is always re-checked by an independent generation verifier.
"""

from .crystal import (
    AffineElement,
    CrystalGroup,
    HolonomyGroup,
    affine_inv,
    affine_mul,
    affine_pow,
    coinvariant_split,
    enumerate_holonomy,
    fixed_lattice,
    is_torsion_free,
    lift_all,
    normalize_lattice,
    translation_subgroup,
)
from .linalg import (
    IntMatrix,
    Lattice,
    RatVector,
    UnimodularTransform,
    hnf,
    integer_kernel,
    lattice_index,
    matrix_order,
    saturate,
    snf,
    solve_integer,
)
from .modules import (
    GModule,
    RankBounds,
    bound_cyclic,
    bound_prime,
    c4_block_reduce,
    coinvariant_lower_bound,
    rank_upper_search,
    zg_span_is_full,
)
from .reduction import (
    GenSetReport,
    auto_reduce,
    bound_report,
    greedy_reduce,
    naive_generating_set,
    reduce_cyclic,
    reduce_theorem_a_i,
    reduce_two_generated,
    verify_generates,
)

__all__ = [
    "AffineElement",
    "CrystalGroup",
    "GModule",
    "GenSetReport",
    "HolonomyGroup",
    "IntMatrix",
    "Lattice",
    "RankBounds",
    "RatVector",
    "UnimodularTransform",
    "affine_inv",
    "affine_mul",
    "affine_pow",
    "auto_reduce",
    "bound_cyclic",
    "bound_prime",
    "bound_report",
    "c4_block_reduce",
    "coinvariant_lower_bound",
    "coinvariant_split",
    "enumerate_holonomy",
    "fixed_lattice",
    "greedy_reduce",
    "hnf",
    "integer_kernel",
    "is_torsion_free",
    "lattice_index",
    "lift_all",
    "matrix_order",
    "naive_generating_set",
    "normalize_lattice",
    "rank_upper_search",
    "reduce_cyclic",
    "reduce_theorem_a_i",
    "reduce_two_generated",
    "saturate",
    "snf",
    "solve_integer",
    "translation_subgroup",
    "verify_generates",
    "zg_span_is_full",
]

__version__ = "0.1.0"
