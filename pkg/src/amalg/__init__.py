"""Exact f-algebra products on AM- and AL-space models."""

from .lattice import (
    FiniteAL,
    FiniteSup,
    InvariantBreach,
    PreconditionError,
    SeqLim,
    SpaceMismatch,
    SupDirectSum,
    disjoint,
    lattice_join,
    lattice_meet,
    norm,
    vec,
)
from .spectrum import dual_atoms, evaluate, norm_weakstar_continuous
from .weights import constant_weight, weight
from .products import (
    ProductTensor,
    decide_tensor,
    is_submultiplicative,
    product,
    verify_falgebra_axioms,
    wx_membership,
)
from .amalgebra import Staircase, am_product_is_unique, classify_am_algebra, nakano_witness, nth_root
from .center import decide_central, mult_operator
from .al import al_decide_tensor, al_product, lift_band_product, only_zero_product
from .homomorphisms import ball_square_condition, composition_form, is_algebra_hom, is_lattice_hom
from .operators import IndexMap, Matrix, Multiplier, apply, matrix

__version__ = "0.1.0"

__all__ = [
    "FiniteAL",
    "FiniteSup",
    "IndexMap",
    "InvariantBreach",
    "Matrix",
    "Multiplier",
    "PreconditionError",
    "ProductTensor",
    "SeqLim",
    "SpaceMismatch",
    "Staircase",
    "SupDirectSum",
    "al_decide_tensor",
    "al_product",
    "am_product_is_unique",
    "apply",
    "ball_square_condition",
    "classify_am_algebra",
    "composition_form",
    "constant_weight",
    "decide_central",
    "decide_tensor",
    "disjoint",
    "dual_atoms",
    "evaluate",
    "is_algebra_hom",
    "is_lattice_hom",
    "is_submultiplicative",
    "lattice_join",
    "lattice_meet",
    "lift_band_product",
    "matrix",
    "mult_operator",
    "nakano_witness",
    "norm",
    "norm_weakstar_continuous",
    "nth_root",
    "only_zero_product",
    "product",
    "vec",
    "verify_falgebra_axioms",
    "weight",
    "wx_membership",
]
