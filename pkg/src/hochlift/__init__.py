"""Exact Hochschild obstruction theory for lifting algebra endomorphisms
across first-order deformations, with Azumaya and Weyl-algebra tooling."""

from .algebra import Algebra, Bimodule, Subspace, center, matrix_algebra, truncated_polynomial
from .coeff import DualNumbers, ExtensionField, PrimeField, ZpSquared, make_field
from .errors import HochliftError
from .hochschild import Cochain, coboundary_solve, delta, hh_dim, is_cocycle
from .liftkit import FlatLift, decide_lift, defect_cocycle, make_flat_lift, poisson_center
from .weyl import WeylElem, WeylEndo, decide_weyl_lift, search_lift

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "Bimodule",
    "Subspace",
    "center",
    "matrix_algebra",
    "truncated_polynomial",
    "DualNumbers",
    "ExtensionField",
    "PrimeField",
    "ZpSquared",
    "make_field",
    "HochliftError",
    "Cochain",
    "coboundary_solve",
    "delta",
    "hh_dim",
    "is_cocycle",
    "FlatLift",
    "decide_lift",
    "defect_cocycle",
    "make_flat_lift",
    "poisson_center",
    "WeylElem",
    "WeylEndo",
    "decide_weyl_lift",
    "search_lift",
]
