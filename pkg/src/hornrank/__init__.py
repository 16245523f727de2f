"""Rank, Puiseux solutions and Gamma-series bases of bivariate Horn systems."""

from .combinatorics import (
    HornConfig,
    alpha_vector,
    artinian_criterion,
    generic_rank,
    index_nu,
    puiseux_rank,
)
from .errors import (
    GenericityFailure,
    HornError,
    IdentityViolation,
    InvariantError,
    ParseError,
    ResourceExhausted,
)
from .linalg import IntMatrix, gale_dual, lattice_quotient, smith_normal_form
from .puiseux import all_puiseux, verify_puiseux
from .series import build_phi, full_basis
from .shift import horn_polys

__all__ = [
    "HornConfig", "IntMatrix", "alpha_vector", "all_puiseux", "artinian_criterion",
    "build_phi", "full_basis", "gale_dual", "generic_rank", "horn_polys", "index_nu",
    "lattice_quotient", "puiseux_rank", "smith_normal_form", "verify_puiseux",
    "GenericityFailure", "HornError", "IdentityViolation", "InvariantError",
    "ParseError", "ResourceExhausted",
]
__version__ = "0.1.0"
