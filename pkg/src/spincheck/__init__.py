"""Exact verification engine for two-spin first-order scalar integrals
of motion: an exact coefficient ring, the 16-dimensional two-spin Pauli
algebra, normal-ordered matrix differential operators, the determining
equation system, and the verified catalog of superintegrable systems."""

from .gauss import GRat
from .geomring import GeomScalar
from .minilang import ParseError, format_scalar, parse_scalar
from .spinalg import TwoSpinMatrix
from .opalg import Operator, angular, laplacian, momentum, x_dot_p
from .builders import (GeneralScalarSpec, PotentialSpec, build_gauge_matrix,
                       build_general_scalar, build_hamiltonian,
                       build_integral, build_scalar_basis,
                       printed_general_scalar)
from .determining import (DeterminingEquation, derive_system, match_equation,
                          split_radial, verify_closure)
from .catalog import (CatalogEntry, all_entries, get_entry, verify_all,
                      verify_entry)
from .oracle import (TestField, apply_operator, commutator_residual,
                     evaluate_at)

__all__ = [
    "GRat", "GeomScalar", "ParseError", "format_scalar", "parse_scalar",
    "TwoSpinMatrix", "Operator", "angular", "laplacian", "momentum",
    "x_dot_p", "GeneralScalarSpec", "PotentialSpec", "build_gauge_matrix",
    "build_general_scalar", "build_hamiltonian", "build_integral",
    "build_scalar_basis", "printed_general_scalar", "DeterminingEquation",
    "derive_system", "match_equation", "split_radial", "verify_closure",
    "CatalogEntry", "all_entries", "get_entry", "verify_all", "verify_entry",
    "TestField", "apply_operator", "commutator_residual", "evaluate_at",
]

__version__ = "0.1.0"
