"""Verified bounds between S-regulators and heights of S-unit subgroups."""
from .delta_norm import delta, delta_ball_volume, delta_ball_volume_mc, j_matrix_identity_check, schinzel_bound
from .errors import (
    ConsistencyError,
    EnumerationCapError,
    InputError,
    ProductFormulaError,
    RegboundsError,
    SingularMatrixError,
)
from .exact_linalg import IntMatrix, UnimodularWitness, det_exact, hnf, integer_kernel, snf
from .io import parse_input
from .lattice_min import LatticeInstance, mahler_weyl_basis, successive_minima_delta
from .relative_reg import (
    ExtensionData,
    check_relative_upper_bound,
    costa_friedman_check,
    relative_regulator,
    relative_unit_kernel,
)
from .report import Check, Report
from .suite import run_suite
from .sunit_model import (
    SubgroupSpec,
    SUnitSystem,
    check_upper_bound,
    height,
    reduce_subgroup,
    regulator,
    small_basis,
)

__version__ = "0.1.0"

__all__ = [
    "Check", "ConsistencyError", "EnumerationCapError", "ExtensionData", "InputError", "IntMatrix",
    "LatticeInstance", "ProductFormulaError", "RegboundsError", "Report", "SUnitSystem",
    "SingularMatrixError", "SubgroupSpec", "UnimodularWitness", "check_relative_upper_bound",
    "check_upper_bound", "costa_friedman_check", "delta", "delta_ball_volume", "delta_ball_volume_mc",
    "det_exact", "height", "hnf", "integer_kernel", "j_matrix_identity_check", "mahler_weyl_basis",
    "parse_input", "reduce_subgroup", "regulator", "relative_regulator", "relative_unit_kernel",
    "run_suite", "schinzel_bound", "small_basis", "snf", "successive_minima_delta",
]
