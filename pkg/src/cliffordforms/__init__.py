"""Exact exterior algebra for calibrations built from Clifford systems.

Forms live on R^n (n <= 16) with rational coefficients. The octonions, the
quaternionic and octonionic Clifford systems, the tau_2 / tau_4 invariants of
their form matrices, the Cayley and Spin(8) calibrations, exact calibrated
planes and float comass estimates are all reachable from this namespace.
"""

from .algebra import Hypercomplex, cd_multiply, conjugate, unit
from .clifford import (
    CATALOG,
    FormMatrix,
    build_clifford_system,
    composition_form_matrix,
    kaehler_form,
    tau2,
    tau4,
    verify_clifford_system,
)
from .comass import ComassReport, estimate_comass, gradient_check
from .exterior import ExteriorForm, evaluate, hodge_star, pullback, wedge
from .forms import (
    NAMED_FORMS,
    cayley_calibration,
    named_form,
    phi_spin7u1,
    phi_spin7u1_normalized,
    phi_spin8,
    tau4_spin9,
)
from .notation import parse_latex, to_latex
from .planes import (
    FourPlane,
    calibration_value,
    canonical_angles,
    cayley_plane_in_line,
    octonionic_line,
    transversal_cayley_plane,
)
from .suite import run_suite

__version__ = "0.1.0"

__all__ = [
    "CATALOG",
    "ComassReport",
    "ExteriorForm",
    "FormMatrix",
    "FourPlane",
    "Hypercomplex",
    "NAMED_FORMS",
    "build_clifford_system",
    "calibration_value",
    "canonical_angles",
    "cayley_calibration",
    "cayley_plane_in_line",
    "cd_multiply",
    "composition_form_matrix",
    "conjugate",
    "estimate_comass",
    "evaluate",
    "gradient_check",
    "hodge_star",
    "kaehler_form",
    "named_form",
    "octonionic_line",
    "parse_latex",
    "phi_spin7u1",
    "phi_spin7u1_normalized",
    "phi_spin8",
    "pullback",
    "run_suite",
    "tau2",
    "tau4",
    "tau4_spin9",
    "to_latex",
    "transversal_cayley_plane",
    "unit",
    "verify_clifford_system",
    "wedge",
]
