"""Local field calculus, BV models with Wilson lines and their boundary BFV data."""
from .algebra import IBPError, LocalAlgebra
from .boundary import BoundaryAction, BoundaryBFV, PointTerm, boundary_bfv, reference_boundary_forms
from .bv import (
    CMEReport,
    HamiltonianReport,
    Variation,
    bv_bracket,
    check_cme,
    check_hamiltonian,
    contract,
    hamiltonian_vf,
    variation,
)
from .models import BVModel, FieldSpec, WilsonLine, attach_wilson, build_cs1, build_cs3
from .report import boundary_report, cme_report, compare_with_reference

__all__ = [
    "IBPError", "LocalAlgebra", "BoundaryAction", "BoundaryBFV", "PointTerm", "boundary_bfv",
    "reference_boundary_forms", "CMEReport", "HamiltonianReport", "Variation", "bv_bracket", "check_cme",
    "check_hamiltonian", "contract", "hamiltonian_vf", "variation", "BVModel", "FieldSpec", "WilsonLine",
    "attach_wilson", "build_cs1", "build_cs3", "boundary_report", "cme_report", "compare_with_reference",
]
