"""Floating-point checks of orbit geometry and Wilson holonomies."""
from .holonomy import gauge_transform, link_matrices, random_connection, rep_matrices, wilson_holonomy
from .kernels import get_kernels
from .orbit import (
    OrbitPoint,
    OrbitReport,
    OrbitSpec,
    ad_matrices,
    faithful_rep,
    kirillov_convergence,
    kirillov_form,
    kirillov_pullback_check,
    orbit_point,
    sample_orbit,
    structure_array,
    tangent_orthogonality,
)

__all__ = [
    "gauge_transform", "link_matrices", "random_connection", "rep_matrices", "wilson_holonomy", "get_kernels",
    "OrbitPoint", "OrbitReport", "OrbitSpec", "ad_matrices", "faithful_rep", "kirillov_convergence",
    "kirillov_form", "kirillov_pullback_check", "orbit_point", "sample_orbit", "structure_array",
    "tangent_orthogonality",
]
