"""Hyperball packing densities in truncated regular 4-simplices."""

from .packing import DensityReport, OptimumResult, density, delta, height, maximize, monotonicity_witness, sweep
from .errors import DecompositionError, DomainError, GeometryError
from .lorentz import (
    Hyperball,
    HyperplaneForm,
    PointClass,
    Relation,
    bilinear_form,
    classify_point,
    hyperplane_intersects_hyperball,
    plane_plane_relation,
    polar_hyperplane,
)
from .simplex import P_MAX, P_MIN, build_simplex, dihedral_consistency, gram_of_forms, p_to_s, s_to_p
from .special import arccosh_safe, lobachevsky
from .truncation import cut_at_outer_vertex, decompose, outer_vertex_count, vertex_enumeration
from .volumes import (
    base_orthoscheme_volume,
    hyperball_piece_volume,
    orthoscheme3_volume,
    truncated_orthoscheme4_volume,
)

__version__ = "0.1.0"
