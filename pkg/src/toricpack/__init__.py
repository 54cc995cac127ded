"""Exact-arithmetic maximal simplex packings of Delzant polytopes.

The public surface: exact rational linear algebra (:mod:`toricpack.linalg`),
generic polytope machinery (:mod:`toricpack.polytope`), Delzant validation
and generators (:mod:`toricpack.delzant`), packing construction and
maximization (:mod:`toricpack.packing`), offset perturbation families
(:mod:`toricpack.perturb`), and a CLI (``toricpack``).
"""

from .delzant import (
    DelzantPolytope,
    Fan,
    FanCone,
    NotDelzantError,
    VertexFrame,
    corner_radius,
    fan_of,
    make_chopped_simplex,
    make_cube,
    make_product,
    make_simplex,
    rational_length,
    same_fan,
    scale,
    translate,
    validate_delzant,
)
from .linalg import (
    Rational,
    format_rat,
    gcd_primitive,
    is_unimodular,
    mat_det,
    rat,
    solve_linear,
)
from .packing import (
    AdmissibleSimplex,
    Packing,
    PackingPolytope,
    admissible_simplex,
    build_packing_polytope,
    density,
    disjointness_oracle,
    is_feasible,
    maximize,
    packing_polytope_vertices,
    realize,
    simplices_disjoint,
)
from .perturb import (
    PerturbationError,
    ScanError,
    ScanResult,
    compare_root_midpoint,
    is_admissible,
    is_homothetic,
    perturb,
    safe_radius_estimate,
    scan_segment,
    vertex_affinity_check,
)
from .polytope import (
    DegeneratePolytopeError,
    EmptyPolytopeError,
    HalfSpace,
    HPolytope,
    Intersection,
    PolytopeError,
    UnboundedPolytopeError,
    VertexData,
    contains,
    enumerate_vertices,
    hpolytope,
    intersect,
    remove_redundant,
    vertex_set,
    volume,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibleSimplex",
    "DegeneratePolytopeError",
    "DelzantPolytope",
    "EmptyPolytopeError",
    "Fan",
    "FanCone",
    "HPolytope",
    "HalfSpace",
    "Intersection",
    "NotDelzantError",
    "Packing",
    "PackingPolytope",
    "PerturbationError",
    "PolytopeError",
    "Rational",
    "ScanError",
    "ScanResult",
    "UnboundedPolytopeError",
    "VertexData",
    "VertexFrame",
    "admissible_simplex",
    "build_packing_polytope",
    "compare_root_midpoint",
    "contains",
    "corner_radius",
    "density",
    "disjointness_oracle",
    "enumerate_vertices",
    "fan_of",
    "format_rat",
    "gcd_primitive",
    "hpolytope",
    "intersect",
    "is_admissible",
    "is_feasible",
    "is_homothetic",
    "is_unimodular",
    "make_chopped_simplex",
    "make_cube",
    "make_product",
    "make_simplex",
    "mat_det",
    "maximize",
    "packing_polytope_vertices",
    "perturb",
    "rat",
    "rational_length",
    "realize",
    "remove_redundant",
    "safe_radius_estimate",
    "same_fan",
    "scale",
    "scan_segment",
    "simplices_disjoint",
    "solve_linear",
    "translate",
    "validate_delzant",
    "vertex_affinity_check",
    "vertex_set",
    "volume",
]
