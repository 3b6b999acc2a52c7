"""Discrete exterior calculus and Regge curvature on piecewise flat
simplicial manifolds, driven entirely by squared edge lengths."""

from .complex import Hinge, SimplexId, SimplicialComplex, build_complex
from .curvature import (
    CurvatureReport,
    curvature_report,
    deficit,
    regge_action,
    ricci_dual_edge,
    ricci_simplicial_edge,
    riemann_hinge,
    scalar_vertex,
    sectional,
)
from .dec import (
    DUAL,
    SIMPLICIAL,
    Cochain,
    coderivative,
    exterior_derivative,
    hodge,
    l2_inner_product,
    l2_measure,
    laplacian,
    transfer_density,
)
from .errors import (
    BoundaryElement,
    BoundaryHinge,
    BrokenCycle,
    DegenerateSimplex,
    DuplicateCell,
    InconsistentOrientation,
    MeshFileError,
    NonManifold,
    NonWellCenteredWarning,
    NotIncident,
    PfcurvError,
    UnsupportedPair,
    ZeroMeasureElement,
)
from .geometry import HybridVolumeTable, MetricComplex
from .meshfile import read_cochain, read_mesh, write_cochain, write_mesh
from .meshgen import (
    gen_boundary_of_simplex,
    gen_flat_grid,
    gen_icosphere,
    perturb_lengths,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryElement",
    "BoundaryHinge",
    "BrokenCycle",
    "Cochain",
    "CurvatureReport",
    "DegenerateSimplex",
    "DuplicateCell",
    "DUAL",
    "Hinge",
    "HybridVolumeTable",
    "InconsistentOrientation",
    "MeshFileError",
    "MetricComplex",
    "NonManifold",
    "NonWellCenteredWarning",
    "NotIncident",
    "PfcurvError",
    "SIMPLICIAL",
    "SimplexId",
    "SimplicialComplex",
    "UnsupportedPair",
    "ZeroMeasureElement",
    "build_complex",
    "coderivative",
    "curvature_report",
    "deficit",
    "exterior_derivative",
    "gen_boundary_of_simplex",
    "gen_flat_grid",
    "gen_icosphere",
    "hodge",
    "l2_inner_product",
    "l2_measure",
    "laplacian",
    "perturb_lengths",
    "read_cochain",
    "read_mesh",
    "regge_action",
    "ricci_dual_edge",
    "ricci_simplicial_edge",
    "riemann_hinge",
    "scalar_vertex",
    "sectional",
    "transfer_density",
    "write_cochain",
    "write_mesh",
]
