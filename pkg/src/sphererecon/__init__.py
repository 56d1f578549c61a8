"""Reconstruct shellable simplicial spheres from their facet-ridge graphs."""

from .complex import (
    FacetRidgeGraph,
    FVector,
    SimplicialComplex,
    boundary_and_classify,
    build_complex,
    enumerate_faces,
    f_vector,
    facet_ridge_graph,
    link,
    star,
)
from .errors import InconsistentInput, SphereReconError
from .estimators import GoodOrientationSearch, SphereReconstructor
from .frames import (
    CompatibleFamily,
    KFrame,
    KSystem,
    enumerate_k_systems,
    is_compatible,
    is_k_system,
    is_star_like,
    unique_compatible_family_oracle,
    v_delta_k,
)
from .generators import (
    GeneratorSpec,
    cross_polytope_boundary,
    cyclic_polytope_boundary,
    cycle_sphere,
    simplex_boundary,
    stacked_sphere,
)
from .orientation import (
    AcyclicOrientation,
    f_score,
    find_good_orientations,
    is_good_orientation,
    partitioning_from_orientation,
    sink_peel_order,
)
from .reconstruct import ReconstructedComplex, reconstruct, verify_roundtrip
from .shelling import find_shelling, is_shelling, restriction_map, shelling_to_orientation

__version__ = "0.1.0"

__all__ = [
    "AcyclicOrientation",
    "CompatibleFamily",
    "FVector",
    "FacetRidgeGraph",
    "GeneratorSpec",
    "GoodOrientationSearch",
    "InconsistentInput",
    "KFrame",
    "KSystem",
    "ReconstructedComplex",
    "SimplicialComplex",
    "SphereReconError",
    "SphereReconstructor",
    "boundary_and_classify",
    "build_complex",
    "cross_polytope_boundary",
    "cycle_sphere",
    "cyclic_polytope_boundary",
    "enumerate_faces",
    "enumerate_k_systems",
    "f_score",
    "f_vector",
    "facet_ridge_graph",
    "find_good_orientations",
    "find_shelling",
    "is_compatible",
    "is_good_orientation",
    "is_k_system",
    "is_shelling",
    "is_star_like",
    "link",
    "partitioning_from_orientation",
    "reconstruct",
    "restriction_map",
    "shelling_to_orientation",
    "simplex_boundary",
    "sink_peel_order",
    "stacked_sphere",
    "star",
    "unique_compatible_family_oracle",
    "v_delta_k",
    "verify_roundtrip",
]
