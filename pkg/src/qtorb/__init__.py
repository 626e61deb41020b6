"""Exact invariants of quasitoric orbifolds from their combinatorial models."""

from .chenruan import ChenRuanTable, Sector, box_elements, chen_ruan_betti
from .chern import almost_complex_necessary, top_chern_number, total_chern_class, vertex_signs
from .cohomology import (
    CohomologyClass,
    CohomologyRing,
    betti_numbers,
    cohomology_ring,
    cup,
    linear_forms,
    minimal_nonfaces,
)
from .model import (
    CombinatorialModel,
    apply_automorphism,
    build_model,
    characteristic_submodel,
    is_global_quotient,
    is_manifold,
    is_primitive,
    local_group,
    model_equivalent,
    model_from_vectors,
    pi1_orb,
    singular_faces,
    universal_cover_model,
)
from .modelfile import parse_model
from .polytope import (
    Face,
    Realization,
    SimplePolytope,
    build_polytope,
    enumerate_faces,
    h_vector,
    index_vector,
)
from .zlattice import (
    FiniteAbelianGroup,
    IntegerMatrix,
    SmithDecomposition,
    hnf,
    kernel_basis,
    quotient_group,
    saturation,
    snf,
)

__version__ = "0.1.0"

__all__ = [
    "almost_complex_necessary", "apply_automorphism", "betti_numbers", "box_elements",
    "build_model", "build_polytope", "characteristic_submodel", "chen_ruan_betti",
    "ChenRuanTable", "cohomology_ring", "CohomologyClass", "CohomologyRing",
    "CombinatorialModel", "cup", "enumerate_faces", "Face", "FiniteAbelianGroup",
    "h_vector", "hnf", "index_vector", "IntegerMatrix", "is_global_quotient", "is_manifold",
    "is_primitive", "kernel_basis", "linear_forms", "local_group", "minimal_nonfaces",
    "model_equivalent", "model_from_vectors", "parse_model", "pi1_orb", "quotient_group",
    "Realization", "saturation", "Sector", "SimplePolytope", "singular_faces",
    "SmithDecomposition", "snf", "top_chern_number", "total_chern_class",
    "universal_cover_model", "vertex_signs",
]
