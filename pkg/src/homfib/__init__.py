"""Finite simplicial sets with exact homology, fibration checkers,
barycentric subdivision and Borel constructions."""

from .sset import (
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    ValidationReport,
    apply_operator,
    boundary,
    cyclic_cover_map,
    cyclic_graph,
    degenerate,
    disjoint_union,
    empty_space,
    euler_characteristic,
    full_subcomplex,
    identity_map,
    inclusion_map,
    is_isomorphism,
    point,
    presentation_complex,
    product,
    product_many,
    pullback,
    pushout,
    representing_map,
    standard_map,
    standard_simplex,
    suspension,
    validate,
    validate_map,
)
from .snf import IntMatrix, SmithForm, smith_normal_form
from .homology import (
    ChainComplex,
    HomologyGroup,
    InducedMap,
    homology,
    homology_table,
    induced,
    is_acyclic,
    is_homology_iso,
    normalized_chains,
)
from .fibration import (
    KnownFiberSpec,
    PreimageRecord,
    dp,
    dp_along,
    fiber_homology_over_contractible,
    pullback_fibration,
    strong_check_via_known_fiber,
    weak_fibration_check,
)
from .subdivision import (
    barycenter_preimage,
    barycentric_delta,
    cube_decomposition,
    est,
    sd,
    sd_over_simplex,
    star,
    star_retraction,
)
from .borel import (
    Diagram,
    SimplicialCategory,
    SimplicialSpace,
    borel_level,
    borel_total,
    classifying_space,
    from_monoid,
    group_completion_check,
    restriction_diagram,
    telescope_diagram,
    thick_realize,
    trivial_diagram,
)
