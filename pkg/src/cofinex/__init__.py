"""Finite-scale constructions for cofinite directed graphs, Serre graphs, and groupoids.

The package builds finite carriers and equivalence relations on them,
closes relations under structure-respecting laws, forms quotients and
filter bases, assembles chain-indexed inverse systems with an ends
census, and verifies the counting identities behind these constructions
with brute-force oracles at desk scale.
"""

from .carrier import (
    DIGRAPH,
    GRAPH,
    GROUPOID,
    FiniteStructure,
    StructureMap,
    ValidationReport,
    Violation,
    check_map,
    generated_substructure,
    hom_set,
    map_is_isomorphism,
    map_is_rigid,
    product,
    product_projections,
    underlying_digraph,
    validate,
)
from .cofinite import (
    DiscretenessReport,
    FilterBase,
    compatible_interior,
    discreteness_certificate,
    is_filter_base,
    is_hausdorff,
    meet_close,
    separating_congruence,
)
from .completion import (
    EndReport,
    FiberCensus,
    InverseSystem,
    SymbolicCarrier,
    count_new_points,
    discrete_quotient_check,
    fiber_census,
    level_embed,
    separates_window,
    system_from_filterbase,
    validate_system,
)
from .groupoid import (
    CoherentFamily,
    RigidCongruence,
    coherent_from_rigid,
    condition3_check,
    is_rigid,
    openness_shadow,
    profinite_groupoid_system,
    rho_from_subgroup,
    rigid_base,
    rigid_from_coherent,
)
from .partition import (
    CheckReport,
    ClosureResult,
    IsoReport,
    LawTag,
    Partition,
    QuotientResult,
    check,
    close,
    first_isomorphism,
    induced_bonding,
    intersect,
    kernel,
    quotient,
)
from .verify import SuiteReport, run_verify

__version__ = "0.1.0"
