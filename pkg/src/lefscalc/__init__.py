"""Exact Lefschetz traces, Euler integrals, and multiplicity tables.

The package computes, in exact rational (and Gaussian rational)
arithmetic, global and local fixed-point traces of simplicial self-maps,
Euler integrals of constructible functions on simplicial complexes and
finite cell spaces, Morse multiplicity tables of vertex functionals, and
cell models of flag manifolds with their fixed loci.
"""

from .complexes import (
    Cell,
    CellSpace,
    CellularSubset,
    SimplicialComplex,
    barycentric_subdivide,
    canonical_tuple,
    connected_components,
    induced_subcomplex,
    link,
    star,
    subdivide_times,
    validate,
)
from .errors import (
    CellSpaceUnsupportedError,
    DegenerateInputError,
    FixedPointNotSimplicialError,
    GenericityError,
    InvalidComplexError,
    LefscalcError,
    NoApplicableRegimeError,
    NonSimplicialMapError,
    NotHyperbolicError,
    NotLocalizableError,
    ParseError,
)
from .euler import (
    ConstructibleFunction,
    chi_c,
    combine,
    euler_integral,
    pullback,
    pushforward,
    pushforward_spec,
    restrict,
)
from .exact import (
    GaussianRational,
    Rat,
    RationalMatrix,
    RationalPolynomial,
    count_real_roots_geq,
    parse_rational,
)
from .fixedpoint import (
    NormalData,
    TracedProblem,
    fixed_components,
    fixed_subcomplex,
    hyperbolicity_report,
    local_contribution,
    local_trace_function,
    localization_report,
    signed_local_contribution,
)
from .flags import (
    BruhatCellSpace,
    bruhat_leq,
    derive_intersection_pattern,
    example_3_9,
    fixed_locus_cellspace,
    flag_cellspace,
    schubert_subset,
)
from .homology import (
    betti,
    chain_complex,
    euler_characteristic,
    hopf_trace,
    homology_trace,
    homology_traces,
    lefschetz_number,
    relative_betti,
    relative_lefschetz_number,
    self_map_endomorphism,
)
from .maps import SelfMapSpec, SimplicialMap, compose, refine
from .morse import (
    CycleTableReport,
    MultiplicityTable,
    VertexFunctional,
    cc_table,
    genericity_check,
    index_sum,
    lefschetz_cycle_table,
    microlocal_index,
    morse_multiplicity,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
