"""Exact computations with broken quadrics on the variety of completed
quadrics, compatibility with finite algebra actions, Iarrobino's symmetric
decomposition, and torus limits identifying the two."""

from .fields import QQ, PrimeField
from .poly import MultiPoly, UniPoly
from .linalg import Matrix, all_minor_levels, index_tuples, lowest_order, rank_kernel_image
from .subspace import Flag, Subspace
from .forms import (
    SymForm,
    congruence_diagonalize,
    gram_from_terms,
    subquotient_form,
    wedge_power,
    wedge_powers,
)
from .broken import (
    BrokenQuadric,
    ExteriorTuple,
    NotInPatchError,
    ReconstructionError,
    SingularFamilyError,
    TruncationCapError,
    canonical_class,
    change_basis,
    dualize,
    from_exterior,
    limit_dvr,
    limit_minor,
    to_exterior,
    tyrrell_coords,
    tyrrell_membership,
    tyrrell_point,
)
from .compat import (
    ChartSystem,
    GradedReport,
    OperatorSpace,
    anticompatible_space,
    companion_matrix,
    compat_equations,
    compatible_space,
    invariant_quadrics,
    is_anticompatible,
    is_compatible,
    jordan_block,
    jordan_fiber_point,
    selfdual_graded_report,
    tangent_dim,
)
from .artin import (
    ArtinAlgebra,
    ArtinModule,
    Diagnostics,
    SymDecomp,
    apolar_algebra,
    assoc_graded,
    hilbert_function,
    loewy_filtration,
    orientation_to_quadric,
    power_filtration,
    socle_degree,
    symmetric_decomposition,
    validate,
)
from .torus import (
    TorusLimitResult,
    bb_limit_ideal,
    graded_dims,
    homogenized_pairing_family,
    torus_limit,
    torus_limit_oracle,
)

__version__ = "0.1.0"
