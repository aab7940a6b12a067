"""Weighted Hardy space of the annulus r < |z| < 1.

Thin python surface over the C++ core: Laurent arithmetic, reproducing
kernels with Pick-matrix multiplier certificates, inner-outer and
subinner/free-outer factorization, cyclicity residuals and the embedding
into the two-variable ball.
"""

from ._core import (
    AnnulusContext,
    BoundKind,
    CyclicityResult,
    DAEmbedding,
    DiskFactorization,
    ExtremalResult,
    FactorEvidence,
    FactorizationResult,
    FactorPath,
    FreeOuterResult,
    IsometryCheck,
    KernelId,
    LaurentPoly,
    LeftOuterResidual,
    MixedLowerBound,
    MomentFunctional,
    MultNormBounds,
    NCSeries,
    OpError,
    ParseError,
    PickCertificate,
    PolyRoots,
    RationalLaurent,
    Space,
    SubinnerEvidence,
    SubinnerResult,
    Ternary,
    ValidationError,
    annulus_weight,
    autocorrelation,
    ball2_kernel,
    binomial,
    boundary_sup_norm,
    certification_grid,
    cluster_roots,
    cyclicity_curve,
    cyclicity_residual,
    da_embedding_coeffs,
    da_isometry_check,
    disk0_inner_outer,
    divide_exact,
    embed_point,
    eval_at,
    expand_on_annulus,
    extremal_search,
    factor_subinner_free_outer,
    fejer_riesz_outer,
    from_roots,
    inner_product,
    is_free_outer,
    is_subinner,
    kernel_eval,
    kernel_expansion,
    left_outer_residual,
    mixed_mult_lower_bound,
    mixed_multiplier_bound,
    moment_functional,
    moment_vector,
    moments_equal,
    monomial_norm_sq,
    mult_norm_bounds,
    multiply,
    nc_lift,
    norm,
    poly_inner_outer,
    poly_roots,
    reflect_to_disk0,
    reproducing_tail_bound,
)

__version__ = "0.1.0"
