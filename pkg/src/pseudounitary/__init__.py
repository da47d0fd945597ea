"""Numerical toolkit for the pseudo-unitary group U(p, q) and its Hermitian members."""

from .metric import (
    DEFAULT_TOL,
    BlockView,
    MembershipError,
    SignatureMetric,
    block_identities_residual,
    check_compact_intersection,
    fast_inverse,
    hermitian_residual,
    indefinite_form,
    is_hermitian,
    is_pseudo_unitary,
    join_blocks,
    make_metric,
    membership_residual,
    quadratic_form,
    require_member,
    split_blocks,
    unitary_residual,
)
from .spectral import (
    CLUSTER_RTOL,
    RANK_THRESHOLD,
    SPECTRAL_GAP_TOL,
    ZERO_EIGENVALUE_TOL,
    GeneratorSet,
    construct_from_generators,
    eigenvalue_bound_check,
    extract_generators,
    rank_pair,
    validate_generators,
)
from .canonical import (
    HYPERBOLIC,
    IOTA,
    T_COMPARE_TOL,
    BlockDecomposition,
    CanonicalInvariant,
    HyperbolicBlock,
    are_equivalent,
    assemble_blocks,
    block_decompose,
    canonical_invariant,
    classify_block,
    invariant_from_blocks,
    is_special,
)
from .lie import (
    PD_FLOOR,
    LieElement,
    dimension_check,
    exp_us,
    is_in_exp_image,
    log_us,
    make_hermitian_generator,
    validate_lie_algebra,
)
from .sampler import (
    SampleSpec,
    haar_unitary,
    sample_upq,
    sample_us_lie,
    sample_us_pp,
)
from .matrixfile import (
    FORMAT_VERSION,
    KIND_BLOCK,
    KIND_SQUARE,
    MatrixDocument,
    dumps_matrix,
    load_matrix,
    loads_matrix,
    save_matrix,
)

__version__ = "0.1.0"
