"""Generalized two-norms and the 2-variation of vector-valued functions.

The package pairs a small functional-analysis core (two-norm pairings on
complex vector spaces, seminorm products, the symmetric two-norm on the
bounded-variation space) with a sound-by-construction estimator: adaptive
partition refinement whose level sums are certified lower bounds on the
variation supremum.  A randomized harness re-checks every algebraic law
at runtime, and the ``bivar`` CLI exposes the lot with reproducible JSON
output.
"""

from .axioms import (
    AxiomReport,
    CheckResult,
    check_2G_axioms,
    check_pairing_axioms,
    check_slice_subspaces,
    check_variation_theorems,
)
from .bv import (
    BoundReport,
    BVFunction,
    bv_linear_combine,
    bv_scale,
    bv_two_norm_2G,
    is_2k_bounded,
    variation_via_seminorm,
)
from .errors import (
    ArityMismatch,
    BivarError,
    CatalogError,
    CompositionError,
    DimensionMismatch,
    DomainError,
    EvaluationError,
    ExpressionError,
    MembershipError,
    VariationNotConverged,
)
from .functions import (
    CATALOG,
    CatalogEntry,
    FunctionSpec,
    Interval,
    TaggedAdversary,
    adversary_partition_sum,
    catalog_entry,
    catalog_ids,
    combine_specs,
    eval_function,
    parse_constant_vector,
    parse_function,
    resolve_function,
    scale_spec,
    uniform_grid,
)
from .spaces import (
    ABSTOL,
    RELTOL,
    Seminorm,
    TwoNormPairing,
    Vec,
    broken_g3,
    close,
    coordinate_seminorm,
    euclidean_modulus,
    euclidean_seminorm,
    eval_pairing,
    leq_slack,
    modulus_product,
    modulus_seminorm,
    pairing_by_name,
    reverse_triangle_gap,
    seminorm_product,
    vec,
)
from .variation import (
    LevelTrace,
    Partition,
    PointwiseBound,
    RefineConfig,
    VariationEstimate,
    estimate_variation,
    merge_partitions,
    pointwise_bound_check,
    refine,
    split_check,
    variation_sum,
)

__version__ = "0.1.0"
