"""Scalability of finite frames.

Decide whether a frame {phi_i} admits nonnegative weights w with
sum_i w_i phi_i phi_i^* = I, find the unique scaling when the outer
products are independent, enumerate all minimal scalings otherwise, and
compute spark, full spark, outer-product spark and the complement property.
"""

from .errors import (
    DecompositionError,
    DimensionError,
    ExponentialGuardError,
    FrameScaleError,
    RoutingError,
    ValidationError,
)
from .frames import (
    Frame,
    TightnessInfo,
    affinely_independent_outer_products,
    complement_property,
    frame_operator,
    is_full_spark,
    normalize_frame,
    outer_product_columns,
    outer_products_independent,
    outer_spark,
    random_frame,
    spark,
    tightness,
)
from .hermitian import (
    HermitianMatrix,
    RealVectorization,
    ScalarField,
    Tolerances,
    devectorize,
    least_squares,
    numerical_rank,
    outer_product,
    trace_inner,
    vectorize,
)
from .scaling import (
    ScalingKind,
    ScalingMatrix,
    ScalingOutcome,
    ScalingPolytope,
    ScalingStatus,
    ScalingVector,
    build_scaling_matrix,
    caratheodory_reduce,
    decompose_scaling,
    enumerate_minimal_scalings,
    is_minimal_scaling,
    is_scalable,
    scaling_outcome,
    solve_unique_scaling,
    verify_scaling,
)

__version__ = "0.1.0"
