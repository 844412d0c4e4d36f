"""Ball-volume censuses and growth entropy for Bruhat-Tits buildings.

Rank one is simulated explicitly as regular trees; higher rank is handled
through exact affine Weyl group combinatorics and growth series.
"""

from .affine import (
    AffineCensus,
    AffineWeylElement,
    ApartmentPoint,
    DistanceLengthBand,
    MetricNormalization,
    TranslationLength,
    affine_root_value,
    apartment_distance,
    apartment_distance_sq,
    check_equivariance,
    enumerate_affine_weyl,
    extension_image,
    fit_length_distance_band,
    scale_embed,
    simple_affine_reflections,
    translation_length,
    vertex_lattice_member,
)
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    DomainError,
    GrowthError,
    InsufficientSamples,
    InvalidRank,
    NonpositiveVolume,
    NotDominant,
    NotInGroup,
    UnknownNormalization,
)
from .growth import (
    EntropyReport,
    TheoremReport,
    affine_poincare_coeffs,
    entropy_estimate,
    metric_ball_volume,
    s_of_q_r,
    s_sequence,
    verify_theorem1,
)
from .rootsystems import (
    CartanType,
    Root,
    RootSystem,
    build_root_system,
    enumerate_finite_weyl,
    weyl_poincare_polynomial,
)
from .series import IntPolynomial, IntSeries, series_inverse_one_minus, series_mul
from .trees import (
    ExtensionParams,
    IntersectionCensus,
    TreeBall,
    alpha,
    ball_size,
    build_extension_tree,
    census_intersection,
    census_table,
    dot_text,
    predicted_census,
    tree_entropy_closed_form,
)

__version__ = "0.1.0"
