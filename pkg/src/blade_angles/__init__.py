"""Principal angles, angle bivectors and blade-product identities in the
Clifford algebra of R^n."""

from .algebra import (
    DEFAULT_TOL,
    Algebra,
    Multivector,
    Tolerance,
    algebra,
    anticommutator,
    commutator,
    dual,
    fat_dot,
    geometric_product,
    grade_involution,
    grade_project,
    hestenes_inner,
    left_contraction,
    mv_cosh,
    mv_exp,
    mv_sinh,
    outer_product,
    reverse,
    right_contraction,
    scalar_product,
)
from .angles import (
    AngleReport,
    asymmetric_angle,
    complementary_angle,
    oriented_angles,
    projection_factor,
    symmetrized_angles,
)
from .bivector import (
    AngleBivector,
    angle_bivector,
    exp_angle_bivector,
    geodesic_length,
    geodesic_sample,
    oriented_angle_bivector,
    plucker_decomposition,
    rotor_transport,
)
from .blades import Blade, Subspace, blade_from_frame, blade_from_vectors, certify_blade
from .errors import (
    BladeAnglesError,
    DimensionMismatchError,
    GradeError,
    MalformedProductError,
    NonConvergenceError,
    NotABladeError,
    RankDeficientError,
    SubspaceMismatchError,
    ZeroBladeError,
)
from .identities import HitzerRecovery, IdentityResult, hitzer_recover
from .principal import (
    PODecomposition,
    PrincipalData,
    partially_orthogonal,
    po_decompose,
    principal_data,
    principal_data_from_bases,
    relative_orientation,
    svd_small,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "Algebra",
    "Multivector",
    "Tolerance",
    "algebra",
    "anticommutator",
    "commutator",
    "dual",
    "fat_dot",
    "geometric_product",
    "grade_involution",
    "grade_project",
    "hestenes_inner",
    "left_contraction",
    "mv_cosh",
    "mv_exp",
    "mv_sinh",
    "outer_product",
    "reverse",
    "right_contraction",
    "scalar_product",
    "AngleReport",
    "asymmetric_angle",
    "complementary_angle",
    "oriented_angles",
    "projection_factor",
    "symmetrized_angles",
    "AngleBivector",
    "angle_bivector",
    "exp_angle_bivector",
    "geodesic_length",
    "geodesic_sample",
    "oriented_angle_bivector",
    "plucker_decomposition",
    "rotor_transport",
    "Blade",
    "Subspace",
    "blade_from_frame",
    "blade_from_vectors",
    "certify_blade",
    "HitzerRecovery",
    "IdentityResult",
    "hitzer_recover",
    "PODecomposition",
    "PrincipalData",
    "partially_orthogonal",
    "po_decompose",
    "principal_data",
    "principal_data_from_bases",
    "relative_orientation",
    "svd_small",
    "BladeAnglesError",
    "DimensionMismatchError",
    "GradeError",
    "MalformedProductError",
    "NonConvergenceError",
    "NotABladeError",
    "RankDeficientError",
    "SubspaceMismatchError",
    "ZeroBladeError",
]

