"""Exact counting of diagonal-equation solutions and moment subset sums over GF(q)."""

__version__ = "0.1.0"

from .field import FieldElement, FieldSpec, PolySpec, make_field, field_from_order  # noqa: E402
from .qsqrt import QSqrtNumber  # noqa: E402
from .diagonal import (  # noqa: E402
    LimitExceededError,
    WeightedDiagonalSystem,
    count_points_bruteforce,
    count_points_dp,
)
from .moments import (  # noqa: E402
    MomentInstance,
    count_subsets_dp,
    count_subsets_enum,
    count_subsets_image,
    count_subsets_inclusion_exclusion,
)
from .bounds import CountReport, verify_instance  # noqa: E402
from .kernels import BACKEND  # noqa: E402

__all__ = [
    "FieldElement",
    "FieldSpec",
    "PolySpec",
    "make_field",
    "field_from_order",
    "QSqrtNumber",
    "LimitExceededError",
    "WeightedDiagonalSystem",
    "count_points_bruteforce",
    "count_points_dp",
    "MomentInstance",
    "count_subsets_dp",
    "count_subsets_enum",
    "count_subsets_image",
    "count_subsets_inclusion_exclusion",
    "CountReport",
    "verify_instance",
    "BACKEND",
]
