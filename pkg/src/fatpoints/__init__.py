"""Fat point schemes on P1 x P1.

Decides the arithmetically Cohen-Macaulay property from the multiplicity
grid alone, computes the degrees and explicit forms of the minimal
separators of every fat point, and verifies everything against an
independent exact linear-algebra oracle.  All arithmetic is exact.
"""

from .degrees import (
    SeparatorDegreeSet,
    TruncatedSums,
    hilbert_update,
    ruling_separator_degrees,
    separator_degrees,
    separator_form_factors,
    separator_forms,
    truncated_sums,
)
from .errors import (
    FatPointsError,
    InvalidGridError,
    InvalidSchemeError,
    NotACMError,
    PointNotInSupportError,
    WindowError,
    WindowInsufficiencyError,
)
from .exactlinalg import kernel_basis, left_kernel_basis, rank
from .forms import (
    BihomForm,
    ONE,
    PointPair,
    X0,
    X1,
    Y0,
    Y1,
    derivative_condition,
    line_through_first,
    line_through_second,
    normalize_projective,
)
from .grid import (
    BoundViolation,
    CanonicalizationResult,
    MultiplicityGrid,
    build_sz,
    canonicalize,
    check_multiplicity_bounds,
    find_incomparable,
    is_acm,
    tuple_geq,
)
from .oracle import (
    HilbertTable,
    IdealPieceBasis,
    SchemeOracle,
    hilbert_function,
    ideal_piece_basis_by_span,
    ideal_piece_dim,
    is_separator,
    minimal_generator_degrees,
    ruling_zero_predicate,
)
from .scheme import FatPointScheme, default_points

__version__ = "0.1.0"

__all__ = [
    "BihomForm",
    "BoundViolation",
    "CanonicalizationResult",
    "FatPointScheme",
    "FatPointsError",
    "HilbertTable",
    "IdealPieceBasis",
    "InvalidGridError",
    "InvalidSchemeError",
    "MultiplicityGrid",
    "NotACMError",
    "ONE",
    "PointNotInSupportError",
    "PointPair",
    "SchemeOracle",
    "SeparatorDegreeSet",
    "TruncatedSums",
    "WindowError",
    "WindowInsufficiencyError",
    "X0",
    "X1",
    "Y0",
    "Y1",
    "build_sz",
    "canonicalize",
    "check_multiplicity_bounds",
    "default_points",
    "derivative_condition",
    "find_incomparable",
    "hilbert_function",
    "hilbert_update",
    "ideal_piece_basis_by_span",
    "ideal_piece_dim",
    "is_acm",
    "is_separator",
    "kernel_basis",
    "left_kernel_basis",
    "line_through_first",
    "line_through_second",
    "minimal_generator_degrees",
    "normalize_projective",
    "rank",
    "ruling_separator_degrees",
    "ruling_zero_predicate",
    "separator_degrees",
    "separator_form_factors",
    "separator_forms",
    "truncated_sums",
    "tuple_geq",
]
