"""Exact-arithmetic Weyr structures, block compositions, and monomial
complete intersections."""

from .compose import (
    ComposeReport,
    compose,
    predicted_rank,
    predicted_structure,
    sierpinski,
    sierpinski_structure,
    verify_compose,
)
from .errors import (
    CharacteristicTooSmall,
    DimensionMismatch,
    DivisionByZero,
    DomainError,
    DuplicateEigenvalue,
    FieldMismatch,
    InvalidGrouping,
    InvalidK,
    InvalidRange,
    NonSplitSpectrum,
    NotAnEigenvalue,
    NotNilpotent,
    NotSquare,
    OrderNotApplicable,
    ParseError,
)
from .fields import QQ, FieldSpec, Scalar, char_guard, field_ops, inv, parse_field
from .matrices import (
    ExactMatrix,
    RationalSpectrum,
    block_assemble,
    mat_pow,
    rational_eigenvalues,
)
from .mci import (
    AlgebraElement,
    BasisOrder,
    GradedBasis,
    LefschetzReport,
    MciDescriptor,
    element_power,
    graded_power_map,
    group_embedding_map,
    hilbert_function,
    mci_basis,
    mult_matrix,
    multiply_elements,
    strong_lefschetz_check,
    weak_lefschetz_check,
    weyr_of_general_element,
)
from .weyr import (
    Partition,
    WeyrStructureReport,
    assemble_weyr_form,
    build_basic_weyr,
    dual_partition,
    is_basic_weyr,
    jordan_structure_at,
    partitions_of,
    weyr_structure_at,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "BasisOrder",
    "CharacteristicTooSmall",
    "ComposeReport",
    "DimensionMismatch",
    "DivisionByZero",
    "DomainError",
    "DuplicateEigenvalue",
    "ExactMatrix",
    "FieldMismatch",
    "FieldSpec",
    "GradedBasis",
    "InvalidGrouping",
    "InvalidK",
    "InvalidRange",
    "LefschetzReport",
    "MciDescriptor",
    "NonSplitSpectrum",
    "NotAnEigenvalue",
    "NotNilpotent",
    "NotSquare",
    "OrderNotApplicable",
    "ParseError",
    "Partition",
    "QQ",
    "RationalSpectrum",
    "Scalar",
    "WeyrStructureReport",
    "assemble_weyr_form",
    "block_assemble",
    "build_basic_weyr",
    "char_guard",
    "compose",
    "dual_partition",
    "element_power",
    "field_ops",
    "graded_power_map",
    "group_embedding_map",
    "hilbert_function",
    "inv",
    "is_basic_weyr",
    "jordan_structure_at",
    "mat_pow",
    "mci_basis",
    "mult_matrix",
    "multiply_elements",
    "parse_field",
    "partitions_of",
    "predicted_rank",
    "predicted_structure",
    "rational_eigenvalues",
    "sierpinski",
    "sierpinski_structure",
    "strong_lefschetz_check",
    "verify_compose",
    "weak_lefschetz_check",
    "weyr_of_general_element",
    "weyr_structure_at",
]
