"""Exact L-polynomials, class numbers and defect-2 coefficient analysis."""

from .arith import QuadExt, Rational, format_rational, parse_rational, pow2_half, quad_sign
from .compositions import (
    Composition,
    count,
    decode,
    encode,
    enumerate_compositions,
    iter_index_range,
)
from .defect2 import (
    Defect2Report,
    SignReport,
    Theta,
    a_list_theta_recurrence,
    a_n_theta,
    a_n_theta_exact,
    a_n_theta_recurrence,
    analyze,
    c_theta,
    classify,
    count_signs,
    cr_theta,
    residue_class,
    verify_symmetry,
    verify_theorem_signs,
)
from .errors import ConsistencyError, ValidationError
from .lpoly import (
    LPolynomial,
    SSequence,
    TraceData,
    class_number,
    class_number_formula,
    coeffs_by_compositions,
    coeffs_by_parapermanent,
    coeffs_by_recurrence,
    coeffs_from_traces,
    complete,
    literal_matrix,
    n_from_traces,
    oracle_expand,
    s_from_counts,
    s_from_traces,
)
from .parapermanent import (
    TriangularMatrix,
    factorial_product,
    pper_by_compositions,
    pper_by_last_row,
    pper_composition_sum,
    pper_prefixes,
)

__version__ = "0.1.0"

__all__ = [
    "QuadExt",
    "Rational",
    "format_rational",
    "parse_rational",
    "pow2_half",
    "quad_sign",
    "Composition",
    "count",
    "decode",
    "encode",
    "enumerate_compositions",
    "iter_index_range",
    "Defect2Report",
    "SignReport",
    "Theta",
    "a_list_theta_recurrence",
    "a_n_theta",
    "a_n_theta_exact",
    "a_n_theta_recurrence",
    "analyze",
    "c_theta",
    "classify",
    "count_signs",
    "cr_theta",
    "residue_class",
    "verify_symmetry",
    "verify_theorem_signs",
    "ConsistencyError",
    "ValidationError",
    "LPolynomial",
    "SSequence",
    "TraceData",
    "class_number",
    "class_number_formula",
    "coeffs_by_compositions",
    "coeffs_by_parapermanent",
    "coeffs_by_recurrence",
    "coeffs_from_traces",
    "complete",
    "literal_matrix",
    "n_from_traces",
    "oracle_expand",
    "s_from_counts",
    "s_from_traces",
    "TriangularMatrix",
    "factorial_product",
    "pper_by_compositions",
    "pper_by_last_row",
    "pper_composition_sum",
    "pper_prefixes",
    "__version__",
]
