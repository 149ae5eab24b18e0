from .field import Cyclo, Field, FieldSpec, cyclotomic_poly, field_make, parse_rational, scalar_to_json
from .laurent import LaurentPoly, add_exp, box, in_box, laurent_partial, neg_exp, unit_exp, zero_exp
from .linalg import (
    Echelon,
    SolveResult,
    SparseMatrix,
    Subspace,
    Vec,
    image_basis,
    kernel_basis,
    left_kernel_basis,
    rank,
    solve,
    verify_certificate,
)

__all__ = [
    "Cyclo", "Field", "FieldSpec", "cyclotomic_poly", "field_make", "parse_rational", "scalar_to_json",
    "LaurentPoly", "add_exp", "box", "in_box", "laurent_partial", "neg_exp", "unit_exp", "zero_exp",
    "Echelon", "SolveResult", "SparseMatrix", "Subspace", "Vec", "image_basis", "kernel_basis",
    "left_kernel_basis", "rank", "solve", "verify_certificate",
]
