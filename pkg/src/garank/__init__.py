"""Rank, determinant, characteristic polynomial, inverse and SVD of multivectors
in complexified Clifford algebras, with a matrix-representation oracle."""

from .algebra import (Multivector, Signature, blade_indices, blade_mask, blade_name,
                      blade_product, complex_conjugation, geometric_product,
                      grade_involution, grade_projection, hermitian_conjugation, is_unitary,
                      norm, norm_squared, reversion, scalar_product, triangle_conjugation)
from .charpoly import CharPoly, characteristic_coefficients, determinant, faddeev_leverrier, inverse
from .coeff import EXACT, FLOAT, GaussianRational
from .errors import (ClosingIdentityError, GARankError, MathError, ModeMismatchError,
                     NotInImageError, NotNormalError, ParseError, SignatureMismatchError,
                     SingularMultivectorError, ValidationError)
from .matrep import (GASVD, Representation, build_representation, matrix_charpoly, matrix_det,
                     matrix_rank, matrix_svd, represent, svd_ga, unrepresent)
from .parser import evaluate, parse, parse_and_evaluate, to_source
from .rank import RankResult, is_normal, rank, rank_general, rank_normal, rank_small_dim

__version__ = "0.1.0"

__all__ = [
    "Multivector",
    "Signature",
    "blade_indices",
    "blade_mask",
    "blade_name",
    "blade_product",
    "complex_conjugation",
    "geometric_product",
    "grade_involution",
    "grade_projection",
    "hermitian_conjugation",
    "is_unitary",
    "norm",
    "norm_squared",
    "reversion",
    "scalar_product",
    "triangle_conjugation",
    "CharPoly",
    "characteristic_coefficients",
    "determinant",
    "faddeev_leverrier",
    "inverse",
    "EXACT",
    "FLOAT",
    "GaussianRational",
    "ClosingIdentityError",
    "GARankError",
    "MathError",
    "ModeMismatchError",
    "NotInImageError",
    "NotNormalError",
    "ParseError",
    "SignatureMismatchError",
    "SingularMultivectorError",
    "ValidationError",
    "GASVD",
    "Representation",
    "build_representation",
    "matrix_charpoly",
    "matrix_det",
    "matrix_rank",
    "matrix_svd",
    "represent",
    "svd_ga",
    "unrepresent",
    "evaluate",
    "parse",
    "parse_and_evaluate",
    "to_source",
    "RankResult",
    "is_normal",
    "rank",
    "rank_general",
    "rank_normal",
    "rank_small_dim",
]
