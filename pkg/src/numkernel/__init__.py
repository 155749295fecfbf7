"""Numerical kernel package initialization."""

from .tolerance import TolerancePolicy, DEFAULT_TOLERANCES
from .dual import (
    DualScalar, real, derivatives, gradient, jacobian, evaluate,
    sin, cos, tan, exp, log, sqrt, power,
)
from .linalg import (
    as_matrix, as_vector, rank_factor, pseudo_inverse, smallest_singular_value, solve_small,
    RankFactorization,
)
from .affine import (
    AffineMap, AffineSubspace,
    affine_intersect, affine_image, affine_preimage, affine_equal, affine_is_subset,
)
from .newton import gauss_newton, NewtonResult

__all__ = [
    'TolerancePolicy', 'DEFAULT_TOLERANCES',
    'DualScalar', 'real', 'derivatives', 'gradient', 'jacobian', 'evaluate',
    'sin', 'cos', 'tan', 'exp', 'log', 'sqrt', 'power',
    'as_matrix', 'as_vector', 'rank_factor', 'pseudo_inverse', 'smallest_singular_value',
    'solve_small', 'RankFactorization',
    'AffineMap', 'AffineSubspace',
    'affine_intersect', 'affine_image', 'affine_preimage', 'affine_equal', 'affine_is_subset',
    'gauss_newton', 'NewtonResult',
]
