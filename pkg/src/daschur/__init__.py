"""Discrete analytic functions on the Gaussian lattice, their Hardy space and Schur multipliers."""

from __future__ import annotations

from .basis import (
    BasisTable,
    CoefficientPoly,
    basis_poly,
    basis_poly_recursive,
    basis_values,
    coefficients_from_lattice,
    convolve,
    generating_function,
)
from .errors import DomainError
from .exact import GaussianRational, as_gaussian, format_gaussian, parse_gaussian
from .hardy import (
    RationalElement,
    TruncatedSeries,
    evaluate_at_lattice,
    inner_product,
    kernel_element,
    kernel_eval,
    kernel_gram,
    norm,
    psd_check,
    t_inverse,
    t_transform,
)
from .lattice import (
    LatticeFunction,
    LatticePath,
    LatticePoint,
    Window,
    delta_x,
    delta_y,
    discrete_integral,
    is_discrete_analytic,
    z_operator,
)
from .polynomial import Poly
from .schur import (
    InterpolationProblem,
    SchurCandidate,
    blaschke_lambda,
    blaschke_pm,
    ideal_membership,
    multiplier_apply,
    polynomial_generator,
    schur_check,
    schur_kernel_gram,
    solve_basic_interpolation,
)

__version__ = "0.1.0"

__all__ = [
    "BasisTable",
    "CoefficientPoly",
    "DomainError",
    "GaussianRational",
    "InterpolationProblem",
    "LatticeFunction",
    "LatticePath",
    "LatticePoint",
    "Poly",
    "RationalElement",
    "SchurCandidate",
    "TruncatedSeries",
    "Window",
    "as_gaussian",
    "basis_poly",
    "basis_poly_recursive",
    "basis_values",
    "blaschke_lambda",
    "blaschke_pm",
    "coefficients_from_lattice",
    "convolve",
    "delta_x",
    "delta_y",
    "discrete_integral",
    "evaluate_at_lattice",
    "format_gaussian",
    "generating_function",
    "ideal_membership",
    "inner_product",
    "is_discrete_analytic",
    "kernel_element",
    "kernel_eval",
    "kernel_gram",
    "multiplier_apply",
    "norm",
    "parse_gaussian",
    "polynomial_generator",
    "psd_check",
    "schur_check",
    "schur_kernel_gram",
    "solve_basic_interpolation",
    "t_inverse",
    "t_transform",
    "z_operator",
]
