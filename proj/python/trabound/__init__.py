"""Bound states of the short-range potential with 1/r, 1/r^2 and 1/r^3 singularities."""

from ._trabound import (
    DomainError,
    NumericalError,
    classify_shape,
    jacobi_eval,
    max_basis_index,
    normalization_c,
    potential_value,
    r_of_x,
    solve_spectrum,
    wavefunction,
    x_of_r,
)

__all__ = [
    "DomainError",
    "NumericalError",
    "classify_shape",
    "jacobi_eval",
    "max_basis_index",
    "normalization_c",
    "potential_value",
    "r_of_x",
    "solve_spectrum",
    "wavefunction",
    "x_of_r",
]
