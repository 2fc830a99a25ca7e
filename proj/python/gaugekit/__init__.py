"""Numerical toolkit for classical gauge theory at desk scale.

The heavy lifting lives in the C++ extension; this package re-exports the
main operations: matrix Lie kernels, Clifford algebra arithmetic, ordered
products, and the worked fixtures (monopole, Maxwell, Levi-Civita).
"""

from ._core import (
    CliffordElement,
    Signature,
    adjoint,
    bch3,
    bracket,
    command_names,
    constant_minus_is_coboundary,
    double_cover_is_coboundary,
    gamma_matrices,
    idempotents,
    mat_exp,
    monopole_flux,
    monopole_loop_gap,
    pauli_matrices,
    pin_to_orthogonal,
    plane_wave_maxwell_residuals,
    rk4_fundamental,
    run_command,
    sphere_christoffel,
    time_ordered_exp,
    twisted_adjoint,
    validate_cocycle_file,
    volume_element,
)

__all__ = [
    "CliffordElement",
    "Signature",
    "adjoint",
    "bch3",
    "bracket",
    "command_names",
    "constant_minus_is_coboundary",
    "double_cover_is_coboundary",
    "gamma_matrices",
    "idempotents",
    "mat_exp",
    "monopole_flux",
    "monopole_loop_gap",
    "pauli_matrices",
    "pin_to_orthogonal",
    "plane_wave_maxwell_residuals",
    "rk4_fundamental",
    "run_command",
    "sphere_christoffel",
    "time_ordered_exp",
    "twisted_adjoint",
    "validate_cocycle_file",
    "volume_element",
]
