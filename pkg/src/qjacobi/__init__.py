"""Numerics for a doubly infinite q-Jacobi difference operator:
eigenfunction families, self-adjoint extensions, and their explicit
spectral decompositions, plus the quadratic transformation layer that
rewrites the eigenfunctions through big q-Jacobi type series.
"""

from qjacobi.eigenfunctions import (EigenParams, SpectralParam, F_k, c_fn,
                                    connection_det, d_fn, recurrence_coeffs,
                                    recurrence_residual, u_k, v_k)
from qjacobi.jacobi import (Case1, Case2, ExtensionCoeffs, boundary_wronskian,
                            defect_residual, extension_coeffs, green_kernel,
                            psi_k, resolvent_apply, wronskian)
from qjacobi.qcore import (SeriesValue, near_q_power, phi_series, qpoch,
                           qpoch_inf, theta)
from qjacobi.quadratic import (BigQJacobiParams, phi_gamma, qexp_as_3phi2,
                               quad_transform_check, quadrel1_residual)
from qjacobi.spectrum import (MassPoint, continuous_density, discrete_mass,
                              fit_two_grids, locate_discrete)
from qjacobi.transforms import (fourier_theta, inverse_transform,
                                orthogonality_matrix, q_exponential,
                                spectral_inner)

__version__ = "0.1.0"

__all__ = [
    "EigenParams", "SpectralParam", "F_k", "c_fn", "connection_det", "d_fn",
    "recurrence_coeffs", "recurrence_residual", "u_k", "v_k",
    "Case1", "Case2", "ExtensionCoeffs", "boundary_wronskian",
    "defect_residual", "extension_coeffs", "green_kernel", "psi_k",
    "resolvent_apply", "wronskian",
    "SeriesValue", "near_q_power", "phi_series", "qpoch", "qpoch_inf",
    "theta",
    "BigQJacobiParams", "phi_gamma", "qexp_as_3phi2", "quad_transform_check",
    "quadrel1_residual",
    "MassPoint", "continuous_density", "discrete_mass", "fit_two_grids",
    "locate_discrete",
    "fourier_theta", "inverse_transform", "orthogonality_matrix",
    "q_exponential", "spectral_inner",
    "__version__",
]
