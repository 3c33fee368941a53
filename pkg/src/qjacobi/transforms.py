"""Forward and inverse spectral transforms, and the q-exponential.

The transform pairs sequences with functions on the spectrum: the
forward map sends xi to (F xi)(x) = sum_k xi_k conj(psi_k(x)), and the
inverse integrates against psi_l over the continuous density plus the
discrete masses.  The q-exponential is the t-parameter diagonal of the
same eigenfunction family, so it inherits both evaluation routes and the
three-term recurrence in k.
"""
from __future__ import annotations

import cmath
import math
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import eigenfunctions as ef
from . import spectrum as sp_mod
from .errors import DomainViolation, QuadratureFailure, SingularParameter
from .jacobi import (
    Case1,
    ExtensionCoeffs,
    Regime,
    alpha_F,
    coeff_alpha,
    gamma_phase,
    psi_k,
)
from .qcore import check_q, phi_series, qpoch_inf, theta

QUAD_TOL = 1e-9
MAX_PANELS = 240
K_RANGE_LIMIT = 8

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gl(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _GL_CACHE:
        _GL_CACHE[n] = leggauss(n)
    return _GL_CACHE[n]


# ---------------------------------------------------------------------------
# forward transform
# ---------------------------------------------------------------------------

def psi_vector(regime: Regime, ext: ExtensionCoeffs, ks: Sequence[int],
               x: float) -> np.ndarray:
    """psi_k(x) over the index list ks, at a real spectral point x != +-1.

    Inside the band the A u + conj(A) v combination is evaluated as
    written.  Outside it the same function is regrouped into
    h(y) alpha F(y) + h(1/y) alpha F(1/y): at and near mass points the
    first coefficient vanishes, and the grouped form keeps the huge
    dominant branch from swamping the residual value.
    """
    xr = float(x)
    if abs(xr) <= 1.0:
        spv = ef.SpectralParam.from_z(complex(xr))
        return np.array([psi_k(regime, ext, spv, k) for k in ks], dtype=complex)
    y_out = sp_mod.y_outside(xr)
    sp_in = ef.SpectralParam.from_y(1.0 / y_out)
    h_in = sp_mod.weight_coefficient(regime, ext, 1.0 / y_out)
    inner = np.array([h_in * alpha_F(regime, sp_in, k) for k in ks],
                     dtype=complex)
    h_out = sp_mod.weight_coefficient(regime, ext, y_out)
    if abs(h_out) <= 1e-6 * sp_mod.weight_scale(regime, ext, y_out):
        # x sits on a mass point: the outer branch vanishes there exactly,
        # and its roundoff leakage would swamp the residual value
        return inner
    sp_out = ef.SpectralParam.from_y(y_out)
    return inner + np.array([h_out * alpha_F(regime, sp_out, k) for k in ks],
                            dtype=complex)


def fourier_theta(regime: Regime, ext: ExtensionCoeffs,
                  xi: dict[int, complex], x: float) -> complex:
    """(F xi)(x) = sum_k xi_k conj(psi_k(x)) over the finite support."""
    ks = sorted(xi)
    vec = psi_vector(regime, ext, ks, x)
    return complex(sum(xi[k] * vec[i].conjugate() for i, k in enumerate(ks)))


# ---------------------------------------------------------------------------
# quadrature over the continuous spectrum
# ---------------------------------------------------------------------------

def _continuous_weight(regime: Regime, ext: ExtensionCoeffs, chi: float) -> float:
    h = sp_mod.weight_coefficient(regime, ext, cmath.exp(1j * chi))
    return 1.0 / (2.0 * math.pi * abs(h) ** 2)


def _endpoint_edges(f_bound: Callable[[float], float], tol: float) -> list[float]:
    """Panel edges on (0, pi), geometric toward both endpoints.

    The weight vanishes quadratically at chi = 0 and pi, so the skipped
    end segments [0, delta] and [pi - delta, pi] are controlled by the
    integrand value at delta; delta shrinks until both contribute less
    than a tenth of the tolerance.
    """
    delta = 0.02
    while True:
        if (f_bound(delta) * delta < 0.1 * tol
                and f_bound(math.pi - delta) * delta < 0.1 * tol):
            break
        delta *= 0.25
        if delta < 1e-12:
            raise QuadratureFailure(
                "endpoint refinement did not tame the integrand")
    left = [delta]
    while left[-1] * 4.0 < 0.5 * math.pi:
        left.append(left[-1] * 4.0)
    return left + [math.pi - e for e in reversed(left)]


def _adaptive_quadrature(f: Callable[[float], np.ndarray], edges: list[float],
                         tol: float, max_panels: int = MAX_PANELS):
    """Integrate an array-valued f over the panels spanned by edges.

    Each panel carries a Gauss-Legendre 16/32 pair; the 32-point value is
    kept and the per-entry difference is the error estimate.  The worst
    panel is split until the summed estimate drops below tol, or
    QuadratureFailure once the panel budget is spent.
    """
    x16, w16 = _gl(16)
    x32, w32 = _gl(32)

    def make_panel(a: float, b: float):
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        v16 = None
        for xnode, wnode in zip(x16, w16):
            term = f(mid + half * xnode) * (wnode * half)
            v16 = term if v16 is None else v16 + term
        v32 = None
        for xnode, wnode in zip(x32, w32):
            term = f(mid + half * xnode) * (wnode * half)
            v32 = term if v32 is None else v32 + term
        err = float(np.max(np.abs(v32 - v16)))
        return [v32, err, a, b]

    panels = [make_panel(a, b) for a, b in zip(edges, edges[1:])]
    while True:
        total_err = sum(p[1] for p in panels)
        if total_err <= tol:
            break
        if len(panels) >= max_panels:
            raise QuadratureFailure(
                f"error estimate {total_err:.3e} above {tol:.1e} after "
                f"{len(panels)} panels")
        worst = max(range(len(panels)), key=lambda j: panels[j][1])
        _, _, a, b = panels[worst]
        mid = 0.5 * (a + b)
        panels[worst:worst + 1] = [make_panel(a, mid), make_panel(mid, b)]
    total = panels[0][0]
    for p in panels[1:]:
        total = total + p[0]
    return total, total_err


# ---------------------------------------------------------------------------
# orthogonality and inversion
# ---------------------------------------------------------------------------

def _check_range(ks: Sequence[int]) -> list[int]:
    out = [int(k) for k in ks]
    if not out:
        raise DomainViolation("empty index range")
    if any(abs(k) > K_RANGE_LIMIT for k in out):
        raise DomainViolation(
            f"indices must stay within [-{K_RANGE_LIMIT}, {K_RANGE_LIMIT}]")
    return out


def orthogonality_matrix(regime: Regime, ext: ExtensionCoeffs,
                         k_range: Sequence[int], l_range: Sequence[int],
                         tol: float = QUAD_TOL) -> np.ndarray:
    """Gram matrix G_{kl} of the spectral vectors, continuous part plus
    all discrete masses; equals the identity when the transform pair is
    mutually inverse."""
    ks = _check_range(k_range)
    ls = _check_range(l_range)
    idx = sorted(set(ks) | set(ls))

    def f(chi: float) -> np.ndarray:
        vec = psi_vector(regime, ext, idx, math.cos(chi))
        return np.outer(vec, vec.conj()) * _continuous_weight(regime, ext, chi)

    edges = _endpoint_edges(lambda d: float(np.max(np.abs(f(d)))), tol)
    cont, _ = _adaptive_quadrature(f, edges, tol)

    disc = np.zeros((len(idx), len(idx)), dtype=complex)
    for p in sp_mod.collect_mass_points(regime, ext, idx):
        comp = np.array([sp_mod.discrete_component(regime, p, k) for k in idx])
        disc += p.m0 * np.outer(comp, comp.conj())

    full = cont + disc
    pos = {k: i for i, k in enumerate(idx)}
    return np.array([[full[pos[k], pos[l]] for l in ls] for k in ks])


def inverse_transform(regime: Regime, ext: ExtensionCoeffs,
                      F_xi: Callable[[float], complex], l: int,
                      tol: float = QUAD_TOL) -> complex:
    """Coefficient xi_l recovered from the transform evaluator F_xi."""
    return complex(inverse_vector(regime, ext, F_xi, [l], tol)[0])


def inverse_vector(regime: Regime, ext: ExtensionCoeffs,
                   F_xi: Callable[[float], complex], ls: Sequence[int],
                   tol: float = QUAD_TOL) -> np.ndarray:
    """Inverse transform over several indices with one shared quadrature."""
    ls = [int(l) for l in ls]

    def f(chi: float) -> np.ndarray:
        vec = psi_vector(regime, ext, ls, math.cos(chi))
        return (F_xi(math.cos(chi)) * _continuous_weight(regime, ext, chi)) * vec

    edges = _endpoint_edges(lambda d: float(np.max(np.abs(f(d)))), tol)
    cont, _ = _adaptive_quadrature(f, edges, tol)

    disc = np.zeros(len(ls), dtype=complex)
    for p in sp_mod.collect_mass_points(regime, ext, ls):
        w = sp_mod.point_weight(p)
        fx = F_xi(p.x0)
        for i, l in enumerate(ls):
            disc[i] += fx * p.p0 * sp_mod.discrete_component(regime, p, l) * w
    return cont + disc


def spectral_inner(regime: Regime, ext: ExtensionCoeffs,
                   F_xi: Callable[[float], complex],
                   F_eta: Callable[[float], complex],
                   moment: int = 0, tol: float = QUAD_TOL) -> complex:
    """Inner product of two transforms against the spectral measure,
    optionally weighted by x^moment (moment 1 gives the quadratic form
    of the operator itself)."""

    def f(chi: float) -> np.ndarray:
        x = math.cos(chi)
        val = (F_xi(x) * F_eta(x).conjugate() * x ** moment
               * _continuous_weight(regime, ext, chi))
        return np.array([val])

    edges = _endpoint_edges(lambda d: float(np.max(np.abs(f(d)))), tol)
    cont, _ = _adaptive_quadrature(f, edges, tol)

    disc = 0.0 + 0.0j
    for p in sp_mod.collect_mass_points(regime, ext, [0]):
        disc += (F_xi(p.x0) * F_eta(p.x0).conjugate() * p.x0 ** moment
                 * sp_mod.point_weight(p))
    return complex(cont[0] + disc)


# ---------------------------------------------------------------------------
# the q-exponential
# ---------------------------------------------------------------------------

def _qexp_singular(t: complex, q: float) -> bool:
    """(q t^2; q^2)_infty vanishes iff t^2 is on the lattice q^(-1-2j)."""
    w = q * t * t
    if w == 0:
        return False
    if abs(w.imag) > 1e-10 * abs(w) or w.real <= 0.0:
        return False
    j = round(math.log(w.real) / (2.0 * math.log(q)))
    return j <= 0 and abs(w.real - q ** (2 * j)) < 1e-10 * w.real


def q_exponential(z: complex, t: complex, q: float, route: str = "auto") -> complex:
    """E_q(z; t): the q-exponential with spectral variable z.

    Equals ((-t; q^(1/2))_inf / (q t^2; q^2)_inf) 2phi1(q^(1/4) y,
    q^(1/4)/y; -q^(1/2); q^(1/2), -t) at z = (y + 1/y)/2.  Small |t| sums
    the series directly; larger |t| re-expands through the connection
    formula of the eigenfunction family at base q^(1/2).  E_q(z; 0) = 1.
    """
    check_q(q)
    tc = complex(t)
    if tc == 0:
        return 1.0 + 0.0j
    if _qexp_singular(tc, q):
        raise SingularParameter(
            f"t^2 = {tc * tc} sits on the pole lattice of (q t^2; q^2)_inf")
    p = math.sqrt(q)
    root_p = math.sqrt(p)
    spv = ef.SpectralParam.from_z(complex(z))
    pref = (qpoch_inf(-tc, p).value / qpoch_inf(q * tc * tc, q * q).value)
    if route == "auto":
        route = "raw" if abs(tc) < ef.RAW_ARG_MAX else "connect"
    if route == "raw":
        if abs(tc) >= 1.0:
            raise DomainViolation(
                f"|t| = {abs(tc):.3g} outside the series radius; use the "
                f"connection route")
        series = phi_series([root_p * spv.y, root_p / spv.y], [-p], p, -tc).value
        return pref * series
    if route == "connect":
        params = ef.EigenParams(a=root_p, t=-tc, q=p)
        return pref * ef.u_k(params, spv, 0, route="connect")
    raise DomainViolation(f"unknown route {route!r}")


def qexp_recurrence_residual(z: complex, t: complex, q: float, k: int) -> float:
    """Residual of E_(q^2)(z; t q^k), prefactor stripped, in the three-term
    recurrence of the eigenfunction family at base q with a = sqrt(q)."""
    check_q(q)
    params = ef.EigenParams(a=math.sqrt(q), t=-complex(t), q=q)
    spv = ef.SpectralParam.from_z(complex(z))

    def stripped(j: int) -> complex:
        s = complex(t) * q ** j
        pref = (qpoch_inf(-s, q).value
                / qpoch_inf(q * q * s * s, q ** 4).value)
        return q_exponential(z, s, q * q) / pref

    return ef.recurrence_residual(stripped, params, spv, k)


def psi_via_qexp(regime: Case1, ext: ExtensionCoeffs, k: int, x: float) -> complex:
    """psi_k(x) of the reducible sub-family written through E_(q^2).

    Valid for case 1 with psi = 0: the two c-function products collapse
    to theta functions and the u-series at index k is a q-exponential of
    argument -i r q^k.
    """
    if not (isinstance(regime, Case1) and regime.is_reducible):
        raise DomainViolation("the q-exponential form needs case 1 with psi = 0")
    q, r = regime.q, regime.r
    gam = gamma_phase(regime)
    arg_a = cmath.phase(ext.A)
    tht = theta(1j * r, q)
    phase_k = coeff_alpha(regime, k) / q ** (k / 2.0)
    inner = (q ** (k / 2.0) * phase_k * cmath.exp(1j * (gam + arg_a)) * tht
             * (qpoch_inf(-r * r * q ** (2 * k + 2), q ** 4).value
                / qpoch_inf(1j * r * q ** k, q).value)
             * q_exponential(x, -1j * r * q ** k, q * q))
    return 2.0 * cmath.exp(-1j * gam) * abs(ext.A) / tht * inner.real


def qexp_limit_error(q: float, lam: float, z: float) -> float:
    """|E_q(z; (1-q) lam / 2) - e^(lam z)|, the defect of the classical
    limit at fixed lam and z."""
    val = q_exponential(z, 0.5 * (1.0 - q) * lam, q)
    return abs(val - cmath.exp(lam * z))
