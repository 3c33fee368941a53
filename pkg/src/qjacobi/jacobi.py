"""The doubly infinite Jacobi matrix, its symmetrization, self-adjoint
extensions, and the resolvent kernel.

Symmetrizable regimes
---------------------
The difference relation of :mod:`qjacobi.eigenfunctions` is carried to a
symmetric tridiagonal operator 2 L e_k = a_k e_{k+1} + a_{k-1} e_{k-1}
on l^2(Z) by a diagonal weight alpha_k (g_k = alpha_k f_k).  Positivity
of the off-diagonal a_k forces one of two parameter regimes:

* :class:`Case1`: a = sqrt(q) e^(i psi), t = i r e^(-i psi) with real
  r != 0 and t not on the positive real axis.  Here |alpha_k| = q^(k/2)
  and the phase phi_k accumulates arg(1 + i r e^(i psi) q^k) - (pi/2)
  sgn(r) per step, normalized by phi_0 = 0.
* :class:`Case2`: t < 0 and a = i s with real s != 0.  alpha_k is given
  by square roots of explicitly positive infinite products; two printed
  forms of it agree, and each is used on the half-axis where its
  products stay far from overflow.

The operator has deficiency indices (1, 1): limit circle at +infinity,
limit point at -infinity.  Its self-adjoint extensions are labeled by
theta in [0, 2 pi) through the boundary combination e^(i theta) Psi(i)
+ e^(-i theta) Psi(-i) built from the decaying solution Psi.  The
extension data reduce to two real products E, F and the scalar
A = conj(E e^(i theta) + F e^(-i theta)), B = conj(A), entering

    psi_k(z)     = A alpha_k u_k(z) + conj(A) alpha_k v_k(z),
    Psi_k(z)     = e^(i gamma) alpha_k F_k(y),   |y| < 1,

whose Wronskian has the closed form used by :func:`green_kernel`.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Union

from . import eigenfunctions as ef
from .errors import (
    ConvergenceFailure,
    DomainViolation,
    SingularWronskian,
    ValidationFailed,
)
from .qcore import check_q, qpoch_inf, theta

LAMBDA0 = 1.0 - math.sqrt(2.0)


@dataclass(frozen=True)
class Case1:
    """Phase-modulated regime: a = sqrt(q) e^(i psi), t = i r e^(-i psi)."""

    psi: float
    r: float
    q: float

    def __post_init__(self):
        check_q(self.q)
        object.__setattr__(self, "psi", float(self.psi))
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "q", float(self.q))
        if self.r == 0.0:
            raise DomainViolation("case 1 requires r != 0")
        t = self.t
        if abs(t.imag) <= 1e-14 * abs(t) and t.real > 0:
            raise DomainViolation("case 1 excludes t on the positive real axis")
        self.params  # construct once to surface lattice violations early

    @property
    def a(self) -> complex:
        return math.sqrt(self.q) * cmath.exp(1j * self.psi)

    @property
    def t(self) -> complex:
        return 1j * self.r * cmath.exp(-1j * self.psi)

    @property
    def params(self) -> ef.EigenParams:
        return ef.EigenParams(self.a, self.t, self.q)

    @property
    def is_reducible(self) -> bool:
        """True on the sub-family psi = 0 where psi_k collapses to a
        single real combination of q-exponentials (the two-grid case)."""
        return abs(self.psi) < 1e-12


@dataclass(frozen=True)
class Case2:
    """Negative-t regime: a = i s with real s != 0 and t < 0."""

    s: float
    t: float
    q: float

    def __post_init__(self):
        check_q(self.q)
        object.__setattr__(self, "s", float(self.s))
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "q", float(self.q))
        if self.s == 0.0:
            raise DomainViolation("case 2 requires s != 0")
        if not self.t < 0.0:
            raise DomainViolation("case 2 requires t < 0")
        self.params

    @property
    def a(self) -> complex:
        return 1j * self.s

    @property
    def params(self) -> ef.EigenParams:
        return ef.EigenParams(self.a, self.t, self.q)

    @property
    def is_reducible(self) -> bool:
        return False


Regime = Union[Case1, Case2]


def coeff_a(regime: Regime, k: int) -> float:
    """Off-diagonal entry a_k > 0 of the symmetrized operator."""
    q = regime.q
    if isinstance(regime, Case1):
        r, psi = regime.r, regime.psi
        qk = q ** k
        val = (1.0 - 2.0 * r * qk * math.sin(psi) + (r * qk) ** 2)
        return math.sqrt(val) / (abs(r) * qk)
    r1 = 1.0 - q ** (-k) / regime.t
    r2 = 1.0 - q ** (1 - k) / (regime.t * regime.s ** 2)
    return math.sqrt(r1 * r2)


@lru_cache(maxsize=4096)
def _phase_phi(regime: Case1, k: int) -> float:
    """Case 1 phase recursion, normalized by phi_0 = 0.

    phi_{k+1} - phi_k = arg(1 + i r e^(i psi) q^k) - (pi/2) sgn(r),
    iterated from 0 in either direction (the cache makes long walks
    cheap; values are genuine angles, not reduced mod 2 pi).
    """
    if k == 0:
        return 0.0
    w = 1j * regime.r * cmath.exp(1j * regime.psi)
    half = 0.5 * math.pi * math.copysign(1.0, regime.r)
    if k > 0:
        prev = _phase_phi(regime, k - 1)
        return prev + cmath.phase(1.0 + w * regime.q ** (k - 1)) - half
    nxt = _phase_phi(regime, k + 1)
    return nxt - (cmath.phase(1.0 + w * regime.q ** k) - half)


def coeff_alpha(regime: Regime, k: int) -> complex:
    """Diagonal symmetrization weight alpha_k (alpha_0-normalized).

    Case 2 has two equivalent product expressions; the one anchored at
    -infinity is used for k <= 0 and the theta-normalized one for k > 0,
    so every evaluated product has arguments tending to zero.
    """
    q = regime.q
    if isinstance(regime, Case1):
        return cmath.exp(1j * _phase_phi(regime, k)) * q ** (k / 2.0)
    s, t = regime.s, regime.t
    if k <= 0:
        num = qpoch_inf(q ** (2 - k) / (s * s * t), q).value.real
        den = qpoch_inf(q ** (1 - k) / t, q).value.real
        return (1j * s) ** k * math.sqrt(num / den)
    num = qpoch_inf(t * q ** k, q).value.real * theta(s * s * t / q, q).real
    den = qpoch_inf(t * s * s * q ** (k - 1), q).value.real * theta(t, q).real
    root = math.sqrt(num / den)
    return (1j * math.copysign(1.0, s)) ** k * q ** (k / 2.0) * root


def coeff_alpha_anchored(regime: Case2, k: int) -> complex:
    """Case 2 weight in its -infinity-anchored form, any k (testing hook)."""
    q, s, t = regime.q, regime.s, regime.t
    num = qpoch_inf(q ** (2 - k) / (s * s * t), q).value.real
    den = qpoch_inf(q ** (1 - k) / t, q).value.real
    return (1j * s) ** k * math.sqrt(num / den)


def symmetrization_residual(regime: Regime, k: int) -> float:
    """Defect of alpha in the weight equations tying a_k to the raw
    recurrence coefficients; zero for a correct symmetrization."""
    params = regime.params
    c, d = ef.recurrence_coeffs(params, k)
    ak = coeff_a(regime, k)
    akm = coeff_a(regime, k - 1)
    r1 = coeff_alpha(regime, k) / coeff_alpha(regime, k + 1) * c - ak
    r2 = coeff_alpha(regime, k) / coeff_alpha(regime, k - 1) * d - akm
    return max(abs(r1) / max(1.0, abs(ak)), abs(r2) / max(1.0, abs(akm)))


# ---------------------------------------------------------------------------
# Wronskians
# ---------------------------------------------------------------------------

def wronskian(regime: Regime, f: Callable[[int], complex],
              g: Callable[[int], complex], k: int) -> complex:
    """[f, g]_k = a_k (f_{k+1} g_k - f_k g_{k+1}) / 2."""
    ak = coeff_a(regime, k)
    return 0.5 * ak * (f(k + 1) * g(k) - f(k) * g(k + 1))


def alpha_F(regime: Regime, sp: ef.SpectralParam, k: int) -> complex:
    return coeff_alpha(regime, k) * ef.F_k(regime.params, sp, k)


def alpha_u(regime: Regime, sp: ef.SpectralParam, k: int) -> complex:
    return coeff_alpha(regime, k) * ef.u_k(regime.params, sp, k)


def alpha_v(regime: Regime, sp: ef.SpectralParam, k: int) -> complex:
    return coeff_alpha(regime, k) * ef.v_k(regime.params, sp, k)


def tail_wronskian(regime: Regime, family: str, w: ef.SpectralParam,
                   y: ef.SpectralParam, n: int) -> complex:
    """[conj(alpha u(wbar)), alpha F(y)]_n (family 'u'; 'v' analogous).

    The first slot is the complex conjugate of the family evaluated at
    the conjugated spectral point, the pairing that has a finite limit
    as n -> +infinity.
    """
    wc = w.conjugate()
    if family == "u":
        fam = lambda k: alpha_u(regime, wc, k).conjugate()
    elif family == "v":
        fam = lambda k: alpha_v(regime, wc, k).conjugate()
    else:
        raise DomainViolation("family must be 'u' or 'v'")
    g = lambda k: alpha_F(regime, y, k)
    return wronskian(regime, fam, g, n)


def tail_wronskian_limit(regime: Regime, family: str, y: ef.SpectralParam) -> complex:
    """Closed form of lim_n [conj(alpha u(wbar)), alpha F(y)]_n.

    Case 1: -(q^(1/2)/(i r)) d(y; a, t) for u, +(q^(1/2)/(i r)) d(y; -a, t)
    for v.  Case 2 carries the extra theta ratio theta(s^2 t/q)/theta(t)
    with prefactor i q/(s t), signs (+) for u and (-) for v.  The limit
    does not depend on w.
    """
    params = regime.params
    q = regime.q
    if isinstance(regime, Case1):
        pref = math.sqrt(q) / (1j * regime.r)
        if family == "u":
            return -pref * ef.d_fn(y.y, params.a, params.t, q)
        if family == "v":
            return pref * ef.d_fn(y.y, -params.a, params.t, q)
    else:
        s, t = regime.s, regime.t
        pref = (1j * q / (s * t)) * theta(s * s * t / q, q) / theta(t, q)
        if family == "u":
            return pref * ef.d_fn(y.y, params.a, params.t, q)
        if family == "v":
            return -pref * ef.d_fn(y.y, -params.a, params.t, q)
    raise DomainViolation("family must be 'u' or 'v'")


def tail_wronskian_checked(regime: Regime, family: str, w: ef.SpectralParam,
                           y: ef.SpectralParam, n: int = 60) -> complex:
    """Finite-n tail Wronskian, with a dyadic convergence certificate.

    Evaluates at n and 2n and requires the two to agree within 1e-9
    relative to the closed-form scale; raises ConvergenceFailure
    otherwise (the limit exists whenever |y| < 1 strictly).
    """
    val_n = tail_wronskian(regime, family, w, y, n)
    val_2n = tail_wronskian(regime, family, w, y, 2 * n)
    scale = max(1.0, abs(tail_wronskian_limit(regime, family, y)))
    if abs(val_n - val_2n) > 1e-9 * scale:
        raise ConvergenceFailure(
            f"tail Wronskian moved by {abs(val_n - val_2n):.3g} between n = {n} and {2 * n}")
    return val_2n


# ---------------------------------------------------------------------------
# the reality phase gamma and the decaying solution Psi
# ---------------------------------------------------------------------------

_GAMMA_PROBES = (0.37 + 0.21j, -0.18 + 0.43j)


@lru_cache(maxsize=1024)
def gamma_phase(regime: Regime) -> float:
    """Phase gamma making e^(i gamma) alpha_k F_k(y) conjugation-covariant:
    conj(e^(i gamma) alpha_k F_k(ybar)) = e^(i gamma) alpha_k F_k(y).

    Case 2 weights are already covariant, so gamma = 0 there.  In case 1
    the ratio C = conj(alpha_0 F_0(ybar)) / (alpha_0 F_0(y)) is a
    unimodular constant independent of k and y; gamma = arg(C) / 2 (mod
    pi, returned in (-pi/2, pi/2]).  Unimodularity and constancy are
    validated at k in {-5, 0, 5} and two independent y; failure raises
    ValidationFailed.
    """
    if isinstance(regime, Case2):
        return 0.0
    params = regime.params

    def ratio(yc: complex, k: int) -> complex:
        spb = ef.SpectralParam.from_y(yc.conjugate())
        spy = ef.SpectralParam.from_y(yc)
        num = (coeff_alpha(regime, k) * ef.F_k(params, spb, k)).conjugate()
        den = coeff_alpha(regime, k) * ef.F_k(params, spy, k)
        return num / den

    base = ratio(_GAMMA_PROBES[0], 0)
    if abs(abs(base) - 1.0) > 1e-10:
        raise ValidationFailed(f"|C| = {abs(base)} deviates from 1")
    for yc in _GAMMA_PROBES:
        for k in (-5, 0, 5):
            c = ratio(yc, k)
            if abs(c - base) > 1e-10 * max(1.0, abs(base)):
                raise ValidationFailed(
                    f"conjugation ratio drifts: {c} vs {base} at k = {k}, y = {yc}")
    gamma = 0.5 * cmath.phase(base)
    return gamma


def big_psi_k(regime: Regime, sp: ef.SpectralParam, k: int) -> complex:
    """Decaying endpoint solution Psi_k: e^(i gamma) alpha_k F_k(y), |y| < 1."""
    if abs(sp.y) >= 1.0:
        raise DomainViolation("Psi uses the branch |y| < 1 strictly")
    val = alpha_F(regime, sp, k)
    if isinstance(regime, Case1):
        val *= cmath.exp(1j * gamma_phase(regime))
    return val


# ---------------------------------------------------------------------------
# self-adjoint extensions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtensionCoeffs:
    """Data of one self-adjoint extension.

    E and F are the real infinite products entering the boundary
    combination; A = conj(E e^(i theta) + F e^(-i theta)) and B = conj(A)
    scale the u and v components of psi.  reduced marks the
    normalization stripped of a common real factor, available on the
    psi = 0 sub-family of case 1 where E and F become plain theta
    values; it rescales (A, B) by a positive constant and therefore
    labels the same extension.
    """

    theta: float
    E: float
    F: float
    A: complex
    B: complex
    lambda0: float
    reduced: bool = False


def _real_product(factors, q) -> float:
    val = 1.0 + 0.0j
    for f in factors:
        val *= qpoch_inf(f, q).value
    if abs(val.imag) > 1e-12 * max(1.0, abs(val)):
        raise ValidationFailed(f"product expected real, got {val}")
    return val.real


def extension_coeffs(regime: Regime, theta_angle: float, *,
                     reduced: bool = False) -> ExtensionCoeffs:
    """Boundary data (E, F, A, B) of the extension labeled theta_angle.

    With lam = 1 - sqrt(2), the point i lam satisfies (i lam + 1/(i lam))/2
    = i exactly, and E, F are the numerator products of the connection
    coefficient d at the four sign combinations (+-i lam, +-a).  reduced
    = True is only admissible in case 1 with psi = 0 and replaces E, F by
    the theta factors left after cancelling (-lam^2 q; q^2)_inf.
    """
    lam = LAMBDA0
    q = regime.q
    if reduced:
        if not (isinstance(regime, Case1) and regime.is_reducible):
            raise DomainViolation("reduced normalization needs case 1 with psi = 0")
        e_val = theta(regime.r * q ** -0.5 / lam, q).real
        f_val = theta(-regime.r * q ** -0.5 / lam, q).real
    elif isinstance(regime, Case1):
        rq = math.sqrt(q)
        psi = regime.psi
        e_val = _real_product(
            [1j * lam * rq * cmath.exp(1j * psi),
             -1j * lam * rq * cmath.exp(-1j * psi),
             regime.r / (rq * lam),
             q * rq * lam / regime.r], q)
        f_val = _real_product(
            [-1j * lam * rq * cmath.exp(1j * psi),
             1j * lam * rq * cmath.exp(-1j * psi),
             -regime.r / (rq * lam),
             -q * rq * lam / regime.r], q)
    else:
        s, t = regime.s, regime.t
        e_val = _real_product(
            [-s * lam, -lam * q / s, s * t / (q * lam), q * q * lam / (s * t)], q)
        f_val = _real_product(
            [s * lam, lam * q / s, -s * t / (q * lam), -q * q * lam / (s * t)], q)
    abar = e_val * cmath.exp(1j * theta_angle) + f_val * cmath.exp(-1j * theta_angle)
    a_val = abar.conjugate()
    return ExtensionCoeffs(theta=float(theta_angle), E=e_val, F=f_val,
                           A=a_val, B=a_val.conjugate(), lambda0=lam,
                           reduced=reduced)


def defect_residual(regime: Regime, ext: ExtensionCoeffs) -> float:
    """Residual of the defining equation of the extension boundary data.

    Evaluates conj(B) {e^(i th) d(i lam; -a, t) + e^(-i th) d(-i lam; -a, t)}
    - conj(A) {e^(i th) d(i lam; a, t) + e^(-i th) d(-i lam; a, t)},
    normalized by the larger of the two brace magnitudes; a correct
    (A, B) pair annihilates it.
    """
    params = regime.params
    lam = ext.lambda0
    q = regime.q
    eip = cmath.exp(1j * ext.theta)
    brace_neg = (eip * ef.d_fn(1j * lam, -params.a, params.t, q)
                 + ef.d_fn(-1j * lam, -params.a, params.t, q) / eip)
    brace_pos = (eip * ef.d_fn(1j * lam, params.a, params.t, q)
                 + ef.d_fn(-1j * lam, params.a, params.t, q) / eip)
    val = ext.B.conjugate() * brace_neg - ext.A.conjugate() * brace_pos
    scale = max(abs(ext.B * brace_neg), abs(ext.A * brace_pos), 1e-300)
    return abs(val) / scale


def psi_k(regime: Regime, ext: ExtensionCoeffs, sp: ef.SpectralParam, k: int) -> complex:
    """Boundary-condition solution psi_k = A alpha_k u_k + conj(A) alpha_k v_k."""
    return ext.A * alpha_u(regime, sp, k) + ext.A.conjugate() * alpha_v(regime, sp, k)


def boundary_wronskian(regime: Regime, ext: ExtensionCoeffs, z: complex,
                       n: int = 60) -> complex:
    """[conj(psi(zbar)), e^(i th) Psi(i) + e^(-i th) Psi(-i)]_n.

    Membership of psi in the extension domain makes this vanish as
    n -> +infinity; evaluated at finite n it is the quantity whose decay
    the acceptance suite tracks.
    """
    sp = ef.SpectralParam.from_z(z)
    spc = sp.conjugate()
    sp_i = ef.SpectralParam.from_z(1j)
    sp_mi = ef.SpectralParam.from_z(-1j)
    eip = cmath.exp(1j * ext.theta)

    def lhs(k: int) -> complex:
        return psi_k(regime, ext, spc, k).conjugate()

    def rhs(k: int) -> complex:
        return (eip * big_psi_k(regime, sp_i, k)
                + big_psi_k(regime, sp_mi, k) / eip)

    return wronskian(regime, lhs, rhs, n)


# ---------------------------------------------------------------------------
# Green kernel and resolvent
# ---------------------------------------------------------------------------

def psi_big_psi_wronskian(regime: Regime, ext: ExtensionCoeffs,
                          sp: ef.SpectralParam) -> complex:
    """Closed form of [Psi(z), conj(psi(zbar))].

    Case 1: e^(i gamma) {conj(A c(1/ybar; a, t)) + A conj(c(1/ybar; -a, t))}
    (1/y - y)/2; case 2 is the same expression without the phase.
    """
    params = regime.params
    q = regime.q
    ybar_inv = 1.0 / sp.y.conjugate()
    comb = (ext.A * ef.c_fn(ybar_inv, params.a, params.t, q)).conjugate() \
        + ext.A * ef.c_fn(ybar_inv, -params.a, params.t, q).conjugate()
    w = comb * 0.5 * (1.0 / sp.y - sp.y)
    if isinstance(regime, Case1):
        w *= cmath.exp(1j * gamma_phase(regime))
    return w


def green_kernel(regime: Regime, ext: ExtensionCoeffs, z: complex,
                 k: int, l: int) -> complex:
    """Resolvent kernel G_{k,l}(z) of the extension, z off the real axis.

    G_{k,l} = Psi_min(z) conj(psi_max(zbar)) / [Psi(z), conj(psi(zbar))]
    with min/max ordering of (k, l); the normalizing Wronskian is the
    closed form above, and SingularWronskian is raised when it is
    numerically zero (z at an eigenvalue of the extension).
    """
    zc = complex(z)
    if zc.imag == 0.0:
        raise DomainViolation("green_kernel requires z off the real axis")
    sp = ef.SpectralParam.from_z(zc)
    if abs(abs(sp.y) - 1.0) < 1e-13:
        raise DomainViolation("spectral point too close to the continuous spectrum")
    w = psi_big_psi_wronskian(regime, ext, sp)
    scale = abs(ext.A) * max(abs(sp.y), 1.0 / abs(sp.y))
    if abs(w) < 1e-13 * scale:
        raise SingularWronskian(f"normalizing Wronskian {w} is numerically zero")
    lo, hi = (k, l) if k <= l else (l, k)
    spc = sp.conjugate()
    return (big_psi_k(regime, sp, lo)
            * psi_k(regime, ext, spc, hi).conjugate() / w)


def resolvent_apply(regime: Regime, ext: ExtensionCoeffs, z: complex,
                    xi: dict[int, complex], k: int) -> complex:
    """(R(z) xi)_k = sum_l xi_l G_{k,l}(z) over the finite support of xi."""
    return sum(val * green_kernel(regime, ext, z, k, l) for l, val in xi.items())


def resolvent_bilinear(regime: Regime, ext: ExtensionCoeffs, z: complex,
                       xi: dict[int, complex], eta: dict[int, complex]) -> complex:
    """<R(z) xi, eta> evaluated through the ordered double-sum form

    [Psi, conj(psi)] <R xi, eta> = sum_{k <= l} Psi_k conj(psi_l)
        (xi_l conj(eta_k) + xi_k conj(eta_l)) (1 - delta_{kl}/2),

    which shares every special-function evaluation across the (k, l)
    pairs; used to cross-check resolvent_apply.
    """
    zc = complex(z)
    sp = ef.SpectralParam.from_z(zc)
    spc = sp.conjugate()
    w = psi_big_psi_wronskian(regime, ext, sp)
    support = sorted(set(xi) | set(eta))
    total = 0.0 + 0.0j
    for i, k in enumerate(support):
        for l in support[i:]:
            xk = xi.get(k, 0.0)
            xl = xi.get(l, 0.0)
            ek = eta.get(k, 0.0)
            el = eta.get(l, 0.0)
            if xl == 0 and xk == 0:
                continue
            cross = xl * ek.conjugate() + xk * el.conjugate()
            if cross == 0:
                continue
            weight = 0.5 if k == l else 1.0
            total += (big_psi_k(regime, sp, k)
                      * psi_k(regime, ext, spc, l).conjugate()
                      * cross * weight)
    return total / w


def apply_operator(regime: Regime, xi: dict[int, complex]) -> dict[int, complex]:
    """L xi for finitely supported xi: (L xi)_k = (a_k xi_{k+1}
    + a_{k-1} xi_{k-1}) / 2, returned on the enlarged support."""
    out: dict[int, complex] = {}
    for k, val in xi.items():
        if val == 0:
            continue
        out[k + 1] = out.get(k + 1, 0.0) + 0.5 * coeff_a(regime, k) * val
        out[k - 1] = out.get(k - 1, 0.0) + 0.5 * coeff_a(regime, k - 1) * val
    return out
