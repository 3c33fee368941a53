"""Quadratic base change for the eigenfunction recurrence.

Iterating the three-term relation once decouples the even-indexed and
odd-indexed entries of any solution.  Each parity class satisfies a
five-point relation whose coefficients factor through the original
``recurrence_coeffs``, and the even subsequence of the minimal solution
F turns out to be a big q-Jacobi type series in base q^2.  Matching the
two minimal solutions gives a transformation sending a 2phi1 in base q
to a 3phi2 in base q^2, valid for |z| < min(1, |a|^2).

The same circle of identities specializes to the Ismail-Zhang
q-exponential: `qexp_as_3phi2` evaluates it as a sum of two 3phi2
series whose parameters mix the bases q^(1/4), q^(1/2), q and q^2.
All powers of the base are derived from a single `QBase` instance so
that no function silently mixes inconsistent roots.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from . import eigenfunctions as ef
from .errors import DomainViolation, SingularParameter
from .qcore import check_q, near_q_power, phi_series, qpoch_inf, qpoch_multi

# A denominator product smaller than this times the numerator scale is
# treated as an exact zero of the prefactor rather than a small value.
DENOM_FLOOR = 1e-12


@dataclass(frozen=True)
class QBase:
    """Base q together with its square and the roots the formulas use.

    half and quarter are computed by nested square roots so that
    quarter**2 reproduces half to the last bit; deriving them
    independently via q**0.25 would not.
    """

    q: float
    half: float = 0.0
    quarter: float = 0.0
    square: float = 0.0

    def __post_init__(self):
        check_q(self.q)
        object.__setattr__(self, "half", math.sqrt(self.q))
        object.__setattr__(self, "quarter", math.sqrt(self.half))
        object.__setattr__(self, "square", self.q * self.q)


def iter_c(params: ef.EigenParams, k: int) -> complex:
    """Forward coefficient of the iterated relation, a + q^(1-k)/(at)."""
    return ef.recurrence_coeffs(params, k)[0]


def iter_d(params: ef.EigenParams, k: int) -> complex:
    """Backward coefficient of the iterated relation, (1/a)(1 - q^(1-k)/t)."""
    return ef.recurrence_coeffs(params, k)[1]


@dataclass(frozen=True)
class IteratedCoeffs:
    """Pair (c_k, d_k) appearing in the five-point relation."""

    c: complex
    d: complex

    @classmethod
    def from_params(cls, params: ef.EigenParams, k: int) -> "IteratedCoeffs":
        c, d = ef.recurrence_coeffs(params, k)
        return cls(c, d)


def iterated_recurrence_residual(f: Sequence, params: ef.EigenParams,
                                 sp: ef.SpectralParam, k: int) -> float:
    """Normalized defect of the five-point relation at index k.

    f holds the five consecutive values f_{k-2} .. f_{k+2}.  The
    relation is (2z)^2 f_k = c_k c_{k+1} f_{k+2}
    + (c_k d_{k+1} + d_k c_{k-1}) f_k + d_k d_{k-1} f_{k-2}, obtained by
    applying the three-term relation twice; even and odd subsequences
    decouple.
    """
    if len(f) != 5:
        raise DomainViolation(f"need five consecutive values, got {len(f)}")
    c0, d0 = ef.recurrence_coeffs(params, k)
    c_up, d_up = ef.recurrence_coeffs(params, k + 1)
    c_dn, d_dn = ef.recurrence_coeffs(params, k - 1)
    lhs = (2.0 * sp.z) ** 2 * f[2]
    t_pp = c0 * c_up * f[4]
    t_00 = (c0 * d_up + d0 * c_dn) * f[2]
    t_mm = d0 * d_dn * f[0]
    scale = max(abs(lhs), abs(t_pp), abs(t_00), abs(t_mm))
    if scale == 0.0:
        return 0.0
    return abs(lhs - t_pp - t_00 - t_mm) / scale


@dataclass(frozen=True)
class BigQJacobiParams:
    """Parameters (a, b, c, x, gamma) of the base-q Jacobi type series."""

    a: complex
    b: complex
    c: complex
    x: complex
    gamma: complex

    def __post_init__(self):
        for name in ("a", "b", "c", "x", "gamma"):
            if getattr(self, name) == 0:
                raise DomainViolation(f"parameter {name} must be nonzero")


def phi_gamma(params: BigQJacobiParams, q: float, k: int) -> complex:
    """Minimal solution of the big q-Jacobi relation, evaluated at x q^k.

    The value is a prefactor of four infinite products times
    (a gamma)^(-k) times a 3phi2 whose argument -q^(1-k)/(bcx) shrinks
    as k decreases; the series is only summable while that argument
    stays inside the unit disc (or terminates), and phi_series raises
    otherwise.
    """
    check_q(q)
    a, b, c, x, g = params.a, params.b, params.c, params.x, params.gamma
    shift = q ** (1 - k)
    arg = -shift / (b * c * x)
    num = qpoch_multi([-shift / (b * c * x), -shift * g / (a * x)], q)
    den = qpoch_multi([-shift / (a * b * x), -shift / (a * c * x)], q)
    if abs(den) <= DENOM_FLOOR * max(1.0, abs(num)):
        raise SingularParameter(
            f"prefactor denominator vanishes at k={k}: {den}")
    series = phi_series([q * g / a, b * g, c * g],
                        [-shift * g / (a * x), q * g * g], q, arg)
    return num / den * (a * g) ** (-k) * series.value


def bigq_recurrence_residual(params: BigQJacobiParams, q: float,
                             k: int) -> float:
    """Normalized defect of phi_gamma in the big q-Jacobi relation at k.

    The relation links the values at x q^(k-1), x q^k, x q^(k+1) with
    eigenvalue gamma + 1/gamma.
    """
    check_q(q)
    a, b, c, x, g = params.a, params.b, params.c, params.x, params.gamma
    qk = q ** (-k)
    f_dn = phi_gamma(params, q, k - 1)
    f_00 = phi_gamma(params, q, k)
    f_up = phi_gamma(params, q, k + 1)
    lhs = (g + 1.0 / g) * f_00
    t_up = a * (1.0 + qk / (a * b * x)) * (1.0 + qk / (a * c * x)) * f_up
    mid = (qk * (1.0 / (b * x) + 1.0 / (c * x) + q / (a * b * c * x)
                 + 1.0 / (a * x))
           + qk * qk * (1.0 + q) / (x * x * a * b * c))
    t_00 = -mid * f_00
    t_dn = (1.0 / a) * (1.0 + q * qk / (b * c * x)) * (1.0 + qk / x) * f_dn
    scale = max(abs(lhs), abs(t_up), abs(t_00), abs(t_dn))
    if scale == 0.0:
        return 0.0
    return abs(lhs - t_up - t_00 - t_dn) / scale


def phi_gamma_leading_ratio(params: BigQJacobiParams, q: float,
                            k: int) -> complex:
    """phi_gamma scaled by (a gamma)^k; tends to 1 as k -> -infinity."""
    return phi_gamma(params, q, k) * (params.a * params.gamma) ** k


def even_match_ratio(params: ef.EigenParams, sp: ef.SpectralParam,
                     k: int) -> complex:
    """Ratio of the even subsequence F_{2k} to its big q-Jacobi form.

    The even subsequence of F solves the five-point relation, which in
    base q^2 is the big q-Jacobi relation with parameters
    (a^2, -1, -q, -t/q) and gamma = y^2; note the square in the first
    slot, and that no geometric rescaling of F_{2k} is involved.  Both
    sides are minimal solutions with leading behavior (ay)^(-2k) at
    k -> -infinity, so the connecting constant is exactly one and the
    returned ratio equals 1 for every k.
    """
    lhs = ef.F_k(params, sp, 2 * k)
    big = BigQJacobiParams(a=params.a * params.a, b=-1.0, c=-params.q,
                           x=-params.t / params.q, gamma=sp.y * sp.y)
    rhs = phi_gamma(big, params.q * params.q, k)
    if rhs == 0:
        raise SingularParameter("big q-Jacobi side vanished")
    return lhs / rhs


def quad_transform_check(a, y, z, q: float) -> float:
    """Normalized residual of the 2phi1 -> 3phi2 base-doubling identity.

    LHS = 2phi1(ay, -ay; qy^2; q, -z/a^2).  With A = a^2 the RHS is
    (z, qzy^2/A; q^2)_inf / (-z/A; q)_inf times
    3phi2(q^2 y^2/A, -y^2, -qy^2; qzy^2/A, q^2 y^4; q^2, z).  Valid for
    |z| < min(1, |A|) and y^2 off the lattice q^(-N-1).  The a-slots of
    the right-hand side carry the square; writing them with a bare a
    breaks the identity at relative order z^2.
    """
    check_q(q)
    ac, yc, zc = complex(a), complex(y), complex(z)
    big_a = ac * ac
    if abs(zc) >= min(1.0, abs(big_a)):
        raise DomainViolation(
            f"|z| = {abs(zc):.6g} outside |z| < min(1, |a|^2) "
            f"= {min(1.0, abs(big_a)):.6g}")
    m = near_q_power(q * yc * yc, q)
    if m is not None and m <= 0:
        raise DomainViolation(f"q y^2 sits on q^({m}); series has a pole")
    q2 = q * q
    y2 = yc * yc
    lhs = phi_series([ac * yc, -ac * yc], [q * y2], q,
                     -zc / big_a).value
    pref_num = qpoch_multi([zc, q * zc * y2 / big_a], q2)
    pref_den = qpoch_inf(-zc / big_a, q).value
    if abs(pref_den) <= DENOM_FLOOR * max(1.0, abs(pref_num)):
        raise SingularParameter(f"prefactor denominator vanishes: {pref_den}")
    rhs = (pref_num / pref_den
           * phi_series([q2 * y2 / big_a, -y2, -q * y2],
                        [q * zc * y2 / big_a, q2 * y2 * y2], q2, zc).value)
    scale = max(abs(lhs), abs(rhs))
    if scale == 0.0:
        return 0.0
    return abs(lhs - rhs) / scale


def _quadrel1_sides(a, y, t, q: float, k: int) -> tuple[complex, complex]:
    """Both sides of the lattice specialization z = q^(2-2k)/t.

    Each side is written out term by term in its specialized form, with
    the base-q prefactor denominator split into its two base-q^2 halves,
    so this is an independent arithmetic path from quad_transform_check.
    """
    check_q(q)
    ac, yc, tc = complex(a), complex(y), complex(t)
    big_a = ac * ac
    q2 = q * q
    y2 = yc * yc
    zlat = q ** (2 - 2 * k) / tc
    lhs = phi_series([ac * yc, -ac * yc], [q * y2], q,
                     -zlat / big_a).value
    num = qpoch_multi([zlat, q * zlat * y2 / big_a], q2)
    den = qpoch_multi([-q * zlat / big_a, -zlat / big_a], q2)
    if abs(den) <= DENOM_FLOOR * max(1.0, abs(num)):
        raise SingularParameter(f"prefactor denominator vanishes: {den}")
    rhs = (num / den
           * phi_series([q2 * y2 / big_a, -y2, -q * y2],
                        [q * zlat * y2 / big_a, q2 * y2 * y2], q2, zlat).value)
    return lhs, rhs


def quadrel1_residual(a, y, t, q: float, k: int, odd: bool = False) -> float:
    """Residual of the transformation on the lattice z = q^(2-2k)/t.

    odd=True replaces t by qt, which is the identity satisfied by the
    odd-indexed subsequence.
    """
    t_eff = complex(t) * (q if odd else 1.0)
    lhs, rhs = _quadrel1_sides(a, y, t_eff, q, k)
    scale = max(abs(lhs), abs(rhs))
    if scale == 0.0:
        return 0.0
    return abs(lhs - rhs) / scale


def quadrel1_regularized_pair(a, y, t, q: float,
                              k: int) -> tuple[complex, complex]:
    """Both lattice-specialized sides multiplied by (q^2 y^4; q^2)_inf.

    The bare sides have simple poles where y^2 meets q^(-N); the
    regulator vanishes there to the same order, and the products extend
    continuously across each puncture.  Returned unnormalized so a
    caller can compare approaches from the two sides of a puncture.
    """
    lhs, rhs = _quadrel1_sides(a, y, t, q, k)
    yc = complex(y)
    reg = qpoch_inf(q * q * yc ** 4, q * q).value
    return lhs * reg, rhs * reg


def _check_qexp_lattice(t: complex, q: float) -> None:
    """Reject the isolated parameter values where a denominator vanishes."""
    half = math.sqrt(q)
    m = near_q_power(q * t * t, q * q)
    if m is not None and m <= 0:
        raise SingularParameter(
            f"q t^2 sits on q^(2*{m}); the t-pole lattice is reached")
    for w, label in ((half / t, "q^(1/2)/t"), (-half / t, "-q^(1/2)/t")):
        m = near_q_power(w, half)
        if m is not None and m <= 0:
            raise SingularParameter(
                f"{label} sits on the base-q^(1/2) pole lattice")


def qexp_as_3phi2(z, t, q: float) -> complex:
    """q-exponential as a sum of two 3phi2 series in base q.

    Evaluates the two-term expression prefactor(y) * 3phi2(...) plus
    the same with y replaced by 1/y, where z = (y + 1/y)/2 and the
    prefactors mix q-shifted factorials in bases q^(1/4) arguments,
    q^(1/2), q and q^2.  The series argument is -q/t, so the expression
    needs |t| > q; t = 0 returns the limit value 1.
    """
    base = QBase(q)
    tc = complex(t)
    if tc == 0:
        return 1.0 + 0.0j
    _check_qexp_lattice(tc, q)
    half, quarter, q2 = base.half, base.quarter, base.square
    sp = ef.SpectralParam.from_z(complex(z))
    y = sp.y if abs(sp.y) <= 1.0 else 1.0 / sp.y

    def term(yy: complex) -> complex:
        y2 = yy * yy
        num = (qpoch_multi([quarter / yy, -quarter / yy, -quarter * tc * yy,
                            -quarter / (tc * yy)], half)
               * qpoch_multi([-q / tc, -q * y2 / tc], q))
        den = (qpoch_multi([-half, 1.0 / y2, -half / tc], half)
               * qpoch_inf(half / tc, half).value
               * qpoch_inf(q * tc * tc, q2).value)
        if abs(den) <= DENOM_FLOOR * max(1.0, abs(num)):
            raise SingularParameter(f"prefactor denominator vanishes: {den}")
        series = phi_series([half * y2, -y2, -half * y2],
                            [-q * y2 / tc, q * y2 * y2], q, -q / tc)
        return num / den * series.value

    return term(y) + term(1.0 / y)
