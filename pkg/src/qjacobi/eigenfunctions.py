"""Eigenfunction families of the three-term q-difference relation

    2 z f_k = (1 + a^2 t q^(k-1)) / (a t q^(k-1)) f_{k+1}
              - (1 - q^(k-1) t) / (a t q^(k-1)) f_{k-1}

in the normalization where the spectral variable is z = (y + 1/y) / 2.

Three solutions are provided:

* ``u_k``: 2phi1(a y, a/y; -q; q, t q^k), symmetric in y <-> 1/y;
* ``v_k``: (-1)^k 2phi1(-a y, -a/y; -q; q, t q^k), its companion;
* ``F_k``: (a y)^(-k) 2phi1(a y, -a y; q y^2; q, -q^(2-k) / (a^2 t)),
  the family singled out by its decay direction, defined per branch y.

Raw series are used only where the series argument has modulus below
``RAW_ARG_MAX``; outside that window u and v are assembled through the
connection coefficients c(y; a, t) and F through its own recurrence,
started inside the raw window.  Both routes agree on the overlap, which
the tests exercise explicitly.  The connection coefficients are

    c(y; a, t) = (a/y, -q/(a y), a y t, q/(a y t); q)_inf
                 / (-q, 1/y^2, t, q/t; q)_inf,

    d(y; a, t) = (-a y, q y/a, -a t/(q y), -q^2 y/(a t); q)_inf
                 / (-1, q y^2, -a^2 t/q, -q^2/(a^2 t); q)_inf,

with u = c(y) F(y) + c(1/y) F(1/y) and F(y) = d(y; a, t) u + d(y; -a, t) v.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainViolation, SingularParameter, SummationOutOfRange
from .qcore import (
    LATTICE_TOL,
    check_q,
    near_q_power,
    phi_series,
    qpoch_inf,
)

RAW_ARG_MAX = 0.9


@dataclass(frozen=True)
class EigenParams:
    """Coefficient data (a, t, q) of the difference relation.

    Construction enforces the generic-coefficient assumptions: neither t
    nor -a^2 t may sit on the lattice q^Z (within the standard 1e-10
    lattice tolerance).  Those exclusions keep every denominator in the
    connection coefficients nonzero and the recurrence division-safe.
    """

    a: complex
    t: complex
    q: float

    def __post_init__(self):
        check_q(self.q)
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "t", complex(self.t))
        object.__setattr__(self, "q", float(self.q))
        if self.a == 0:
            raise DomainViolation("parameter a must be nonzero")
        if self.t == 0:
            raise DomainViolation("parameter t must be nonzero")
        m = near_q_power(self.t, self.q, LATTICE_TOL)
        if m is not None:
            raise SingularParameter(f"t = {self.t} lies on the lattice q^({m})")
        m = near_q_power(-self.a * self.a * self.t, self.q, LATTICE_TOL)
        if m is not None:
            raise SingularParameter(
                f"-a^2 t = {-self.a * self.a * self.t} lies on the lattice q^({m})")

    def negate_a(self) -> "EigenParams":
        return EigenParams(-self.a, self.t, self.q)


@dataclass(frozen=True)
class SpectralParam:
    """A spectral point, carried as the pair (y, z) with z = (y + 1/y)/2.

    Use :meth:`from_y` when the branch matters (F depends on it) and
    :meth:`from_z` for the canonical branch |y| <= 1, which resolves
    modulus ties (|y| = 1) toward nonnegative imaginary part, so that
    z = cos(chi) in (-1, 1) maps to y = exp(i chi) with chi in (0, pi).
    """

    y: complex
    z: complex

    def __post_init__(self):
        yc = complex(self.y)
        zc = complex(self.z)
        object.__setattr__(self, "y", yc)
        object.__setattr__(self, "z", zc)
        if yc == 0:
            raise DomainViolation("spectral parameter y must be nonzero")
        resid = abs(zc - 0.5 * (yc + 1.0 / yc))
        if resid > 1e-14 * max(1.0, abs(zc), abs(yc), 1.0 / abs(yc)):
            raise DomainViolation(
                f"inconsistent spectral pair: |z - (y + 1/y)/2| = {resid:.3g}")

    @classmethod
    def from_y(cls, y) -> "SpectralParam":
        yc = complex(y)
        if yc == 0:
            raise DomainViolation("spectral parameter y must be nonzero")
        return cls(yc, 0.5 * (yc + 1.0 / yc))

    @classmethod
    def from_z(cls, z) -> "SpectralParam":
        zc = complex(z)
        s = cmath.sqrt(zc * zc - 1.0)
        # the larger root of y^2 - 2zy + 1 is cancellation-free; its
        # reciprocal is the canonical branch |y| <= 1
        big = zc + s if abs(zc + s) >= abs(zc - s) else zc - s
        y = 1.0 / big
        if abs(abs(y) - 1.0) <= 1e-12 and y.imag < 0:
            y = 1.0 / y
        return cls(y, zc)

    def reciprocal(self) -> "SpectralParam":
        return SpectralParam(1.0 / self.y, self.z)

    def conjugate(self) -> "SpectralParam":
        return SpectralParam(self.y.conjugate(), self.z.conjugate())


def recurrence_coeffs(params: EigenParams, k: int) -> tuple[complex, complex]:
    """Coefficients (c_k, d_k) with 2 z f_k = c_k f_{k+1} + d_k f_{k-1}."""
    a, t, q = params.a, params.t, params.q
    atq = a * t * q ** (k - 1)
    c = (1.0 + a * a * t * q ** (k - 1)) / atq
    d = -(1.0 - q ** (k - 1) * t) / atq
    return c, d


def recurrence_residual(f, params: EigenParams, sp: SpectralParam, k: int) -> float:
    """Normalized defect of f in the difference relation at index k.

    f is a callable on integers.  The absolute defect is divided by the
    largest of the three term magnitudes, so a solution scores near
    machine epsilon regardless of the solution's scale at k.
    """
    c, d = recurrence_coeffs(params, k)
    t0 = 2.0 * sp.z * f(k)
    t1 = c * f(k + 1)
    t2 = d * f(k - 1)
    scale = max(abs(t0), abs(t1), abs(t2))
    if scale == 0.0:
        return 0.0
    return abs(t0 - t1 - t2) / scale


def u_raw_threshold(params: EigenParams) -> int:
    """Smallest k whose u/v series argument t q^k has modulus < RAW_ARG_MAX."""
    import math

    q, abst = params.q, abs(params.t)
    k = math.ceil(math.log(RAW_ARG_MAX / abst) / math.log(q))
    while abst * q ** k >= RAW_ARG_MAX:
        k += 1
    while abst * q ** (k - 1) < RAW_ARG_MAX:
        k -= 1
    return k


def F_raw_threshold(params: EigenParams) -> int:
    """Largest k whose F series argument q^(2-k)/(a^2 t) stays < RAW_ARG_MAX."""
    import math

    q = params.q
    mag = 1.0 / abs(params.a * params.a * params.t)
    k = math.floor(2.0 - math.log(RAW_ARG_MAX / mag) / math.log(q))
    while mag * q ** (2 - k) >= RAW_ARG_MAX:
        k -= 1
    while mag * q ** (2 - (k + 1)) < RAW_ARG_MAX:
        k += 1
    return k


@lru_cache(maxsize=200_000)
def _u_type_raw(params: EigenParams, y: complex, k: int, sign: int) -> complex:
    a, t, q = params.a, params.t, params.q
    s = 1.0 if sign > 0 else -1.0
    return phi_series([s * a * y, s * a / y], [-q], q, t * q ** k).value


@lru_cache(maxsize=65536)
def c_fn(y: complex, a: complex, t: complex, q: float) -> complex:
    """Connection coefficient c(y; a, t); see the module docstring.

    Singular exactly when y^2 or t sits on a q-power lattice that zeroes
    a denominator factor; both are reported as SingularParameter.
    """
    check_q(q)
    yc, ac, tc = complex(y), complex(a), complex(t)
    if yc == 0 or ac == 0 or tc == 0:
        raise DomainViolation("c(y; a, t) requires nonzero y, a, t")
    m = near_q_power(yc * yc, q, LATTICE_TOL)
    if m is not None and m >= 0:
        raise SingularParameter(f"y^2 = {yc * yc} on q^({m}): (1/y^2; q)_inf vanishes")
    if near_q_power(tc, q, LATTICE_TOL) is not None:
        raise SingularParameter(f"t = {tc} on the q-power lattice")
    num = (qpoch_inf(ac / yc, q).value
           * qpoch_inf(-q / (ac * yc), q).value
           * qpoch_inf(ac * yc * tc, q).value
           * qpoch_inf(q / (ac * yc * tc), q).value)
    den = (qpoch_inf(-q, q).value
           * qpoch_inf(1.0 / (yc * yc), q).value
           * qpoch_inf(tc, q).value
           * qpoch_inf(q / tc, q).value)
    if den == 0:
        raise SingularParameter("denominator product of c(y; a, t) vanished")
    return num / den


@lru_cache(maxsize=65536)
def d_fn(y: complex, a: complex, t: complex, q: float) -> complex:
    """Connection coefficient d(y; a, t) sending u, v back to F."""
    check_q(q)
    yc, ac, tc = complex(y), complex(a), complex(t)
    if yc == 0 or ac == 0 or tc == 0:
        raise DomainViolation("d(y; a, t) requires nonzero y, a, t")
    m = near_q_power(yc * yc, q, LATTICE_TOL)
    if m is not None and m <= -1:
        raise SingularParameter(f"y^2 = {yc * yc} on q^({m}): (q y^2; q)_inf vanishes")
    if near_q_power(-ac * ac * tc, q, LATTICE_TOL) is not None:
        raise SingularParameter(f"-a^2 t = {-ac * ac * tc} on the q-power lattice")
    num = (qpoch_inf(-ac * yc, q).value
           * qpoch_inf(q * yc / ac, q).value
           * qpoch_inf(-ac * tc / (q * yc), q).value
           * qpoch_inf(-q * q * yc / (ac * tc), q).value)
    den = (qpoch_inf(-1.0, q).value
           * qpoch_inf(q * yc * yc, q).value
           * qpoch_inf(-ac * ac * tc / q, q).value
           * qpoch_inf(-q * q / (ac * ac * tc), q).value)
    if den == 0:
        raise SingularParameter("denominator product of d(y; a, t) vanished")
    return num / den


def _check_F_branch(params: EigenParams, y: complex) -> None:
    m = near_q_power(y * y, params.q, LATTICE_TOL)
    if m is not None and m <= -1:
        raise SingularParameter(
            f"y^2 = {y * y} on q^({m}): the F series denominator (q y^2; q)_k vanishes")


@lru_cache(maxsize=200_000)
def _F_raw(params: EigenParams, y: complex, k: int) -> complex:
    a, t, q = params.a, params.t, params.q
    series = phi_series([a * y, -a * y], [q * y * y], q,
                        -(q ** (2 - k)) / (a * a * t)).value
    return (a * y) ** (-k) * series


class _Ladder:
    """Per (params, y) cache of F values extended by upward recurrence."""

    __slots__ = ("params", "y", "z", "kmax", "vals")

    def __init__(self, params: EigenParams, y: complex):
        self.params = params
        self.y = y
        self.z = 0.5 * (y + 1.0 / y)
        self.kmax = F_raw_threshold(params)
        self.vals: dict[int, complex] = {}

    def get(self, k: int) -> complex:
        if k <= self.kmax:
            return _F_raw(self.params, self.y, k)
        hit = self.vals.get(k)
        if hit is not None:
            return hit
        a, t, q = self.params.a, self.params.t, self.params.q
        # vals holds a contiguous run kmax+1 .. top; extend it up to k
        top = max(self.vals) if self.vals else self.kmax
        f0 = self.vals[top] if top > self.kmax else _F_raw(self.params, self.y, top)
        if top - 1 > self.kmax:
            fm1 = self.vals[top - 1]
        else:
            fm1 = _F_raw(self.params, self.y, top - 1)
        for j in range(top, k):
            atq = a * t * q ** (j - 1)
            nxt = (2.0 * self.z * atq * f0 + (1.0 - q ** (j - 1) * t) * fm1) \
                / (1.0 + a * a * t * q ** (j - 1))
            fm1, f0 = f0, nxt
            self.vals[j + 1] = nxt
        return self.vals[k]


_LADDERS: dict[tuple, _Ladder] = {}


def _ladder(params: EigenParams, y: complex) -> _Ladder:
    key = (params, y)
    lad = _LADDERS.get(key)
    if lad is None:
        if len(_LADDERS) > 4096:
            _LADDERS.clear()
        lad = _Ladder(params, y)
        _LADDERS[key] = lad
    return lad


def F_k(params: EigenParams, sp: SpectralParam, k: int, *, route: str = "auto") -> complex:
    """The y-branch solution F_k(y); requires y^2 off the lattice q^(-N).

    route='auto' sums the series raw wherever its argument modulus is
    below RAW_ARG_MAX (all sufficiently negative k) and continues upward
    by the recurrence otherwise.  route='raw' forces the series and
    raises SummationOutOfRange outside the raw window; route='recurrence'
    forces the continuation (anchored just inside the raw window), which
    is the testing hook for route agreement on the overlap.
    """
    _check_F_branch(params, sp.y)
    kmax = F_raw_threshold(params)
    if route == "raw":
        arg = abs(params.q ** (2 - k) / (params.a * params.a * params.t))
        if arg >= RAW_ARG_MAX:
            raise SummationOutOfRange(
                f"raw F series at k = {k} has argument modulus {arg:.4g} >= {RAW_ARG_MAX}")
        return _F_raw(params, sp.y, k)
    if route == "recurrence":
        anchor = min(kmax, k - 1)
        lad = _Ladder(params, sp.y)
        lad.kmax = anchor
        return lad.get(k)
    if route != "auto":
        raise DomainViolation(f"unknown route {route!r}")
    if k <= kmax:
        return _F_raw(params, sp.y, k)
    return _ladder(params, sp.y).get(k)


def u_k(params: EigenParams, sp: SpectralParam, k: int, *, route: str = "auto") -> complex:
    """Solution u_k, branch independent (symmetric under y <-> 1/y).

    route='auto' sums raw for |t q^k| < RAW_ARG_MAX and otherwise uses
    the connection through the F family on both branches; route='raw'
    and route='connect' force one specific evaluation.
    """
    if route not in ("auto", "raw", "connect"):
        raise DomainViolation(f"unknown route {route!r}")
    if route == "raw" or (route == "auto"
                          and abs(params.t) * params.q ** k < RAW_ARG_MAX):
        return _u_type_raw(params, sp.y, k, +1)
    cy = c_fn(sp.y, params.a, params.t, params.q)
    cyi = c_fn(1.0 / sp.y, params.a, params.t, params.q)
    return cy * F_k(params, sp, k) + cyi * F_k(params, sp.reciprocal(), k)


def v_k(params: EigenParams, sp: SpectralParam, k: int, *, route: str = "auto") -> complex:
    """Companion solution v_k = (-1)^k 2phi1(-a y, -a/y; -q; q, t q^k)."""
    if route not in ("auto", "raw", "connect"):
        raise DomainViolation(f"unknown route {route!r}")
    sign = 1.0 if k % 2 == 0 else -1.0
    if route == "raw" or (route == "auto"
                          and abs(params.t) * params.q ** k < RAW_ARG_MAX):
        return sign * _u_type_raw(params, sp.y, k, -1)
    cy = c_fn(sp.y, -params.a, params.t, params.q)
    cyi = c_fn(1.0 / sp.y, -params.a, params.t, params.q)
    return cy * F_k(params, sp, k) + cyi * F_k(params, sp.reciprocal(), k)


def connection_det(params: EigenParams, sp: SpectralParam) -> complex:
    """Determinant c(y; a, t) c(1/y; -a, t) - c(1/y; a, t) c(y; -a, t).

    Equals 2 a / (1/y - y) times theta(-a^2 t) / theta(t); tested as an
    identity and used to certify that (u, v) and the two F branches span
    the same solution space at generic parameters.
    """
    a, t, q = params.a, params.t, params.q
    y = sp.y
    return (c_fn(y, a, t, q) * c_fn(1.0 / y, -a, t, q)
            - c_fn(1.0 / y, a, t, q) * c_fn(y, -a, t, q))
