"""Scalar building blocks: q-shifted factorials, theta products, and
basic hypergeometric series with an explicit truncation-error contract.

Conventions
-----------
The base q is a plain float with 0 < q < 1 throughout.  For complex a
and integer k >= 0,

    (a; q)_k   = prod_{i=0}^{k-1} (1 - a q^i),
    (a; q)_inf = prod_{i>=0}     (1 - a q^i),

and the theta product is theta(z; q) = (z; q)_inf (q/z; q)_inf, z != 0.
The series

    phi(a_1..a_s; b_1..b_r; q, z)
        = sum_k (a_1..a_s; q)_k / ((b_1..b_r; q)_k (q; q)_k) z^k

is summed with compensated (Neumaier) accumulation and a stopping rule
of three consecutive terms below ``tail`` times the running maximum of
the partial sums.  Non-terminating series refuse |z| >= 1; terminating
ones (a numerator parameter on the lattice q^{-n}, n >= 0) are summed
exactly through their last nonzero term.

Infinite products truncate once |a| q^i < ``tail`` (1e-17 by default),
which leaves a relative remainder below |a| q^i / (1 - q).

Lattice membership tests use an absolute-relative mix with tolerance
1e-10, see :func:`near_q_power`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    DivergentArgument,
    DomainViolation,
    NonConvergence,
    PoleInDenominator,
    ZeroArgument,
)

PRODUCT_TAIL = 1e-17
SERIES_TAIL = 1e-16
SERIES_TAIL_RUN = 3
LATTICE_TOL = 1e-10
MAX_TERMS = 200_000


def check_q(q: float) -> float:
    if not (0.0 < q < 1.0) or q != q:
        raise DomainViolation(f"base must satisfy 0 < q < 1, got {q!r}")
    return float(q)


@dataclass(frozen=True)
class SeriesValue:
    """Value of a truncated sum or product together with its error budget.

    abs_error_estimate bounds the truncation remainder under the
    implemented stopping rule; terminated reports whether a numerator
    zero cut the sum off exactly (in which case the estimate is 0).
    """

    value: complex
    abs_error_estimate: float
    terms_used: int
    terminated: bool


class _NeumaierSum:
    """Compensated accumulator, applied to the real and imaginary parts."""

    __slots__ = ("sr", "cr", "si", "ci")

    def __init__(self) -> None:
        self.sr = 0.0
        self.cr = 0.0
        self.si = 0.0
        self.ci = 0.0

    def add(self, x: complex) -> None:
        xr, xi = x.real, x.imag
        t = self.sr + xr
        if abs(self.sr) >= abs(xr):
            self.cr += (self.sr - t) + xr
        else:
            self.cr += (xr - t) + self.sr
        self.sr = t
        t = self.si + xi
        if abs(self.si) >= abs(xi):
            self.ci += (self.si - t) + xi
        else:
            self.ci += (xi - t) + self.si
        self.si = t

    def value(self) -> complex:
        return complex(self.sr + self.cr, self.si + self.ci)


def near_q_power(x, q: float, tol: float = LATTICE_TOL) -> Optional[int]:
    """Integer m with x ~= q^m if one exists within tolerance, else None.

    Only positive real x (imaginary part below tol * |x|) can sit on the
    lattice.  The comparison is |x - q^m| <= tol * max(1, q^m), so large
    negative m (huge lattice points) are matched relatively and small
    positive m absolutely.
    """
    check_q(q)
    xc = complex(x)
    if xc == 0:
        return None
    if abs(xc.imag) > tol * abs(xc):
        return None
    xr = xc.real
    if xr <= 0.0:
        return None
    m = round(math.log(xr) / math.log(q))
    if abs(m) > 4000:
        return None
    qm = q ** m
    if qm == 0.0 or math.isinf(qm):
        return None
    if abs(xr - qm) <= tol * max(1.0, qm):
        return int(m)
    return None


def qpoch(a, q: float, k: int) -> complex:
    """Finite q-shifted factorial (a; q)_k, k >= 0.  Empty product is 1."""
    check_q(q)
    if k < 0 or k != int(k):
        raise DomainViolation(f"finite Pochhammer order must be a nonnegative integer, got {k!r}")
    prod = 1.0 + 0.0j
    pw = 1.0
    ac = complex(a)
    for _ in range(int(k)):
        prod *= 1.0 - ac * pw
        pw *= q
    return prod


def qpoch_inf(a, q: float, *, tail: float = PRODUCT_TAIL) -> SeriesValue:
    """Infinite product (a; q)_inf with a certified relative remainder.

    Truncates at the first i with |a| q^i < tail; the dropped factors
    multiply to 1 + O(|a| q^i / (1 - q)), reported (with a safety factor
    of two) through abs_error_estimate.
    """
    check_q(q)
    ac = complex(a)
    if ac == 0:
        return SeriesValue(1.0 + 0.0j, 0.0, 0, False)
    prod = 1.0 + 0.0j
    pw = 1.0
    absa = abs(ac)
    n = 0
    while absa * pw >= tail:
        prod *= 1.0 - ac * pw
        pw *= q
        n += 1
        if n > 2_000_000:
            raise NonConvergence("infinite product failed to reach the tail cutoff")
    err = 2.0 * abs(prod) * absa * pw / (1.0 - q)
    return SeriesValue(prod, err, n, False)


def qpoch_multi(params: Sequence, q: float, k: Optional[int] = None) -> complex:
    """Product of q-shifted factorials over several parameters.

    k = None takes every factor to its infinite product; otherwise all
    factors are finite of order k.
    """
    if k is None:
        out = 1.0 + 0.0j
        for a in params:
            out *= qpoch_inf(a, q).value
        return out
    out = 1.0 + 0.0j
    for a in params:
        out *= qpoch(a, q, k)
    return out


def theta(z, q: float) -> complex:
    """Theta product (z; q)_inf (q/z; q)_inf.

    Satisfies theta(q/z) = theta(z) and the shift rule
    theta(a q^k) = (-a)^(-k) q^(-k(k-1)/2) theta(a) for integer k.
    Raises ZeroArgument at z = 0, where the product is singular.
    """
    check_q(q)
    zc = complex(z)
    if zc == 0:
        raise ZeroArgument("theta requires z != 0")
    return qpoch_inf(zc, q).value * qpoch_inf(q / zc, q).value


def theta_multi(zs: Sequence, q: float) -> complex:
    out = 1.0 + 0.0j
    for z in zs:
        out *= theta(z, q)
    return out


def _termination_index(numer: Sequence[complex], q: float) -> Optional[int]:
    idx = None
    for a in numer:
        m = near_q_power(a, q)
        if m is not None and m <= 0:
            n = -m
            idx = n if idx is None else min(idx, n)
    return idx


def phi_series(numer: Sequence, denom: Sequence, q: float, z, *,
               tail: float = SERIES_TAIL, max_terms: int = MAX_TERMS) -> SeriesValue:
    """Basic hypergeometric series; see the module docstring for the sum.

    Raises DivergentArgument when |z| >= 1 and no numerator parameter
    terminates the sum, and PoleInDenominator when a denominator
    parameter q^{-m} (m >= 0) zeroes a factor at or before the last
    term actually summed.
    """
    check_q(q)
    numer = [complex(a) for a in numer]
    denom = [complex(b) for b in denom]
    zc = complex(z)

    stop = _termination_index(numer, q)
    for b in denom:
        m = near_q_power(b, q)
        if m is not None and m <= 0:
            pole_at = -m + 1  # (b; q)_j vanishes from j = -m + 1 onward
            if stop is None or stop >= pole_at:
                raise PoleInDenominator(
                    f"denominator parameter {b} sits on q^({m}); factor vanishes at term {pole_at}")
    if zc == 0:
        return SeriesValue(1.0 + 0.0j, 0.0, 1, False)
    if stop is None and abs(zc) >= 1.0:
        raise DivergentArgument(
            f"non-terminating series with |z| = {abs(zc):.6g} >= 1")

    acc = _NeumaierSum()
    term = 1.0 + 0.0j
    acc.add(term)
    qpow = 1.0  # q^(j-1) while forming term j
    maxmag = 1.0
    small_run = 0
    prev_abs = 1.0
    j = 0
    while True:
        j += 1
        if stop is not None and j > stop:
            return SeriesValue(acc.value(), 0.0, j, True)
        if j >= max_terms:
            raise NonConvergence(f"series did not settle within {max_terms} terms")
        ratio = zc
        for a in numer:
            ratio *= 1.0 - a * qpow
        for b in denom:
            fac = 1.0 - b * qpow
            if fac == 0.0:
                raise PoleInDenominator(f"denominator factor vanished at term {j}")
            ratio /= fac
        qpow *= q
        ratio /= 1.0 - qpow
        term *= ratio
        acc.add(term)
        cur = abs(acc.value())
        if cur > maxmag:
            maxmag = cur
        tabs = abs(term)
        if tabs < tail * maxmag:
            small_run += 1
            if small_run >= SERIES_TAIL_RUN:
                rho = tabs / prev_abs if prev_abs > 0 else 0.0
                if rho >= 0.99:
                    rho = 0.99
                est = tabs * rho / (1.0 - rho) + SERIES_TAIL_RUN * tail * maxmag
                return SeriesValue(acc.value(), est, j + 1, False)
        else:
            small_run = 0
        prev_abs = tabs if tabs > 0 else prev_abs
