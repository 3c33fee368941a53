"""Independent verification machinery.

Two unrelated families of checks live here on purpose, both kept apart
from the main evaluation path so that agreement between the two is
meaningful evidence rather than circularity:

* high precision re-evaluation of the scalar building blocks with
  mpmath, written as direct loops that share no code with
  :mod:`qjacobi.qcore`;
* dense truncations of the doubly infinite tridiagonal operator,
  eigensolved or resolvent-solved with scipy, used to cross-check the
  spectral decomposition produced analytically.

The high precision functions accept and return mpmath numbers.  The
fixture writer serializes a fixed list of reference evaluations to JSON
with 30+ significant digits; the test suite freezes that file and
compares the double precision implementations against it.
"""
from __future__ import annotations

import json
from typing import Iterable, Mapping, Sequence

import mpmath as mp
import numpy as np

from .errors import DivergentArgument, DomainViolation, NonConvergence

DEFAULT_DIGITS = 40


# ---------------------------------------------------------------------------
# high precision scalar evaluations (mpmath, independent loops)
# ---------------------------------------------------------------------------

def _to_mpc(value) -> mp.mpc:
    if isinstance(value, (list, tuple)):
        return mp.mpc(mp.mpf(value[0]), mp.mpf(value[1]))
    if isinstance(value, complex):
        return mp.mpc(value)
    if isinstance(value, str):
        return mp.mpc(mp.mpf(value))
    return mp.mpc(value)


def hp_qpoch_inf(a, q, digits: int = DEFAULT_DIGITS) -> mp.mpc:
    """(a; q)_inf as a plain product, truncated at |a| q^n < 10^-(digits+10)."""
    with mp.workdps(digits + 10):
        a = _to_mpc(a)
        q = mp.mpf(q)
        if not (0 < q < 1):
            raise DomainViolation(f"q must lie in (0, 1), got {q}")
        prod = mp.mpc(1)
        pw = mp.mpc(1)
        cutoff = mp.mpf(10) ** (-(digits + 10))
        for _ in range(1_000_000):
            prod *= (1 - a * pw)
            pw *= q
            if abs(a) * abs(pw) < cutoff:
                break
        else:
            raise NonConvergence("infinite product did not truncate")
        return prod


def hp_qpoch(a, q, k: int, digits: int = DEFAULT_DIGITS) -> mp.mpc:
    with mp.workdps(digits + 10):
        a = _to_mpc(a)
        q = mp.mpf(q)
        prod = mp.mpc(1)
        for i in range(k):
            prod *= (1 - a * q ** i)
        return prod


def hp_theta(z, q, digits: int = DEFAULT_DIGITS) -> mp.mpc:
    """theta(z; q) = (z; q)_inf (q/z; q)_inf."""
    with mp.workdps(digits + 10):
        z = _to_mpc(z)
        q = mp.mpf(q)
        if z == 0:
            raise DomainViolation("theta is singular at z = 0")
        return hp_qpoch_inf(z, q, digits + 5) * hp_qpoch_inf(q / z, q, digits + 5)


def hp_phi(numer: Sequence, denom: Sequence, q, z,
           digits: int = DEFAULT_DIGITS, max_terms: int = 2_000_000) -> mp.mpc:
    """Basic hypergeometric sum with (q; q)_k included in the denominator.

    Non-terminating only; callers must keep |z| < 1.  Terms are produced
    by direct ratio recursion at working precision digits + 15.
    """
    with mp.workdps(digits + 15):
        numer = [_to_mpc(a) for a in numer]
        denom = [_to_mpc(b) for b in denom]
        q = mp.mpf(q)
        z = _to_mpc(z)
        if abs(z) >= 1:
            raise DivergentArgument(f"|z| = {abs(z)} >= 1 in non-terminating series")
        total = mp.mpc(1)
        term = mp.mpc(1)
        qpow = mp.mpc(1)  # q^(j-1) while assembling term j
        scale = mp.mpf(1)
        cutoff = mp.mpf(10) ** (-(digits + 12))
        small_run = 0
        for j in range(1, max_terms):
            ratio = mp.mpc(1)
            for a in numer:
                ratio *= (1 - a * qpow)
            for b in denom:
                ratio /= (1 - b * qpow)
            qpow *= q
            ratio /= (1 - qpow)  # the (q; q)_j factor
            term *= ratio * z
            total += term
            scale = max(scale, abs(total))
            if abs(term) < cutoff * scale:
                small_run += 1
                if small_run >= 3:
                    return total
            else:
                small_run = 0
        raise NonConvergence("series did not settle within max_terms")


def _hp_canonical_y(z, digits: int = DEFAULT_DIGITS) -> mp.mpc:
    """Root of y^2 - 2 z y + 1 = 0 with |y| <= 1; ties take Im y >= 0."""
    with mp.workdps(digits + 10):
        z = _to_mpc(z)
        s = mp.sqrt(z * z - 1)
        y1, y2 = z + s, z - s
        if abs(abs(y1) - abs(y2)) <= mp.mpf(10) ** (-(digits + 2)) * max(abs(y1), abs(y2)):
            return y1 if mp.im(y1) >= 0 else y2
        return y1 if abs(y1) < abs(y2) else y2


def hp_qexp(q, z, t, digits: int = DEFAULT_DIGITS) -> mp.mpc:
    """Ismail-Zhang q-exponential, raw series route (needs |t| < 1)."""
    with mp.workdps(digits + 15):
        q = mp.mpf(q)
        z = _to_mpc(z)
        t = _to_mpc(t)
        if abs(t) >= 1:
            raise DivergentArgument("raw q-exponential series needs |t| < 1")
        y = _hp_canonical_y(z, digits + 5)
        p = mp.sqrt(q)
        q4 = q ** mp.mpf("0.25")
        pref = hp_qpoch_inf(-t, p, digits + 5) / hp_qpoch_inf(q * t * t, q * q, digits + 5)
        series = hp_phi([q4 * y, q4 / y], [-p], p, -t, digits + 5)
        return pref * series


_HP_DISPATCH = {
    "qpoch_infinite": lambda p, d: hp_qpoch_inf(_param_c(p, "a"), p["q"], d),
    "theta": lambda p, d: hp_theta(_param_c(p, "z"), p["q"], d),
    "phi_series": lambda p, d: hp_phi(
        [_to_mpc(a) for a in p["numer"]],
        [_to_mpc(b) for b in p["denom"]],
        p["q"], _param_c(p, "z"), d),
    "q_exponential": lambda p, d: hp_qexp(p["q"], _param_c(p, "z"), _param_c(p, "t"), d),
}


def _param_c(params: Mapping, key: str):
    val = params[key]
    return _to_mpc(val)


def highprec_eval(expr: str, params: Mapping, digits: int = 30) -> mp.mpc:
    """Evaluate a named expression family at >= 30 significant digits.

    expr is one of 'qpoch_infinite', 'theta', 'phi_series', 'q_exponential';
    params carries that family's arguments (complex entries as
    [re, im] pairs or strings).
    """
    digits = max(int(digits), 30)
    try:
        fn = _HP_DISPATCH[expr]
    except KeyError:
        raise DomainViolation(f"unknown expression family {expr!r}") from None
    return fn(params, digits)


# ---------------------------------------------------------------------------
# reference fixture generation
# ---------------------------------------------------------------------------

def _mp_str(x, digits: int) -> str:
    return mp.nstr(x, digits, strip_zeros=False)


def reference_cases() -> list[dict]:
    """The frozen list of reference evaluations used by the test suite."""
    sq = mp.sqrt
    a1 = sq(mp.mpf("0.5")) * mp.exp(mp.mpc(0, "0.3"))
    y1 = mp.mpc("0.4", "0.25")
    t1 = mp.mpc(0, 1) * mp.mpf("0.8") * mp.exp(mp.mpc(0, "-0.3"))
    cases = [
        {"expr": "qpoch_infinite", "params": {"a": "0.5", "q": 0.5}},
        {"expr": "qpoch_infinite", "params": {"a": [0.3, 0.4], "q": 0.45}},
        {"expr": "qpoch_infinite", "params": {"a": "-1", "q": 0.5}},
        {"expr": "qpoch_infinite", "params": {"a": "-0.5", "q": 0.5}},
        {"expr": "theta", "params": {"z": [0.3, 0.1], "q": 0.5}},
        {"expr": "theta", "params": {"z": "-0.7", "q": 0.35}},
        {"expr": "phi_series",
         "params": {"numer": [[0.55, 0.1], [0.2, -0.3]], "denom": ["-0.5"],
                    "q": 0.5, "z": [0.4, 0.2]}},
        # a 2phi1 with the structure of the k = 2 eigenfunction series
        {"expr": "phi_series",
         "params": {"numer": [[float(mp.re(a1 * y1)), float(mp.im(a1 * y1))],
                              [float(mp.re(a1 / y1)), float(mp.im(a1 / y1))]],
                    "denom": ["-0.5"], "q": 0.5,
                    "z": [float(mp.re(t1 * mp.mpf("0.25"))),
                          float(mp.im(t1 * mp.mpf("0.25")))]}},
        {"expr": "phi_series",
         "params": {"numer": ["0.3", "0.5", "-0.4"], "denom": ["0.7", "-0.6"],
                    "q": 0.4, "z": "0.55"}},
        {"expr": "q_exponential", "params": {"q": 0.5, "z": "0.3", "t": "0.2"}},
        {"expr": "q_exponential", "params": {"q": 0.36, "z": "-0.45", "t": "0.5"}},
        {"expr": "q_exponential", "params": {"q": 0.6, "z": [0.35, 0.2], "t": [0.4, 0.1]}},
    ]
    return cases


def write_reference_fixtures(path: str, digits: int = 32) -> None:
    """Stamp the reference JSON used by tests; run once, output committed."""
    rows = []
    for case in reference_cases():
        val = highprec_eval(case["expr"], case["params"], digits + 8)
        rows.append({
            "expr": case["expr"],
            "params": case["params"],
            "value_re": _mp_str(mp.re(val), digits),
            "value_im": _mp_str(mp.im(val), digits),
            "digits": digits,
        })
    with open(path, "w") as fh:
        json.dump(rows, fh, indent=1)
        fh.write("\n")


# ---------------------------------------------------------------------------
# dense truncations of the operator (scipy)
# ---------------------------------------------------------------------------

def truncated_operator(regime, n: int):
    """Symmetric tridiagonal truncation onto indices k = -n .. n.

    Returns (diag, offdiag, offset): diag is zero, offdiag[i] couples
    k = i - n to k = i - n + 1 with strength a_k / 2, and offset maps
    array position i to lattice index k = i - offset.
    """
    from . import jacobi

    if n < 1:
        raise DomainViolation("truncation size must be at least 1")
    size = 2 * n + 1
    diag = np.zeros(size)
    off = np.array([jacobi.coeff_a(regime, k) / 2.0 for k in range(-n, n)])
    return diag, off, n


def truncated_eigen(regime, n: int):
    """Eigendecomposition of the truncation; eigenvalues ascending."""
    from scipy.linalg import eigh_tridiagonal

    diag, off, offset = truncated_operator(regime, n)
    vals, vecs = eigh_tridiagonal(diag, off)
    return vals, vecs, offset


def truncated_resolve(regime, n: int, z: complex, xi: Mapping[int, complex]) -> dict[int, complex]:
    """Solve (z - T) x = xi on the 2n+1 point truncation; returns {k: x_k}."""
    from scipy.linalg import solve_banded

    diag, off, offset = truncated_operator(regime, n)
    size = diag.size
    ab = np.zeros((3, size), dtype=complex)
    ab[1, :] = z
    ab[0, 1:] = -off  # superdiagonal
    ab[2, :-1] = -off  # subdiagonal
    rhs = np.zeros(size, dtype=complex)
    for k, val in xi.items():
        idx = k + offset
        if not (0 <= idx < size):
            raise DomainViolation(f"support point k = {k} outside truncation")
        rhs[idx] = val
    sol = solve_banded((1, 1), ab, rhs)
    return {i - offset: sol[i] for i in range(size)}


def contour_mass(regime, ext, x0: float, k: int, l: int,
                 radius: float, nodes: int = 64) -> complex:
    """Spectral projection weight at x0 by a small resolvent contour.

    Trapezoid rule on a circle around x0; the node phases are offset by
    half a step so none of them lands on the real axis.  Spectrally
    accurate for analytic integrands, which is the case whenever the
    circle stays clear of the rest of the spectrum.
    """
    from . import jacobi

    acc = 0.0 + 0.0j
    for j in range(nodes):
        phase = 2.0 * np.pi * (j + 0.5) / nodes
        zeta = x0 + radius * complex(np.cos(phase), np.sin(phase))
        gkl = jacobi.green_kernel(regime, ext, zeta, k, l)
        dz = radius * 1j * complex(np.cos(phase), np.sin(phase)) * (2.0 * np.pi / nodes)
        acc += gkl * dz
    # 1/(2 pi i) times the loop integral of the resolvent <R(z)e_k, e_l>
    return acc / (2.0j * np.pi)
