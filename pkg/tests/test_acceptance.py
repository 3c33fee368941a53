"""Acceptance suite: eleven numbered criteria, one test and one
pass/fail line each.

Every criterion prints a single summary line (visible in verbose runs
and on failure) of the form "criterion N (<label>): PASS worst=...";
the assertion bounds are stated inline and match the printed bounds.
"""

import cmath
import math
import time

import numpy as np
import pytest

import qjacobi.eigenfunctions as ef
import qjacobi.jacobi as jb
import qjacobi.oracle as oc
import qjacobi.qcore as qc
import qjacobi.quadratic as qd
import qjacobi.spectrum as spec
import qjacobi.transforms as tf
from qjacobi.jacobi import Case1, Case2

from conftest import draw_case1, draw_case2, draw_y

CASE1 = Case1(psi=0.4, r=0.7, q=0.5)
CASE2 = Case2(s=1.2, t=-0.8, q=0.5)
ECASE = Case1(psi=0.0, r=0.7, q=0.5)

THETAS = (0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4)


def _report(num, label, worst, bound, ok=None, extra=""):
    ok = (worst < bound) if ok is None else ok
    status = "PASS" if ok else "FAIL"
    tail = f" {extra}" if extra else ""
    print(f"criterion {num} ({label}): {status} "
          f"worst={worst:.3e} bound={bound:.0e}{tail}")
    assert ok


def test_criterion_01_recurrence_residuals(rng):
    start = time.perf_counter()
    worst = 0.0
    regimes = ([draw_case1(rng) for _ in range(5)]
               + [draw_case2(rng) for _ in range(5)])
    for regime in regimes:
        params = regime.params
        sp = ef.SpectralParam.from_y(draw_y(rng))
        for fam in (ef.u_k, ef.v_k, ef.F_k):
            fn = lambda kk: fam(params, sp, kk)
            for k in range(-15, 16):
                worst = max(worst,
                            ef.recurrence_residual(fn, params, sp, k))
    elapsed = time.perf_counter() - start
    _report(1, "recurrence residuals", worst, 1e-10,
            ok=worst < 1e-10 and elapsed < 10.0,
            extra=f"elapsed={elapsed:.1f}s")


def test_criterion_02_connection_identities(rng):
    worst_conn = 0.0
    worst_det = 0.0
    for draw in range(3):
        for regime in (draw_case1(rng), draw_case2(rng)):
            params = regime.params
            a, t, q = params.a, params.t, params.q
            sp = ef.SpectralParam.from_y(draw_y(rng))
            spi = sp.reciprocal()
            pairs = ((ef.u_k, a), (ef.v_k, -a))
            for fam, sign_a in pairs:
                c1 = ef.c_fn(sp.y, sign_a, t, q)
                c2 = ef.c_fn(1.0 / sp.y, sign_a, t, q)
                for k in (-7, -2, 0, 3, 8):
                    t1 = c1 * ef.F_k(params, sp, k)
                    t2 = c2 * ef.F_k(params, spi, k)
                    lhs = fam(params, sp, k)
                    scale = max(abs(t1), abs(t2), 1.0)
                    worst_conn = max(worst_conn,
                                     abs(lhs - t1 - t2) / scale)
            det = ef.connection_det(params, sp)
            target = (2.0 * a / (1.0 / sp.y - sp.y)
                      * qc.theta(-a * a * t, q) / qc.theta(t, q))
            worst_det = max(worst_det,
                            abs(det - target) / max(1.0, abs(target)))
    _report(2, "connection identities", max(worst_conn, worst_det), 1e-9,
            ok=worst_conn < 1e-9 and worst_det < 1e-10,
            extra=f"det={worst_det:.3e}")


def test_criterion_03_wronskian_suite(rng):
    worst_k = 0.0
    worst_val = 0.0
    worst_tail = 0.0
    for regime in (CASE1, CASE2):
        phase = cmath.exp(1j * jb.gamma_phase(regime))
        for _ in range(3):
            sp = ef.SpectralParam.from_y(draw_y(rng))
            spi = sp.reciprocal()
            fu = lambda k: jb.alpha_u(regime, sp, k)
            fv = lambda k: jb.alpha_v(regime, sp, k)
            ref = jb.wronskian(regime, fu, fv, 10)
            for k in range(-10, 10):
                # normalize by the size of the products forming the
                # bracket, which cancel heavily at negative k
                ak = jb.coeff_a(regime, k)
                scale = max(abs(0.5 * ak * fu(k + 1) * fv(k)),
                            abs(0.5 * ak * fu(k) * fv(k + 1)),
                            abs(ref), 1.0)
                worst_k = max(worst_k,
                              abs(jb.wronskian(regime, fu, fv, k) - ref)
                              / scale)
            f = lambda k: phase * jb.alpha_F(regime, sp, k)
            g = lambda k: phase * jb.alpha_F(regime, spi, k)
            target = 0.5 * (1.0 / sp.y - sp.y)
            worst_val = max(worst_val,
                            max(abs(jb.wronskian(regime, f, g, k) - target)
                                for k in (-6, 0, 6)))
        for fam in ("u", "v"):
            w = ef.SpectralParam.from_y(draw_y(rng))
            y = ef.SpectralParam.from_y(draw_y(rng))
            lim = jb.tail_wronskian_limit(regime, fam, y)
            val = jb.tail_wronskian(regime, fam, w, y, 60)
            worst_tail = max(worst_tail,
                             abs(val - lim) / max(1.0, abs(lim)))
    worst = max(worst_k, worst_val)
    _report(3, "Wronskian suite", max(worst, worst_tail), 1e-8,
            ok=worst < 1e-10 and worst_tail < 1e-8,
            extra=f"tail={worst_tail:.3e}")


def test_criterion_04_extension_machinery():
    worst_real = 0.0
    worst_defect = 0.0
    worst_boundary = 0.0
    z = 0.8 + 0.9j
    for regime in (CASE1, CASE2):
        for angle in THETAS:
            ext = jb.extension_coeffs(regime, angle)
            worst_real = max(worst_real, abs(complex(ext.E).imag),
                             abs(complex(ext.F).imag))
            lam = ext.lambda0
            assert abs(0.5 * (1j * lam + 1.0 / (1j * lam)) - 1j) < 1e-15
            worst_defect = max(worst_defect, jb.defect_residual(regime, ext))
            worst_boundary = max(worst_boundary,
                                 abs(jb.boundary_wronskian(regime, ext,
                                                           z, 60)))
    ok = (worst_real < 1e-12 and worst_defect < 1e-9
          and worst_boundary < 1e-7)
    _report(4, "extension machinery",
            max(worst_real, worst_defect, worst_boundary), 1e-7, ok=ok,
            extra=f"re={worst_real:.1e} defect={worst_defect:.1e}")


def test_criterion_05_quadratic_transformation():
    start = time.perf_counter()
    gen = np.random.default_rng(7)
    q = 0.5
    worst_even = 0.0
    for _ in range(50):
        a = cmath.rect(gen.uniform(0.75, 1.3), gen.uniform(0.0, 2 * math.pi))
        y = cmath.rect(gen.uniform(0.35, 0.9), gen.uniform(0.0, 2 * math.pi))
        radius = gen.uniform(0.05, 0.9) * min(1.0, abs(a) ** 2)
        z = cmath.rect(radius, gen.uniform(0.0, 2 * math.pi))
        worst_even = max(worst_even, qd.quad_transform_check(a, y, z, q))

    worst_lattice = 0.0
    for _ in range(25):
        a = cmath.rect(gen.uniform(0.75, 1.3), gen.uniform(0.0, 2 * math.pi))
        y = cmath.rect(gen.uniform(0.35, 0.9), gen.uniform(0.0, 2 * math.pi))
        zlat = gen.uniform(0.05, 0.6) * min(1.0, abs(a) ** 2)
        k = int(gen.integers(0, 3))
        for odd in (False, True):
            t = q ** (2 - 2 * k) / zlat / (q if odd else 1.0)
            worst_lattice = max(worst_lattice,
                                qd.quadrel1_residual(a, y, t, q, k, odd=odd))

    worst_qexp = 0.0
    for qv in (0.36, 0.5, 0.64):
        for tv in (0.78, -0.8, 0.85):
            if abs(tv) <= math.sqrt(qv):
                continue
            for zv in (0.3, -0.55, 0.2 + 0.4j):
                ref = tf.q_exponential(zv, tv, qv)
                got = qd.qexp_as_3phi2(zv, tv, qv)
                worst_qexp = max(worst_qexp,
                                 abs(got - ref) / max(1.0, abs(ref)))
    elapsed = time.perf_counter() - start
    ok = (worst_even < 1e-10 and worst_lattice < 1e-10
          and worst_qexp < 1e-9 and elapsed < 30.0)
    _report(5, "quadratic transformation",
            max(worst_even, worst_lattice), 1e-10, ok=ok,
            extra=f"qexp={worst_qexp:.3e} elapsed={elapsed:.1f}s")


def test_criterion_06_orthogonality():
    ks = range(-4, 5)
    eye = np.eye(len(ks))
    worst = 0.0
    budget_ok = True
    for regime in (CASE1, CASE2):
        for angle in (0.0, math.pi / 4):
            start = time.perf_counter()
            gram = np.asarray(tf.orthogonality_matrix(regime,
                                                      jb.extension_coeffs(
                                                          regime, angle),
                                                      ks, ks, tol=1e-9))
            worst = max(worst, float(np.max(np.abs(gram - eye))))
            budget_ok = budget_ok and (time.perf_counter() - start) < 300.0
    _report(6, "orthogonality", worst, 1e-6,
            ok=worst < 1e-6 and budget_ok)


def test_criterion_07_inversion_round_trip():
    xi = {-3: 0.7, -1: complex(-0.4, 0.9), 0: 1.3,
          2: complex(0.2, -0.5), 3: -0.6}
    ls = sorted(xi) + [-5, 5]
    worst = 0.0
    for regime, angle in ((CASE2, 0.3), (CASE1, 0.6)):
        ext = jb.extension_coeffs(regime, angle)
        F_xi = lambda x: tf.fourier_theta(regime, ext, xi, x)
        got = tf.inverse_vector(regime, ext, F_xi, ls)
        for i, l in enumerate(ls):
            worst = max(worst, abs(got[i] - xi.get(l, 0.0)))

    ext_a = jb.extension_coeffs(CASE2, 0.3)
    ext_b = jb.extension_coeffs(CASE2, 1.2)
    small = {0: 1.0, 1: complex(0.5, -0.3)}
    F_small = lambda x: tf.fourier_theta(CASE2, ext_a, small, x)
    mixed = tf.inverse_vector(CASE2, ext_b, F_small, [0, 1])
    control = max(abs(mixed[0] - small[0]), abs(mixed[1] - small[1]))
    _report(7, "inversion round trip", worst, 1e-6,
            ok=worst < 1e-6 and control > 1e-2,
            extra=f"mismatched-theta control={control:.3e}")


def test_criterion_08_discrete_grid_and_elliptic_order():
    ext = jb.extension_coeffs(ECASE, 0.25)
    fit = spec.fit_two_grids(ECASE, ext)
    anchors_ok = 1 <= len(fit["anchors"]) <= 2
    fit_res = float(fit["max_residual"])

    q, r = ECASE.q, ECASE.r
    tau = spec.elliptic_tau(q)
    period_dev = 0.0
    for w in (0.13 + 0.21j, -0.37 + 0.08j, 0.52 - 0.11j):
        base = spec.elliptic_g(w, tau, r, q)
        for shift in (1.0, tau):
            dev = abs(spec.elliptic_g(w + shift, tau, r, q) - base)
            period_dev = max(period_dev, dev / max(1.0, abs(base)))
    w0 = 0.05 + 0.18j
    zeros = spec.elliptic_winding("numerator", w0, tau, r, q)
    poles = spec.elliptic_winding("denominator", w0, tau, r, q)
    ok = (anchors_ok and fit_res < 1e-8 and period_dev < 1e-11
          and zeros == 2 and poles == 2)
    _report(8, "discrete grids and elliptic order",
            max(fit_res, period_dev), 1e-8, ok=ok,
            extra=f"anchors={len(fit['anchors'])} order={zeros}/{poles}")


def test_criterion_09_resolvent_cross_check():
    xi = {0: 1.0, 1: 0.5, -2: 0.25}
    worst = 0.0
    for regime in (CASE1, CASE2):
        ext = jb.extension_coeffs(regime, 0.0)
        sol = oc.truncated_resolve(regime, 200, 2j, xi)
        for k in range(-60, 61):
            want = jb.resolvent_apply(regime, ext, 2j, xi, k)
            worst = max(worst, abs(sol[k] - want))
    _report(9, "resolvent cross-check", worst, 1e-6)


def test_criterion_10_q_exponential_limit():
    worst = {}
    for q in (0.9, 0.99):
        w = 0.0
        for lam in (-1.0, 1.0):
            for j in range(11):
                z = j / 10.0
                rel = tf.qexp_limit_error(q, lam, z) / abs(math.exp(lam * z))
                w = max(w, rel)
        worst[q] = w
    ok = worst[0.99] < worst[0.9] and worst[0.99] <= 5e-2
    _report(10, "q-exponential limit", worst[0.99], 5e-2, ok=ok,
            extra=f"worst(0.9)={worst[0.9]:.3e}")


def test_criterion_11_band_edge_diagnostic():
    worst_w = 0.0
    worst_growth = 0.0
    all_clear = True
    for regime in (CASE1, CASE2):
        for y0 in (1.0, -1.0):
            diag = spec.boundary_point_diagnostic(regime, y0)
            worst_w = max(worst_w, diag["wronskian_deviation"],
                          diag["wronskian_spread"])
            worst_growth = max(worst_growth, diag["growth_deviation"])
            all_clear = all_clear and diag["no_point_mass"]
    _report(11, "band edge diagnostic", worst_w, 1e-7,
            ok=worst_w < 1e-7 and all_clear,
            extra=f"growth={worst_growth:.3e}")
