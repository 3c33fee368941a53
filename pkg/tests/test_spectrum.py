"""Spectral measure layer: continuous density, mass point location and
weights, the reducible two-grid structure, the elliptic weight ratio, and
the band edge diagnostics."""
import cmath
import math

import pytest

from qjacobi import eigenfunctions as ef
from qjacobi import jacobi as jb
from qjacobi import oracle
from qjacobi import spectrum as sm
from qjacobi.errors import (
    DomainViolation,
    PoleEncountered,
    ValidationFailed,
    WindowTooNarrow,
)
from qjacobi.qcore import theta

from conftest import draw_case1, draw_case2

CASE1 = jb.Case1(psi=0.4, r=0.7, q=0.5)
CASE2 = jb.Case2(s=1.2, t=-0.8, q=0.5)
ECASE = jb.Case1(psi=0.0, r=0.7, q=0.5)


def _ext(regime, theta_angle):
    return jb.extension_coeffs(regime, theta_angle)


# ---------------------------------------------------------------------------
# continuous part
# ---------------------------------------------------------------------------

def test_density_positive_and_band_limited(rng):
    for regime in (CASE1, CASE2, ECASE):
        ext = _ext(regime, 0.25)
        for chi in (0.05, 0.7, 1.4, 2.2, math.pi - 0.05):
            val = sm.continuous_density(regime, ext, chi)
            assert val > 0.0
    with pytest.raises(DomainViolation):
        sm.continuous_density(CASE1, _ext(CASE1, 0.25), 0.0)
    with pytest.raises(DomainViolation):
        sm.continuous_density(CASE1, _ext(CASE1, 0.25), math.pi)
    with pytest.raises(DomainViolation):
        sm.continuous_density(CASE1, _ext(CASE1, 0.25), -0.3)


def test_weight_reality_on_the_real_axis(rng):
    """theta(t) h(y) is real for real y, which is what makes the mass
    point search a real root problem; the residual is pure roundoff."""
    for regime in (CASE1, CASE2):
        for ang in (0.0, math.pi / 4, 0.9):
            ext = _ext(regime, ang)
            tht = theta(regime.params.t, regime.q)
            for y in (1.3, 2.7, -1.8, -4.2):
                val = tht * sm.weight_coefficient(regime, ext, y)
                assert abs(val.imag) < 1e-12 * max(1.0, abs(val))


def test_density_vanishes_quadratically_at_edges():
    """h has a first order pole at y = +-1, so the density falls off as
    chi^2 toward both endpoints of the band."""
    ext = _ext(CASE2, 0.0)
    for edge in (0.0, math.pi):
        vals = []
        for eps in (2e-2, 1e-2, 5e-3):
            chi = eps if edge == 0.0 else math.pi - eps
            vals.append(sm.continuous_density(CASE2, ext, chi))
        # halving the distance quarters the density
        assert abs(vals[1] / vals[0] - 0.25) < 0.05
        assert abs(vals[2] / vals[1] - 0.25) < 0.05


def test_x_y_coordinate_maps():
    assert abs(sm.x_of_y(2.0) - 1.25) < 1e-15
    assert abs(sm.y_outside(1.25) - 2.0) < 1e-12
    for x in (1.01, 3.7, -1.4, -25.0):
        y = sm.y_outside(x)
        assert abs(y) > 1.0
        assert abs(sm.x_of_y(y) - x) < 1e-12 * max(1.0, abs(x))
    with pytest.raises(DomainViolation):
        sm.y_outside(0.5)


# ---------------------------------------------------------------------------
# mass points: location, certificates, weights
# ---------------------------------------------------------------------------

def test_locate_certificates_and_weights():
    for regime, ang in ((CASE1, 0.6), (CASE2, 0.0), (ECASE, 0.25)):
        ext = _ext(regime, ang)
        points = sm.locate_discrete(regime, ext, 1.001, 30.0)
        points += sm.locate_discrete(regime, ext, -30.0, -1.001)
        assert points, "expected at least one mass point within |x| < 30"
        for p in points:
            assert abs(p.y0) > 1.0
            scale = sm.weight_scale(regime, ext, p.y0)
            assert abs(sm.weight_coefficient(regime, ext, p.y0)) \
                <= sm.ZERO_CERT_TOL * scale
            assert p.m0 > 0.0
            assert abs(p.x0 - sm.x_of_y(p.y0)) < 1e-12 * abs(p.x0)


def test_rank_one_projection_trace():
    """Each point projection has unit trace: sum_k m0 |comp_k|^2 = 1.

    Points very close to the band edge decay so slowly toward
    k -> -infinity that the sum needs thousands of terms, so the check
    sticks to points with |x0| > 1.2.
    """
    for regime, ang in ((CASE2, 0.3), (ECASE, 0.0)):
        ext = _ext(regime, ang)
        points = [p for p in
                  sm.locate_discrete(regime, ext, 1.2, 1.0 / regime.q ** 2)]
        assert points
        for p in points:
            tr = sum(sm.discrete_mass(regime, ext, p, k, k).real
                     for k in range(-60, 61))
            assert abs(tr - 1.0) < 1e-8


def test_mass_matches_resolvent_contour():
    """The direct weight agrees with 1/(2 pi i) times the Green kernel
    loop integral around x0, provided the circle stays inside the gap."""
    regime, ext = CASE2, _ext(CASE2, 0.3)
    points = sm.locate_discrete(regime, ext, 1.001, 1.0 / regime.q ** 2)
    p = points[0]
    gap = abs(p.x0) - 1.0
    if len(points) > 1:
        gap = min(gap, abs(points[1].x0 - p.x0))
    radius = 0.3 * gap
    for k, l in ((0, 0), (1, -1), (2, 0)):
        direct = sm.discrete_mass(regime, ext, p, k, l)
        loop = oracle.contour_mass(regime, ext, p.x0, k, l, radius)
        assert abs(direct - loop) < 1e-8 * max(1.0, abs(direct))


def test_psi_at_point_matches_inside_evaluation():
    """At a mass point the u,v combination collapses onto the decaying
    branch: psi_k(x0) computed from y inside the disc equals
    p0 alpha_k F_k(1/y0)."""
    regime, ext = CASE2, _ext(CASE2, 0.3)
    p = sm.locate_discrete(regime, ext, 1.001, 1.0 / regime.q ** 2)[0]
    sp = ef.SpectralParam.from_y(1.0 / p.y0)
    for k in range(0, 7):
        via_uv = jb.psi_k(regime, ext, sp, k)
        direct = sm.psi_at_point(regime, p, k)
        assert abs(via_uv - direct) < 1e-9 * max(1.0, abs(direct))


def test_point_weight_consistency():
    regime, ext = CASE1, _ext(CASE1, 0.6)
    p = sm.locate_discrete(regime, ext, 1.001, 1.0 / regime.q ** 2)[0]
    w = sm.point_weight(p)
    assert w > 0.0
    for k, l in ((0, 1), (-2, 3)):
        via_psi = w * sm.psi_at_point(regime, p, k) \
            * sm.psi_at_point(regime, p, l).conjugate()
        assert abs(via_psi - sm.discrete_mass(regime, ext, p, k, l)) \
            < 1e-12 * max(1.0, abs(via_psi))


def test_locate_random_regimes(rng):
    for _ in range(2):
        regime = draw_case1(rng)
        ext = _ext(regime, float(rng.uniform(0.0, math.pi)))
        points = sm.locate_discrete(regime, ext, 1.001, 1.0 / regime.q ** 3)
        for p in points:
            assert p.m0 > 0.0
    regime = draw_case2(rng)
    ext = _ext(regime, float(rng.uniform(0.0, math.pi)))
    for p in sm.locate_discrete(regime, ext, 1.001, 1.0 / regime.q ** 3):
        assert p.m0 > 0.0


def test_collect_mass_points_window_growth():
    regime, ext = CASE2, _ext(CASE2, 0.3)
    ks = range(-4, 5)
    pts = sm.collect_mass_points(regime, ext, ks)
    xs = [p.x0 for p in pts]
    assert xs == sorted(xs)
    first = sm.locate_discrete(regime, ext, 1.0001,
                               sm.x_of_y((1.0 + 1e-4) / regime.q ** 2))
    assert all(any(abs(p.x0 - f.x0) < 1e-10 for p in pts) for f in first)
    with pytest.raises(WindowTooNarrow):
        sm.collect_mass_points(regime, ext, ks, window_cap=0)


# ---------------------------------------------------------------------------
# reducible sub-family: q^2-periodic zero set and the two grids
# ---------------------------------------------------------------------------

def test_two_grid_fit():
    for ang in (0.0, math.pi / 4):
        ext = _ext(ECASE, ang)
        fit = sm.fit_two_grids(ECASE, ext, periods=3)
        assert 1 <= len(fit["anchors"]) <= 2
        assert fit["max_residual"] < 1e-8
        assert fit["points"] >= 2 * len(fit["anchors"])
    with pytest.raises(DomainViolation):
        sm.fit_two_grids(CASE1, _ext(CASE1, 0.0))


def test_period_translation_reproduces_roots():
    """Zeros in later periods are exactly the base-period roots scaled
    by q^(-2n), after polishing."""
    ext = _ext(ECASE, 0.25)
    base = sm.reducible_period_roots(ECASE, ext)
    assert base
    far = sm.locate_discrete(ECASE, ext, sm.x_of_y(ECASE.q ** -5),
                             sm.x_of_y(ECASE.q ** -7))
    for p in far:
        fold = min(abs(abs(p.y0) * ECASE.q ** (2 * n) - abs(b))
                   for b in base for n in (2, 3))
        assert fold < 1e-6 * abs(p.y0) * ECASE.q ** 4


# ---------------------------------------------------------------------------
# elliptic structure of the reducible weight ratio
# ---------------------------------------------------------------------------

def test_elliptic_periods_and_order():
    q, r = 0.5, 0.7
    tau = sm.elliptic_tau(q)
    assert abs(cmath.exp(1j * math.pi * tau) - q) < 1e-15
    w = complex(0.123, 0.045)
    g0 = sm.elliptic_g(w, tau, r, q)
    assert abs(sm.elliptic_g(w + 1.0, tau, r, q) - g0) < 1e-11 * abs(g0)
    assert abs(sm.elliptic_g(w + tau, tau, r, q) - g0) < 1e-11 * abs(g0)
    w0 = complex(-0.31, -0.17)
    assert sm.elliptic_winding("numerator", w0, tau, r, q) == 2
    assert sm.elliptic_winding("denominator", w0, tau, r, q) == 2
    with pytest.raises(DomainViolation):
        sm.elliptic_winding("zeros", w0, tau, r, q)


def test_elliptic_pole_detection():
    q, r = 0.5, 0.7
    tau = sm.elliptic_tau(q)
    w_pole = cmath.log(1j * math.sqrt(q) / r) / (2j * math.pi)
    with pytest.raises(PoleEncountered):
        sm.elliptic_g(w_pole, tau, r, q)


# ---------------------------------------------------------------------------
# band edge diagnostics
# ---------------------------------------------------------------------------

def test_boundary_diagnostic_both_edges():
    for regime in (CASE1, CASE2):
        for y0 in (1.0, -1.0):
            report = sm.boundary_point_diagnostic(regime, y0)
            assert report["recurrence_residual"] < 1e-6
            assert report["wronskian_deviation"] < 1e-7
            assert report["wronskian_spread"] < 1e-7
            assert report["growth_deviation"] < 1e-6
            assert report["no_point_mass"]
    with pytest.raises(DomainViolation):
        sm.boundary_point_diagnostic(CASE1, 0.5)


def test_companion_regime_relates_the_edges():
    """Negating a maps the edge y = -1 onto y = +1 of the companion, so
    the two Wronskians agree."""
    for regime in (CASE1, CASE2):
        comp = sm.companion_regime(regime)
        assert abs(comp.params.a + regime.params.a) < 1e-12
        assert abs(comp.params.t - regime.params.t) < 1e-12
        w_minus = sm.boundary_point_diagnostic(regime, -1.0)["wronskian"]
        w_plus = sm.boundary_point_diagnostic(comp, 1.0)["wronskian"]
        assert abs(w_minus - w_plus) < 1e-8


def test_boundary_derivative_solves_recurrence():
    params = CASE2.params
    sp = ef.SpectralParam.from_y(1.0)
    vals = {k: sm.boundary_derivative(CASE2, k) for k in range(-5, 6)}
    for k in range(-4, 5):
        res = ef.recurrence_residual(lambda j: vals[j], params, sp, k)
        assert res < 1e-7


# ---------------------------------------------------------------------------
# exported measure
# ---------------------------------------------------------------------------

def test_measure_json_shape():
    regime, ext = CASE2, _ext(CASE2, 0.3)
    chi = [0.4, 1.0, 1.8]
    points = sm.locate_discrete(regime, ext, 1.001, 1.0 / regime.q ** 2)
    doc = sm.measure_json(regime, ext, chi, points)
    assert len(doc["continuous"]) == 3
    assert all(row["density"] > 0 for row in doc["continuous"])
    assert len(doc["discrete"]) == len(points)
    for row in doc["discrete"]:
        assert row["mass_kk"] > 0
    assert doc["regime"]["case"] == 2
    assert doc["theta"] == 0.3
