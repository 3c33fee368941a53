"""Spectral data of the self-adjoint extensions.

The measure splits into an absolutely continuous part on [-1, 1] with
density 1/(2 pi |h(e^(i chi))|^2), where

    h(y) = A c(y; a, t) + conj(A) c(y; -a, t),

and a discrete set of mass points x0 = (y0 + 1/y0)/2 at the real zeros
y0 of h with |y0| > 1.  theta(t) h(y) is real-valued along the real
axis, which turns root finding into ordinary sign-change bracketing.
The reducible sub-family (case 1 with psi = 0) has an exactly
q^2-periodic zero set, scanned over one period and translated; its
weight combination is controlled by an order-two elliptic function,
reproduced here for the period and order diagnostics.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from scipy.optimize import brentq

from . import eigenfunctions as ef
from .errors import (
    DomainViolation,
    NonSimpleZero,
    PoleEncountered,
    ValidationFailed,
    WindowTooNarrow,
    WindowTooWide,
)
from .jacobi import (
    Case1,
    Case2,
    ExtensionCoeffs,
    Regime,
    coeff_a,
    coeff_alpha,
    gamma_phase,
    psi_k,
)
from .qcore import theta

SCAN_PER_PERIOD = 48
ZERO_CERT_TOL = 1e-10
ROOT_XTOL_REL = 1e-14
DERIV_STEP_REL = 1e-6
DERIV_CONSISTENCY = 1e-7
SIMPLE_ZERO_FLOOR = 1e-12
MASS_TAIL_TOL = 1e-9
MASS_WINDOW_CAP = 10


# ---------------------------------------------------------------------------
# the weight combination h and the continuous density
# ---------------------------------------------------------------------------

def weight_coefficient(regime: Regime, ext: ExtensionCoeffs, y) -> complex:
    """h(y) = A c(y; a, t) + conj(A) c(y; -a, t), the denominator of the
    continuous weight and the function whose real zeros carry the point
    masses."""
    p = regime.params
    yc = complex(y)
    return (ext.A * ef.c_fn(yc, p.a, p.t, regime.q)
            + ext.A.conjugate() * ef.c_fn(yc, -p.a, p.t, regime.q))


def weight_scale(regime: Regime, ext: ExtensionCoeffs, y) -> float:
    """Magnitude scale of the two terms of h, for relative certificates."""
    p = regime.params
    yc = complex(y)
    return max(abs(ext.A * ef.c_fn(yc, p.a, p.t, regime.q)),
               abs(ext.A * ef.c_fn(yc, -p.a, p.t, regime.q)),
               1e-300)


def continuous_density(regime: Regime, ext: ExtensionCoeffs, chi: float) -> float:
    """Density of the continuous part at x = cos(chi), 0 < chi < pi."""
    if not 0.0 < chi < math.pi:
        raise DomainViolation(f"chi = {chi} outside (0, pi)")
    h = weight_coefficient(regime, ext, cmath.exp(1j * chi))
    return 1.0 / (2.0 * math.pi * abs(h) ** 2)


def x_of_y(y: float) -> float:
    return 0.5 * (y + 1.0 / y)


def y_outside(x: float) -> float:
    """The solution y of x = (y + 1/y)/2 with |y| > 1, for real |x| > 1."""
    if abs(x) <= 1.0:
        raise DomainViolation(f"x = {x} is not outside [-1, 1]")
    return x + math.copysign(math.sqrt(x * x - 1.0), x)


# ---------------------------------------------------------------------------
# discrete spectrum: mass points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MassPoint:
    """One point of the discrete spectrum.

    x0 is the spectral location, y0 the outside solution of the joukowski
    map, p0 = h(1/y0), dh = h'(y0), and m0 = conj(p0)/(y0 dh), the real
    positive scalar multiplying component products in the masses.
    """

    x0: float
    y0: float
    p0: complex
    dh: complex
    m0: float


def _h_prime(regime: Regime, ext: ExtensionCoeffs, y0: float) -> complex:
    def central(step: float) -> complex:
        hp = weight_coefficient(regime, ext, y0 + step)
        hm = weight_coefficient(regime, ext, y0 - step)
        return (hp - hm) / (2.0 * step)

    step = DERIV_STEP_REL * abs(y0)
    d1 = central(step)
    d2 = central(0.1 * step)
    if abs(d1 - d2) > DERIV_CONSISTENCY * max(abs(d2), 1e-300):
        raise ValidationFailed(
            f"h'({y0}) differs between steps: {d1} vs {d2}")
    return d2


def _make_mass_point(regime: Regime, ext: ExtensionCoeffs, y0: float) -> MassPoint:
    scale = weight_scale(regime, ext, y0)
    hval = weight_coefficient(regime, ext, y0)
    if abs(hval) > ZERO_CERT_TOL * scale:
        raise ValidationFailed(
            f"zero certificate failed at y0 = {y0}: |h| = {abs(hval):.3e} "
            f"vs scale {scale:.3e}")
    dh = _h_prime(regime, ext, y0)
    if abs(dh) < SIMPLE_ZERO_FLOOR * scale:
        raise NonSimpleZero(f"|h'({y0})| = {abs(dh):.3e} below the simple-zero floor")
    p0 = weight_coefficient(regime, ext, 1.0 / y0)
    # theta(t) h is real along the real axis, so the balanced quotient
    # conj(theta p0)/(y0 theta h') is real by construction; for real
    # theta(t) it coincides with conj(p0)/(y0 h').
    tht = theta(regime.params.t, regime.q)
    m0c = (tht * p0).conjugate() / (y0 * tht * dh)
    if abs(m0c.imag) > 1e-8 * abs(m0c) or m0c.real <= 0.0:
        raise ValidationFailed(
            f"normalization at y0 = {y0} not real positive: {m0c}")
    return MassPoint(x0=x_of_y(y0), y0=y0, p0=p0, dh=dh, m0=m0c.real)


def discrete_component(regime: Regime, point: MassPoint, k: int) -> complex:
    """alpha_k F_k(1/y0), the eigenvector component up to the p0 factor."""
    sp = ef.SpectralParam.from_y(1.0 / point.y0)
    return coeff_alpha(regime, k) * ef.F_k(regime.params, sp, k)


def psi_at_point(regime: Regime, point: MassPoint, k: int) -> complex:
    """psi_k(x0) = p0 alpha_k F_k(1/y0)."""
    return point.p0 * discrete_component(regime, point, k)


def discrete_mass(regime: Regime, ext: ExtensionCoeffs, point: MassPoint,
                  k: int, l: int) -> complex:
    """Mass of the spectral projection at x0 between e_k and e_l:
    psi_k(x0) conj(psi_l(x0)) / (y0 p0 h'(y0)), reduced to
    m0 comp_k conj(comp_l).  Real symmetric up to roundoff."""
    return (point.m0 * discrete_component(regime, point, k)
            * discrete_component(regime, point, l).conjugate())


def point_weight(point: MassPoint) -> float:
    """Measure weight 1/(y0 p0 h'(y0)) = m0/|p0|^2 of the point x0,
    multiplying (F xi)(x0) conj((F eta)(x0)) in inner products."""
    return point.m0 / abs(point.p0) ** 2


# ---------------------------------------------------------------------------
# root scanning along the real axis
# ---------------------------------------------------------------------------

def _rho_factory(regime: Regime, ext: ExtensionCoeffs):
    tht = theta(regime.params.t, regime.q)

    def rho(y: float) -> float:
        return (tht * weight_coefficient(regime, ext, y)).real

    return rho


def _geometric_points(lo: float, hi: float, q: float, per_period: int) -> list[float]:
    span = math.log(hi / lo)
    period = 2.0 * math.log(1.0 / q)
    n = max(2, int(math.ceil(span / period * per_period)) + 1)
    return [lo * math.exp(span * i / (n - 1)) for i in range(n)]


def _brackets(rho, pts: list[float]) -> list[tuple[float, float]]:
    vals = [rho(p) for p in pts]
    out = []
    for i in range(len(pts) - 1):
        va, vb = vals[i], vals[i + 1]
        if va == 0.0:
            out.append((pts[i], pts[i]))
        elif va * vb < 0.0:
            out.append((pts[i], pts[i + 1]))
    if vals[-1] == 0.0:
        out.append((pts[-1], pts[-1]))
    return out


def _scan_interval(regime: Regime, ext: ExtensionCoeffs, ylo: float,
                   yhi: float) -> list[tuple[float, float]]:
    """Certified sign-change brackets of rho on [ylo, yhi] (same sign,
    1 < |ylo| < |yhi|).  The base grid is rescanned at 8x density; a
    disagreement in crossing count escalates once to 64x and then raises
    WindowTooWide carrying the unrefined brackets."""
    rho = _rho_factory(regime, ext)
    sign = 1.0 if ylo > 0 else -1.0
    alo, ahi = abs(ylo), abs(yhi)
    if sign < 0:
        alo, ahi = min(abs(ylo), abs(yhi)), max(abs(ylo), abs(yhi))

    def scan(per: int) -> list[tuple[float, float]]:
        pts = [sign * p for p in _geometric_points(alo, ahi, regime.q, per)]
        if sign < 0:
            pts = pts[::-1]
        return _brackets(rho, pts)

    base = scan(SCAN_PER_PERIOD)
    fine = scan(SCAN_PER_PERIOD * 8)
    if len(fine) == len(base):
        return fine
    finer = scan(SCAN_PER_PERIOD * 64)
    if len(finer) == len(fine):
        return finer
    raise WindowTooWide(
        f"zero count did not stabilize under grid refinement on "
        f"[{ylo}, {yhi}]: {len(base)}/{len(fine)}/{len(finer)} crossings; "
        f"unrefined brackets: {finer}")


def _refine_bracket(regime: Regime, ext: ExtensionCoeffs,
                    lo: float, hi: float) -> float:
    if lo == hi:
        return lo
    rho = _rho_factory(regime, ext)
    xtol = ROOT_XTOL_REL * max(1.0, abs(lo), abs(hi))
    return float(brentq(rho, lo, hi, xtol=xtol, rtol=8.9e-16, maxiter=200))


def _check_isolation(points: list[MassPoint]) -> None:
    ys = sorted(p.y0 for p in points)
    for a, b in zip(ys, ys[1:]):
        gap = abs(b - a)
        if gap <= 1e3 * ROOT_XTOL_REL * max(1.0, abs(a), abs(b)):
            raise ValidationFailed(
                f"mass points at y = {a} and {b} are not isolated at the "
                f"refinement resolution")


def _window_y_interval(x_min: float, x_max: float) -> tuple[float, float]:
    if not x_min < x_max:
        raise DomainViolation("empty window: need x_min < x_max")
    if x_min > 1.0:
        return y_outside(x_min), y_outside(x_max)
    if x_max < -1.0:
        return y_outside(x_min), y_outside(x_max)
    raise DomainViolation(
        f"window [{x_min}, {x_max}] must lie entirely outside [-1, 1]")


def locate_discrete(regime: Regime, ext: ExtensionCoeffs,
                    x_min: float, x_max: float) -> list[MassPoint]:
    """All mass points with x0 in [x_min, x_max], a window outside [-1, 1].

    The generic path scans a geometric y-grid for sign changes of the
    real-valued theta(t) h(y) and polishes each bracket.  The reducible
    sub-family instead scans a single multiplicative q^2-period and
    translates, since its zero set is exactly q^2-periodic.
    """
    ylo, yhi = _window_y_interval(x_min, x_max)
    if isinstance(regime, Case1) and regime.is_reducible:
        roots = _reducible_roots(regime, ext, ylo, yhi)
    else:
        brackets = _scan_interval(regime, ext, ylo, yhi)
        roots = [_refine_bracket(regime, ext, a, b) for a, b in brackets]
    points = [_make_mass_point(regime, ext, y) for y in sorted(roots)]
    points = [p for p in points if x_min <= p.x0 <= x_max]
    _check_isolation(points)
    points.sort(key=lambda p: p.x0)
    return points


# ---------------------------------------------------------------------------
# the reducible sub-family: period translation and the two grids
# ---------------------------------------------------------------------------

def reducible_period_roots(regime: Case1, ext: ExtensionCoeffs) -> list[float]:
    """Zeros of h inside one base period q^(-1) <= |y| < q^(-3), both signs.

    Every other zero is an exact q^2-translate of one of these.
    """
    if not (isinstance(regime, Case1) and regime.is_reducible):
        raise DomainViolation("period scanning applies to case 1 with psi = 0")
    q = regime.q
    roots = []
    for sgn in (1.0, -1.0):
        ylo, yhi = sgn / q, sgn * q ** -3
        if sgn < 0:
            ylo, yhi = yhi, ylo
        for a, b in _scan_interval(regime, ext, ylo, yhi):
            roots.append(_refine_bracket(regime, ext, a, b))
    # drop a duplicate at the period seam |y| = q^(-3) if both endpoints hit
    deduped = []
    for r in sorted(roots):
        fold = math.log(abs(r) * q) / (2.0 * math.log(1.0 / q))
        if fold >= 1.0 - 1e-12 and any(
                abs(abs(r) * q ** 2 - abs(d)) < 1e-9 * abs(d)
                and (r > 0) == (d > 0) for d in deduped):
            continue
        deduped.append(r)
    return deduped


def _polish_translate(regime: Regime, ext: ExtensionCoeffs, y: float) -> float:
    rho = _rho_factory(regime, ext)
    for rel in (1e-8, 1e-6, 1e-4):
        lo, hi = y * (1.0 - rel), y * (1.0 + rel)
        if lo > hi:
            lo, hi = hi, lo
        if rho(lo) * rho(hi) < 0.0:
            xtol = ROOT_XTOL_REL * max(1.0, abs(y))
            return float(brentq(rho, lo, hi, xtol=xtol, rtol=8.9e-16))
    raise ValidationFailed(
        f"translated zero candidate y = {y} could not be bracketed")


def _reducible_roots(regime: Case1, ext: ExtensionCoeffs,
                     ylo: float, yhi: float) -> list[float]:
    q = regime.q
    anchors = reducible_period_roots(regime, ext)
    lo_m, hi_m = min(abs(ylo), abs(yhi)), max(abs(ylo), abs(yhi))
    roots = []
    for anc in anchors:
        if (anc > 0) != (ylo > 0):
            continue
        # translate anc by q^(-2n) into [lo_m, hi_m], keeping |y| > 1
        n_lo = int(math.floor(math.log(lo_m / abs(anc)) / (2.0 * math.log(1.0 / q)))) - 1
        n_hi = int(math.ceil(math.log(hi_m / abs(anc)) / (2.0 * math.log(1.0 / q)))) + 1
        for n in range(n_lo, n_hi + 1):
            cand = anc * q ** (-2 * n)
            if abs(cand) <= 1.0:
                continue
            if lo_m - 1e-12 <= abs(cand) <= hi_m + 1e-12:
                roots.append(_polish_translate(regime, ext, cand))
    return roots


def fit_two_grids(regime: Case1, ext: ExtensionCoeffs,
                  periods: int = 3) -> dict:
    """Fit the located zeros to x_n = (y_i q^(-2n) + y_i^(-1) q^(2n))/2.

    Scans `periods` consecutive q^2-periods on both signs, folds every
    zero into the base period, clusters the folded values, and measures
    how well the grid anchored at each cluster reproduces the located
    points.  The report carries the anchors (at most two are expected),
    the per-point assignments, and the worst fit residual.
    """
    if not (isinstance(regime, Case1) and regime.is_reducible):
        raise DomainViolation("the two-grid structure needs case 1 with psi = 0")
    q = regime.q
    ylo, yhi = q ** -1, q ** (-1 - 2 * periods)
    pts = locate_discrete(regime, ext, x_of_y(ylo), x_of_y(yhi))
    pts += locate_discrete(regime, ext, x_of_y(-yhi), x_of_y(-ylo))

    period_log = 2.0 * math.log(1.0 / q)
    folded = []
    for p in pts:
        n = int(math.floor(math.log(abs(p.y0) * q) / period_log))
        folded.append((p, p.y0 * q ** (2 * n), n))

    clusters: list[list] = []
    for item in folded:
        placed = False
        for cl in clusters:
            ref = cl[0][1]
            if (item[1] > 0) == (ref > 0) and abs(item[1] - ref) < 1e-4 * abs(ref):
                cl.append(item)
                placed = True
                break
        if not placed:
            clusters.append([item])

    anchors = []
    assignments = []
    max_residual = 0.0
    for cl in clusters:
        anchor = sorted(it[1] for it in cl)[len(cl) // 2]
        anchors.append(anchor)
        for p, _, n in cl:
            pred = 0.5 * (anchor * q ** (-2 * n) + q ** (2 * n) / anchor)
            max_residual = max(max_residual, abs(p.x0 - pred))
            assignments.append({"x0": p.x0, "anchor": anchor, "n": n})
    return {
        "anchors": sorted(anchors, key=abs),
        "points": len(pts),
        "assignments": assignments,
        "max_residual": max_residual,
    }


# ---------------------------------------------------------------------------
# elliptic function of the reducible weight combination
# ---------------------------------------------------------------------------

def elliptic_tau(q: float) -> complex:
    """tau in the upper half plane with q = e^(pi i tau)."""
    return 1j * math.log(1.0 / q) / math.pi


def _check_tau(tau: complex, q: float) -> None:
    if abs(cmath.exp(1j * math.pi * tau) - q) > 1e-12:
        raise DomainViolation(f"tau = {tau} does not match q = {q}")


def elliptic_g(w: complex, tau: complex, r: float, q: float) -> complex:
    """theta(e^(2 pi i w) q^(1/2) i r) / theta(-e^(2 pi i w) q^(1/2) i r),
    doubly periodic in w with periods 1 and tau."""
    _check_tau(tau, q)
    z = cmath.exp(2j * math.pi * w) * math.sqrt(q) * 1j * r
    num = theta(z, q)
    den = theta(-z, q)
    if abs(den) < 1e-12 * max(1.0, abs(num)):
        raise PoleEncountered(f"denominator theta vanishes near w = {w}")
    return num / den


def elliptic_winding(part: str, w0: complex, tau: complex, r: float,
                     q: float, nodes: int = 240) -> int:
    """Argument-principle count of the numerator zeros (part='numerator')
    or denominator zeros = poles of g (part='denominator') inside the
    fundamental cell w0 + [0,1) + tau [0,1).

    The counted function w -> theta(+-e^(2 pi i w) q^(1/2) i r) is entire
    in w, so the boundary winding number of its phase equals the number
    of interior zeros.  A boundary node falling on a zero raises
    PoleEncountered; shift w0 slightly and retry.
    """
    _check_tau(tau, q)
    if part == "numerator":
        sign = 1.0
    elif part == "denominator":
        sign = -1.0
    else:
        raise DomainViolation("part must be 'numerator' or 'denominator'")

    def f(w: complex) -> complex:
        return theta(sign * cmath.exp(2j * math.pi * w) * math.sqrt(q) * 1j * r, q)

    corners = [w0, w0 + 1.0, w0 + 1.0 + tau, w0 + tau, w0]
    total = 0.0
    prev = None
    for c0, c1 in zip(corners, corners[1:]):
        for i in range(nodes):
            w = c0 + (c1 - c0) * i / nodes
            val = f(w)
            if abs(val) < 1e-12:
                raise PoleEncountered(
                    f"boundary node w = {w} lies on a zero; shift the cell")
            ph = cmath.phase(val)
            if prev is not None:
                d = ph - prev
                while d > math.pi:
                    d -= 2.0 * math.pi
                while d < -math.pi:
                    d += 2.0 * math.pi
                total += d
            prev = ph
    # close the loop back to the starting node
    d = cmath.phase(f(w0)) - prev
    while d > math.pi:
        d -= 2.0 * math.pi
    while d < -math.pi:
        d += 2.0 * math.pi
    total += d
    winding = total / (2.0 * math.pi)
    if abs(winding - round(winding)) > 0.02:
        raise ValidationFailed(f"non-integer winding {winding}; raise nodes")
    return int(round(winding))


# ---------------------------------------------------------------------------
# accumulation of the full discrete part
# ---------------------------------------------------------------------------

def collect_mass_points(regime: Regime, ext: ExtensionCoeffs, ks,
                        tol: float = MASS_TAIL_TOL,
                        window_cap: int = MASS_WINDOW_CAP) -> list[MassPoint]:
    """Mass points in growing symmetric windows until the tail is spent.

    Windows are geometric in q^(-2); accumulation stops after two
    consecutive windows whose every point contributes less than tol to
    any matrix entry over the index set ks.  WindowTooNarrow signals a
    tail that has not converged by the window cap.
    """
    q = regime.q
    y0 = 1.0 + 1e-4
    points: list[MassPoint] = []
    quiet = 0
    for j in range(window_cap + 1):
        lo = y0 * q ** (-2 * j)
        hi = y0 * q ** (-2 * (j + 1))
        batch = locate_discrete(regime, ext, x_of_y(lo), x_of_y(hi))
        batch += locate_discrete(regime, ext, x_of_y(-hi), x_of_y(-lo))
        contrib = 0.0
        for p in batch:
            peak = max(abs(discrete_component(regime, p, k)) for k in ks)
            contrib = max(contrib, p.m0 * peak * peak)
        points.extend(batch)
        quiet = quiet + 1 if contrib < tol else 0
        if quiet >= 2:
            return sorted(points, key=lambda p: p.x0)
    raise WindowTooNarrow(
        f"discrete tail still contributes after {window_cap + 1} windows")


# ---------------------------------------------------------------------------
# boundary diagnostic at y = +-1
# ---------------------------------------------------------------------------

def boundary_derivative(regime: Regime, k: int, y0: float = 1.0,
                        step: float = 1e-6) -> complex:
    """H_k(y0) = dF_k/dy at y0, by Richardson-extrapolated central
    differences."""
    params = regime.params

    def fval(yy: float) -> complex:
        return ef.F_k(params, ef.SpectralParam.from_y(yy), k)

    def central(h: float) -> complex:
        return (fval(y0 + h) - fval(y0 - h)) / (2.0 * h)

    return (4.0 * central(0.5 * step) - central(step)) / 3.0


def companion_regime(regime: Regime) -> Regime:
    """The regime with a negated: the y = -1 boundary data of the
    original equals the y = +1 data of the companion."""
    if isinstance(regime, Case1):
        return Case1(psi=regime.psi + math.pi, r=-regime.r, q=regime.q)
    return Case2(s=-regime.s, t=regime.t, q=regime.q)


def boundary_point_diagnostic(regime: Regime, y0: float = 1.0) -> dict:
    """Checks that the band edge x = y0 in {+1, -1} carries no point mass.

    At y0 the derivative family H_k(y0) solves the same recurrence as
    F_k(y0) (the spectral variable is critical there), the pair has
    constant Wronskian [alpha H, conj(alpha F)] = -1/2, and H grows
    linearly against the geometric a^(-k), so no square-summable
    eigenvector exists at the edge.  Returns the measured residuals and
    an overall pass flag.
    """
    if y0 not in (1.0, -1.0):
        raise DomainViolation("the boundary diagnostic is defined at y0 = +-1")
    params = regime.params
    sp = ef.SpectralParam.from_y(y0)
    hvals = {k: boundary_derivative(regime, k, y0) for k in range(-7, 8)}
    rec_max = max(
        ef.recurrence_residual(lambda j: hvals[j], params, sp, k)
        for k in range(-6, 7))

    def f(k: int) -> complex:
        return coeff_alpha(regime, k) * boundary_derivative(regime, k, y0)

    def g(k: int) -> complex:
        return (coeff_alpha(regime, k) * ef.F_k(params, sp, k)).conjugate()

    wr = {k: 0.5 * coeff_a(regime, k) * (f(k + 1) * g(k) - f(k) * g(k + 1))
          for k in (-5, 0, 5)}
    w0 = wr[0]
    w_dev = abs(w0 + 0.5)
    w_spread = max(abs(wr[k] - w0) for k in wr)

    growth_dev = 0.0
    for k in range(-40, -24):
        ref = (-k) * (params.a * y0) ** (-k) / y0
        growth_dev = max(growth_dev,
                         abs(boundary_derivative(regime, k, y0) / ref - 1.0))

    ok = rec_max < 1e-6 and w_dev < 1e-7 and w_spread < 1e-7 and growth_dev < 1e-6
    return {
        "y0": y0,
        "recurrence_residual": rec_max,
        "wronskian": w0,
        "wronskian_deviation": w_dev,
        "wronskian_spread": w_spread,
        "growth_deviation": growth_dev,
        "no_point_mass": ok,
    }


# ---------------------------------------------------------------------------
# assembled measure and its JSON form
# ---------------------------------------------------------------------------

def regime_dict(regime: Regime) -> dict:
    if isinstance(regime, Case1):
        return {"case": 1, "psi": regime.psi, "r": regime.r, "q": regime.q}
    return {"case": 2, "s": regime.s, "t": regime.t, "q": regime.q}


def measure_json(regime: Regime, ext: ExtensionCoeffs, chi_values,
                 points: list[MassPoint], mass_index: int = 0) -> dict:
    """The spectral measure as a plain dict matching the exported schema:
    continuous nodes, discrete points with their diagonal mass at index
    mass_index, the regime parameters, and theta."""
    cont = [{"chi": float(chi),
             "density": continuous_density(regime, ext, float(chi))}
            for chi in chi_values]
    disc = []
    for p in points:
        mkk = discrete_mass(regime, ext, p, mass_index, mass_index)
        disc.append({"x0": p.x0, "y0": p.y0, "mass_kk": float(mkk.real)})
    return {
        "continuous": cont,
        "discrete": disc,
        "regime": regime_dict(regime),
        "theta": ext.theta,
    }
