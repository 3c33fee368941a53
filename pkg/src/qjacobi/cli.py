"""Command-line front end for evaluation, spectral exports, and checks.

Subcommands fall into two groups.  The exporters (eval, spectrum,
orthogonality, masspoints, quadcheck, qexp-limit) compute values or
plot-ready CSV/JSON files.  The verify subcommand runs a named identity
suite at desk scale and prints a machine-readable report.

Conventions: a JSON config file (--config) may supply any long option,
with explicit flags taking precedence; complex values are written in
the form "re+imi"; CSV output carries 17 significant digits with '.'
decimals.  All draws are seeded, so identical configurations produce
identical bytes.  Exit codes: 0 success, 1 verification failure, 2
usage or domain error.
"""

import argparse
import cmath
import csv
import json
import math
import random
import sys
from contextlib import contextmanager

import numpy as np

import qjacobi.eigenfunctions as ef
import qjacobi.jacobi as jb
import qjacobi.oracle as oc
import qjacobi.qcore as qc
import qjacobi.quadratic as qd
import qjacobi.spectrum as spec
import qjacobi.transforms as tf
from qjacobi.errors import QJacobiError


class UsageError(Exception):
    """Bad invocation or inadmissible parameters; mapped to exit code 2."""


def parse_complex(text) -> complex:
    """Parse "re+imi" (also plain reals and [re, im] pairs) to complex."""
    if isinstance(text, (int, float)):
        return complex(text)
    if isinstance(text, (list, tuple)) and len(text) == 2:
        return complex(float(text[0]), float(text[1]))
    s = str(text).strip().replace(" ", "")
    try:
        return complex(s.replace("i", "j"))
    except ValueError:
        raise UsageError(
            f"cannot parse {text!r} as a complex number; use 're+imi'"
        ) from None


def fmt(x) -> str:
    return f"{float(x):.17g}"


@contextmanager
def _open_out(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        fh = open(path, "w", newline="")
        try:
            yield fh
        finally:
            fh.close()


def _emit_json(obj, path=None) -> None:
    with _open_out(path) as fh:
        fh.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _write_csv(path, header, rows) -> None:
    with _open_out(path) as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _load_config(path):
    if not path:
        return {}
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(cfg, dict):
        raise UsageError("config file must hold a JSON object")
    return cfg


def _getter(args, cfg):
    """Option lookup with precedence: explicit flag, config entry, default."""

    def get(key, default=None):
        val = getattr(args, key, None)
        if val is not None:
            return val
        if key in cfg:
            return cfg[key]
        return default

    return get


# ---------------------------------------------------------------------------
# regime construction
# ---------------------------------------------------------------------------

def _build_regime(get):
    case = get("case")
    if case is None:
        raise UsageError("a regime is required: --case 1 (with --psi, --r) "
                         "or --case 2 (with --s, --t)")
    case = int(case)
    q = float(get("q", 0.5))
    if case == 1:
        psi = float(get("psi", 0.0))
        r = get("r")
        t = get("t")
        if r is None and t is not None:
            # accept t only when it matches the admissible form i r e^(-i psi)
            w = parse_complex(t) * cmath.exp(1j * psi)
            if w.imag == 0.0 or abs(w.real) > 1e-12 * max(1.0, abs(w)):
                raise UsageError("case 1 requires t = i r e^(-i psi) with "
                                 f"real nonzero r; got t = {t}")
            r = w.imag
        if r is None:
            raise UsageError("case 1 requires --r (or an admissible --t)")
        return jb.Case1(psi=psi, r=float(r), q=q)
    if case == 2:
        s = get("s")
        t = get("t")
        if s is None or t is None:
            raise UsageError("case 2 requires --s and --t")
        tc = parse_complex(t)
        if tc.imag != 0.0:
            raise UsageError(f"case 2 requires real t < 0; got t = {t}")
        return jb.Case2(s=float(s), t=tc.real, q=q)
    raise UsageError(f"case must be 1 or 2; got {case}")


def _eigen_inputs(get):
    """(a, t) either directly from --a/--t or through a validated regime."""
    a = get("a")
    if a is not None:
        t = get("t")
        if t is None:
            raise UsageError("direct parameter mode needs both --a and --t")
        return parse_complex(a), parse_complex(t)
    regime = _build_regime(get)
    return regime.a, regime.t


def _require_complex(get, key):
    val = get(key)
    if val is None:
        raise UsageError(f"--{key} is required for this function")
    return parse_complex(val)


# ---------------------------------------------------------------------------
# exporters
# ---------------------------------------------------------------------------

def cmd_eval(args, cfg) -> int:
    get = _getter(args, cfg)
    fn = get("fn")
    if fn is None:
        raise UsageError("--fn is required (u, v, F, c, d, theta, qexp, phi)")
    q = float(get("q", 0.5))
    if fn in ("u", "v", "F"):
        a, t = _eigen_inputs(get)
        params = ef.EigenParams(a, t, q)
        sp = ef.SpectralParam.from_y(_require_complex(get, "y"))
        value = {"u": ef.u_k, "v": ef.v_k, "F": ef.F_k}[fn](
            params, sp, int(get("k", 0)))
    elif fn in ("c", "d"):
        a, t = _eigen_inputs(get)
        y = _require_complex(get, "y")
        value = (ef.c_fn if fn == "c" else ef.d_fn)(y, a, t, q)
    elif fn == "theta":
        value = qc.theta(_require_complex(get, "z"), q)
    elif fn == "qexp":
        value = tf.q_exponential(_require_complex(get, "z"),
                                 parse_complex(get("t", 0.0)), q)
    elif fn == "phi":
        big = qd.BigQJacobiParams(*(_require_complex(get, key)
                                    for key in ("a", "b", "c", "x", "gamma")))
        value = qd.phi_gamma(big, q, int(get("k", 0)))
    else:
        raise UsageError(f"unknown --fn {fn!r}; "
                         "choose from u, v, F, c, d, theta, qexp, phi")
    value = complex(value)
    out = get("out")
    if get("format", "json") == "csv":
        _write_csv(out, ["fn", "re", "im"],
                   [[fn, fmt(value.real), fmt(value.imag)]])
    else:
        _emit_json({"fn": fn, "value_re": value.real, "value_im": value.imag},
                   out)
    return 0


def _point_record(regime, ext, point):
    mass = spec.discrete_mass(regime, ext, point, 0, 0)
    return {"x0": point.x0,
            "y0": [point.y0.real, point.y0.imag],
            "mass_kk": float(mass.real)}


def cmd_spectrum(args, cfg) -> int:
    get = _getter(args, cfg)
    regime = _build_regime(get)
    theta_angle = float(get("theta", 0.0))
    ext = jb.extension_coeffs(regime, theta_angle)

    resolution = int(get("resolution", 200))
    if resolution < 1:
        raise UsageError("resolution must be a positive integer")
    chis = [math.pi * (j + 1) / (resolution + 1) for j in range(resolution)]
    rows = [[fmt(chi), fmt(spec.continuous_density(regime, ext, chi))]
            for chi in chis]
    _write_csv(get("density_out"), ["chi", "density"], rows)

    x_min = float(get("x_min", 1.05))
    x_max = float(get("x_max", 8.0))
    points = spec.locate_discrete(regime, ext, x_min, x_max)
    summary = {
        "regime": spec.regime_dict(regime),
        "theta": theta_angle,
        "window": [x_min, x_max],
        "discrete": [_point_record(regime, ext, p) for p in points],
        "reduced": bool(regime.is_reducible),
    }
    if regime.is_reducible:
        fit = spec.fit_two_grids(regime, ext)
        anchors = [complex(yv) for yv in fit["anchors"]]
        summary["two_grid_fit"] = {
            "anchors": [[yv.real, yv.imag] for yv in anchors],
            "points": int(fit["points"]),
            "max_residual": float(fit["max_residual"]),
        }
    _emit_json(summary, get("mass_out"))
    return 0


def cmd_orthogonality(args, cfg) -> int:
    get = _getter(args, cfg)
    regime = _build_regime(get)
    theta_angle = float(get("theta", 0.0))
    ext = jb.extension_coeffs(regime, theta_angle)
    k_min = int(get("k_min", -2))
    k_max = int(get("k_max", 2))
    ks = range(k_min, k_max + 1)
    gram = np.asarray(tf.orthogonality_matrix(
        regime, ext, ks, ks, tol=float(get("tol", 1e-9))))

    rows = []
    max_err = 0.0
    for i, k in enumerate(ks):
        for j, l in enumerate(ks):
            entry = complex(gram[i, j])
            err = abs(entry - (1.0 if k == l else 0.0))
            max_err = max(max_err, err)
            rows.append([k, l, fmt(entry.real), fmt(entry.imag), fmt(err)])
    out = get("out")
    if out:
        _write_csv(out, ["k", "l", "re", "im", "abs_err"], rows)
    report = {"regime": spec.regime_dict(regime),
              "theta": theta_angle,
              "k_range": [k_min, k_max],
              "max_abs_err": max_err,
              "pass": max_err < 1e-6}
    _emit_json(report)
    return 0 if report["pass"] else 1


def cmd_masspoints(args, cfg) -> int:
    get = _getter(args, cfg)
    regime = _build_regime(get)
    theta_angle = float(get("theta", 0.0))
    ext = jb.extension_coeffs(regime, theta_angle)
    x_min = float(get("x_min", 1.05))
    x_max = float(get("x_max", 8.0))
    points = spec.locate_discrete(regime, ext, x_min, x_max)
    payload = {
        "regime": spec.regime_dict(regime),
        "theta": theta_angle,
        "window": [x_min, x_max],
        "count": len(points),
        "points": [dict(_point_record(regime, ext, p),
                        point_weight=float(spec.point_weight(p)))
                   for p in points],
    }
    _emit_json(payload, get("out"))
    return 0


def _quad_draw(gen):
    a = cmath.rect(gen.uniform(0.75, 1.3), gen.uniform(0.0, 2.0 * math.pi))
    y = cmath.rect(gen.uniform(0.35, 0.9), gen.uniform(0.0, 2.0 * math.pi))
    radius = gen.uniform(0.05, 0.9) * min(1.0, abs(a) ** 2)
    z = cmath.rect(radius, gen.uniform(0.0, 2.0 * math.pi))
    return a, y, z


def cmd_quadcheck(args, cfg) -> int:
    get = _getter(args, cfg)
    q = float(get("q", 0.5))
    samples = int(get("samples", 50))
    gen = random.Random(int(get("seed", 20260817)))
    rows = []
    for _ in range(samples):
        a, y, z = _quad_draw(gen)
        res = qd.quad_transform_check(a, y, z, q)
        rows.append(["transform", fmt(q), fmt(a.real), fmt(a.imag),
                     fmt(y.real), fmt(y.imag), fmt(z.real), fmt(z.imag),
                     0, fmt(res)])
    # lattice specializations: t chosen per row to keep the series
    # argument q^(2-2k)/t inside the convergence disk
    a0, y0 = 0.8 + 0.3j, 0.4 + 0.2j
    for k in range(3):
        for label, odd in (("lattice-even", False), ("lattice-odd", True)):
            zlat = 0.25 + 0.1 * k + (0.05 if odd else 0.0)
            t_val = q ** (2 - 2 * k) / zlat / (q if odd else 1.0)
            res = qd.quadrel1_residual(a0, y0, t_val, q, k, odd=odd)
            rows.append([label, fmt(q), fmt(a0.real), fmt(a0.imag),
                         fmt(y0.real), fmt(y0.imag), fmt(zlat), fmt(0.0),
                         k, fmt(res)])
    _write_csv(get("out"),
               ["case", "q", "a_re", "a_im", "y_re", "y_im",
                "z_re", "z_im", "k", "residual"], rows)
    return 0


def _limit_grid(q_list, points):
    rows = []
    worst = []
    for q in q_list:
        w = 0.0
        for lam in (-1.0, 1.0):
            for j in range(points):
                z = j / (points - 1) if points > 1 else 1.0
                rel = tf.qexp_limit_error(q, lam, z) / abs(math.exp(lam * z))
                w = max(w, rel)
                rows.append([fmt(q), fmt(lam), fmt(z), fmt(rel)])
        worst.append(w)
    return rows, worst


def cmd_qexp_limit(args, cfg) -> int:
    get = _getter(args, cfg)
    qs = get("qs", "0.9,0.99")
    if isinstance(qs, str):
        q_list = [float(tok) for tok in qs.split(",") if tok.strip()]
    else:
        q_list = [float(v) for v in qs]
    if not q_list:
        raise UsageError("--qs must name at least one q value")
    points = int(get("points", 9))
    bound = float(get("bound", 5e-2))
    rows, worst = _limit_grid(q_list, points)
    monotone = all(b < a for a, b in zip(worst, worst[1:]))
    ok = monotone and worst[-1] <= bound
    out = get("out")
    if out:
        _write_csv(out, ["q", "lam", "z", "rel_error"], rows)
    _emit_json({"qs": q_list,
                "worst_rel_error": worst,
                "monotone_decreasing": monotone,
                "bound": bound,
                "pass": ok})
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# verification suites
# ---------------------------------------------------------------------------

def _default_regime(case, q, get):
    if case == 1:
        return jb.Case1(psi=float(get("psi", 0.4)), r=float(get("r", 0.7)),
                        q=q)
    if case == 2:
        return jb.Case2(s=float(get("s", 1.2)),
                        t=parse_complex(get("t", -0.8)).real, q=q)
    raise UsageError(f"case must be 1 or 2; got {case}")


def _suite_regimes(get):
    q = float(get("q", 0.5))
    case = get("case")
    if case is None:
        return [_default_regime(1, q, get), _default_regime(2, q, get)]
    return [_default_regime(int(case), q, get)]


def _draw_sp(gen):
    y = cmath.rect(gen.uniform(0.3, 0.9), gen.uniform(0.1, 3.0))
    return ef.SpectralParam.from_y(y)


def _suite_recurrence(get):
    gen = random.Random(11)
    worst, cases = 0.0, 0
    for regime in _suite_regimes(get):
        params = regime.params
        for _ in range(2):
            sp = _draw_sp(gen)
            for fam in (ef.u_k, ef.v_k, ef.F_k):
                fn = lambda kk: fam(params, sp, kk)
                for k in range(-8, 9):
                    worst = max(worst,
                                ef.recurrence_residual(fn, params, sp, k))
                    cases += 1
    return cases, worst, worst < 1e-10


def _suite_connection(get):
    gen = random.Random(12)
    worst, cases = 0.0, 0
    for regime in _suite_regimes(get):
        params = regime.params
        a, t, q = params.a, params.t, params.q
        for _ in range(2):
            sp = _draw_sp(gen)
            spi = sp.reciprocal()
            pairs = ((ef.u_k, ef.c_fn(sp.y, a, t, q),
                      ef.c_fn(1.0 / sp.y, a, t, q)),
                     (ef.v_k, ef.c_fn(sp.y, -a, t, q),
                      ef.c_fn(1.0 / sp.y, -a, t, q)))
            for lhs_fn, c1, c2 in pairs:
                for k in (-5, 0, 4):
                    t1 = c1 * ef.F_k(params, sp, k)
                    t2 = c2 * ef.F_k(params, spi, k)
                    lhs = lhs_fn(params, sp, k)
                    scale = max(abs(t1), abs(t2), 1.0)
                    worst = max(worst, abs(lhs - t1 - t2) / scale)
                    cases += 1
            det = ef.connection_det(params, sp)
            target = (2.0 * a / (1.0 / sp.y - sp.y)
                      * qc.theta(-a * a * t, q) / qc.theta(t, q))
            worst = max(worst, abs(det - target) / max(1.0, abs(target)))
            cases += 1
    return cases, worst, worst < 1e-9


def _suite_wronskian(get):
    gen = random.Random(13)
    worst, cases = 0.0, 0
    for regime in _suite_regimes(get):
        phase = cmath.exp(1j * jb.gamma_phase(regime))
        for _ in range(2):
            sp = _draw_sp(gen)
            spi = sp.reciprocal()
            f = lambda k: phase * jb.alpha_F(regime, sp, k)
            g = lambda k: phase * jb.alpha_F(regime, spi, k)
            vals = [jb.wronskian(regime, f, g, k) for k in (-5, 0, 5)]
            target = 0.5 * (1.0 / sp.y - sp.y)
            spread = max(abs(v - vals[0]) for v in vals)
            worst = max(worst, spread, abs(vals[0] - target))
            cases += len(vals)
    return cases, worst, worst < 1e-10


def _suite_quadratic(get):
    q = float(get("q", 0.5))
    gen = random.Random(14)
    worst, cases = 0.0, 0
    for _ in range(10):
        a, y, z = _quad_draw(gen)
        worst = max(worst, qd.quad_transform_check(a, y, z, q))
        cases += 1
    for k in (0, 1):
        t_even = q ** (2 - 2 * k) / 0.4
        for t_val, odd in ((t_even, False), (t_even / q, True)):
            worst = max(worst,
                        qd.quadrel1_residual(0.8 + 0.3j, 0.4 + 0.2j,
                                             t_val, q, k, odd=odd))
            cases += 1
    t_mag = max(0.78, math.sqrt(q) + 0.08)
    for t_val in (t_mag, -t_mag):
        for z_val in (0.3, -0.55):
            ref = tf.q_exponential(z_val, t_val, q)
            two = qd.qexp_as_3phi2(z_val, t_val, q)
            worst = max(worst, abs(two - ref) / max(1.0, abs(ref)))
            cases += 1
    return cases, worst, worst < 1e-9


def _suite_orthogonality(get):
    q = float(get("q", 0.5))
    case = get("case")
    regime = _default_regime(int(case) if case is not None else 1, q, get)
    theta_angle = float(get("theta", 0.7))
    ext = jb.extension_coeffs(regime, theta_angle)
    ks = range(-2, 3)
    gram = np.asarray(tf.orthogonality_matrix(regime, ext, ks, ks, tol=1e-9))
    dev = float(np.max(np.abs(gram - np.eye(len(ks)))))
    return len(ks) ** 2, dev, dev < 1e-6


def _suite_qexp_limit(get):
    _, worst = _limit_grid([0.9, 0.99], 9)
    monotone = worst[1] < worst[0]
    return 36, worst[1], monotone and worst[1] <= 5e-2


def _oracle_param(value):
    if isinstance(value, str):
        return complex(value.replace("i", "j"))
    if isinstance(value, (list, tuple)):
        return complex(float(value[0]), float(value[1]))
    return complex(value)


def _runtime_eval(expr, params):
    if expr == "qpoch_infinite":
        return qc.qpoch_inf(_oracle_param(params["a"]), params["q"]).value
    if expr == "theta":
        return qc.theta(_oracle_param(params["z"]), params["q"])
    if expr == "phi_series":
        numer = [_oracle_param(v) for v in params["numer"]]
        denom = [_oracle_param(v) for v in params["denom"]]
        return qc.phi_series(numer, denom, params["q"],
                             _oracle_param(params["z"])).value
    return tf.q_exponential(_oracle_param(params["z"]),
                            _oracle_param(params["t"]), params["q"])


def _suite_oracle(get):
    worst, cases = 0.0, 0
    for row in oc.reference_cases():
        want = complex(oc.highprec_eval(row["expr"], row["params"]))
        got = _runtime_eval(row["expr"], row["params"])
        worst = max(worst, abs(got - want) / max(1.0, abs(want)))
        cases += 1
    return cases, worst, worst < 1e-11


_SUITES = {
    "recurrence": _suite_recurrence,
    "connection": _suite_connection,
    "wronskian": _suite_wronskian,
    "quadratic": _suite_quadratic,
    "orthogonality": _suite_orthogonality,
    "qexp-limit": _suite_qexp_limit,
    "oracle": _suite_oracle,
}


def cmd_verify(args, cfg) -> int:
    get = _getter(args, cfg)
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        cases, worst, ok = _SUITES[name](get)
        reports.append({"suite": name, "cases": cases,
                        "max_residual": worst, "pass": bool(ok)})
    if args.suite == "all":
        out = {"suite": "all",
               "cases": sum(r["cases"] for r in reports),
               "max_residual": max(r["max_residual"] for r in reports),
               "pass": all(r["pass"] for r in reports),
               "reports": reports}
    else:
        out = reports[0]
    _emit_json(out, get("out"))
    return 0 if out["pass"] else 1


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------

def _add_regime_flags(sub):
    sub.add_argument("--case", type=int, help="regime family: 1 or 2")
    sub.add_argument("--psi", type=float, help="case-1 phase")
    sub.add_argument("--r", type=float, help="case-1 scale (real, nonzero)")
    sub.add_argument("--s", type=float, help="case-2 scale (real, nonzero)")
    sub.add_argument("--t", help="parameter t ('re+imi'; case 2 needs t < 0)")
    sub.add_argument("--q", type=float, help="base q in (0, 1)")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="qjacobi",
        description="evaluation, spectral data export, and identity "
                    "verification for a doubly infinite q-Jacobi operator")
    parser.add_argument("--config",
                        help="JSON file of option defaults; flags win")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("eval", help="evaluate one public function")
    _add_regime_flags(p)
    p.add_argument("--fn", help="u, v, F, c, d, theta, qexp, phi")
    p.add_argument("--k", type=int, help="lattice index")
    p.add_argument("--y", help="spectral parameter y ('re+imi')")
    p.add_argument("--z", help="series argument ('re+imi')")
    p.add_argument("--a", help="series parameter a ('re+imi')")
    p.add_argument("--b", help="series parameter b (phi only)")
    p.add_argument("--c", help="series parameter c (phi only)")
    p.add_argument("--x", help="series argument x (phi only)")
    p.add_argument("--gamma", help="spectral label gamma (phi only)")
    p.add_argument("--format", choices=["json", "csv"])
    p.add_argument("--out", help="output path ('-' for stdout)")
    p.set_defaults(handler=cmd_eval)

    p = subs.add_parser("spectrum",
                        help="density CSV over a chi grid plus mass JSON")
    _add_regime_flags(p)
    p.add_argument("--theta", type=float, help="extension angle")
    p.add_argument("--resolution", type=int, help="density rows to emit")
    p.add_argument("--x-min", dest="x_min", type=float)
    p.add_argument("--x-max", dest="x_max", type=float)
    p.add_argument("--density-out", dest="density_out")
    p.add_argument("--mass-out", dest="mass_out")
    p.set_defaults(handler=cmd_spectrum)

    p = subs.add_parser("orthogonality",
                        help="Gram matrix of the spectral transform")
    _add_regime_flags(p)
    p.add_argument("--theta", type=float)
    p.add_argument("--k-min", dest="k_min", type=int)
    p.add_argument("--k-max", dest="k_max", type=int)
    p.add_argument("--tol", type=float, help="quadrature tolerance")
    p.add_argument("--out", help="CSV path for the matrix entries")
    p.set_defaults(handler=cmd_orthogonality)

    p = subs.add_parser("masspoints",
                        help="discrete spectrum in an x window")
    _add_regime_flags(p)
    p.add_argument("--theta", type=float)
    p.add_argument("--x-min", dest="x_min", type=float)
    p.add_argument("--x-max", dest="x_max", type=float)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_masspoints)

    p = subs.add_parser("quadcheck",
                        help="quadratic-transformation residual report")
    p.add_argument("--q", type=float)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_quadcheck)

    p = subs.add_parser("qexp-limit",
                        help="classical-exponential limit diagnostics")
    p.add_argument("--qs", help="comma-separated q values")
    p.add_argument("--points", type=int, help="z grid size per sign")
    p.add_argument("--bound", type=float)
    p.add_argument("--out", help="CSV path for the error grid")
    p.set_defaults(handler=cmd_qexp_limit)

    p = subs.add_parser("verify", help="run a named identity suite")
    p.add_argument("suite", choices=sorted(_SUITES) + ["all"])
    _add_regime_flags(p)
    p.add_argument("--theta", type=float)
    p.add_argument("--out", help="report path ('-' for stdout)")
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _load_config(args.config)
        return args.handler(args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QJacobiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
