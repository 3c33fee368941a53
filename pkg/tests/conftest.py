import json
import os

import numpy as np
import pytest

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "fixtures")


def load_reference_values():
    with open(os.path.join(FIXTURE_DIR, "reference_values.json")) as fh:
        rows = json.load(fh)
    for row in rows:
        row["value"] = complex(float(row["value_re"]), float(row["value_im"]))
    return rows


def as_complex(entry):
    """Fixture params store complex scalars as [re, im] pairs or strings."""
    if isinstance(entry, (list, tuple)):
        return complex(entry[0], entry[1])
    return complex(float(entry), 0.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20260817)


def draw_case1(rng, q=None):
    """Admissible phase-modulated regime draw (a on the circle sqrt(q))."""
    from qjacobi.jacobi import Case1

    qv = float(q) if q is not None else float(rng.uniform(0.3, 0.7))
    psi = float(rng.uniform(-1.2, 1.2))
    r = float(rng.uniform(0.3, 2.0)) * (1 if rng.uniform() < 0.5 else -1)
    return Case1(psi=psi, r=r, q=qv)


def draw_case2(rng, q=None):
    """Admissible negative-t regime draw (a purely imaginary)."""
    from qjacobi.jacobi import Case2

    qv = float(q) if q is not None else float(rng.uniform(0.3, 0.7))
    s = float(rng.uniform(0.3, 2.0)) * (1 if rng.uniform() < 0.5 else -1)
    t = float(rng.uniform(-2.0, -0.3))
    return Case2(s=s, t=t, q=qv)


def draw_regimes(rng, count_each=3, q=None):
    out = [draw_case1(rng, q) for _ in range(count_each)]
    out += [draw_case2(rng, q) for _ in range(count_each)]
    return out


def draw_y(rng, lo=0.2, hi=0.85):
    """Generic spectral point strictly inside the unit disc, off the real axis."""
    rad = float(rng.uniform(lo, hi))
    ang = float(rng.uniform(0.25, np.pi - 0.25))
    return rad * complex(np.cos(ang), np.sin(ang))
