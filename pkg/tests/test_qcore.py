import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qjacobi import qcore
from qjacobi.errors import (
    DivergentArgument,
    DomainViolation,
    NonConvergence,
    PoleInDenominator,
    ZeroArgument,
)

from conftest import as_complex, load_reference_values


def test_finite_pochhammer_hand_values():
    assert qcore.qpoch(0.5, 0.5, 0) == 1.0
    assert abs(qcore.qpoch(0.5, 0.5, 3) - 0.328125) < 1e-15
    # multi-parameter finite product, checked against a pencil computation
    val = qcore.qpoch_multi([0.5, -0.5], 0.5, 2)
    assert abs(val - 0.703125) < 1e-15


def test_finite_pochhammer_rejects_negative_order():
    with pytest.raises(DomainViolation):
        qcore.qpoch(0.5, 0.5, -1)


def test_q_domain_guard():
    for bad in (0.0, 1.0, -0.2, 1.7):
        with pytest.raises(DomainViolation):
            qcore.check_q(bad)


@pytest.mark.parametrize("row", [r for r in load_reference_values()
                                 if r["expr"] == "qpoch_infinite"])
def test_qpoch_inf_against_reference(row):
    got = qcore.qpoch_inf(as_complex(row["params"]["a"]), row["params"]["q"])
    assert abs(got.value - row["value"]) <= 1e-14 * max(1.0, abs(row["value"]))
    assert got.abs_error_estimate < 1e-13
    assert not got.terminated


@pytest.mark.parametrize("row", [r for r in load_reference_values()
                                 if r["expr"] == "theta"])
def test_theta_against_reference(row):
    got = qcore.theta(as_complex(row["params"]["z"]), row["params"]["q"])
    assert abs(got - row["value"]) <= 1e-13 * max(1.0, abs(row["value"]))


@pytest.mark.parametrize("row", [r for r in load_reference_values()
                                 if r["expr"] == "phi_series"])
def test_phi_series_against_reference(row):
    p = row["params"]
    got = qcore.phi_series([as_complex(a) for a in p["numer"]],
                           [as_complex(b) for b in p["denom"]],
                           p["q"], as_complex(p["z"]))
    assert abs(got.value - row["value"]) <= 1e-13 * max(1.0, abs(row["value"]))


@settings(max_examples=60, deadline=None)
@given(
    re=st.floats(-1.5, 1.5), im=st.floats(-1.5, 1.5),
    q=st.floats(0.2, 0.8),
    k=st.integers(0, 8), m=st.integers(0, 8),
)
def test_pochhammer_splice(re, im, q, k, m):
    # (a; q)_{k+m} = (a; q)_k (a q^k; q)_m
    a = complex(re, im)
    lhs = qcore.qpoch(a, q, k + m)
    rhs = qcore.qpoch(a, q, k) * qcore.qpoch(a * q ** k, q, m)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs), abs(rhs))


@settings(max_examples=60, deadline=None)
@given(
    re=st.floats(-2.0, 2.0), im=st.floats(-2.0, 2.0),
    q=st.floats(0.25, 0.75), k=st.integers(-5, 5),
)
def test_theta_shift_and_inversion(re, im, q, k):
    z = complex(re, im)
    if abs(z) < 1e-3:
        return
    base = qcore.theta(z, q)
    shifted = qcore.theta(z * q ** k, q)
    factor = (-z) ** (-k) * q ** (-k * (k - 1) / 2.0)
    assert abs(shifted - factor * base) <= 1e-11 * max(1.0, abs(shifted))
    inverted = qcore.theta(q / z, q)
    assert abs(inverted - base) <= 1e-12 * max(1.0, abs(base))


def test_theta_zero_argument():
    with pytest.raises(ZeroArgument):
        qcore.theta(0.0, 0.5)


def test_phi_series_unit_value_at_zero_argument():
    out = qcore.phi_series([0.3 + 0.1j, 0.7], [-0.5], 0.5, 0.0)
    assert out.value == 1.0 + 0.0j
    assert out.abs_error_estimate == 0.0


def test_phi_series_terminating_matches_hand_sum():
    # numerator q^{-2} stops the series after the k = 2 term
    q = 0.5
    a = q ** -2
    b = 0.3
    z = 1.7 + 0.4j  # |z| > 1 is fine for a terminating sum
    out = qcore.phi_series([a, b], [-0.25], q, z)
    assert out.terminated
    total = 0.0 + 0.0j
    for k in range(3):
        term = (qcore.qpoch(a, q, k) * qcore.qpoch(b, q, k)
                / (qcore.qpoch(-0.25, q, k) * qcore.qpoch(q, q, k)))
        total += term * z ** k
    assert abs(out.value - total) <= 1e-13 * max(1.0, abs(total))


def test_phi_series_divergent_argument():
    with pytest.raises(DivergentArgument):
        qcore.phi_series([0.3], [0.2], 0.5, 1.0)
    with pytest.raises(DivergentArgument):
        qcore.phi_series([0.3, 0.4], [0.2], 0.5, -1.2 + 0.1j)


def test_phi_series_pole_in_denominator():
    q = 0.5
    # denominator q^{-2} zeroes its factor at term 3; numerator does not
    # terminate first (q^{-5} stops only at term 6)
    with pytest.raises(PoleInDenominator):
        qcore.phi_series([q ** -5], [q ** -2], q, 0.3)
    # but a numerator termination before the pole is legal
    out = qcore.phi_series([q ** -1], [q ** -3], q, 0.3)
    assert out.terminated and out.terms_used == 2


def test_phi_series_max_terms_guard():
    with pytest.raises(NonConvergence):
        qcore.phi_series([0.5], [0.3], 0.5, 0.97, max_terms=12)


def test_series_error_estimate_honest(rng):
    # re-evaluating with a tighter tail must stay within the reported budget
    for _ in range(25):
        q = float(rng.uniform(0.3, 0.7))
        numer = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(2)]
        denom = [complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.5, 0.5))]
        z = complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6))
        if abs(z) >= 0.85:
            continue
        loose = qcore.phi_series(numer, denom, q, z)
        tight = qcore.phi_series(numer, denom, q, z, tail=qcore.SERIES_TAIL / 10)
        assert abs(loose.value - tight.value) <= max(loose.abs_error_estimate, 1e-15)


def test_product_error_estimate_honest(rng):
    for _ in range(25):
        q = float(rng.uniform(0.3, 0.7))
        a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        loose = qcore.qpoch_inf(a, q)
        tight = qcore.qpoch_inf(a, q, tail=qcore.PRODUCT_TAIL / 100)
        assert abs(loose.value - tight.value) <= max(loose.abs_error_estimate, 1e-15)


def test_near_q_power():
    q = 0.5
    assert qcore.near_q_power(0.25, q) == 2
    assert qcore.near_q_power(8.0, q) == -3
    assert qcore.near_q_power(1.0, q) == 0
    assert qcore.near_q_power(0.25 * (1 + 5e-12), q) == 2
    assert qcore.near_q_power(0.27, q) is None
    assert qcore.near_q_power(-0.25, q) is None
    assert qcore.near_q_power(0.25 + 1e-3j, q) is None
    assert qcore.near_q_power(0.0, q) is None


def test_qpoch_multi_infinite_consistency():
    q = 0.45
    params = [0.3, -0.2 + 0.1j]
    direct = qcore.qpoch_multi(params, q)
    split = qcore.qpoch_inf(params[0], q).value * qcore.qpoch_inf(params[1], q).value
    assert abs(direct - split) == 0.0


def test_theta_multi_matches_product():
    q = 0.5
    zs = [0.3 + 0.1j, -0.7]
    assert qcore.theta_multi(zs, q) == qcore.theta(zs[0], q) * qcore.theta(zs[1], q)
