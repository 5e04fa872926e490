import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tripoint.errors import DomainError, StructuralError
from tripoint.phifun import (
    ArctanPiecewise,
    Linear,
    LogHalf,
    Tabulated,
    certify_phi,
    phi_eval,
    phi_from_dict,
    phi_iterate,
    phi_tail_bound,
)

positive = st.floats(1e-9, 1e6, allow_nan=False)


def test_eval_examples():
    assert phi_eval(Linear(0.92), 9) == pytest.approx(8.28, abs=1e-12)
    assert phi_eval(LogHalf(), 0) == 0
    # t = 1/lam1 sits on the first branch: arctan(0.5 * 2)
    assert phi_eval(ArctanPiecewise(0.5, 0.9), 2) == pytest.approx(math.pi / 4, abs=1e-10)
    assert phi_eval(ArctanPiecewise(0.5, 0.9), 2 + 1e-9) == pytest.approx(math.atan(0.9 * 2), abs=1e-8)


def test_negative_argument_is_domain_error():
    with pytest.raises(DomainError):
        phi_eval(Linear(0.5), -1)
    with pytest.raises(DomainError):
        phi_iterate(LogHalf(), 2, -0.5)


def test_iterate_examples():
    assert phi_iterate(LogHalf(), 0, 7) == 7
    assert phi_iterate(ArctanPiecewise(0.3, 0.6), 0, 7) == 7
    assert phi_iterate(LogHalf(), 3, 1) <= 0.125
    assert phi_iterate(Linear(0.92), 2, 7) == pytest.approx(5.9248, abs=1e-12)


def test_parameter_ranges():
    for bad in (-0.1, 1.0, 1.5):
        with pytest.raises(DomainError):
            Linear(bad)
    Linear(0.0)
    for l1, l2 in ((0.6, 0.3), (0.0, 0.5), (0.3, 1.0), (0.4, 0.4)):
        with pytest.raises(DomainError):
            ArctanPiecewise(l1, l2)


def test_tail_bound_examples():
    assert phi_tail_bound(Linear(0.5), 0, 1).partial_sum == pytest.approx(2.0, abs=1e-12)
    lam = 23 / 25
    tb = phi_tail_bound(Linear(lam), 2, 7)
    assert tb.converged
    # oracle: 7 * lam^2 / (1 - lam) = 5.9248 / 0.08, cross-checked by summation
    assert tb.partial_sum == pytest.approx(74.06, abs=1e-9)
    brute = sum(7 * lam**m for m in range(2, 2000))
    assert tb.partial_sum == pytest.approx(brute, rel=1e-12)
    tb = phi_tail_bound(LogHalf(), 1, 1, horizon=60)
    assert tb.partial_sum < 1 and tb.converged


def test_tail_bound_needs_positive_t():
    with pytest.raises(DomainError):
        phi_tail_bound(Linear(0.5), 0, 0)


def test_certify_examples():
    cert = certify_phi(Linear(0.5), [0.1, 1, 10], depth=40)
    assert cert.ok
    dense = np.linspace(0.5, 6, 400)  # straddles 1/0.3
    cert = certify_phi(ArctanPiecewise(0.3, 0.6), dense)
    assert cert.nondecreasing_ok
    cert = certify_phi(lambda t: t, [1])
    assert not cert.strict_below_identity_ok
    assert cert.witnesses["strict_below_identity"] == (1.0, 1.0)


def test_certify_flags_decreasing_function():
    cert = certify_phi(lambda t: 0.5 * t if t < 1 else 0.1, [0.5, 0.9, 2.0])
    assert not cert.nondecreasing_ok
    assert cert.witnesses["nondecreasing"] == (0.9, 2.0)


def test_tabulated_floor_lookup_and_validation():
    phi = Tabulated(((0, 0), (1, 0.5), (2, 1.5)))
    assert phi(0.5) == 0 and phi(1) == 0.5 and phi(1.99) == 0.5 and phi(10) == 1.5
    assert certify_phi(phi, np.linspace(0.01, 5, 100)).strict_below_identity_ok
    with pytest.raises(DomainError):
        Tabulated(((1, 1.0),))
    with pytest.raises(DomainError):
        Tabulated(((1, 0.5), (1, 0.6)))
    with pytest.raises(DomainError):
        Tabulated(((1, 0.5), (2, 0.4)))


def test_descriptors_round_trip():
    for phi in (Linear(0.25), LogHalf(), ArctanPiecewise(0.3, 0.6), Tabulated(((1, 0.5),))):
        assert phi_from_dict(phi.to_dict()) == phi
    assert phi_from_dict({"family": "linear", "lambda": "23/25"}).lam == pytest.approx(0.92)
    with pytest.raises(StructuralError):
        phi_from_dict({"family": "cubic"})


@given(st.floats(0, 0.999), st.integers(0, 40), positive)
def test_linear_iterate_is_power(lam, k, t):
    assert phi_iterate(Linear(lam), k, t) == pytest.approx(lam**k * t, rel=1e-12, abs=1e-300)


@given(st.integers(0, 30), positive)
def test_log_half_halving(k, t):
    assert phi_iterate(LogHalf(), k, t) <= 0.5**k * t * (1 + 1e-12)


@given(positive)
def test_arctan_below_larger_slope(t):
    assert phi_eval(ArctanPiecewise(0.3, 0.6), t) <= 0.6 * t


@given(st.integers(0, 20), st.floats(1e-3, 1e3))
def test_tail_bound_nonincreasing_in_n(n, t):
    for phi in (Linear(0.7), LogHalf(), ArctanPiecewise(0.3, 0.6)):
        a = phi_tail_bound(phi, n, t, horizon=200).partial_sum
        b = phi_tail_bound(phi, n + 1, t, horizon=200).partial_sum
        assert b <= a * (1 + 1e-12)
