import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from skewjacobi.special import (
    HalfInteger,
    e_rational,
    epsilon_d,
    exp_e,
    kronecker_symbol,
    principal_power,
    principal_sqrt,
    upper_incomplete_gamma,
    upper_incomplete_gamma_scaled,
)

from oracles import gamma_quad

HALF_STEPS = [HalfInteger(t) for t in range(-5, 6)]


def test_exp_e_examples():
    assert exp_e(0) == 1
    assert abs(exp_e(0.5) + 1) < 1e-15
    assert abs(exp_e(1 / 8) - (1 + 1j) / math.sqrt(2)) < 1e-15


def test_e_rational_exact_quarter_points():
    assert e_rational(1, 4) == 1j
    assert e_rational(2, 4) == -1
    assert e_rational(-3, 4) == 1j
    assert e_rational(7, 7) == 1


def test_principal_sqrt_examples():
    assert principal_sqrt(1) == 1
    assert principal_sqrt(-1) == 1j
    assert abs(principal_sqrt(2j) - (1 + 1j)) < 1e-15


@given(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False))
def test_principal_sqrt_branch(x):
    r = principal_sqrt(x)
    assert abs(r * r - x) <= 1e-14 * max(1.0, abs(x))
    assert r.real >= 0
    if r.real == 0:
        assert r.imag >= 0


def test_principal_power_half_integral():
    tau = 1 + 4j
    assert abs(principal_power(tau, HalfInteger(5)) - cmath.sqrt(tau) ** 5) < 1e-12
    assert abs(abs(principal_power(tau, "5/2")) - 17 ** (5 / 4)) < 1e-12


def test_kronecker_examples():
    assert kronecker_symbol(1, 3) == 1
    assert kronecker_symbol(2, 3) == -1
    assert kronecker_symbol(4, 5) == 1
    with pytest.raises(ValueError):
        kronecker_symbol(1, 4)


def test_kronecker_matches_sympy_jacobi():
    from sympy import jacobi_symbol

    for d in range(1, 200, 2):
        for c in range(-10, 11):
            ref = 1 if d == 1 else jacobi_symbol(c % d, d)
            assert kronecker_symbol(c, d) == ref
            # negative d: sign flips exactly when c < 0
            assert kronecker_symbol(c, -d) == (-ref if c < 0 else ref)


def test_kronecker_against_euler_criterion():
    for p in (3, 5, 7, 11, 13):
        for c in range(1, p):
            euler = pow(c, (p - 1) // 2, p)
            assert kronecker_symbol(c, p) == (1 if euler == 1 else -1)
        assert kronecker_symbol(p, p) == 0


def test_epsilon_examples():
    assert epsilon_d(1) == 1
    assert epsilon_d(3) == 1j
    assert epsilon_d(5) == 1
    with pytest.raises(ValueError):
        epsilon_d(2)


@pytest.mark.parametrize("d", [d for d in range(-99, 100, 2)])
def test_epsilon_identities(d):
    eps = epsilon_d(d)
    assert abs(eps**4 - 1) < 1e-15
    assert abs(eps**2 - kronecker_symbol(-1, d)) < 1e-15


def test_incomplete_gamma_examples():
    assert abs(upper_incomplete_gamma(1, 2) - math.exp(-2)) < 1e-16
    assert abs(upper_incomplete_gamma("1/2", 1) - 0.27880558528066197) < 1e-14
    assert abs(upper_incomplete_gamma("-1/2", 1) - 0.17814771178156) < 1e-13
    assert abs(upper_incomplete_gamma("-1/2", 1) - 2 * (math.exp(-1) - upper_incomplete_gamma("1/2", 1))) < 1e-15


def test_incomplete_gamma_rejects_nonpositive():
    with pytest.raises(ValueError):
        upper_incomplete_gamma("1/2", 0.0)
    with pytest.raises(ValueError):
        upper_incomplete_gamma("1/2", -1.0)


@given(st.sampled_from(HALF_STEPS), st.floats(min_value=1e-3, max_value=50))
def test_incomplete_gamma_recurrence(s, x):
    lhs = upper_incomplete_gamma(s + 1, x)
    rhs = float(s) * upper_incomplete_gamma(s, x) + x ** float(s) * math.exp(-x)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


@given(st.sampled_from(HALF_STEPS), st.floats(min_value=0.05, max_value=50))
def test_incomplete_gamma_vs_quadrature(s, x):
    ref = gamma_quad(float(s), x)
    assert abs(upper_incomplete_gamma(s, x) - ref) <= 1e-10 * abs(ref)


@pytest.mark.parametrize("twice", list(range(-15, 12)))
def test_scaled_gamma_vs_mpmath(twice):
    s = twice / 2
    for x in np.geomspace(0.01, 200, 25):
        ref = float(mpmath.gammainc(s, x) * mpmath.exp(x))
        got = upper_incomplete_gamma_scaled(HalfInteger(twice), float(x))
        assert abs(got - ref) <= 1e-13 * abs(ref)


def test_half_integer_arithmetic():
    k = HalfInteger.coerce("5/2")
    assert k.twice == 5 and not k.is_integral
    assert (k + HalfInteger(1)).is_integral
    assert 1 - k == HalfInteger(-3)
    assert str(k) == "5/2"
    assert HalfInteger.coerce(3) == HalfInteger(6)
    with pytest.raises(ValueError):
        HalfInteger.coerce("1/3")
