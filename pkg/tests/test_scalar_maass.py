import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from skewjacobi.exceptions import PositiveIndexGammaTerm
from skewjacobi.isomorphism import components_to_scalar
from skewjacobi.samples import cohen_eisenstein, theta_components
from skewjacobi.scalar_maass import (
    ScalarMaassExpansion,
    automorphy_factor,
    gamma0_generators,
    laplacian_fd,
    plus_space_check,
    scalar_transform_residual,
)
from skewjacobi.spaces import Space
from skewjacobi.special import HalfInteger, epsilon_d, upper_incomplete_gamma

from oracles import gamma_quad

K52 = HalfInteger(5)


def expansion(plus=None, gamma=None, const=0, weight=K52, level=4, denom=1):
    return ScalarMaassExpansion(weight, level, denom, plus or {}, gamma or {}, const)


def test_eval_constant_and_q():
    assert expansion({0: 5})(1j) == 5
    assert abs(expansion({1: 1})(1j) - math.exp(-2 * math.pi)) < 1e-16


def test_eval_gamma_term_against_quadrature():
    val = expansion(gamma={-1: 1})(1j)
    ref = gamma_quad(-1.5, 4 * math.pi) * math.exp(2 * math.pi)
    assert abs(val - ref) <= 1e-10 * abs(ref)


def test_eval_rejects_positive_gamma_index():
    f = expansion(gamma={2: 1})
    with pytest.raises(PositiveIndexGammaTerm):
        f(1j)


def test_eval_rejects_lower_half_plane():
    with pytest.raises(ValueError):
        expansion({0: 1})(-1j)


def test_gamma_key_zero_is_rejected():
    with pytest.raises(ValueError):
        expansion(gamma={0: 1})


def test_space_flags():
    assert expansion({0: 1, 4: 2}).space() is Space.HOLOMORPHIC
    assert expansion({-3: 1}).space() is Space.WEAK
    assert expansion({-3: 1}, {-4: 1}).space() is Space.HARMONIC
    assert expansion({-3: 1}, {4: 1}).space() is Space.MANAGEABLE
    assert expansion(const=1).space() is Space.MANAGEABLE


def test_in_harmonic_never_raises():
    f = expansion({-3: 1, 5: 2}, {-4: 1, -7: 0.5})
    assert f.in_harmonic
    f(0.3 + 0.7j)


def test_principal_part():
    f = expansion({-3: 1, 0: 2, 5: 3})
    assert f.principal_part == {-3: 1, 0: 2}


# the plus-space predicate; sign (-1)^(k+1) n, see the ledger for the examples below
def test_plus_space_odd_k_examples():
    assert plus_space_check(expansion({0: 1, 1: 1, 4: 1, 5: 1}), 3, 1) == (True, [])
    assert plus_space_check(expansion({3: 1}), 3, 1) == (False, [3])
    assert plus_space_check(expansion(), 3, 1) == (True, [])
    assert plus_space_check(expansion(), 4, 1) == (True, [])


def test_plus_space_even_k_examples():
    assert plus_space_check(expansion({0: 1, 3: 1, 4: 1, 7: 1}), 4, 1) == (True, [])
    assert plus_space_check(expansion({1: 1}), 4, 1) == (False, [1])


def test_plus_space_square_classes_prime_m():
    # m = 3: squares mod 12 are {0, 1, 4, 9}; 4 is not in the printed {0, 1}
    f = ScalarMaassExpansion(K52, 12, 1, {4: 1, 9: 1, 13: 1})
    assert plus_space_check(f, 3, 3) == (True, [])
    g = ScalarMaassExpansion(K52, 12, 1, {2: 1, 4: 1})
    assert plus_space_check(g, 3, 3) == (False, [2])


def test_plus_space_level_mismatch():
    with pytest.raises(ValueError):
        plus_space_check(expansion({0: 1}), 3, 2)


@given(st.sets(st.integers(-40, 40), max_size=12), st.sets(st.integers(-40, 40), max_size=12))
def test_plus_space_is_support_monotone(a, b):
    big = expansion({n: 1 for n in a | b})
    small = expansion({n: 1 for n in a})
    if plus_space_check(big, 3, 1)[0]:
        assert plus_space_check(small, 3, 1)[0]


def test_plus_space_m1_agrees_with_printed_set():
    for n in range(-50, 50):
        f = expansion({n: 1})
        assert plus_space_check(f, 3, 1)[0] == (n % 4 in (0, 1))


def test_automorphy_factor_examples():
    assert automorphy_factor((1, 0, 0, 1), 1j, K52) == 1
    assert automorphy_factor((1, 1, 0, 1), 0.3 + 2j, K52) == 1
    val = automorphy_factor((1, 0, 4, 1), 1j, K52, level=4)
    assert abs(val - (4j + 1) ** 2.5 * 1 * epsilon_d(1) ** -5) < 1e-12
    assert abs(abs(val) - 17 ** 1.25) < 1e-12


def test_automorphy_factor_rejects_bad_input():
    with pytest.raises(ValueError):
        automorphy_factor((1, 1, 1, 1), 1j, 2)
    with pytest.raises(ValueError):
        automorphy_factor((1, 0, 2, 1), 1j, K52, level=4)


def test_laplacian_basis_terms():
    q = lambda t: complex(math.e ** (2j * math.pi * t))
    assert abs(laplacian_fd(q, K52, 1j, 1e-4)) <= 1e-6
    assert abs(laplacian_fd(lambda t: t.imag ** (1 - 2.5), K52, 1j)) <= 1e-6
    gamma_term = expansion(gamma={-1: 1})
    assert abs(laplacian_fd(gamma_term, K52, 1j, 1e-4)) <= 1e-5


@given(st.floats(0.5, 2.0), st.floats(-0.5, 0.5), st.sampled_from(["plus", "const", "gamma"]))
def test_laplacian_termwise_harmonic(v, u, part):
    f = {
        "plus": expansion({1: 1}),
        "const": expansion(const=1),
        "gamma": expansion(gamma={-1: 1}),
    }[part]
    assert abs(laplacian_fd(f, K52, complex(u, v), 1e-4 * v)) <= 1e-5


def test_laplacian_detects_non_harmonic():
    assert abs(laplacian_fd(lambda t: t.imag, K52, 1j)) > 0.1


def test_laplacian_stencil_domain():
    with pytest.raises(ValueError):
        laplacian_fd(lambda t: 0, K52, 1e-3j, 1e-3)


def test_transform_residual_trivial_cases():
    f = expansion({0: 1, 1: -10, 4: -70})
    assert scalar_transform_residual(f, (1, 0, 0, 1), [1j, 0.2 + 0.5j]) == 0
    assert scalar_transform_residual(f, (1, 1, 0, 1), [1j, 0.2 + 0.5j]) <= 1e-12


@pytest.mark.parametrize("gen", gamma0_generators(4))
def test_flattened_theta_is_modular_on_gamma0_4(gen):
    theta = components_to_scalar(theta_components(1, 60))
    assert scalar_transform_residual(theta, gen, [1j, 0.3 + 0.8j, -0.2 + 0.5j]) <= 1e-8


@pytest.mark.parametrize("gen", gamma0_generators(4))
def test_cohen_eisenstein_is_modular_on_gamma0_4(gen):
    f = cohen_eisenstein(300)
    assert scalar_transform_residual(f, gen, [0.1 + 0.8j, -0.3 + 0.6j, 0.2 + 1.1j]) <= 1e-10


def test_tail_bound():
    f = ScalarMaassExpansion(K52, 4, 1, {0: 1, 1: 1}, truncation=(0, 10))
    assert f.tail_bound(1j) == pytest.approx(math.exp(-2 * math.pi * 11))


def test_linear_structure():
    f = expansion({1: 1}, {-4: 2})
    g = expansion({1: -1, 5: 1})
    h = f + g
    assert dict(h.plus) == {5: 1}
    assert dict((2 * f).gamma) == {-4: 4}
