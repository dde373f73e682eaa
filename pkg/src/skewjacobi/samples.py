"""Concrete and random coefficient tables used by checks, demos and tests."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .isomorphism import ThetaComponents, components_to_vector, is_one_or_prime
from .jacobi_skew import SkewJacobiExpansion
from .metaplectic import VectorValuedExpansion
from .scalar_maass import ScalarMaassExpansion
from .spaces import Space
from .special import HalfInteger

__all__ = [
    "theta_components",
    "theta_vector",
    "theta_jacobi_table",
    "valid_discriminants",
    "random_skew_jacobi",
    "random_plus_form",
    "cohen_numbers",
    "cohen_eisenstein",
]


def theta_components(m: int, rmax: int = 200) -> ThetaComponents:
    """(theta_{m,l}(tau, 0))_l as mode-g weight-1/2 components (k = 1)."""
    plus = [dict() for _ in range(2 * m)]
    for r in range(-rmax, rmax + 1):
        ell = r % (2 * m)
        plus[ell][r * r] = plus[ell].get(r * r, 0) + 1
    comps = tuple(
        ScalarMaassExpansion(HalfInteger(1), 4 * m, 4 * m, p, truncation=(0, rmax * rmax)) for p in plus
    )
    return ThetaComponents(1, m, comps, "g")


def theta_vector(m: int, rmax: int = 200) -> VectorValuedExpansion:
    """The weight-1/2 vector (theta_{m,l}(tau, 0))_l of type rho_m."""
    return components_to_vector(theta_components(m, rmax))


def theta_jacobi_table(m: int, ell: int = 0) -> SkewJacobiExpansion:
    """Single plus key (D, l) with D the least nonnegative l^2 mod 4m.

    For l = 0 this is theta_{m,0}(tau, z) itself.
    """
    disc = ell * ell % (4 * m)
    return SkewJacobiExpansion(1, m, plus={(disc, ell % (2 * m)): 1.0})


def valid_discriminants(m: int, rho: int, lo: int, hi: int) -> list[int]:
    return [d for d in range(lo, hi + 1) if (d - rho * rho) % (4 * m) == 0]


def _complex(rng: np.random.Generator) -> complex:
    re, im = rng.normal(size=2)
    return complex(round(re, 6), round(im, 6)) or 1.0


def random_skew_jacobi(
    rng: np.random.Generator,
    k: int,
    m: int,
    space: Space = Space.HARMONIC,
    nkeys: int = 20,
    disc_range: tuple[int, int] = (-12, 12),
    symmetric: bool = True,
) -> SkewJacobiExpansion:
    """A random table whose support class is exactly ``space``.

    Symmetric tables (c(D, l) = c(D, -l)) are the ones the isomorphism
    accepts for odd k.
    """
    lo, hi = disc_range
    keys = [(d, rho) for rho in range(2 * m) for d in valid_discriminants(m, rho, lo, hi)]
    if symmetric:
        keys = [(d, rho) for d, rho in keys if rho <= m]
    tables = {"zero": {}, "plus": {}, "minus": {}}

    def put(part, d, rho, c):
        tables[part][(d, rho)] = c
        if symmetric:
            tables[part][(d, (-rho) % (2 * m))] = c

    def pick(pred):
        pool = [key for key in keys if pred(key[0])]
        return pool[rng.integers(len(pool))]

    # one key that pins the class from below
    if space is Space.HOLOMORPHIC:
        plus_pred = lambda d: d >= 0
    else:
        plus_pred = lambda d: True
    if space is Space.WEAK:
        put("plus", *pick(lambda d: d < 0), _complex(rng))
    elif space is Space.HARMONIC:
        put("minus", *pick(lambda d: d < 0), _complex(rng))
    elif space is Space.MANAGEABLE:
        if rng.integers(2):
            put("minus", *pick(lambda d: d > 0), _complex(rng))
        else:
            zero_keys = [rho for rho in range(2 * m) if rho * rho % (4 * m) == 0]
            put("zero", 0, zero_keys[rng.integers(len(zero_keys))], _complex(rng))
    count = sum(len(t) for t in tables.values())
    room = sum(1 for d, _ in keys if plus_pred(d))
    if space is Space.HARMONIC:
        room += sum(1 for d, _ in keys if d < 0)
    elif space is Space.MANAGEABLE:
        room += sum(1 for d, _ in keys if d != 0)
    nkeys = min(nkeys, room * (2 if symmetric else 1) // 2)
    while count < nkeys:
        roll = rng.random()
        if space in (Space.HARMONIC, Space.MANAGEABLE) and roll < 0.4:
            pred = (lambda d: d < 0) if space is Space.HARMONIC else (lambda d: d != 0)
            put("minus", *pick(pred), _complex(rng))
        else:
            put("plus", *pick(plus_pred), _complex(rng))
        count = sum(len(t) for t in tables.values())
    return SkewJacobiExpansion(k, m, **tables)


def random_plus_form(
    rng: np.random.Generator,
    k: int,
    m: int,
    space: Space = Space.HARMONIC,
    nkeys: int = 20,
    index_range: tuple[int, int] = (-12, 12),
) -> ScalarMaassExpansion:
    """A random weight k-1/2 plus-space table on level 4m with support class ``space``."""
    if not is_one_or_prime(m):
        raise ValueError("plus-space tables are generated for m = 1 or prime")
    phi = random_skew_jacobi(rng, k, m, space, nkeys, index_range)
    plus, gamma, const = {}, {}, 0j
    for (d, _), c in phi.plus.items():
        plus[d] = c
    for (d, _), c in phi.minus.items():
        gamma[d] = c
    for _, c in phi.zero.items():
        const = c
    return ScalarMaassExpansion(HalfInteger(2 * k - 1), 4 * m, 1, plus, gamma, const)


def _kronecker(d: int, a: int) -> int:
    """Kronecker symbol (d/a) for a discriminant d and a > 0."""
    from sympy import jacobi_symbol

    out = 1
    while a % 2 == 0:
        a //= 2
        if d % 2 == 0:
            return 0
        out *= 1 if d % 8 in (1, 7) else -1
    return out * (jacobi_symbol(d % a, a) if a > 1 else 1)


def _fundamental(n: int) -> tuple[int, int]:
    """n = D f^2 with D a fundamental discriminant (n = 0, 1 mod 4, n > 0)."""
    from sympy import factorint

    core, f = 1, 1
    for p, e in factorint(n).items():
        f *= p ** (e // 2)
        core *= p ** (e % 2)
    if core % 4 == 1:
        return core, f
    return 4 * core, f // 2


def _l_value(disc: int, r: int) -> Fraction:
    """L(1 - r, chi_D) = -B_{r,chi}/r via B_{r,chi} = D^(r-1) sum_a chi(a) B_r(a/D)."""
    from sympy import Poly, Symbol, bernoulli

    x = Symbol("x")
    coeffs = [Fraction(int(c.p), int(c.q)) for c in Poly(bernoulli(r, x), x).all_coeffs()]

    def poly(t: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in coeffs:
            acc = acc * t + c
        return acc

    total = sum(
        (chi * poly(Fraction(a, disc)) for a in range(1, disc + 1) if (chi := _kronecker(disc, a))),
        Fraction(0),
    )
    return -total * disc ** (r - 1) / r


def cohen_numbers(r: int, nmax: int) -> dict[int, Fraction]:
    """H(r, N) for 0 <= N <= nmax, r >= 2 even; zero unless N = 0, 1 mod 4."""
    from sympy import bernoulli, divisor_sigma, divisors, mobius

    if r < 2 or r % 2:
        raise ValueError("implemented for even r >= 2")
    b = bernoulli(2 * r)
    out = {0: Fraction(int((-b / (2 * r)).p), int((-b / (2 * r)).q))}
    cache: dict[int, Fraction] = {}
    for n in range(1, nmax + 1):
        if n % 4 not in (0, 1):
            continue
        disc, f = _fundamental(n)
        if disc not in cache:
            cache[disc] = _l_value(disc, r)
        inner = sum(
            int(mobius(d)) * _kronecker(disc, d) * d ** (r - 1) * int(divisor_sigma(f // d, 2 * r - 1))
            for d in divisors(f)
        )
        out[n] = cache[disc] * inner
    return out


def cohen_eisenstein(nmax: int = 200) -> ScalarMaassExpansion:
    """120 sum_N H(2, N) q^N, weight 5/2 on Gamma_0(4), in the plus space."""
    coeffs = {n: float(120 * h) for n, h in cohen_numbers(2, nmax).items() if h}
    return ScalarMaassExpansion(HalfInteger(5), 4, 1, coeffs, truncation=(0, nmax))
