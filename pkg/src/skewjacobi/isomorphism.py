"""Coefficient-level maps between the three sides of the correspondence.

    Phi  --theta_decompose-->  (h_l)  --conjugate-->  (g_l)  --components_to_scalar-->  f

All maps are re-indexings of finite tables; the only arithmetic is the
factor s(l) in {1, 2}, so round trips are exact in floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .exceptions import NotPrimeIndex, PlusSpaceViolation, SupportViolation, SymmetryViolation
from .jacobi_skew import SkewJacobiExpansion, theta_series_eval
from .metaplectic import VectorValuedExpansion, WeilRepContext
from .scalar_maass import ScalarMaassExpansion, as_tau, plus_space_check
from .special import HalfInteger

__all__ = [
    "ThetaComponents",
    "s_factor",
    "is_one_or_prime",
    "theta_decompose",
    "theta_reconstruct",
    "conjugate_components",
    "components_to_scalar",
    "scalar_to_components",
    "components_to_vector",
    "vector_to_components",
    "full_iso_jacobi_to_plus",
    "full_iso_plus_to_jacobi",
    "theta_sum",
    "flatten_vector_function",
]


def s_factor(gamma: int, m: int) -> int:
    """1 if gamma = 0 or m mod 2m, else 2."""
    return 1 if gamma % (2 * m) in (0, m % (2 * m)) else 2


def is_one_or_prime(m: int) -> bool:
    if m == 1:
        return True
    if m < 2:
        return False
    return all(m % p for p in range(2, int(m**0.5) + 1))


@dataclass(frozen=True)
class ThetaComponents:
    """The 2m-tuple (h_l) or (g_l) of an index-m form of weight k.

    Component l is a weight k-1/2 expansion with exponents N/4m,
    N = l^2 mod 4m. In mode "g" a component is evaluated as an ordinary
    harmonic Maass expansion; in mode "h" the same tables are evaluated at
    -conj(tau), i.e. h_l(tau) = g_l(-conj(tau)).
    """

    k: int
    m: int
    components: tuple[ScalarMaassExpansion, ...]
    mode: str = "h"

    def __post_init__(self):
        if self.mode not in ("h", "g"):
            raise ValueError("mode must be 'h' or 'g'")
        comps = tuple(self.components)
        m = self.m
        if len(comps) != 2 * m:
            raise ValueError(f"need {2 * m} components, got {len(comps)}")
        weight = HalfInteger(2 * self.k - 1)
        for ell, comp in enumerate(comps):
            if comp.weight != weight or comp.denom != 4 * m:
                raise ValueError(f"component {ell} must have weight {weight} and denominator {4 * m}")
            for n in comp.support():
                if (n - ell * ell) % (4 * m):
                    raise SupportViolation(
                        f"component {ell} has exponent N={n}, need N = {ell}^2 mod {4 * m}"
                    )
        object.__setattr__(self, "components", comps)

    @classmethod
    def empty(cls, k: int, m: int, mode: str = "h") -> "ThetaComponents":
        comp = ScalarMaassExpansion(HalfInteger(2 * k - 1), 4 * m, 4 * m)
        return cls(k, m, (comp,) * (2 * m), mode)

    def component_value(self, ell: int, tau) -> complex:
        tau = as_tau(tau)
        comp = self.components[ell % (2 * self.m)]
        return comp(tau if self.mode == "g" else -tau.conjugate())

    def __call__(self, tau) -> np.ndarray:
        return np.array([self.component_value(l, tau) for l in range(2 * self.m)])

    def symmetry_violations(self) -> list[tuple[int, int]]:
        """(l, N) pairs where component l and -l differ."""
        bad = []
        two_m = 2 * self.m
        for ell in range(two_m):
            a, b = self.components[ell], self.components[(-ell) % two_m]
            if a == b:
                continue
            for n in sorted(a.support() | b.support()):
                if (a.plus.get(n), a.gamma.get(n)) != (b.plus.get(n), b.gamma.get(n)) or (
                    n == 0 and a.const != b.const
                ):
                    bad.append((ell, n))
        return bad


_PART_TO_FIELD = {"plus": "plus", "minus": "gamma"}


def theta_decompose(phi: SkewJacobiExpansion) -> ThetaComponents:
    """Split Phi = sum_l h_l theta_{m,l}; key (D, l) goes to exponent N = D of h_l."""
    m = phi.m
    plus = [dict() for _ in range(2 * m)]
    gamma = [dict() for _ in range(2 * m)]
    const = [0j] * (2 * m)
    for (disc, rho), c in phi.plus.items():
        plus[rho][disc] = c
    for (disc, rho), c in phi.minus.items():
        gamma[rho][disc] = c
    for (_, rho), c in phi.zero.items():
        const[rho] = c
    weight = HalfInteger(2 * phi.k - 1)
    comps = tuple(
        ScalarMaassExpansion(weight, 4 * m, 4 * m, plus[l], gamma[l], const[l], phi.truncation)
        for l in range(2 * m)
    )
    return ThetaComponents(phi.k, m, comps, "h")


def theta_reconstruct(components: ThetaComponents) -> SkewJacobiExpansion:
    """Inverse of theta_decompose."""
    if components.mode != "h":
        raise ValueError("theta_reconstruct takes mode-h components; conjugate first")
    zero, plus, minus = {}, {}, {}
    truncation = None
    for ell, comp in enumerate(components.components):
        for n, c in comp.plus.items():
            plus[(n, ell)] = c
        for n, c in comp.gamma.items():
            minus[(n, ell)] = c
        if comp.const != 0:
            zero[(0, ell)] = comp.const
        truncation = truncation or comp.truncation
    return SkewJacobiExpansion(components.k, components.m, zero, plus, minus, truncation)


def conjugate_components(components: ThetaComponents) -> ThetaComponents:
    """g_l(tau) = h_l(-conj(tau)): same tables, other evaluation mode."""
    return replace(components, mode="g" if components.mode == "h" else "h")


def _require_index(k: int, m: int, allow_composite: bool) -> None:
    if k % 2 == 0:
        raise ValueError(f"the correspondence needs odd weight k, got {k}")
    if not allow_composite and not is_one_or_prime(m):
        raise NotPrimeIndex(f"m={m} is neither 1 nor prime")


def components_to_scalar(
    components: ThetaComponents, allow_composite: bool = False
) -> ScalarMaassExpansion:
    """f(tau) = sum_l g_l(4m tau): c_f(n) = s(l) c_{g_l}(n) for n = l^2 mod 4m."""
    if components.mode != "g":
        raise ValueError("components_to_scalar takes mode-g components")
    k, m = components.k, components.m
    _require_index(k, m, allow_composite)
    bad = components.symmetry_violations()
    if bad:
        raise SymmetryViolation(f"components l and -l differ at (l, N) = {bad[:5]}")
    plus, gamma, const = {}, {}, 0j
    truncation = None
    for comp in components.components:
        for n, c in comp.plus.items():
            plus[n] = plus.get(n, 0) + c
        for n, c in comp.gamma.items():
            gamma[n] = gamma.get(n, 0) + c
        const += comp.const
        truncation = truncation or comp.truncation
    return ScalarMaassExpansion(HalfInteger(2 * k - 1), 4 * m, 1, plus, gamma, const, truncation)


def scalar_to_components(
    f: ScalarMaassExpansion, k: int, m: int, allow_composite: bool = False
) -> ThetaComponents:
    """Cho's map: F_l = (1/s(l)) sum_{n = l^2 mod 4m} c_f(n) q^(n/4m), as mode-g components."""
    _require_index(k, m, allow_composite)
    if f.weight != HalfInteger(2 * k - 1) or f.denom != 1:
        raise ValueError(f"expected a weight {k}-1/2 expansion with integral exponents")
    ok, bad = plus_space_check(f, k, m)
    if not ok:
        raise PlusSpaceViolation(f"indices {bad[:10]} violate the plus-space condition")
    two_m, four_m = 2 * m, 4 * m
    roots: dict[int, list[int]] = {}
    for ell in range(two_m):
        roots.setdefault(ell * ell % four_m, []).append(ell)
    plus = [dict() for _ in range(two_m)]
    gamma = [dict() for _ in range(two_m)]
    const = [0j] * two_m
    for src, dst in ((f.plus, plus), (f.gamma, gamma)):
        for n, c in src.items():
            for ell in roots[n % four_m]:
                dst[ell][n] = c / s_factor(ell, m)
    if f.const != 0:
        for ell in roots[0]:
            const[ell] = f.const / s_factor(ell, m)
    comps = tuple(
        ScalarMaassExpansion(f.weight, four_m, four_m, plus[l], gamma[l], const[l], f.truncation)
        for l in range(two_m)
    )
    return ThetaComponents(k, m, comps, "g")


def components_to_vector(components: ThetaComponents, dual: bool = False) -> VectorValuedExpansion:
    """View mode-g components as a C[Z/2mZ]-valued expansion of weight k-1/2.

    The exponent classes l^2/4m are those of rho_m; asking for the dual
    representation raises SupportViolation unless every class is 2-torsion.
    """
    if components.mode != "g":
        raise ValueError("vector-valued forms correspond to mode-g components")
    ctx = WeilRepContext(components.m, dual)
    return VectorValuedExpansion(HalfInteger(2 * components.k - 1), ctx, components.components)


def vector_to_components(F: VectorValuedExpansion, k: int) -> ThetaComponents:
    return ThetaComponents(k, F.context.m, F.components, "g")


def full_iso_jacobi_to_plus(phi: SkewJacobiExpansion, allow_composite: bool = False) -> ScalarMaassExpansion:
    return components_to_scalar(conjugate_components(theta_decompose(phi)), allow_composite)


def full_iso_plus_to_jacobi(
    f: ScalarMaassExpansion, k: int, m: int, allow_composite: bool = False
) -> SkewJacobiExpansion:
    return theta_reconstruct(conjugate_components(scalar_to_components(f, k, m, allow_composite)))


def theta_sum(components: ThetaComponents, tau, z=0.0) -> complex:
    """sum_l h_l(tau) theta_{m,l}(tau, z), evaluated component by component."""
    if components.mode != "h":
        components = conjugate_components(components)
    return complex(
        sum(
            components.component_value(l, tau) * theta_series_eval(components.m, l, tau, z)
            for l in range(2 * components.m)
        )
    )


def flatten_vector_function(F: Callable[[complex], Sequence[complex]], m: int) -> Callable[[complex], complex]:
    """tau -> sum_l F_l(4m tau), the scalar form attached to a vector-valued one."""

    def f(tau):
        return complex(np.sum(F(4 * m * complex(tau))))

    return f
