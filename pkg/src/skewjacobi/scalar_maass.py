"""Scalar harmonic Maass forms on Gamma_0(N) as finite coefficient tables.

An expansion of weight k is

    sum_n c+(n) e(n tau / d) + c-(0) v^(1-k) + sum_{n != 0} c-(n) Gamma(1-k, -4 pi n v / d) e(n tau / d)

with exponents in (1/d)Z. Only gamma terms with n < 0 can be evaluated
pointwise (positive incomplete-gamma argument); the tables themselves may
hold any index.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Callable, Iterable, Mapping

import numpy as np

from . import _stencils
from .exceptions import PositiveIndexGammaTerm
from .spaces import Space
from .special import (
    HalfInteger,
    epsilon_d,
    kronecker_symbol,
    principal_power,
    upper_incomplete_gamma_scaled,
)

__all__ = [
    "ScalarMaassExpansion",
    "as_tau",
    "eval_scalar",
    "plus_space_check",
    "automorphy_factor",
    "laplacian_fd",
    "scalar_transform_residual",
    "gamma0_generators",
]

TWO_PI = 2.0 * math.pi


def as_tau(tau) -> complex:
    tau = complex(tau)
    if not tau.imag > 0:
        raise ValueError(f"tau must lie in the upper half-plane, got {tau}")
    return tau


def _clean(table) -> MappingProxyType:
    out = {}
    for key, value in dict(table or {}).items():
        value = complex(value)
        if value != 0:
            out[int(key)] = value
    return MappingProxyType(dict(sorted(out.items())))


@dataclass(frozen=True, eq=True)
class ScalarMaassExpansion:
    """Coefficient tables of a scalar harmonic Maass form.

    ``plus`` holds c+(n), ``gamma`` holds c-(n) for n != 0 and ``const`` is
    c-(0). Exact zeros are dropped so that table equality is support-exact.
    ``truncation`` optionally declares (n_min, n_max) up to which the tables
    are complete.
    """

    weight: HalfInteger
    level: int = 1
    denom: int = 1
    plus: Mapping[int, complex] = field(default_factory=dict)
    gamma: Mapping[int, complex] = field(default_factory=dict)
    const: complex = 0j
    truncation: tuple[int, int] | None = None

    def __post_init__(self):
        object.__setattr__(self, "weight", HalfInteger.coerce(self.weight))
        object.__setattr__(self, "plus", _clean(self.plus))
        gamma = _clean(self.gamma)
        if 0 in gamma:
            raise ValueError("c-(0) belongs in const, not in the gamma table")
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "const", complex(self.const))
        if self.level < 1 or self.denom < 1:
            raise ValueError("level and denom must be positive")
        if self.truncation is not None:
            object.__setattr__(self, "truncation", tuple(int(t) for t in self.truncation))

    __hash__ = None

    # membership flags, derived from the support
    @property
    def in_weakly_holomorphic(self) -> bool:
        return not self.gamma and self.const == 0

    @property
    def in_holomorphic(self) -> bool:
        return self.in_weakly_holomorphic and all(n >= 0 for n in self.plus)

    @property
    def in_harmonic(self) -> bool:
        """True when the tables have the shape of a form in H (gamma terms only at n < 0)."""
        return self.const == 0 and all(n < 0 for n in self.gamma)

    def space(self) -> Space:
        if self.in_holomorphic:
            return Space.HOLOMORPHIC
        if self.in_weakly_holomorphic:
            return Space.WEAK
        if self.in_harmonic:
            return Space.HARMONIC
        return Space.MANAGEABLE

    def support(self) -> set[int]:
        s = set(self.plus) | set(self.gamma)
        if self.const != 0:
            s.add(0)
        return s

    @property
    def principal_part(self) -> dict[int, complex]:
        return {n: c for n, c in self.plus.items() if n <= 0}

    def term_values(self, tau) -> np.ndarray:
        """Values of the individual terms at tau; their sum is the form."""
        tau = as_tau(tau)
        u, v = tau.real, tau.imag
        d = self.denom
        one_minus_k = 1 - self.weight
        vals = []
        for n, c in self.plus.items():
            vals.append(c * np.exp(TWO_PI * (1j * n * u - n * v) / d))
        if self.const != 0:
            vals.append(self.const * v ** float(one_minus_k))
        for n, c in self.gamma.items():
            if n > 0:
                raise PositiveIndexGammaTerm(
                    f"gamma term at n={n} needs Gamma(s, x) with x < 0"
                )
            x = -2.0 * TWO_PI * n * v / d
            g = upper_incomplete_gamma_scaled(one_minus_k, x)
            vals.append(c * g * np.exp(TWO_PI * (1j * n * u + n * v) / d))
        return np.asarray(vals, dtype=complex)

    def __call__(self, tau) -> complex:
        return complex(self.term_values(tau).sum())

    def tail_bound(self, tau) -> float:
        """Size e^(-2 pi n_max v / d) of the first omitted q-power."""
        tau = as_tau(tau)
        if self.truncation is not None:
            n_max = self.truncation[1]
        elif self.plus:
            n_max = max(self.plus)
        else:
            return 0.0
        return math.exp(-TWO_PI * (n_max + 1) * tau.imag / self.denom)

    # linear structure, used by the linearity properties of the maps
    def __add__(self, other: "ScalarMaassExpansion") -> "ScalarMaassExpansion":
        if (self.weight, self.level, self.denom) != (other.weight, other.level, other.denom):
            raise ValueError("cannot add expansions of different type")
        return replace(
            self,
            plus=_sum_tables(self.plus, other.plus),
            gamma=_sum_tables(self.gamma, other.gamma),
            const=self.const + other.const,
        )

    def __mul__(self, scalar) -> "ScalarMaassExpansion":
        scalar = complex(scalar)
        return replace(
            self,
            plus={n: scalar * c for n, c in self.plus.items()},
            gamma={n: scalar * c for n, c in self.gamma.items()},
            const=scalar * self.const,
        )

    __rmul__ = __mul__


def _sum_tables(a: Mapping[int, complex], b: Mapping[int, complex]) -> dict[int, complex]:
    out = dict(a)
    for n, c in b.items():
        out[n] = out.get(n, 0) + c
    return out


def eval_scalar(f: ScalarMaassExpansion, tau) -> complex:
    return f(tau)


def _squares_mod(modulus: int) -> frozenset[int]:
    return frozenset(r * r % modulus for r in range(modulus))


def plus_space_check(f: ScalarMaassExpansion, k: int, m: int) -> tuple[bool, list[int]]:
    """Check the plus-space support condition for weight k - 1/2, level 4m.

    Every index n carrying a nonzero c+(n) or c-(n) must satisfy
    (-1)^(k+1) n = r^2 mod 4m for some r. Returns (ok, offending indices).
    """
    if f.level != 4 * m:
        raise ValueError(f"plus space of index {m} lives on level {4 * m}, got level {f.level}")
    squares = _squares_mod(4 * m)
    sign = -1 if k % 2 == 0 else 1
    bad = sorted(n for n in f.support() if (sign * n) % (4 * m) not in squares)
    return not bad, bad


def _unpack(gamma) -> tuple[int, int, int, int]:
    a, b, c, d = (int(x) for x in np.asarray(gamma).reshape(4))
    if a * d - b * c != 1:
        raise ValueError(f"matrix {[[a, b], [c, d]]} is not in SL2(Z)")
    return a, b, c, d


def automorphy_factor(gamma, tau, k, level: int | None = None) -> complex:
    """(c tau + d)^k, times (c/d) eps_d^(-2k) when k is half-integral."""
    a, b, c, d = _unpack(gamma)
    tau = as_tau(tau)
    k = HalfInteger.coerce(k)
    if level is not None and c % level:
        raise ValueError(f"c={c} is not divisible by the level {level}")
    j = principal_power(c * tau + d, k)
    if k.is_integral:
        return j
    if d % 2 == 0 or (level is not None and level % 4):
        raise ValueError("half-integral weight needs 4 | N and odd d")
    return kronecker_symbol(c, d) * epsilon_d(d) ** (-k.twice) * j


def laplacian_fd(f: Callable[[complex], complex], k, tau, h: float | None = None) -> complex:
    """Weight-k hyperbolic Laplacian by 5-point central differences.

    Delta_k = -v^2 (d_uu + d_vv) + i k v (d_u + i d_v). Default step 1e-4 v.
    """
    tau = as_tau(tau)
    k = float(HalfInteger.coerce(k))
    v = tau.imag
    h = 1e-4 * v if h is None else h
    if v - 2 * h <= 0:
        raise ValueError("stencil leaves the upper half-plane")
    fu = lambda s: f(tau + s)
    fv = lambda s: f(tau + 1j * s)
    d_u, d_v = _stencils.d1(fu, h), _stencils.d1(fv, h)
    d_uu, d_vv = _stencils.d2(fu, h), _stencils.d2(fv, h)
    return -v * v * (d_uu + d_vv) + 1j * k * v * (d_u + 1j * d_v)


def _apply(gamma, tau: complex) -> complex:
    a, b, c, d = _unpack(gamma)
    return (a * tau + b) / (c * tau + d)


def scalar_transform_residual(
    f, gamma, samples: Iterable, weight=None, level: int | None = None
) -> float:
    """max |f(gamma tau) - j(gamma, tau) f(tau)| / (1 + |f(tau)|) over samples."""
    if isinstance(f, ScalarMaassExpansion):
        weight = f.weight if weight is None else weight
        level = f.level if level is None else level
    if weight is None:
        raise ValueError("weight is required for a bare callable")
    worst = 0.0
    for tau in samples:
        tau = as_tau(tau)
        ft = f(tau)
        lhs = f(_apply(gamma, tau))
        rhs = automorphy_factor(gamma, tau, weight, level) * ft
        worst = max(worst, abs(lhs - rhs) / (1 + abs(ft)))
    return worst


def gamma0_generators(level: int) -> list[tuple[int, int, int, int]]:
    """A few elements of Gamma_0(N): T, -I and the lower-triangular [[1,0],[N,1]].

    These generate Gamma_0(4); for other levels they are only a sample.
    """
    return [(1, 1, 0, 1), (-1, 0, 0, -1), (1, 0, level, 1)]
