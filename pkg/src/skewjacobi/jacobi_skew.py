"""Skew-holomorphic harmonic Maass-Jacobi expansions and their operators.

Coefficients are keyed by (D, rho) with D = r^2 - 4mn and rho = r mod 2m,
so D = rho^2 (mod 4m) and the dependence on (n, r) only through D and
r mod 2m is built into the data structure. The three term shapes are

    zero : c0(D=0, rho) v^(3/2-k)                      q^n zeta^r
    plus : c+(D, rho)   exp(-pi D v / m)                q^n zeta^r
    minus: c-(D, rho)   Gamma(3/2-k, -pi D v/m) exp(-pi D v / m) q^n zeta^r

Equivalently each key contributes H(tau) * sum_{r = rho (2m)} q^(r^2/4m) zeta^r
with H(tau) = e(-D conj(tau) / 4m) for the plus part, an antiholomorphic
function. The heat operator kills the theta factor and d/dtau kills H, which
is why every term is annihilated by the skew Casimir operator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType
from typing import Callable, Mapping

import numpy as np

from . import _stencils
from .exceptions import PositiveIndexGammaTerm, SupportViolation
from .spaces import Space
from .special import HalfInteger, principal_power, upper_incomplete_gamma_scaled

__all__ = [
    "PARTS",
    "JacobiGroupElement",
    "SkewJacobiExpansion",
    "theta_rmax",
    "theta_series_eval",
    "eval_skew_jacobi",
    "jacobi_tail_bound",
    "jacobi_slash",
    "slashed",
    "heat_operator_fd",
    "skew_casimir_fd",
    "casimir_termwise",
    "heat_termwise",
    "support_classify",
]

PARTS = ("zero", "plus", "minus")
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class JacobiGroupElement:
    """(M, (lam, mu)) acting by (tau, z) -> (M tau, (z + lam tau + mu)/(c tau + d))."""

    matrix: tuple[int, int, int, int] = (1, 0, 0, 1)
    lam: int = 0
    mu: int = 0

    def __post_init__(self):
        mat = tuple(int(x) for x in np.asarray(self.matrix).reshape(4))
        if mat[0] * mat[3] - mat[1] * mat[2] != 1:
            raise ValueError(f"{mat} does not have determinant 1")
        object.__setattr__(self, "matrix", mat)

    def __mul__(self, other: "JacobiGroupElement") -> "JacobiGroupElement":
        a, b, c, d = self.matrix
        e, f, g, h = other.matrix
        lam = self.lam * e + self.mu * g + other.lam
        mu = self.lam * f + self.mu * h + other.mu
        return JacobiGroupElement((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h), lam, mu)

    def act(self, tau: complex, z: complex) -> tuple[complex, complex]:
        a, b, c, d = self.matrix
        j = c * tau + d
        return (a * tau + b) / j, (z + self.lam * tau + self.mu) / j


def _clean(table, m: int, part: str) -> MappingProxyType:
    out = {}
    for key, value in dict(table or {}).items():
        disc, rho = (int(x) for x in key)
        rho %= 2 * m
        if (disc - rho * rho) % (4 * m):
            raise SupportViolation(f"{part} key (D={disc}, rho={rho}) has D != rho^2 mod {4 * m}")
        if part == "zero" and disc != 0:
            raise SupportViolation(f"zero-part key must have D=0, got {disc}")
        value = complex(value)
        if (disc, rho) in out:
            raise ValueError(f"duplicate {part} key {(disc, rho)}")
        if value != 0:
            out[(disc, rho)] = value
    return MappingProxyType(dict(sorted(out.items())))


@dataclass(frozen=True)
class SkewJacobiExpansion:
    """Coefficient tables of a skew-holomorphic harmonic Maass-Jacobi form of weight k, index m."""

    k: int
    m: int
    zero: Mapping[tuple[int, int], complex] = field(default_factory=dict)
    plus: Mapping[tuple[int, int], complex] = field(default_factory=dict)
    minus: Mapping[tuple[int, int], complex] = field(default_factory=dict)
    truncation: tuple[int, int] | None = None

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("index m must be positive")
        object.__setattr__(self, "k", int(self.k))
        for part in PARTS:
            object.__setattr__(self, part, _clean(getattr(self, part), self.m, part))
        if self.truncation is not None:
            object.__setattr__(self, "truncation", tuple(int(t) for t in self.truncation))

    __hash__ = None

    def table(self, part: str) -> Mapping[tuple[int, int], complex]:
        return getattr(self, part)

    def is_zero(self) -> bool:
        return not (self.zero or self.plus or self.minus)

    def terms(self, tau: complex, z: complex, rmax: int | None = None):
        """Per-term values with their (n, r, D) indices, summed over r = rho mod 2m."""
        v, y = tau.imag, z.imag
        if v <= 0:
            raise ValueError("tau must lie in the upper half-plane")
        m = self.m
        s = HalfInteger(3 - 2 * self.k)
        vals, ns, rs, ds = [], [], [], []
        for part in PARTS:
            for (disc, rho), c in self.table(part).items():
                if part == "minus" and disc >= 0:
                    raise PositiveIndexGammaTerm(
                        f"minus key D={disc} needs Gamma(3/2-k, x) with x <= 0"
                    )
                r = _residue_reps(m, rho, v, y, rmax)
                n = (r * r - disc) // (4 * m)
                phase = np.exp(TWO_PI * 1j * (n * tau.real + r * z.real))
                decay = -TWO_PI * (n * v + r * y)
                if part == "plus":
                    amp = c * np.exp(decay - math.pi * disc * v / m)
                elif part == "zero":
                    amp = c * v ** float(s) * np.exp(decay)
                else:
                    x = -math.pi * disc * v / m
                    # Gamma(s, x) exp(x) is the scaled incomplete gamma
                    amp = c * upper_incomplete_gamma_scaled(s, x) * np.exp(decay)
                vals.append(amp * phase)
                ns.append(n)
                rs.append(r)
                ds.append(np.full_like(r, disc))
        if not vals:
            empty = np.zeros(0)
            return empty.astype(complex), empty.astype(int), empty.astype(int), empty.astype(int)
        return np.concatenate(vals), np.concatenate(ns), np.concatenate(rs), np.concatenate(ds)

    def __call__(self, tau, z=0.0, rmax: int | None = None) -> complex:
        return eval_skew_jacobi(self, tau, z, rmax)


def theta_rmax(m: int, v: float, tol: float = 1e-17) -> int:
    """Half-width of the r-window so omitted theta terms fall below tol."""
    return math.ceil(math.sqrt(4 * m * math.log(1 / tol) / (TWO_PI * v))) + 2 * m


def _residue_reps(m: int, rho: int, v: float, y: float, rmax: int | None) -> np.ndarray:
    """All r = rho mod 2m in a window around the peak of |q^(r^2/4m) zeta^r|."""
    width = theta_rmax(m, v) if rmax is None else rmax
    center = 0 if rmax is not None else -2 * m * y / v
    lo = math.floor(center - width)
    start = lo + (rho - lo) % (2 * m)
    return np.arange(start, math.ceil(center + width) + 1, 2 * m, dtype=np.int64)


def theta_series_eval(m: int, ell: int, tau, z=0.0, rmax: int | None = None) -> complex:
    """theta_{m,l}(tau, z) = sum_{r = l mod 2m} q^(r^2/4m) zeta^r."""
    tau, z = complex(tau), complex(z)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    r = _residue_reps(m, ell % (2 * m), tau.imag, z.imag, rmax)
    return complex(np.exp(TWO_PI * 1j * (r * r * tau / (4 * m) + r * z)).sum())


def eval_skew_jacobi(phi: SkewJacobiExpansion, tau, z=0.0, rmax: int | None = None) -> complex:
    vals, *_ = phi.terms(complex(tau), complex(z), rmax)
    return complex(vals.sum())


def jacobi_tail_bound(phi: SkewJacobiExpansion, tau, z=0.0) -> float:
    """Bound on the terms left outside the default r-window.

    Beyond the window the theta terms decay faster than geometrically with
    ratio below 1/2, so twice the first omitted term on each side bounds
    each tail. For a table truncated at D <= hi, the size
    exp(-pi (hi+1) v / 2m) of the first omitted H-factor is added, as for
    scalar expansions.
    """
    tau, z = complex(tau), complex(z)
    v, y = tau.imag, z.imag
    m = phi.m
    bound = 0.0
    for part in ("zero", "plus"):
        for (disc, rho), c in phi.table(part).items():
            r = _residue_reps(m, rho, v, y, None)
            edge = np.array([r[0] - 2 * m, r[-1] + 2 * m])
            n = (edge * edge - disc) / (4 * m)
            log_mag = -TWO_PI * (n * v + edge * y)
            if part == "plus":
                log_mag = log_mag - math.pi * disc * v / m
            else:
                log_mag = log_mag + (1.5 - phi.k) * math.log(v)
            bound += 2 * abs(c) * float(np.exp(log_mag).sum())
    for (disc, rho), c in phi.minus.items():
        r = _residue_reps(m, rho, v, y, None)
        edge = np.array([r[0] - 2 * m, r[-1] + 2 * m])
        n = (edge * edge - disc) / (4 * m)
        if disc < 0:
            g = upper_incomplete_gamma_scaled(HalfInteger(3 - 2 * phi.k), -math.pi * disc * v / m)
            bound += 2 * abs(c) * abs(g) * float(np.exp(-TWO_PI * (n * v + edge * y)).sum())
    if phi.truncation is not None:
        bound += math.exp(-math.pi * (phi.truncation[1] + 1) * v / (2 * m))
    return bound


def slashed(phi: Callable, k, m: int, A: JacobiGroupElement, skew: bool = True) -> Callable:
    """The function (Phi |_{k,m} A), in the skew or the holomorphic slash."""
    k = HalfInteger.coerce(k)
    if skew and not k.is_integral:
        raise ValueError("skew slash needs integral weight")
    a, b, c, d = A.matrix
    lam, mu = A.lam, A.mu

    def out(tau, z=0.0):
        tau, z = complex(tau), complex(z)
        j = c * tau + d
        w = z + lam * tau + mu
        if skew:
            factor = complex(c * tau.conjugate() + d) ** ((2 - k.twice) // 2) / abs(j)
        else:
            factor = principal_power(j, -k)
        expo = m * (-c * w * w / j + lam * lam * tau + 2 * lam * z)
        return phi((a * tau + b) / j, w / j) * factor * np.exp(TWO_PI * 1j * expo)

    return out


def jacobi_slash(phi: Callable, k, m: int, A: JacobiGroupElement, tau, z=0.0, skew: bool = True) -> complex:
    return complex(slashed(phi, k, m, A, skew)(tau, z))


def _tau_derivative(f: Callable[[complex], complex], tau: complex, h: float) -> complex:
    """d/dtau = (d_u - i d_v)/2."""
    du = _stencils.d1(lambda s: f(tau + s), h)
    dv = _stencils.d1(lambda s: f(tau + 1j * s), h)
    return 0.5 * (du - 1j * dv)


def _taubar_derivative(f: Callable[[complex], complex], tau: complex, h: float) -> complex:
    du = _stencils.d1(lambda s: f(tau + s), h)
    dv = _stencils.d1(lambda s: f(tau + 1j * s), h)
    return 0.5 * (du + 1j * dv)


def heat_operator_fd(phi: Callable, m: int, tau, z=0.0, h: float | None = None) -> complex:
    """L_m Phi = 8 pi i m dPhi/dtau - d^2Phi/dz^2 by finite differences.

    Phi must be holomorphic in z; its z-derivative uses the complex
    4-point stencil. Default step 1e-3 v (fourth-order stencils).
    """
    tau, z = complex(tau), complex(z)
    h = 1e-3 * tau.imag if h is None else h
    if tau.imag - 2 * h <= 0:
        raise ValueError("stencil leaves the upper half-plane")
    dtau = _tau_derivative(lambda t: phi(t, z), tau, h)
    dzz = _stencils.d2_holomorphic(lambda s: phi(tau, z + s), h)
    return 8j * math.pi * m * dtau - dzz


def skew_casimir_fd(phi: Callable, k, m: int, tau, z=0.0, h: float | None = None) -> complex:
    """C^sk = -(i v^2 / pi m) v^(1/2-k) d/dtaubar v^(k-1/2) L_m, applied in that order."""
    tau, z = complex(tau), complex(z)
    k = float(HalfInteger.coerce(k))
    h = 1e-3 * tau.imag if h is None else h
    if tau.imag - 4 * h <= 0:
        raise ValueError("stencil leaves the upper half-plane")

    def inner(t: complex) -> complex:
        return t.imag ** (k - 0.5) * heat_operator_fd(phi, m, t, z, h)

    v = tau.imag
    return -(1j * v * v / (math.pi * m)) * v ** (0.5 - k) * _taubar_derivative(inner, tau, h)


@lru_cache(maxsize=None)
def _symbols():
    import sympy as sp

    u, v = sp.symbols("u v", positive=True)
    return sp, u, v


def casimir_termwise(k: int, m: int, part: str, disc: int):
    """Apply 2iv(k-1/2) d_tau h + 4v^2 d_tau d_taubar h symbolically to one h_l term.

    The h_l basis term for discriminant D is e(-D taubar/4m) (plus),
    v^(3/2-k) (zero, D = 0) or Gamma(3/2-k, -pi D v/m) e(-D taubar/4m)
    (minus, D < 0). Returns the simplified sympy expression, which is 0 for
    every valid term.
    """
    sp, u, v = _symbols()
    s = sp.Rational(3, 2) - k
    tau_bar = u - sp.I * v
    expo = sp.exp(2 * sp.pi * sp.I * (-sp.Integer(disc)) * tau_bar / (4 * m))
    if part == "plus":
        h = expo
    elif part == "zero":
        if disc != 0:
            raise ValueError("zero part only exists at D=0")
        h = v**s
    elif part == "minus":
        h = sp.uppergamma(s, -sp.pi * disc * v / m) * expo
    else:
        raise ValueError(f"unknown part {part!r}")
    d_tau = lambda f: (sp.diff(f, u) - sp.I * sp.diff(f, v)) / 2
    d_taubar = lambda f: (sp.diff(f, u) + sp.I * sp.diff(f, v)) / 2
    bracket = 2 * sp.I * v * (k - sp.Rational(1, 2)) * d_tau(h) + 4 * v**2 * d_tau(d_taubar(h))
    expr = bracket / expo if part != "zero" else bracket
    cheap = sp.expand(sp.powsimp(sp.expand(expr), force=True))
    return cheap if cheap == 0 else sp.simplify(expr)


def heat_termwise(m: int, n, r):
    """Symbol of L_m on q^n zeta^r: 8 pi i m (2 pi i n) - (2 pi i r)^2."""
    sp, _, _ = _symbols()
    n, r = sp.nsimplify(n), sp.nsimplify(r)
    return sp.simplify(8 * sp.pi * sp.I * m * (2 * sp.pi * sp.I * n) - (2 * sp.pi * sp.I * r) ** 2)


def support_classify(phi: SkewJacobiExpansion) -> Space:
    """Finest of J^sk, J^!sk, J^sk,cusp, J^sk,harm consistent with the support."""
    if not phi.zero and not phi.minus:
        if all(disc >= 0 for disc, _ in phi.plus):
            return Space.HOLOMORPHIC
        return Space.WEAK
    if not phi.zero and all(disc < 0 for disc, _ in phi.minus):
        return Space.HARMONIC
    return Space.MANAGEABLE
