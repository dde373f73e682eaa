"""The verification battery behind ``skewjacobi check``.

Every check returns a list of :class:`Report`. Numbers that feed a report
(sample points, seeds, tolerances) are recorded in ``params`` so a line can
be reproduced on its own.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .isomorphism import (
    components_to_scalar,
    conjugate_components,
    full_iso_jacobi_to_plus,
    full_iso_plus_to_jacobi,
    scalar_to_components,
    theta_decompose,
    theta_reconstruct,
    theta_sum,
)
from .jacobi_skew import (
    JacobiGroupElement,
    SkewJacobiExpansion,
    casimir_termwise,
    heat_operator_fd,
    heat_termwise,
    jacobi_slash,
    skew_casimir_fd,
    slashed,
    support_classify,
    theta_series_eval,
    _residue_reps,
)
from .metaplectic import S_TILDE, T_TILDE, WeilRepContext, vv_transform_residual
from .samples import random_plus_form, random_skew_jacobi, theta_vector
from .scalar_maass import laplacian_fd
from .spaces import Space

__all__ = [
    "Report",
    "CHECKS",
    "DEFAULT_POINTS",
    "weil_relations",
    "theta_transform",
    "heat",
    "casimir",
    "laplacian",
    "cocycle",
    "roundtrip",
    "iso",
    "casimir_scale",
    "laplacian_scale",
]

DEFAULT_POINTS = (
    (0.1 + 1.0j, 0.2 + 0.1j),
    (0.5 + 1.0j, -0.3 + 0.05j),
    (-0.25 + 0.8j, 0.1 - 0.2j),
    (0.3 + 1.5j, 0.4 + 0.3j),
    (0.0 + 2.0j, -0.15 + 0.0j),
)
THETA_TAUS = (1j, 0.5 + 1j, 2j)


@dataclass
class Report:
    check: str
    params: dict
    residual: float
    tolerance: float
    runtime_ms: float | None = field(default=None, compare=False)

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)

    def as_dict(self, timing: bool = False) -> dict:
        out = {
            "check": self.check,
            "params": self.params,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if timing and self.runtime_ms is not None:
            out["runtime_ms"] = self.runtime_ms
        return out


def _timed(fn: Callable[[], tuple[float, dict]], check: str, params: dict, tol: float) -> Report:
    t0 = time.perf_counter()
    residual, extra = fn()
    ms = (time.perf_counter() - t0) * 1e3
    return Report(check, {**params, **extra}, float(residual), tol, ms)


def _cpair(w: complex) -> list[float]:
    return [w.real, w.imag]


def _points(points: int) -> list[tuple[complex, complex]]:
    base = list(DEFAULT_POINTS)
    return [base[i % len(base)] for i in range(points)]


# ---------------------------------------------------------------- Weil rep


def weil_relations(ms: Iterable[int], dual: bool = False, tol: float = 1e-12) -> list[Report]:
    """S^2 = (ST)^3, S and T unitary, and S^2 = -iI (conjugated if dual) for m = 1."""
    out = []
    for m in ms:

        def run(m=m):
            ctx = WeilRepContext(m, dual)
            S, T = ctx.S_matrix, ctx.T_matrix
            eye = np.eye(ctx.size)
            st = S @ T
            res = [
                np.max(np.abs(S @ S - st @ st @ st)),
                np.max(np.abs(S @ S.conj().T - eye)),
                np.max(np.abs(T @ T.conj().T - eye)),
            ]
            if m == 1:
                expected = (1j if dual else -1j) * eye
                res.append(np.max(np.abs(S @ S - expected)))
            return max(res), {}

        out.append(_timed(run, "weil-relations", {"m": m, "dual": dual}, tol))
    return out


def theta_transform(
    ms: Iterable[int], truncation: int = 200, tol: float | None = None, taus=THETA_TAUS
) -> list[Report]:
    """The weight-1/2 theta vector under T~ (tol 1e-12) and S~ (tol 1e-9)."""
    out = []
    for m in ms:
        F = theta_vector(m, truncation)
        for name, g, default in (("T", T_TILDE, 1e-12), ("S", S_TILDE, 1e-9)):
            params = {"m": m, "generator": name, "truncation": truncation, "taus": [_cpair(t) for t in taus]}
            run = lambda g=g: (vv_transform_residual(F, g, taus), {})
            out.append(_timed(run, "theta-transform", params, default if tol is None else tol))
    return out


# --------------------------------------------------------- heat / Casimir


def _theta_heat_scale(m: int, ell: int, tau: complex, z: complex) -> float:
    r = _residue_reps(m, ell % (2 * m), tau.imag, z.imag, None)
    mags = np.abs(np.exp(2j * math.pi * (r * r * tau / (4 * m) + r * z)))
    return float(np.sum(mags * (1 + 8 * math.pi**2 * r * r)))


def heat(ms: Iterable[int], points: int = 5, tol: float = 1e-4) -> list[Report]:
    """L_m theta_{m,l} = 0: finite differences relative to the term scale, and termwise exactly."""
    out = []
    for m in ms:
        for ell in range(2 * m):

            def run(m=m, ell=ell):
                worst = 0.0
                for tau, z in _points(points):
                    f = lambda t, w: theta_series_eval(m, ell, t, w)
                    val = heat_operator_fd(f, m, tau, z)
                    worst = max(worst, abs(val) / _theta_heat_scale(m, ell, tau, z))
                return worst, {}

            pts = [[_cpair(t), _cpair(w)] for t, w in _points(points)]
            out.append(_timed(run, "heat", {"m": m, "ell": ell, "mode": "fd", "points": pts}, tol))

        def symbolic(m=m):
            bad = 0
            for ell in range(2 * m):
                for r in range(ell - 4 * m, ell + 4 * m + 1, 2 * m):
                    bad += heat_termwise(m, r * r / (4 * m), r) != 0
            return float(bad), {}

        out.append(_timed(symbolic, "heat", {"m": m, "mode": "termwise"}, 0.0))
    return out


def _frequencies(m: int, ns, rs, ds) -> np.ndarray:
    return np.maximum.reduce(
        [2 * math.pi * np.abs(ns), 2 * math.pi * np.abs(rs), math.pi * np.abs(ds) / m]
    )


def casimir_scale(phi: SkewJacobiExpansion, tau: complex, z: complex) -> float:
    """sum |term| (1 + omega)^3 max(1, v)^2, omega the largest frequency of the term."""
    vals, ns, rs, ds = phi.terms(tau, z)
    omega = _frequencies(phi.m, ns, rs, ds)
    return float(np.sum(np.abs(vals) * (1 + omega) ** 3) * max(1.0, tau.imag) ** 2)


def laplacian_scale(comp, tau: complex) -> float:
    """sum |term| (1 + omega)^2 max(1, v)^2 for a scalar expansion."""
    vals = np.abs(comp.term_values(tau))
    ns = np.array(list(comp.plus) + ([0] if comp.const != 0 else []) + list(comp.gamma), dtype=float)
    omega = 2 * math.pi * np.abs(ns) / comp.denom
    return float(np.sum(vals * (1 + omega) ** 2) * max(1.0, tau.imag) ** 2)


def _cusp_suite(k: int, m: int, seed: int, count: int) -> list[SkewJacobiExpansion]:
    rng = np.random.default_rng(seed)
    return [random_skew_jacobi(rng, k, m, Space.HARMONIC, nkeys=8) for _ in range(count)]


def _negative_control(k: int, m: int, tol: float) -> Report:
    """C^sk of the lone term q (not a theta orbit) is visibly nonzero."""
    tau, z = 0.1 + 1.0j, 0.0j
    q_only = lambda t, w: np.exp(2j * math.pi * t)

    def run():
        return abs(skew_casimir_fd(q_only, k, m, tau, z)), {}

    rep = _timed(run, "casimir", {"k": k, "m": m, "control": "q*zeta^0", "negated": True, "point": [_cpair(tau), _cpair(z)]}, tol)
    # for the control the residual must be large, so compare the other way round
    rep.residual, rep.tolerance = -rep.residual, -tol
    return rep


def casimir(
    k: int, m: int, seed: int = 0, count: int = 20, points: int = 5, tol: float = 1e-4, control: bool = True
) -> list[Report]:
    out = []
    pts = _points(points)
    for i, phi in enumerate(_cusp_suite(k, m, seed, count)):

        def run(phi=phi):
            worst = 0.0
            for tau, z in pts:
                worst = max(worst, abs(skew_casimir_fd(phi, k, m, tau, z)) / casimir_scale(phi, tau, z))
            return worst, {}

        params = {"k": k, "m": m, "seed": seed, "index": i, "points": [[_cpair(t), _cpair(w)] for t, w in pts]}
        out.append(_timed(run, "casimir", params, tol))

    def symbolic():
        bad = 0
        for part, disc in (("plus", -4 * m + 1), ("plus", 1), ("zero", 0), ("minus", -3), ("minus", -8)):
            bad += casimir_termwise(k, m, part, disc) != 0
        return float(bad), {}

    out.append(_timed(symbolic, "casimir", {"k": k, "m": m, "mode": "termwise"}, 0.0))
    if control:
        out.append(_negative_control(k, m, 0.1))
    return out


def laplacian(k: int, m: int, seed: int = 0, count: int = 20, points: int = 5, tol: float = 1e-4) -> list[Report]:
    """Delta_{k-1/2} g_l = 0 for every mode-g component of the cusp suite."""
    out = []
    taus = [t for t, _ in _points(points)]
    for i, phi in enumerate(_cusp_suite(k, m, seed, count)):
        comps = conjugate_components(theta_decompose(phi))

        def run(comps=comps):
            worst = 0.0
            for comp in comps.components:
                if not comp.support():
                    continue
                for tau in taus:
                    val = laplacian_fd(comp, comp.weight, tau)
                    worst = max(worst, abs(val) / laplacian_scale(comp, tau))
            return worst, {}

        params = {"k": k, "m": m, "seed": seed, "index": i, "taus": [_cpair(t) for t in taus]}
        out.append(_timed(run, "laplacian", params, tol))
    return out


# ------------------------------------------------------------------ slash


def _random_sl2(rng: np.random.Generator) -> tuple[int, int, int, int]:
    mat = np.eye(2, dtype=np.int64)
    T = np.array([[1, 1], [0, 1]])
    S = np.array([[0, -1], [1, 0]])
    for _ in range(int(rng.integers(1, 4))):
        mat = mat @ np.linalg.matrix_power(T, int(rng.integers(-2, 3))) @ S
    if rng.integers(2):
        mat = -mat
    return tuple(int(x) for x in mat.reshape(4))


def _random_jacobi(rng: np.random.Generator) -> JacobiGroupElement:
    lam, mu = (int(x) for x in rng.integers(-1, 2, size=2))
    return JacobiGroupElement(_random_sl2(rng), lam, mu)


def _cocycle_test_function(tau: complex, z: complex) -> complex:
    return np.exp(0.3j * tau + 0.7 * z - 0.2 * z * z) / (tau + 2j) + tau.conjugate() * z


def cocycle(k: int = 3, m: int = 1, seed: int = 0, count: int = 25, tol: float = 1e-9) -> list[Report]:
    """(f|A)|B = f|(AB) in the skew slash, for a generic smooth f; relative residual."""
    rng = np.random.default_rng(seed)
    out = []
    tau, z = 0.2 + 0.9j, 0.3 - 0.1j
    for i in range(count):
        A, B = _random_jacobi(rng), _random_jacobi(rng)

        def run(A=A, B=B):
            lhs = jacobi_slash(slashed(_cocycle_test_function, k, m, A), k, m, B, tau, z)
            rhs = jacobi_slash(_cocycle_test_function, k, m, A * B, tau, z)
            return abs(lhs - rhs) / abs(rhs), {}

        params = {
            "k": k,
            "m": m,
            "seed": seed,
            "index": i,
            "A": [list(A.matrix), A.lam, A.mu],
            "B": [list(B.matrix), B.lam, B.mu],
            "point": [_cpair(tau), _cpair(z)],
        }
        out.append(_timed(run, "cocycle", params, tol))
    return out


# -------------------------------------------------------------- isomorphism


SPACES = (Space.HOLOMORPHIC, Space.WEAK, Space.HARMONIC, Space.MANAGEABLE)


def roundtrip(k: int, m: int, seed: int = 0, count: int = 100, allow_composite: bool = False) -> list[Report]:
    """decompose/reconstruct and scalar_to_components/components_to_scalar are exact inverses."""
    rng = np.random.default_rng(seed)

    def run():
        failures = 0
        for i in range(count):
            space = SPACES[i % 4]
            phi = random_skew_jacobi(rng, k, m, space)
            comps = theta_decompose(phi)
            failures += theta_reconstruct(comps) != phi
            failures += theta_decompose(theta_reconstruct(comps)) != comps
            f = random_plus_form(rng, k, m, space)
            g = scalar_to_components(f, k, m, allow_composite)
            failures += components_to_scalar(g, allow_composite) != f
            failures += scalar_to_components(components_to_scalar(g, allow_composite), k, m, allow_composite) != g
        return float(failures), {}

    return [_timed(run, "roundtrip", {"k": k, "m": m, "seed": seed, "count": count}, 0.0)]


def iso(k: int, m: int, seed: int = 0, count: int = 100, allow_composite: bool = False) -> list[Report]:
    """Full composites are exact inverses and preserve the space tag."""
    rng = np.random.default_rng(seed)

    def run():
        failures = 0
        for i in range(count):
            space = SPACES[i % 4]
            phi = random_skew_jacobi(rng, k, m, space)
            f = full_iso_jacobi_to_plus(phi, allow_composite)
            failures += full_iso_plus_to_jacobi(f, k, m, allow_composite) != phi
            failures += not (support_classify(phi) is f.space() is space)
            f2 = random_plus_form(rng, k, m, space)
            phi2 = full_iso_plus_to_jacobi(f2, k, m, allow_composite)
            failures += full_iso_jacobi_to_plus(phi2, allow_composite) != f2
            failures += not (support_classify(phi2) is f2.space() is space)
        return float(failures), {}

    reps = [_timed(run, "iso", {"k": k, "m": m, "seed": seed, "count": count}, 0.0)]
    return reps


def decomposition_consistency(
    k: int, m: int, seed: int = 0, count: int = 20, points: int = 5, tol: float = 1e-10
) -> list[Report]:
    """|Phi - sum_l h_l theta_{m,l}| / (1 + |Phi|) on the cusp suite."""
    out = []
    pts = _points(points)
    for i, phi in enumerate(_cusp_suite(k, m, seed, count)):
        comps = theta_decompose(phi)

        def run(phi=phi, comps=comps):
            worst = 0.0
            for tau, z in pts:
                val = phi(tau, z)
                worst = max(worst, abs(val - theta_sum(comps, tau, z)) / (1 + abs(val)))
            return worst, {}

        params = {"k": k, "m": m, "seed": seed, "index": i, "mode": "decomposition"}
        out.append(_timed(run, "iso", params, tol))
    return out


CHECKS = ("weil-relations", "theta-transform", "heat", "casimir", "laplacian", "cocycle", "roundtrip", "iso")
