"""One test per acceptance criterion; each prints a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline;
they are also repeated in the terminal summary.
"""
import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from oracles import gamma_quad
from skewjacobi import checks
from skewjacobi.metaplectic import (
    S_TILDE,
    T_TILDE,
    MetaplecticElement,
    WeilRepContext,
    _complete_row,
    vv_eisenstein_truncated,
    vv_transform_residual,
    weil_rep_of,
)
from skewjacobi.special import HalfInteger, upper_incomplete_gamma


def record(n, ok, detail):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def worst(reports):
    return max(r.residual for r in reports)


def all_pass(reports):
    return all(r.passed for r in reports)


def test_criterion_01_weil_relations():
    t0 = time.perf_counter()
    reps = checks.weil_relations(range(1, 8), dual=False, tol=1e-12)
    elapsed = time.perf_counter() - t0
    S = WeilRepContext(1).S_matrix
    st3 = np.linalg.matrix_power(S @ WeilRepContext(1).T_matrix, 3)
    m1 = max(np.max(np.abs(S @ S + 1j * np.eye(2))), np.max(np.abs(st3 + 1j * np.eye(2))))
    ok = all_pass(reps) and m1 <= 1e-12 and elapsed < 1.0
    record(1, ok, f"max residual {worst(reps):.2e}, m=1 vs -iI {m1:.2e}, {elapsed:.3f} s")


def _random_element(rng, bound=20):
    while True:
        c, d = (int(x) for x in rng.integers(-bound, bound + 1, 2))
        if math.gcd(c, d) == 1:
            break
    a, b = _complete_row(c, d)
    return MetaplecticElement((a, b, c, d), int(rng.integers(2)))


def test_criterion_02_representation_property():
    t0 = time.perf_counter()
    res = 0.0
    for m in (1, 2, 3, 5):
        rng = np.random.default_rng(100 + m)
        ctx = WeilRepContext(m)
        for _ in range(50):
            g, h = _random_element(rng), _random_element(rng)
            diff = weil_rep_of(ctx, g * h) - weil_rep_of(ctx, g) @ weil_rep_of(ctx, h)
            res = max(res, float(np.max(np.abs(diff))))
    elapsed = time.perf_counter() - t0
    record(2, res <= 1e-10 and elapsed < 5.0, f"max residual {res:.2e} over 200 pairs, {elapsed:.2f} s")


def test_criterion_03_theta_modularity():
    t0 = time.perf_counter()
    reps = checks.theta_transform([1, 2, 3], truncation=200)
    elapsed = time.perf_counter() - t0
    t_res = max(r.residual for r in reps if r.params["generator"] == "T")
    s_res = max(r.residual for r in reps if r.params["generator"] == "S")
    ok = t_res <= 1e-12 and s_res <= 1e-9 and elapsed < 10.0
    record(3, ok, f"T {t_res:.2e}, S {s_res:.2e}, {elapsed:.2f} s")


def test_criterion_04_heat():
    reps = checks.heat(range(1, 6), points=5, tol=1e-4)
    fd = [r for r in reps if r.params["mode"] == "fd"]
    sym = [r for r in reps if r.params["mode"] == "termwise"]
    ok = all_pass(reps) and all(r.residual == 0 for r in sym)
    record(4, ok, f"fd {worst(fd):.2e} (scaled, {len(fd)} theta series), termwise failures {int(worst(sym))}")


@pytest.mark.parametrize("m,k", [(1, 3), (3, 5)])
def test_criterion_05_casimir_laplacian(m, k):
    cas = checks.casimir(k, m, seed=0, count=20, points=5, tol=1e-4)
    control = [r for r in cas if r.params.get("control")]
    main = [r for r in cas if not r.params.get("control")]
    lap = checks.laplacian(k, m, seed=0, count=20, points=5, tol=1e-4)
    ok = all_pass(cas) and all_pass(lap) and -control[0].residual >= 0.1
    record(
        5,
        ok,
        f"(m,k)=({m},{k}) casimir {worst(main):.2e}, laplacian {worst(lap):.2e}, "
        f"control {-control[0].residual:.3f}",
    )


def test_criterion_06_exact_roundtrips():
    t0 = time.perf_counter()
    reps = []
    for k, m in ((3, 1), (5, 3), (7, 5)):
        reps += checks.roundtrip(k, m, seed=6, count=100)
        reps += checks.iso(k, m, seed=6, count=100)
    elapsed = time.perf_counter() - t0
    failures = int(sum(r.residual for r in reps))
    record(6, failures == 0 and elapsed < 5.0, f"{failures} failures over 600 tables, {elapsed:.2f} s")


def test_criterion_07_decomposition_consistency():
    reps = checks.decomposition_consistency(3, 1, seed=0) + checks.decomposition_consistency(5, 3, seed=0)
    record(7, all_pass(reps), f"max relative residual {worst(reps):.2e}")


def test_criterion_08_cocycle():
    reps = checks.cocycle(3, 1, seed=8, count=25, tol=1e-9)
    record(8, all_pass(reps), f"max relative residual {worst(reps):.2e} over 25 pairs")


def test_criterion_09_incomplete_gamma():
    xs = np.geomspace(0.1, 50, 20)
    rel, rec = 0.0, 0.0
    for twice in (1, -1, -3, -5, 5):
        s = HalfInteger(twice)
        for x in xs:
            x = float(x)
            ref = gamma_quad(float(s), x)
            val = upper_incomplete_gamma(s, x)
            rel = max(rel, abs(val - ref) / abs(ref))
            up = upper_incomplete_gamma(s + 1, x)
            rhs = float(s) * val + x ** float(s) * math.exp(-x)
            rec = max(rec, abs(up - rhs) / max(1.0, abs(up)))
    record(9, rel <= 1e-10 and rec <= 1e-12, f"quadrature rel {rel:.2e}, recurrence {rec:.2e}")


def test_criterion_10_eisenstein():
    taus = checks.THETA_TAUS
    out = {}
    for dual in (True, False):
        t0 = time.perf_counter()
        E = vv_eisenstein_truncated(WeilRepContext(1, dual), "5/2", 200)
        res = {name: vv_transform_residual(E, g, taus, "5/2", E.context) for name, g in (("T", T_TILDE), ("S", S_TILDE))}
        size = max(float(np.max(np.abs(E(t)))) for t in taus)
        out[dual] = (res, time.perf_counter() - t0, size)
    (rd, td, sd), (rn, tn, _) = out[True], out[False]
    ok = max(rd.values()) <= 1e-2 and td < 60 and max(rn.values()) <= 1e-2 and tn < 60
    record(
        10,
        ok,
        f"dual T {rd['T']:.1e} S {rd['S']:.1e} (series vanishes, max |E| {sd:.1e}), {td:.1f} s; "
        f"non-dual T {rn['T']:.1e} S {rn['S']:.1e}, {tn:.1f} s",
    )
