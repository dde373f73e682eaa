"""Independent reference computations used only by the tests."""
import math

from scipy.integrate import quad


def gamma_quad(s: float, x: float) -> float:
    """Gamma(s, x) by adaptive quadrature of e^-x int_0^oo (x+u)^(s-1) e^-u du."""
    val, _ = quad(lambda u: (x + u) ** (s - 1) * math.exp(-u), 0, math.inf, epsabs=0, epsrel=1e-13, limit=200)
    return math.exp(-x) * val


def theta_direct(m: int, ell: int, tau: complex, z: complex = 0j, rmax: int = 60) -> complex:
    import cmath

    return sum(
        cmath.exp(2j * math.pi * (r * r * tau / (4 * m) + r * z))
        for r in range(-rmax, rmax + 1)
        if (r - ell) % (2 * m) == 0
    )
