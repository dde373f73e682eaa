"""Fourth-order central difference stencils shared by the operator checks."""
from __future__ import annotations

# 5-point central weights, O(h^4)
_D1 = ((-2, 1.0 / 12), (-1, -8.0 / 12), (1, 8.0 / 12), (2, -1.0 / 12))
_D2 = ((-2, -1.0 / 12), (-1, 16.0 / 12), (0, -30.0 / 12), (1, 16.0 / 12), (2, -1.0 / 12))


def d1(f, h: float) -> complex:
    """f'(0) from samples f(j*h)."""
    return sum(w * f(j * h) for j, w in _D1) / h


def d2(f, h: float) -> complex:
    """f''(0) from samples f(j*h)."""
    return sum(w * f(j * h) for j, w in _D2) / (h * h)


def d2_holomorphic(f, h: float) -> complex:
    """Second derivative of a holomorphic f at 0 from f(+-h), f(+-ih).

    f(h) + f(-h) - f(ih) - f(-ih) = 2 h^2 f'' + O(h^6).
    """
    return (f(h) + f(-h) - f(1j * h) - f(-1j * h)) / (2 * h * h)
