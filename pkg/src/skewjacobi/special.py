"""Scalar special functions and number-theoretic primitives.

Everything here is pure and stateless. Weights are carried as
:class:`HalfInteger` so that integrality tests never touch floating point.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from scipy.special import erfcx, exp1

__all__ = [
    "HalfInteger",
    "exp_e",
    "e_rational",
    "principal_sqrt",
    "principal_power",
    "kronecker_symbol",
    "epsilon_d",
    "upper_incomplete_gamma",
    "upper_incomplete_gamma_scaled",
]

TWO_PI = 2.0 * math.pi
SQRT_PI = math.sqrt(math.pi)

# above this argument the continued fraction replaces the downward recurrence
_CF_THRESHOLD = 2.0


@dataclass(frozen=True, order=True)
class HalfInteger:
    """An element of (1/2)Z stored as twice its value."""

    twice: int

    @classmethod
    def coerce(cls, value) -> "HalfInteger":
        if isinstance(value, HalfInteger):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a weight")
        if isinstance(value, int):
            return cls(2 * value)
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, float):
            if not value.is_integer() and not (2 * value).is_integer():
                raise ValueError(f"{value!r} is not in (1/2)Z")
            return cls(int(round(2 * value)))
        if isinstance(value, Rational):
            twice = Fraction(value) * 2
            if twice.denominator != 1:
                raise ValueError(f"{value!r} is not in (1/2)Z")
            return cls(int(twice))
        raise TypeError(f"cannot interpret {value!r} as a half-integer")

    @property
    def is_integral(self) -> bool:
        return self.twice % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __float__(self) -> float:
        return self.twice / 2

    def __add__(self, other):
        return HalfInteger(self.twice + HalfInteger.coerce(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInteger(self.twice - HalfInteger.coerce(other).twice)

    def __rsub__(self, other):
        return HalfInteger(HalfInteger.coerce(other).twice - self.twice)

    def __neg__(self):
        return HalfInteger(-self.twice)

    def __str__(self) -> str:
        return str(self.twice // 2) if self.is_integral else f"{self.twice}/2"


def exp_e(x) -> complex:
    """Return e(x) = exp(2 pi i x)."""
    return cmath.exp(2j * math.pi * x)


def e_rational(num: int, den: int = 1) -> complex:
    """e(num/den) with the fraction reduced mod 1 before a single trig call.

    Quarter-period points are returned exactly, which keeps Weil matrices
    reproducible bit for bit.
    """
    frac = Fraction(num, den) % 1
    exact = {Fraction(0): 1 + 0j, Fraction(1, 4): 1j, Fraction(1, 2): -1 + 0j, Fraction(3, 4): -1j}
    if frac in exact:
        return exact[frac]
    angle = TWO_PI * frac.numerator / frac.denominator
    return complex(math.cos(angle), math.sin(angle))


def principal_sqrt(x) -> complex:
    """Square root with argument in (-pi/2, pi/2]."""
    x = complex(x)
    if x.imag == 0.0:
        # -0.0 imaginary part would select the lower side of the cut
        x = complex(x.real, 0.0)
    return cmath.sqrt(x)


def principal_power(x, s) -> complex:
    """x**s on the principal branch for s in (1/2)Z."""
    s = HalfInteger.coerce(s)
    return principal_sqrt(x) ** s.twice


def _jacobi_positive(a: int, n: int) -> int:
    # n odd and positive
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker_symbol(c: int, d: int) -> int:
    """The symbol (c/d) for odd d, extended to negative d.

    For d < 0 this is (c/|d|) times -1 when c < 0, which is both the
    Kronecker convention and the one used in half-integral automorphy factors.
    """
    c, d = int(c), int(d)
    if d % 2 == 0:
        raise ValueError(f"kronecker_symbol needs odd d, got {d}")
    value = _jacobi_positive(c, abs(d))
    if d < 0 and c < 0:
        value = -value
    return value


def epsilon_d(d: int) -> complex:
    """epsilon_d = principal sqrt of (-1/d): 1 if d = 1 mod 4, i if d = 3 mod 4."""
    d = int(d)
    if d % 2 == 0:
        raise ValueError(f"epsilon_d needs odd d, got {d}")
    return 1 + 0j if d % 4 == 1 else 1j


def _gamma_cf_scaled(a: float, x: float, tol: float = 1e-16, max_iter: int = 500) -> float:
    """e^x Gamma(a, x) by the modified Lentz continued fraction."""
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, max_iter + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < tol:
            return math.exp(a * math.log(x)) * h
    raise ArithmeticError(f"continued fraction for Gamma({a}, {x}) did not converge")


def upper_incomplete_gamma_scaled(s, x: float) -> float:
    """Return e^x * Gamma(s, x) for s in (1/2)Z and x > 0.

    The scaled form is what expansions need: gamma-type terms always appear
    multiplied by a growing exponential.
    """
    s = HalfInteger.coerce(s)
    x = float(x)
    if not x > 0.0 or not math.isfinite(x):
        raise ValueError(f"incomplete gamma needs a finite x > 0, got {x}")
    target = s.twice
    if s.is_integral:
        base_twice, base = 2, 1.0  # Gamma(1, x) e^x
    else:
        base_twice, base = 1, SQRT_PI * float(erfcx(math.sqrt(x)))
    if target >= base_twice:
        value = base
        t = base_twice
        while t < target:
            sv = t / 2
            # Gamma(s+1) = s Gamma(s) + x^s e^-x, all scaled by e^x
            value = sv * value + math.exp(sv * math.log(x))
            t += 2
        return value
    if x > _CF_THRESHOLD:
        return _gamma_cf_scaled(target / 2, x)
    if s.is_integral:
        value, t = float(exp1(x)) * math.exp(x), 0  # Gamma(0, x) = E1(x)
    else:
        value, t = base, base_twice
    while t > target:
        sv = (t - 2) / 2
        value = (value - math.exp(sv * math.log(x))) / sv
        t -= 2
    return value


def upper_incomplete_gamma(s, x: float) -> float:
    """Gamma(s, x) = int_x^inf e^-t t^(s-1) dt for s in (1/2)Z, x > 0.

    Built from Gamma(1/2, x) = sqrt(pi) erfc(sqrt(x)) or Gamma(1, x) = e^-x
    and the recurrence Gamma(s+1, x) = s Gamma(s, x) + x^s e^-x. For s below
    the base and x > 2 the downward recurrence loses digits to cancellation,
    so a continued fraction is used there instead.
    """
    scaled = upper_incomplete_gamma_scaled(s, x)
    return scaled * math.exp(-float(x))
