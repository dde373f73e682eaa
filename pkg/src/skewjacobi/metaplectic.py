"""The metaplectic group Mp2(Z) and the Weil representation on C[Z/2mZ].

Elements of Mp2(Z) are pairs (A, phi) with phi(tau)^2 = c tau + d. Since
phi is continuous and nonvanishing on the upper half-plane it equals
+-principal_sqrt(c tau + d) everywhere, so one bit records it. Branches are
settled by evaluating at the base point tau = 2i.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from .exceptions import SupportViolation
from .scalar_maass import ScalarMaassExpansion, as_tau
from .special import HalfInteger, e_rational, principal_power, principal_sqrt

__all__ = [
    "MetaplecticElement",
    "T_TILDE",
    "S_TILDE",
    "Z_TILDE",
    "mp2_compose",
    "decompose_sl2_word",
    "word_product",
    "WeilRepContext",
    "weil_rep_of",
    "VectorValuedExpansion",
    "vv_eval",
    "vv_transform_residual",
    "EisensteinSeries",
    "vv_eisenstein_truncated",
]

BASE_POINT = 2j


def _mat_mul(x, y):
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _mobius(mat, tau):
    a, b, c, d = mat
    return (a * tau + b) / (c * tau + d)


@dataclass(frozen=True)
class MetaplecticElement:
    """(A, phi) with phi = (-1)^branch * principal_sqrt(c tau + d)."""

    matrix: tuple[int, int, int, int]
    branch: int = 0

    def __post_init__(self):
        mat = tuple(int(x) for x in np.asarray(self.matrix).reshape(4))
        if mat[0] * mat[3] - mat[1] * mat[2] != 1:
            raise ValueError(f"{mat} does not have determinant 1")
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "branch", int(self.branch) % 2)

    def phi(self, tau) -> complex:
        _, _, c, d = self.matrix
        root = principal_sqrt(c * tau + d)
        return -root if self.branch else root

    def act(self, tau) -> complex:
        return _mobius(self.matrix, tau)

    def __mul__(self, other: "MetaplecticElement") -> "MetaplecticElement":
        return mp2_compose(self, other)

    def inverse(self) -> "MetaplecticElement":
        a, b, c, d = self.matrix
        inv = (d, -b, -c, a)
        # (A, phi)^-1 = (A^-1, 1/phi(A^-1 tau))
        value = 1.0 / self.phi(_mobius(inv, BASE_POINT))
        return MetaplecticElement(inv, _branch_of(inv, value))

    def __pow__(self, n: int) -> "MetaplecticElement":
        result = IDENTITY
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            result = result * base
        return result

    @classmethod
    def lift(cls, matrix, branch: int = 0) -> "MetaplecticElement":
        return cls(tuple(np.asarray(matrix).reshape(4)), branch)


def _branch_of(mat, value: complex) -> int:
    _, _, c, d = mat
    root = principal_sqrt(c * BASE_POINT + d)
    return 0 if abs(value - root) <= abs(value + root) else 1


def mp2_compose(a: MetaplecticElement, b: MetaplecticElement) -> MetaplecticElement:
    """(A, phi)(B, psi) = (AB, phi(B tau) psi(tau))."""
    mat = _mat_mul(a.matrix, b.matrix)
    value = a.phi(b.act(BASE_POINT)) * b.phi(BASE_POINT)
    return MetaplecticElement(mat, _branch_of(mat, value))


IDENTITY = MetaplecticElement((1, 0, 0, 1))
T_TILDE = MetaplecticElement((1, 1, 0, 1))
S_TILDE = MetaplecticElement((0, -1, 1, 0))
Z_TILDE = mp2_compose(S_TILDE, S_TILDE)


def decompose_sl2_word(matrix) -> list[tuple[str, int]]:
    """Write an SL2(Z) matrix as a word in S and powers of T.

    Returns [(gen, exponent), ...] with gen in {"S", "T"} whose ordered
    product is the matrix exactly. S only ever appears with exponent 1.
    Euclidean reduction of the first column: M = T^n S M' with
    M' = S^-1 T^-n M, until the lower-left entry vanishes.
    """
    a, b, c, d = (int(x) for x in np.asarray(matrix).reshape(4))
    if a * d - b * c != 1:
        raise ValueError("matrix must have determinant 1")
    word: list[tuple[str, int]] = []
    while c != 0:
        n = a // c
        a, b = a - n * c, b - n * d
        # S^-1 = [[0, 1], [-1, 0]]
        a, b, c, d = c, d, -a, -b
        if n:
            word.append(("T", n))
        word.append(("S", 1))
    # now [[a, b], [0, d]] with a = d = +-1
    if a == -1:
        word += [("S", 1), ("S", 1)]
        b = -b
    if b:
        word.append(("T", b))
    return word


def word_product(word: Sequence[tuple[str, int]]) -> MetaplecticElement:
    """The lift to Mp2(Z) obtained by multiplying T~ and S~ along a word."""
    result = IDENTITY
    for gen, n in word:
        if gen == "S":
            for _ in range(n):
                result = result * S_TILDE
        else:
            result = result * MetaplecticElement((1, n, 0, 1))
    return result


@dataclass(frozen=True)
class WeilRepContext:
    """rho_m on C[Z/2mZ] with Q(l) = l^2/4m, or its complex conjugate when dual."""

    m: int
    dual: bool = False

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be positive")

    @property
    def size(self) -> int:
        return 2 * self.m

    @property
    def sigma(self) -> int:
        """Exponent-class sign: component l carries exponents in Z + sigma*Q(l)."""
        return -1 if self.dual else 1

    @cached_property
    def T_matrix(self) -> np.ndarray:
        m = self.m
        diag = [e_rational(l * l, 4 * m) for l in range(2 * m)]
        mat = np.diag(np.array(diag, dtype=complex))
        if self.dual:
            mat = mat.conj()
        mat.setflags(write=False)
        return mat

    @cached_property
    def S_matrix(self) -> np.ndarray:
        m = self.m
        scale = 1.0 / principal_sqrt(2j * m)
        mat = np.array(
            [[scale * e_rational(-l * lp, 2 * m) for lp in range(2 * m)] for l in range(2 * m)],
            dtype=complex,
        ).T  # column l is the image of e_l
        if self.dual:
            mat = mat.conj()
        mat.setflags(write=False)
        return mat

    @cached_property
    def T_inverse(self) -> np.ndarray:
        mat = self.T_matrix.conj().T.copy()
        mat.setflags(write=False)
        return mat

    @cached_property
    def S_inverse(self) -> np.ndarray:
        mat = self.S_matrix.conj().T.copy()
        mat.setflags(write=False)
        return mat

    def T_power(self, n: int) -> np.ndarray:
        diag = np.diag(self.T_matrix) ** n
        return np.diag(diag)

    @cached_property
    def center_square(self) -> np.ndarray:
        """rho of (I, -1) = Z~^2, the element flipping the branch bit."""
        s2 = self.S_matrix @ self.S_matrix
        return s2 @ s2


def _word_matrix(ctx: WeilRepContext, word) -> np.ndarray:
    out = np.eye(ctx.size, dtype=complex)
    for gen, n in word:
        out = out @ (ctx.S_matrix if gen == "S" else ctx.T_power(n))
    return out


def weil_rep_of(ctx: WeilRepContext, g: MetaplecticElement) -> np.ndarray:
    """rho(g) as a 2m x 2m matrix, columns indexed by the basis e_l."""
    word = decompose_sl2_word(g.matrix)
    mat = _word_matrix(ctx, word)
    if word_product(word).branch != g.branch:
        mat = mat @ ctx.center_square
    return mat


@dataclass(frozen=True)
class VectorValuedExpansion:
    """A C[Z/2mZ]-valued expansion: one scalar table per class, exponents in (1/4m)Z."""

    weight: HalfInteger
    context: WeilRepContext
    components: tuple[ScalarMaassExpansion, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "weight", HalfInteger.coerce(self.weight))
        ctx = self.context
        comps = tuple(self.components)
        if not comps:
            comps = tuple(
                ScalarMaassExpansion(self.weight, 4 * ctx.m, 4 * ctx.m) for _ in range(ctx.size)
            )
        if len(comps) != ctx.size:
            raise ValueError(f"need {ctx.size} components, got {len(comps)}")
        mod = 4 * ctx.m
        for gamma, comp in enumerate(comps):
            if comp.denom != mod:
                raise ValueError("components must have exponents in (1/4m)Z")
            cls = (ctx.sigma * gamma * gamma) % mod
            for n in comp.support():
                if n % mod != cls:
                    raise SupportViolation(
                        f"component {gamma} has exponent {n}/{mod}, expected class {cls} mod {mod}"
                    )
        object.__setattr__(self, "components", comps)

    def __call__(self, tau) -> np.ndarray:
        return vv_eval(self, tau)


def vv_eval(F: VectorValuedExpansion, tau) -> np.ndarray:
    return np.array([comp(tau) for comp in F.components], dtype=complex)


def vv_transform_residual(
    F: Callable[[complex], np.ndarray],
    g: MetaplecticElement,
    samples: Iterable,
    weight=None,
    context: WeilRepContext | None = None,
) -> float:
    """max ||F(g tau) - phi(tau)^(2k) rho(g) F(tau)||_inf / (1 + ||F(tau)||_inf)."""
    if isinstance(F, VectorValuedExpansion):
        weight = F.weight if weight is None else weight
        context = F.context if context is None else context
    if weight is None or context is None:
        raise ValueError("weight and context are required for a bare callable")
    weight = HalfInteger.coerce(weight)
    rho = weil_rep_of(context, g)
    worst = 0.0
    for tau in samples:
        tau = as_tau(tau)
        ft = np.asarray(F(tau))
        lhs = np.asarray(F(g.act(tau)))
        rhs = g.phi(tau) ** weight.twice * (rho @ ft)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))) / (1 + float(np.max(np.abs(ft)))))
    return worst


class EisensteinSeries:
    """Box-truncated vector-valued Eisenstein series attached to e_0.

    E(tau) = 1/2 sum_{(c,d) coprime, |c|,|d| <= C} phi_g(tau)^(-2k) rho(g)^-1 e_0
    with g the word lift of the Euclidean completion of (c, d). The value
    does not depend on the lift: changing g by T~^n or by (I, -1) leaves
    each term unchanged.
    """

    def __init__(self, ctx: WeilRepContext, weight, bound: int):
        weight = HalfInteger.coerce(weight)
        if weight.twice <= 4:
            raise ValueError("Eisenstein series needs weight > 2")
        self.context = ctx
        self.weight = weight
        self.bound = int(bound)
        s_inv = ctx.S_inverse
        t_diag_inv = np.diag(ctx.T_inverse)
        cs, ds, signs, vecs = [], [], [], []
        for c in range(-self.bound, self.bound + 1):
            for d in range(-self.bound, self.bound + 1):
                if math.gcd(c, d) != 1:
                    continue
                a, b = _complete_row(c, d)
                word = decompose_sl2_word((a, b, c, d))
                # rho(g)^-1 e_0 = rho(w_k)^-1 ... rho(w_1)^-1 e_0
                vec = np.zeros(ctx.size, dtype=complex)
                vec[0] = 1.0
                for gen, n in word:
                    vec = s_inv @ vec if gen == "S" else t_diag_inv**n * vec
                cs.append(c)
                ds.append(d)
                signs.append(-1.0 if _word_branch(word) else 1.0)
                vecs.append(vec)
        self._c = np.array(cs, dtype=float)
        self._d = np.array(ds, dtype=float)
        self._sign = np.array(signs)
        self._vecs = np.array(vecs)

    def __call__(self, tau) -> np.ndarray:
        tau = as_tau(tau)
        roots = np.sqrt(self._c * tau + self._d + 0j)
        # np.sqrt is principal except on the negative real axis (c = 0, d = -1)
        roots = np.where((self._c == 0) & (self._d < 0), 1j, roots)
        phi = self._sign * roots
        weights = phi ** (-self.weight.twice)
        return 0.5 * (weights @ self._vecs)


def _word_branch(word) -> int:
    """Branch bit of the word lift, tracked with plain complex arithmetic."""
    mat = (1, 0, 0, 1)
    sign = 1.0
    for gen, n in word:
        if gen == "S":
            # phi_{gS}(t0) = phi_g(S t0) * sqrt(t0)
            a, b, c, d = mat
            value = sign * principal_sqrt(c * (-1 / BASE_POINT) + d) * principal_sqrt(BASE_POINT)
            mat = (b, -a, d, -c)
        else:
            a, b, c, d = mat
            value = sign * principal_sqrt(c * (BASE_POINT + n) + d)
            mat = (a, a * n + b, c, c * n + d)
        sign = -1.0 if _branch_of(mat, value) else 1.0
    return 1 if sign < 0 else 0


def _complete_row(c: int, d: int) -> tuple[int, int]:
    """Some (a, b) with a d - b c = 1."""
    if c == 0:
        return d, 0  # d = +-1
    g, x, y = _ext_gcd(d, c)  # x d + y c = 1
    return x, -y


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def vv_eisenstein_truncated(ctx: WeilRepContext, weight, bound: int) -> EisensteinSeries:
    return EisensteinSeries(ctx, weight, bound)
