"""Distribution of the shooter's hand length.

The hand is an absorbing Markov chain on the states
``co, p4-10, p5-9, p6-8, 7o``.  Its length ``L`` (rolls up to and including
the seven-out) is a signed mixture of four geometric laws whose success
probabilities are one minus the non-unit eigenvalues of the transition matrix.

Two routes are provided and kept independent of each other: the closed-form
eigenvalues/coefficients (:func:`eigen_mixture`) and plain matrix powers
(:func:`hand_tail_oracle`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import mpmath
import numpy as np

from .dice import (
    POINTS,
    Model,
    _scalars,
    come_out_pmf,
    point_set,
    total_pmf,
)

STATES = ("co", "p4-10", "p5-9", "p6-8", "7o")

# no-control chain, in 36ths
_FAIR = np.array([
    [12, 6, 8, 10, 0],
    [3, 27, 0, 0, 6],
    [4, 0, 26, 0, 6],
    [5, 0, 0, 25, 6],
    [0, 0, 0, 0, 36],
])
# perfect-control chains: SS in 16ths, WS in 36ths
_SS_CONTROL = np.array([
    [4, 2, 4, 6, 0],
    [2, 12, 0, 0, 2],
    [2, 0, 12, 0, 2],
    [3, 0, 0, 11, 2],
    [0, 0, 0, 0, 16],
])
_WS_CONTROL = np.array([
    [14, 4, 8, 10, 0],
    [4, 30, 0, 0, 2],
    [4, 0, 30, 0, 2],
    [6, 0, 0, 28, 2],
    [0, 0, 0, 0, 36],
])


def scaled_chain(model: Model | str) -> tuple[int, np.ndarray, np.ndarray]:
    """Integer form ``(D, A0, A1)`` with ``D * P(theta) = A0 + theta * A1``."""
    if Model.parse(model) is Model.SS:
        a0 = 4 * _FAIR
        a1 = 9 * _SS_CONTROL - 4 * _FAIR
        return 144, a0, a1
    return 36, _FAIR.copy(), _WS_CONTROL - _FAIR


@dataclass(frozen=True)
class HandChain:
    P: np.ndarray

    @property
    def Q(self) -> np.ndarray:
        return self.P[:4, :4]

    @property
    def M(self) -> np.ndarray:
        """Fundamental matrix (I - Q)^-1."""
        if self.P.dtype == object:
            return _exact_inverse(np.identity(4, dtype=object) * Fraction(1) - self.Q)
        return np.linalg.inv(np.identity(4) - self.Q)


def _exact_inverse(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    aug = np.concatenate([a.copy(), np.identity(n, dtype=object) * Fraction(1)], axis=1)
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r, col] != 0)
        aug[[col, pivot]] = aug[[pivot, col]]
        aug[col] = aug[col] / aug[col, col]
        for r in range(n):
            if r != col and aug[r, col] != 0:
                aug[r] = aug[r] - aug[r, col] * aug[col]
    return aug[:, n:]


def transition_matrix(model: Model | str, theta) -> HandChain:
    """Transition matrix as the theta-mixture of the no-control and perfect-control chains."""
    model = Model.parse(model)
    theta, one, dtype = _scalars(theta)
    denom, a0, a1 = scaled_chain(model)
    p = (a0.astype(dtype) + theta * a1.astype(dtype)) * (one / denom)
    return HandChain(p)


def assemble_transition_matrix(model: Model | str, theta) -> HandChain:
    """Build the chain directly from the dice-total laws of the optimal sets."""
    model = Model.parse(model)
    theta, one, dtype = _scalars(theta)
    p = np.zeros((5, 5), dtype=dtype)
    if dtype is object:
        p[:] = Fraction(0)
    co = come_out_pmf(model, theta)
    state_of = {4: 1, 10: 1, 5: 2, 9: 2, 6: 3, 8: 3}
    p[0, 0] = co[7 - 2] + co[11 - 2] + co[2 - 2] + co[3 - 2] + co[12 - 2]
    for x in POINTS:
        p[0, state_of[x]] += co[x - 2]
    for x in (4, 5, 6):
        s = state_of[x]
        pt = total_pmf(model, point_set(model, x), theta)
        p[s, 0] = pt[x - 2]
        p[s, 4] = pt[7 - 2]
        p[s, s] = one - pt[x - 2] - pt[7 - 2]
    p[4, 4] = one
    return HandChain(p)


def mean_hand_length(model: Model | str, theta):
    model = Model.parse(model)
    t, _, _ = _scalars(theta)
    if model is Model.SS:
        return 24 * (8912 + 132 * t - 54 * t**2 + t**3) / (
            (4 - t) * (8 + t) * (28 - t) ** 2)
    return 9 * (557 - 281 * t + 30 * t**2) / ((3 - 2 * t) * (196 - 85 * t + 6 * t**2))


def var_hand_length(model: Model | str, theta):
    model = Model.parse(model)
    t, _, _ = _scalars(theta)
    if model is Model.SS:
        poly = (27441664 + 4461696 * t - 441024 * t**2 - 34064 * t**3
                + 5652 * t**4 - 174 * t**5 + t**6)
        return 24 * (44 + t) * poly / ((4 - t) ** 2 * (8 + t) ** 2 * (28 - t) ** 4)
    poly = (5306103 - 5622318 * t + 1933097 * t**2 - 153376 * t**3
            - 39214 * t**4 + 7176 * t**5 - 360 * t**6)
    return 9 * poly / ((3 - t) * (3 - 2 * t) ** 2 * (196 - 85 * t + 6 * t**2) ** 2)


def mean_var_from_chain(chain: HandChain):
    """Absorption-time mean and variance from the fundamental matrix."""
    m = chain.M
    ones = np.ones(4, dtype=m.dtype)
    if m.dtype == object:
        ones = ones * Fraction(1)
    t = m.dot(ones)
    second = (2 * m - np.identity(4, dtype=m.dtype)).dot(t)
    return t[0], second[0] - t[0] ** 2


class QuarticCoeffs(NamedTuple):
    a: float
    b: float
    c: float
    d: float
    e: float


def quartic_coeffs(model: Model | str, theta) -> QuarticCoeffs:
    """Coefficients of the quartic whose roots are the non-unit eigenvalues."""
    model = Model.parse(model)
    t = theta
    if model is Model.SS:
        return QuarticCoeffs(
            2985984 + 0 * t,
            -186624 * (40 - t),
            288 * (22904 - 1870 * t - 55 * t**2),
            -12 * (195424 - 40920 * t - 2124 * t**2 - 19 * t**3),
            252800 - 144032 * t - 10176 * t**2 - 176 * t**3 - t**4,
        )
    return QuarticCoeffs(
        209952 + 0 * t,
        -34992 * (15 + 2 * t),
        162 * (2863 + 786 * t + 55 * t**2),
        -9 * (18321 + 7926 * t + 1163 * t**2 + 58 * t**3),
        17775 + 11457 * t + 2768 * t**2 + 298 * t**3 + 12 * t**4,
    )


def quartic_theta_derivative(model: Model | str, theta):
    """Partial derivatives in theta of the quartic coefficients."""
    model = Model.parse(model)
    t = theta
    if model is Model.SS:
        return QuarticCoeffs(
            0 * t,
            186624 + 0 * t,
            288 * (-1870 - 110 * t),
            -12 * (-40920 - 4248 * t - 57 * t**2),
            -144032 - 20352 * t - 528 * t**2 - 4 * t**3,
        )
    return QuarticCoeffs(
        0 * t,
        -69984 + 0 * t,
        162 * (786 + 110 * t),
        -9 * (7926 + 2326 * t + 174 * t**2),
        11457 + 5536 * t + 894 * t**2 + 48 * t**3,
    )


class _NumpyOps:
    @staticmethod
    def sqrt(x, scale):
        # radicands that are zero in exact arithmetic can round slightly negative
        return np.sqrt(np.where((x < 0) & (x > -1e-10 * scale), 0.0, x))

    @staticmethod
    def arccos(x):
        return np.arccos(np.clip(x, -1, 1))

    cos = staticmethod(np.cos)
    stack = staticmethod(lambda xs: np.stack(xs, axis=-1))


class _MpOps:
    @staticmethod
    def sqrt(x, scale):
        if x < 0 and x > -1e-30 * scale:
            x = mpmath.mpf(0)
        return mpmath.sqrt(x) if x >= 0 else mpmath.mpf("nan")

    @staticmethod
    def arccos(x):
        return mpmath.acos(max(min(x, 1), -1))

    cos = staticmethod(mpmath.cos)
    stack = staticmethod(lambda xs: np.array(xs, dtype=object))


MP_DIGITS = 40


def closed_form_eigenvalues(model: Model | str, theta, dtype=float) -> np.ndarray:
    """Trig-radical eigenvalues, shape ``theta.shape + (4,)``, descending.

    ``dtype=object`` evaluates a scalar theta in mpmath (caller sets precision).
    """
    model = Model.parse(model)
    if dtype is object:
        ops, t = _MpOps, mpmath.mpf(theta)
    else:
        ops, t = _NumpyOps, np.asarray(theta, dtype=dtype)
    with np.errstate(invalid="ignore"):
        if model is Model.SS:
            q = (727417856 + 1090622976 * t + 592227264 * t**2 + 146776064 * t**3
                 + 18260400 * t**4 + 1567554 * t**5 + 85295 * t**6)
            r = 2 * (314528 + 263680 * t + 74334 * t**2 + 9592 * t**3 + 527 * t**4)
            s = (8 + t) * (22784 + 13520 * t + 2171 * t**2)
            tt = 22336 + 10480 * t + 1123 * t**2
            alpha = 2 * ops.sqrt(r, r) * ops.cos(ops.arccos(-q / (2 * r * ops.sqrt(r, r))) / 3)
            centre, scale, k_alpha, k_s = 5 / (8 + 0 * t) - t / 64, 576, 8, 6
        else:
            q = (710369 + 258462 * t - 63957 * t**2 - 5832 * t**3 + 6027 * t**4
                 + 522 * t**5 - 55 * t**6)
            r = 9829 + 1356 * t - 238 * t**2 + 12 * t**3 + t**4
            s = 1068 + 246 * t + 5 * t**2 - 2 * t**3
            tt = 349 + 48 * t - 2 * t**2
            alpha = 2 * ops.sqrt(r, r) * ops.cos(ops.arccos(-q / (r * ops.sqrt(r, r))) / 3)
            centre, scale, k_alpha, k_s = 5 / (8 + 0 * t) + t / 12, 72, 1, 2
        root_first = ops.sqrt((tt + k_alpha * alpha) / 3, tt)
        root_ratio = ops.sqrt(3 / (tt + k_alpha * alpha), 1)
        out = []
        for u, v in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            inner = (2 * tt - k_alpha * alpha) / 3 - k_s * u * s * root_ratio
            out.append(centre + u * root_first / scale + v * ops.sqrt(inner, tt) / scale)
    return ops.stack(out)


def numeric_eigenvalues(model: Model | str, theta, polish_digits: int | None = None) -> np.ndarray:
    """Real roots of the characteristic quartic, descending, Newton-polished.

    With ``polish_digits`` the roots are refined in mpmath and returned as an
    object array of mpf values.
    """
    coeffs = quartic_coeffs(model, float(theta))
    roots = np.sort(np.roots(np.array(coeffs, dtype=float)).real)[::-1]
    if polish_digits is None:
        deriv = np.polyder(np.array(coeffs, dtype=float))
        for _ in range(3):
            step = np.polyval(coeffs, roots) / np.polyval(deriv, roots)
            roots = roots - np.where(np.isfinite(step), step, 0.0)
        return roots
    with mpmath.workdps(polish_digits):
        exact = list(quartic_coeffs(model, mpmath.mpf(float(theta))))
        polished = []
        for r0 in roots:
            z = mpmath.mpf(float(r0))
            for _ in range(8):
                value, slope = mpmath.polyval(exact, z, derivative=True)
                z -= value / slope
            polished.append(z)
    return np.array(polished, dtype=object)


def mixture_coefficients(model: Model | str, theta, e: np.ndarray) -> np.ndarray:
    """Coefficients c_1..c_4 for eigenvalues ``e`` (last axis, descending)."""
    model = Model.parse(model)
    t = np.asarray(theta, dtype=e.dtype)
    e1, e2, e3, e4 = (e[..., i] for i in range(4))
    rotations = ((e1, e2, e3, e4), (e2, e3, e4, e1), (e3, e4, e1, e2), (e4, e1, e2, e3))
    out = []
    if model is Model.SS:
        for x1, x2, x3, x4 in rotations:
            num = ((3 - 4 * x1) * (26 + t - 36 * x1) * (100 - t - 144 * x1)
                   * (20 + t - 24 * x2) * (20 + t - 24 * x3) * (20 + t - 24 * x4))
            den = (1152 * (2 + t) * (8 + t) * (20 + 7 * t)
                   * (x2 - x1) * (x3 - x1) * (x4 - x1))
            out.append(num / den)
        return np.stack(out, axis=-1)
    sym = (e1**2 * e2**3 * e3 + e1**3 * e2 * e3**2 + e1 * e2**2 * e3**3
           + e1**3 * e2**2 * e4 + e1**2 * e2 * e4**3 + e1 * e2**3 * e4**2
           + e1**2 * e3**3 * e4 + e1**3 * e3 * e4**2 + e1 * e3**2 * e4**3
           + e2**3 * e3**2 * e4 + e2**2 * e3 * e4**3 + e2 * e3**3 * e4**2)
    d = (3 + t) * (5 + t) * (544195584 * sym - (
        448331256 + 349805385 * t + 113332133 * t**2 + 19480471 * t**3
        + 1870151 * t**4 + 94864 * t**5 + 1980 * t**6))
    for sign, (x1, x2, x3, x4) in zip((1, -1, 1, -1), rotations):
        num = (69984 * (9 + t - 12 * x1) * (13 + 2 * t - 18 * x1) * (25 + 3 * t - 36 * x1)
               * (x2 - x3) * (x2 - x4) * (x3 - x4)
               * (15 + 2 * t - 18 * x2) * (15 + 2 * t - 18 * x3) * (15 + 2 * t - 18 * x4))
        out.append(sign * num / d)
    return np.stack(out, axis=-1)


@dataclass(frozen=True)
class GeometricMixture:
    """``P(L >= x) = sum_i c_i e_i^(x-1)`` for ``x >= 2``."""

    e: np.ndarray
    c: np.ndarray

    def tail(self, x):
        x = _check_length(x)
        return (self.c * self.e ** (x[..., None] - 1)).sum(axis=-1)

    def pmf(self, x):
        x = _check_length(x)
        return (self.c * self.e ** (x[..., None] - 1) * (1 - self.e)).sum(axis=-1)

    def total_mass(self) -> float:
        return float(np.sum(self.c * self.e))

    def mean(self) -> float:
        return float(1 + np.sum(self.c * self.e / (1 - self.e)))

    def variance(self) -> float:
        e, c = self.e, self.c
        second = 1 + np.sum(c * (2 * e / (1 - e) ** 2 + e / (1 - e)))
        return float(second - self.mean() ** 2)


def _check_length(x) -> np.ndarray:
    x = np.asarray(x)
    if np.any(x < 2):
        raise ValueError("hand lengths start at 2")
    return x.astype(float)


def check_mixture(m: GeometricMixture, strict_signs: bool = True) -> None:
    e, c = m.e, m.c
    ok = (
        np.all(np.isfinite(e)) and np.all(np.isfinite(c))
        and 1 > e[0] > e[1] > e[2] > e[3] > 0
        and abs(c.sum() - 1) < 1e-10
        and abs((c * e).sum() - 1) < 1e-10
        and c[0] > 0
    )
    if ok and strict_signs:
        ok = c[1] < 0 and c[2] < 0 and c[3] < 0
    if not ok:
        raise ArithmeticError(f"geometric mixture invariants failed: e={e}, c={c}")


@lru_cache(maxsize=4096)
def _mixture_cached(model: Model, theta: float, method: str) -> GeometricMixture:
    # high precision: the WS coefficient denominator cancels about six digits
    with mpmath.workdps(MP_DIGITS):
        if method == "closed":
            e = closed_form_eigenvalues(model, theta, dtype=object)
            if not all(mpmath.isfinite(x) for x in e) or not all(
                    e[i] > e[i + 1] for i in range(3)):
                e = numeric_eigenvalues(model, theta, polish_digits=MP_DIGITS)
        elif method == "numeric":
            e = numeric_eigenvalues(model, theta, polish_digits=MP_DIGITS)
        else:
            raise ValueError(f"unknown eigenvalue method {method!r}")
        c = mixture_coefficients(model, mpmath.mpf(theta), e)
        e = np.array([float(x) for x in e])
        c = np.array([float(x) for x in c])
    e.setflags(write=False)
    c.setflags(write=False)
    m = GeometricMixture(e, c)
    # at theta = 1 one coefficient touches zero
    check_mixture(m, strict_signs=theta < 1)
    return m


def eigen_mixture(model: Model | str, theta, method: str = "closed") -> GeometricMixture:
    theta, _, _ = _scalars(theta)
    return _mixture_cached(Model.parse(model), float(theta), method)


def mixture_batch(model: Model | str, thetas) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form ``(e, c)`` for an array of thetas, unchecked; used by the MLE."""
    thetas = np.asarray(thetas, dtype=float)
    e = closed_form_eigenvalues(model, thetas)
    return e, mixture_coefficients(model, thetas, e)


def hand_pmf(model: Model | str, theta, x):
    return eigen_mixture(model, theta).pmf(x)


def hand_tail(model: Model | str, theta, x):
    return eigen_mixture(model, theta).tail(x)


def hand_tail_oracle(model: Model | str, theta, x: int):
    """``1 - [P^(x-1)]_{co,7o}`` by repeated squaring; exact for Fraction theta."""
    if x < 2:
        raise ValueError("hand lengths start at 2")
    p = transition_matrix(model, theta).P
    power = _matrix_power(p, x - 1)
    return 1 - power[0, 4]


def _matrix_power(p: np.ndarray, k: int) -> np.ndarray:
    result = np.identity(p.shape[0], dtype=p.dtype)
    if p.dtype == object:
        result = result * Fraction(1)
    base = p
    while k:
        if k & 1:
            result = result.dot(base)
        base = base.dot(base)
        k >>= 1
    return result
