"""Computer check that the hand-length tail is nondecreasing in theta.

For moderate ``x`` the tail ``t(x, theta) = 1 - [P^(x-1)]_{co,7o}`` is a
polynomial in theta with rational coefficients.  Scaling by ``D^(x-1)`` (``D``
= 144 for SS, 36 for WS) makes every coefficient an integer, so the sign
conditions on the derivative's coefficients are decided exactly.  Cases the
coefficient conditions do not settle are settled by exact evaluation on a
rational grid plus a root scan.

For large ``x`` the spectral form is used: bounds on ``c_i e_i'``, ``c_i' e_i``
and the eigenvalue ratios over a dense theta grid give a lower bound on the
derivative that is nonnegative from some ``x`` on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dice import Model
from .hand_length import (
    closed_form_eigenvalues,
    mixture_coefficients,
    quartic_coeffs,
    quartic_theta_derivative,
    scaled_chain,
)


def tail_polynomials(model: Model | str, x_max: int):
    """Yield ``(x, coeffs)`` with ``D^(x-1) t(x, theta) = sum coeffs[i] theta^i``.

    Coefficients are Python ints, lowest degree first.
    """
    _, a0, a1 = scaled_chain(model)
    a0 = [[int(v) for v in row[:4]] for row in a0[:4]]
    a1 = [[int(v) for v in row[:4]] for row in a1[:4]]
    # row vector over the transient states, one polynomial per state
    w = [[1], [0], [0], [0]]
    for x in range(2, x_max + 1):
        nxt = []
        for j in range(4):
            acc = [0] * (len(w[0]) + 1)
            for i in range(4):
                c0, c1 = a0[i][j], a1[i][j]
                if c0 == 0 and c1 == 0:
                    continue
                for k, coef in enumerate(w[i]):
                    acc[k] += c0 * coef
                    acc[k + 1] += c1 * coef
            nxt.append(acc)
        w = nxt
        yield x, [sum(col) for col in zip(*w)]


def derivative_coefficients(coeffs: list[int]) -> list[int]:
    return [(i + 1) * coeffs[i + 1] for i in range(len(coeffs) - 1)]


@dataclass
class CoefficientCheck:
    x: int
    coefficients: list[int] = field(repr=False)
    passed: bool
    conditions: set[int]
    failure: str | None = None
    resolved: bool | None = None  # outcome of the separate check when ``passed`` is False


def check_coefficients(x: int, a: list[int]) -> CoefficientCheck:
    """Apply the isolated-/paired-negative coefficient conditions to ``a``."""
    used: set[int] = set()
    n = len(a)

    def coef(i: int) -> int:
        return a[i] if 0 <= i < n else 0

    def fail(reason: str) -> CoefficientCheck:
        return CoefficientCheck(x, a, False, used, reason)

    if coef(0) <= 0:
        return fail("a0 > 0 fails")
    # a negative a1 is acceptable only as the first half of a pair that the
    # two-negative condition at i=2 reaches
    if coef(1) <= 0 and not (coef(1) < 0 and coef(2) < 0 and coef(3) >= 0):
        return fail("a1 > 0 fails")
    for i in range(2, n):
        lo2, lo1, ai, hi = coef(i - 2), coef(i - 1), coef(i), coef(i + 1)
        if lo2 < 0 and lo1 < 0 and ai < 0:
            return fail(f"three consecutive negative coefficients ending at i={i}")
        if ai >= 0:
            continue
        if lo1 > 0 and hi >= 0:
            if lo1 > -ai or lo2 > -ai:
                used.add(1)
                continue
            return fail(f"isolated negative coefficient at i={i} not dominated")
        if lo2 > 0 and lo1 < 0 and hi >= 0:
            if lo2 > -lo1 - ai:
                used.add(2)
                continue
            return fail(f"negative pair at i={i - 1},{i} not dominated")
        if hi < 0:
            # start of a run; judged when the run ends
            continue
        return fail(f"negative coefficient at i={i} not covered")
    return CoefficientCheck(x, a, True, used)


def _eval_scaled(a: list[int], k: int, n: int) -> int:
    """``n^deg * p(k/n)`` in integers."""
    deg = len(a) - 1
    return sum(c * k**i * n ** (deg - i) for i, c in enumerate(a))


def nonnegative_on_unit_interval(a: list[int], grid: int = 10_000) -> bool:
    """Exact grid evaluation plus a sign check around every real root in [0, 1]."""
    if not a:
        return True
    if any(_eval_scaled(a, k, grid) < 0 for k in range(grid + 1)):
        return False
    roots = np.roots(np.array(a[::-1], dtype=float)) if len(a) > 1 else np.array([])
    for r in roots:
        if abs(r.imag) > 1e-9 or not -1e-9 <= r.real <= 1 + 1e-9:
            continue
        for probe in (r.real - 1e-6, r.real + 1e-6):
            if 0 <= probe <= 1:
                from fractions import Fraction

                q = Fraction(probe).limit_denominator(10**9)
                if _eval_scaled(a, q.numerator, q.denominator) < 0:
                    return False
    return True


@dataclass
class AsymptoticBounds:
    """Grid extrema used by the large-x argument."""

    min_c_de: np.ndarray  # min over theta of c_i e_i',  i = 1..4
    min_dc_e: np.ndarray  # min over theta of c_i' e_i
    max_ratio: np.ndarray  # max of e_i/e_1, i = 2..4
    min_ratio: np.ndarray  # min of e_i/e_1, i = 2..4
    threshold_x: int  # lower bound is nonnegative for every x >= threshold_x

    def lower_bound(self, x: int) -> float:
        """Lower bound on the derivative of the tail divided by e_1^(x-2)."""
        out = (x - 1) * self.min_c_de[0] + self.min_dc_e[0]
        for i in range(1, 4):
            part = (x - 1) * self.min_c_de[i] + self.min_dc_e[i]
            if part < 0:
                out += part * self.max_ratio[i - 1] ** (x - 2)
        return float(out)


def spectral_derivatives(model: Model | str, thetas: np.ndarray, h: float = 1e-5):
    """Return ``e, c, de/dtheta, dc/dtheta`` on a theta grid in [0, 1]."""
    model = Model.parse(model)
    t = np.asarray(thetas, dtype=np.longdouble)
    e = closed_form_eigenvalues(model, t, dtype=np.longdouble)
    c = mixture_coefficients(model, t, e)
    # implicit differentiation of the quartic in (z, theta)
    coeffs = quartic_coeffs(model, t[:, None])
    dcoeffs = quartic_theta_derivative(model, t[:, None])
    z = e
    dp_dz = 4 * coeffs.a * z**3 + 3 * coeffs.b * z**2 + 2 * coeffs.c * z + coeffs.d
    dp_dt = dcoeffs.a * z**4 + dcoeffs.b * z**3 + dcoeffs.c * z**2 + dcoeffs.d * z + dcoeffs.e
    de = -dp_dt / dp_dz
    # central differences, one-sided second order at the ends
    tp = np.clip(t + h, 0, 1)
    tm = np.clip(t - h, 0, 1)
    cp = mixture_coefficients(model, tp, closed_form_eigenvalues(model, tp, dtype=np.longdouble))
    cm = mixture_coefficients(model, tm, closed_form_eigenvalues(model, tm, dtype=np.longdouble))
    dc = (cp - cm) / (tp - tm)[:, None]
    for end, sgn in ((0, 1), (len(t) - 1, -1)):
        if t[end] in (0, 1):
            t1, t2 = t[end] + sgn * h, t[end] + 2 * sgn * h
            c1 = mixture_coefficients(model, t1, closed_form_eigenvalues(model, t1, dtype=np.longdouble))
            c2 = mixture_coefficients(model, t2, closed_form_eigenvalues(model, t2, dtype=np.longdouble))
            dc[end] = sgn * (-3 * c[end] + 4 * c1 - c2) / (2 * h)
    return (np.asarray(e, float), np.asarray(c, float), np.asarray(de, float),
            np.asarray(dc, float))


def asymptotic_bounds(model: Model | str, grid: int = 10_000, x_limit: int = 10_000) -> AsymptoticBounds:
    thetas = np.linspace(0.0, 1.0, grid)
    e, c, de, dc = spectral_derivatives(model, thetas)
    ratio = e[:, 1:] / e[:, :1]
    b = AsymptoticBounds(
        min_c_de=(c * de).min(axis=0),
        min_dc_e=(dc * e).min(axis=0),
        max_ratio=ratio.max(axis=0),
        min_ratio=ratio.min(axis=0),
        threshold_x=0,
    )
    threshold = x_limit + 1
    for x in range(x_limit, 2, -1):
        if b.lower_bound(x) < 0:
            break
        threshold = x
    b.threshold_x = threshold
    return b


@dataclass
class MonotonicityReport:
    model: Model
    x_max: int
    checks: list[CoefficientCheck]
    bounds: AsymptoticBounds | None

    @property
    def exceptions(self) -> list[int]:
        return [c.x for c in self.checks if not c.passed]

    @property
    def all_resolved(self) -> bool:
        return all(c.passed or c.resolved for c in self.checks)

    @property
    def covers_all_x(self) -> bool:
        """Small-x exact checks and the large-x bound together cover every x >= 3."""
        return (self.all_resolved and self.bounds is not None
                and self.bounds.threshold_x <= self.x_max + 1)

    def summary_lines(self) -> list[str]:
        lines = [f"model {self.model.value}: coefficient checks for x = 3..{self.x_max}"]
        for c in self.checks:
            if c.passed:
                continue
            state = "resolved" if c.resolved else "NOT resolved"
            lines.append(f"  x={c.x}: {c.failure}; separate check {state}")
        n_pass = sum(c.passed for c in self.checks)
        lines.append(f"  {n_pass}/{len(self.checks)} pass by coefficient conditions")
        if self.bounds is not None:
            lines.append(f"  large-x bound nonnegative for x >= {self.bounds.threshold_x}")
        lines.append(f"  monotone for every x >= 3: {self.covers_all_x}")
        return lines


def verify_tail_monotonicity(model: Model | str, x_max: int = 75,
                             with_bounds: bool = True) -> MonotonicityReport:
    model = Model.parse(model)
    if x_max > 200:
        raise ValueError("x_max is limited to 200")
    checks = []
    for x, coeffs in tail_polynomials(model, x_max):
        if x < 3:
            continue
        a = derivative_coefficients(coeffs)
        while a and a[-1] == 0:
            a.pop()
        check = check_coefficients(x, a)
        if not check.passed:
            check.resolved = nonnegative_on_unit_interval(a)
        checks.append(check)
    bounds = asymptotic_bounds(model) if with_bounds else None
    return MonotonicityReport(model, x_max, checks, bounds)
