"""Likelihood, maximum likelihood and the likelihood-ratio test for hand lengths."""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .dice import Model
from .hand_length import eigen_mixture, mixture_batch
from .power import normal_quantile, power_lbar
from .reparam import rho2_inv
from .simulation import HandSample, RngStream, simulate_hands

GRID_POINTS = 33


def _as_sample(sample) -> HandSample:
    return sample if isinstance(sample, HandSample) else HandSample.from_lengths(sample)


def _loglik_from_mixture(e: np.ndarray, c: np.ndarray, xs: np.ndarray, cs: np.ndarray) -> np.ndarray:
    """Log-likelihood for a batch of mixtures ``e, c`` of shape (..., 4)."""
    powers = e[..., None, :] ** (xs[:, None] - 1)
    pmf = np.einsum("...k,...xk->...x", c * (1 - e), powers)
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = np.where(pmf > 0, np.log(np.where(pmf > 0, pmf, 1.0)), -np.inf)
    return (logs * cs).sum(axis=-1)


def log_likelihood(model: Model | str, sample, theta) -> float:
    """Sum over observed lengths of ``count * log f(length, theta)``."""
    xs, cs = _as_sample(sample).arrays()
    if not len(xs):
        raise ValueError("sample is empty")
    m = eigen_mixture(model, theta)
    return float(_loglik_from_mixture(m.e, m.c, xs, cs))


def _fast_loglik(model, thetas, xs, cs) -> np.ndarray:
    e, c = mixture_batch(model, np.atleast_1d(np.asarray(thetas, float)))
    return _loglik_from_mixture(e, c, xs, cs)


def mle_theta(model: Model | str, sample, upper: float = 1.0, polish: bool = True,
              xtol: float = 1e-10) -> float:
    """Maximiser of the log-likelihood over ``[0, upper]``.

    The search starts from the best point of a coarse grid, then runs a
    bounded Brent search between the neighbouring grid points.  ``polish``
    repeats the last step with the high-precision pmf.
    """
    model = Model.parse(model)
    xs, cs = _as_sample(sample).arrays()
    if not len(xs):
        raise ValueError("sample is empty")
    grid = np.linspace(0.0, upper, GRID_POINTS)
    ll = _fast_loglik(model, grid, xs, cs)
    best = int(np.argmax(ll))
    lo, hi = grid[max(best - 1, 0)], grid[min(best + 1, GRID_POINTS - 1)]
    res = minimize_scalar(lambda t: -float(_fast_loglik(model, t, xs, cs)[0]),
                          bounds=(lo, hi), method="bounded", options={"xatol": xtol})
    candidates = {float(res.x): -float(res.fun), float(grid[best]): float(ll[best])}
    if polish:
        width = max(1e-5, 10 * xtol)
        a, b = max(0.0, res.x - width), min(upper, res.x + width)
        pres = minimize_scalar(lambda t: -_exact_loglik(model, xs, cs, t),
                               bounds=(a, b), method="bounded", options={"xatol": xtol})
        candidates = {t: _exact_loglik(model, xs, cs, t) for t in (float(pres.x), *candidates)}
    return max(candidates, key=candidates.get)


def _exact_loglik(model, xs, cs, theta) -> float:
    m = eigen_mixture(model, float(theta))
    return float(_loglik_from_mixture(m.e, m.c, xs, cs))


def lr_threshold(alpha: float) -> float:
    return normal_quantile(1 - alpha / 2) ** 2


@dataclass(frozen=True)
class LrOutcome:
    theta_hat: float
    log_lik_null: float
    log_lik_hat: float
    statistic: float
    reject: bool


def lr_test(model: Model | str, sample, alpha: float = 0.05, upper: float = 1.0,
            polish: bool = True) -> LrOutcome:
    """Test theta = 0 against theta > 0 with the chi-square(1) cutoff."""
    model = Model.parse(model)
    sample = _as_sample(sample)
    xs, cs = sample.arrays()
    theta_hat = mle_theta(model, sample, upper, polish)
    if polish:
        ll0, llh = _exact_loglik(model, xs, cs, 0.0), _exact_loglik(model, xs, cs, theta_hat)
    else:
        ll0, llh = _fast_loglik(model, [0.0, theta_hat], xs, cs)
    ll0, llh = float(ll0), max(float(llh), float(ll0))
    stat = 2.0 * (llh - ll0)
    return LrOutcome(theta_hat, ll0, llh, stat, stat > lr_threshold(alpha))


# ---------------------------------------------------------------- power


@dataclass(frozen=True)
class LrPower:
    power: float
    std_err: float
    rejections: int
    reps: int


BATCH_GRID = 2049
BLOCK = 250  # replications per work unit; fixed so results ignore the worker count


def _fast_loglik_rows(model, thetas: np.ndarray, counts: np.ndarray) -> np.ndarray:
    """Row-wise log-likelihood: replication ``r`` evaluated at ``thetas[r]``."""
    e, c = mixture_batch(model, thetas)
    xs = np.arange(2, 2 + counts.shape[1])
    pmf = np.einsum("rk,rxk->rx", c * (1 - e), e[:, None, :] ** (xs[None, :, None] - 1))
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = np.log(np.where(pmf > 0, pmf, 0.0))
    return np.where(counts > 0, counts * logs, 0.0).sum(axis=1)


def lr_statistics(model: Model | str, counts: np.ndarray, upper: float = 1.0,
                  newton_steps: int = 6) -> tuple[np.ndarray, np.ndarray]:
    """MLE and LR statistic for many samples at once.

    ``counts[r, j]`` is the number of hands of length ``j + 2`` in sample ``r``.
    A fine theta grid locates each maximum, then safeguarded Newton steps with
    finite-difference derivatives refine it inside the neighbouring grid cells.
    """
    model = Model.parse(model)
    counts = np.asarray(counts, dtype=float)
    grid = np.linspace(0.0, upper, BATCH_GRID)
    e, c = mixture_batch(model, grid)
    xs = np.arange(2, 2 + counts.shape[1])
    table = np.einsum("gk,gxk->gx", c * (1 - e), e[:, None, :] ** (xs[None, :, None] - 1))
    with np.errstate(divide="ignore"):
        table = np.log(np.maximum(table, 0.0))
    finite = np.where(np.isfinite(table), table, 0.0)
    ll_grid = counts @ finite.T
    # lengths with zero probability at some grid point make those points infeasible
    bad = (counts > 0).astype(float) @ (~np.isfinite(table)).T.astype(float)
    ll_grid[bad > 0] = -np.inf
    best = np.argmax(ll_grid, axis=1)
    rows = np.arange(len(counts))
    theta = grid[best]
    ll_best = ll_grid[rows, best]
    lo = grid[np.maximum(best - 1, 0)]
    hi = grid[np.minimum(best + 1, BATCH_GRID - 1)]
    h = 1e-4 * max(upper, 1e-3)
    for _ in range(newton_steps):
        tm, tp = np.clip(theta - h, 0.0, upper), np.clip(theta + h, 0.0, upper)
        f0 = _fast_loglik_rows(model, theta, counts)
        fm = _fast_loglik_rows(model, tm, counts)
        fp = _fast_loglik_rows(model, tp, counts)
        d1 = (fp - fm) / np.where(tp > tm, tp - tm, 1.0)
        d2 = (fp - 2 * f0 + fm) / h**2
        step = np.where(d2 < 0, -d1 / np.where(d2 < 0, d2, -1.0), np.sign(d1) * h)
        trial = np.clip(theta + step, lo, hi)
        f_trial = _fast_loglik_rows(model, trial, counts)
        improve = f_trial > f0
        theta = np.where(improve, trial, theta)
        better = np.maximum(f_trial, f0)
        ll_best = np.maximum(ll_best, better)
    ll_null = ll_grid[:, 0]
    stat = 2.0 * np.maximum(ll_best - ll_null, 0.0)
    return theta, stat


def _reject_block(args) -> np.ndarray:
    model, theta, n, alpha, upper, seed, start, stop = args
    samples = [simulate_hands(model, theta, n, RngStream(seed, rep)) for rep in range(start, stop)]
    width = max(int(s.max()) for s in samples) - 1
    counts = np.zeros((len(samples), width))
    for r, s in enumerate(samples):
        counts[r] = np.bincount(s - 2, minlength=width)
    _, stat = lr_statistics(model, counts, upper)
    return stat > lr_threshold(alpha)


def simulate_lr_power(model: Model | str, theta: float, n: int = 500, alpha: float = 0.05,
                      reps: int = 10_000, seed: int = 0, workers: int | None = 1,
                      upper: float = 1.0) -> LrPower:
    """Fraction of simulated samples for which the LR test rejects.

    Replication ``r`` always uses stream ``(seed, r)`` and replications are
    grouped into fixed blocks, so the result does not depend on ``workers``.
    """
    if reps < 1 or n < 1:
        raise ValueError("reps and n must be at least 1")
    model = Model.parse(model)
    workers = (os.cpu_count() or 1) if workers is None else max(1, int(workers))
    blocks = [(model.value, float(theta), int(n), alpha, upper, int(seed), s, min(s + BLOCK, reps))
              for s in range(0, reps, BLOCK)]
    if workers == 1:
        results = [_reject_block(b) for b in blocks]
    else:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_reject_block, blocks))
    hits = int(sum(r.sum() for r in results))
    p = hits / reps
    return LrPower(p, math.sqrt(p * (1 - p) / reps), hits, reps)


@dataclass(frozen=True)
class LrPowerRow:
    eta: float
    theta: float
    lbar_power: float
    lr: LrPower


TABLE4_GAINS = (0.0, 0.025, 0.05, 0.1, 0.2)


def lr_power_table(model: Model | str, reps: int = 10_000, n: int = 500, alpha: float = 0.05,
                   seed: int = 0, workers: int | None = 1, gains=TABLE4_GAINS) -> list[LrPowerRow]:
    """Simulated LR power next to the approximate lbar power, per gain alternative."""
    model = Model.parse(model)
    rows = []
    for eta in gains:
        theta = rho2_inv(model, eta)
        lbar = power_lbar(model, eta, n, alpha, critical=round(normal_quantile(1 - alpha), 3)).power
        rows.append(LrPowerRow(eta, theta, lbar,
                               simulate_lr_power(model, theta, n, alpha, reps, seed, workers)))
    return rows


__all__ = [
    "LrOutcome", "LrPower", "LrPowerRow", "log_likelihood", "mle_theta",
    "lr_test", "lr_threshold", "lr_statistics", "simulate_lr_power", "lr_power_table",
]
