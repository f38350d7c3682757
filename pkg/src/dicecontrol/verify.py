"""Reproduce the published constants and tables, one named check at a time."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath
import numpy as np

from . import golden
from .dice import Model, break_even_theta, burnside_count, enumerate_dice_sets, orbit_partition
from .hand_length import (
    MP_DIGITS,
    closed_form_eigenvalues,
    hand_tail,
    mean_hand_length,
    mixture_coefficients,
    numeric_eigenvalues,
    var_hand_length,
)
from .lrtest import lr_power_table, lr_test
from .monotonicity import verify_tail_monotonicity
from .power import emit_power_table
from .reparam import rate_functions, rho1
from .simulation import HandSample


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def check_moments() -> CheckResult:
    errs = []
    exact = [
        (mean_hand_length("ss", Fraction(0)), golden.MEAN_0),
        (var_hand_length("ss", Fraction(0)), golden.VAR_0),
        (mean_hand_length("ws", Fraction(0)), golden.MEAN_0),
        (var_hand_length("ws", Fraction(0)), golden.VAR_0),
    ]
    for m in ("ss", "ws"):
        exact += [(mean_hand_length(m, Fraction(1)), golden.MEAN_1[m]),
                  (var_hand_length(m, Fraction(1)), golden.VAR_1[m])]
    rates = rate_functions("ss", Fraction(0))
    exact += [(rates.gamma, golden.GAMMA_0), (rates.delta, Fraction(6))]
    ok = all(a == b for a, b in exact)
    for m in ("ss", "ws"):
        t0 = break_even_theta(m)
        errs.append(abs(t0 - golden.BREAK_EVEN_THETA[m]) < 1e-5)
        errs.append(abs(float(rho1(m, t0)) - golden.BREAK_EVEN_RECIP7[m]) < 1e-4)
    ok = ok and all(errs)
    return CheckResult("golden constants", ok,
                       f"exact moments and rates {'match' if ok else 'differ'}; "
                       f"break-even theta {break_even_theta('ss'):.7f} / {break_even_theta('ws'):.7f}")


def spectral_digits(method: str) -> float:
    """Smallest number of matching significant digits across e and c at theta = 0."""
    worst = np.inf
    ref = [mpmath.mpf(v) for v in golden.EIGEN_0 + golden.COEFF_0]
    for model in ("ss", "ws"):
        with mpmath.workdps(MP_DIGITS):
            if method == "closed":
                e = closed_form_eigenvalues(model, 0, dtype=object)
            else:
                e = numeric_eigenvalues(model, 0.0, polish_digits=MP_DIGITS)
            c = mixture_coefficients(model, mpmath.mpf(0), e)
            got = list(e) + list(c)
            for g, r in zip(got, ref):
                err = abs(g - r) / abs(r)
                digits = float(-mpmath.log10(err)) if err > 0 else 18.0
                worst = min(worst, digits)
    return worst


def check_spectral() -> CheckResult:
    closed, numeric = spectral_digits("closed"), spectral_digits("numeric")
    ok = closed >= 12 and numeric >= 10
    return CheckResult("spectral constants", ok,
                       f"{closed:.1f} digits (closed form), {numeric:.1f} digits (quartic roots)")


def check_tail154() -> CheckResult:
    parts, ok = [], True
    for model, theta, ref in golden.TAIL_154:
        got = 1.0 / float(hand_tail(model, theta, 154))
        ok &= _rel(got, ref) < 1e-3
        parts.append(f"{model}@{theta}={got:.4g}")
    return CheckResult("tail at 154 rolls", ok, ", ".join(parts))


def power_table_mismatches() -> list[tuple[int, int, int, int, float, float]]:
    out = []
    for tid, panels in golden.POWER_TABLES.items():
        table = emit_power_table(tid)
        for p, (panel, ref) in enumerate(zip(table.panels, panels)):
            for r, row in enumerate(ref):
                for c, v in enumerate(row):
                    got = round(float(panel.cells[r, c]), 4)
                    if abs(got - v) > 5e-5:
                        out.append((tid, p, r, c, got, v))
    return out


def check_power_tables() -> CheckResult:
    bad = power_table_mismatches()
    worst = max((abs(g - v) for *_, g, v in bad), default=0.0)
    ok = not bad or (len(bad) <= 2 and worst <= 1e-3)
    return CheckResult("power tables 1-3", ok, f"{220 - len(bad)}/220 cells match at 4 decimals")


def check_combinatorics() -> CheckResult:
    sets = enumerate_dice_sets()
    wong = sorted(len(o) for o in orbit_partition("wong"))
    axis = sorted(len(o) for o in orbit_partition("axis"))
    b1, b2 = burnside_count("wong"), burnside_count("axis")
    ok = (len(sets) == 576 and wong == [8] * 18 + [16] * 27 and axis == [64] * 3 + [128] * 3
          and b1 == (720, 16, 45) and b2 == (768, 128, 6))
    return CheckResult("dice-set combinatorics", ok,
                       f"{len(sets)} sets, {len(wong)} and {len(axis)} orbits, Burnside {b1[:2]} {b2[:2]}")


def check_worked_example() -> CheckResult:
    ex = golden.WORKED_EXAMPLE
    out = lr_test("ss", HandSample.from_run_length(ex["counts"]))
    ok = (abs(out.theta_hat - ex["theta_hat"]) < 1e-3 and abs(out.statistic - ex["statistic"]) < 1e-3
          and not out.reject)
    return CheckResult("LR worked example", ok,
                       f"theta_hat={out.theta_hat:.6f}, statistic={out.statistic:.5f}, "
                       f"reject={out.reject}")


def check_monotonicity() -> CheckResult:
    ss = verify_tail_monotonicity("ss", 75)
    ws = verify_tail_monotonicity("ws", 75)
    b_ss, b_ws = ss.bounds, ws.bounds
    bounds_ok = (b_ss.min_c_de[0] >= 0.0394 and b_ws.min_c_de[0] >= 0.0967
                 and b_ss.max_ratio[0] <= 0.860 and b_ws.max_ratio[0] <= 0.873)
    ok = (not ss.exceptions and tuple(ws.exceptions) == golden.WS_MONOTONICITY_EXCEPTIONS
          and ws.all_resolved and ss.covers_all_x and ws.covers_all_x and bounds_ok)
    return CheckResult("tail monotonicity", ok,
                       f"SS exceptions {ss.exceptions}, WS exceptions {ws.exceptions}, "
                       f"large-x from {b_ss.threshold_x} / {b_ws.threshold_x}")


def check_lr_table(reps: int = 10_000, seed: int = 0, workers: int | None = 1) -> CheckResult:
    devs = []
    for model in ("ss", "ws"):
        for row, ref in zip(lr_power_table(model, reps=reps, seed=seed, workers=workers),
                            golden.LR_POWER_TABLE[model]):
            se = ref[4]
            dev = abs(row.lr.power - ref[3])
            devs.append(dev / se if se else (0.0 if dev == 0 else np.inf))
    worst = max(devs)
    return CheckResult("LR power table", worst <= 3, f"largest deviation {worst:.2f} s.e.")


CHECKS: dict[str, Callable[[], CheckResult]] = {
    "constants": check_moments,
    "spectral": check_spectral,
    "tail154": check_tail154,
    "power": check_power_tables,
    "combinatorics": check_combinatorics,
    "example": check_worked_example,
    "monotonicity": check_monotonicity,
}


def run_checks(names=None, with_lr_table: bool = False, **lr_kwargs) -> list[CheckResult]:
    selected = list(CHECKS) if not names else list(names)
    results = [CHECKS[n]() for n in selected]
    if with_lr_table:
        results.append(check_lr_table(**lr_kwargs))
    return results
