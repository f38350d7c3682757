"""Acceptance criteria 1-9, one PASS/FAIL line each.

Run ``pytest tests/test_acceptance.py`` (lines appear in the terminal summary)
or ``python tests/test_acceptance.py`` to print them directly.
"""

from __future__ import annotations

import time
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from dicecontrol import golden
from dicecontrol.dice import break_even_theta, burnside_count, enumerate_dice_sets, orbit_partition, total_pmf
from dicecontrol.hand_length import (
    MP_DIGITS,
    closed_form_eigenvalues,
    hand_tail,
    hand_tail_oracle,
    mean_hand_length,
    mixture_coefficients,
    numeric_eigenvalues,
    var_hand_length,
)
from dicecontrol.lrtest import lr_power_table, lr_test
from dicecontrol.monotonicity import verify_tail_monotonicity
from dicecontrol.power import emit_power_table
from dicecontrol.reparam import rate_functions, rho1
from dicecontrol.simulation import HandSample, RngStream, sample_totals

RESULTS: dict[int, str] = {}


def _record(number: int, title: str, passed: bool, detail: str, elapsed: float,
            budget: float) -> bool:
    ok = passed and elapsed < budget
    RESULTS[number] = (f"[{'PASS' if ok else 'FAIL'}] criterion {number} {title}: {detail} "
                       f"({elapsed:.1f} s, budget {budget:g} s)")
    return ok


def criterion_1() -> bool:
    start = time.perf_counter()
    exact = [mean_hand_length(m, Fraction(0)) == golden.MEAN_0 for m in ("ss", "ws")]
    exact += [var_hand_length(m, Fraction(0)) == golden.VAR_0 for m in ("ss", "ws")]
    exact += [mean_hand_length(m, Fraction(1)) == golden.MEAN_1[m] for m in ("ss", "ws")]
    exact += [var_hand_length(m, Fraction(1)) == golden.VAR_1[m] for m in ("ss", "ws")]
    rates = rate_functions("ss", Fraction(0))
    exact += [rates.gamma == Fraction(495, 196), rates.delta == 6]
    near = []
    for m in ("ss", "ws"):
        t0 = break_even_theta(m)
        near.append(abs(t0 - golden.BREAK_EVEN_THETA[m]) <= 1e-5)
        near.append(abs(float(rho1(m, t0)) - golden.BREAK_EVEN_RECIP7[m]) <= 1e-4)
    detail = (f"{sum(exact)}/{len(exact)} exact rationals, theta0 = {break_even_theta('ss'):.7f} / "
              f"{break_even_theta('ws'):.7f}")
    return _record(1, "golden constants", all(exact) and all(near), detail,
                   time.perf_counter() - start, 1)


def _digits(method: str) -> float:
    worst = np.inf
    ref = [mpmath.mpf(v) for v in golden.EIGEN_0 + golden.COEFF_0]
    for model in ("ss", "ws"):
        with mpmath.workdps(MP_DIGITS):
            if method == "closed":
                e = closed_form_eigenvalues(model, 0, dtype=object)
            else:
                e = numeric_eigenvalues(model, 0.0, polish_digits=MP_DIGITS)
            got = list(e) + list(mixture_coefficients(model, mpmath.mpf(0), e))
            for g, r in zip(got, ref):
                err = abs(g - r) / abs(r)
                worst = min(worst, 18.0 if err == 0 else float(-mpmath.log10(err)))
    return worst


def criterion_2() -> bool:
    start = time.perf_counter()
    closed, roots = _digits("closed"), _digits("numeric")
    return _record(2, "spectral constants", closed >= 12 and roots >= 10,
                   f"{closed:.1f} digits closed form, {roots:.1f} digits quartic roots",
                   time.perf_counter() - start, 1)


def criterion_3() -> bool:
    start = time.perf_counter()
    worst = max(abs(1 / float(hand_tail(m, float(t), 154)) - ref) / ref
                for m, t, ref in golden.TAIL_154)
    return _record(3, "tail reciprocals at 154", worst <= 1e-3,
                   f"largest relative error {worst:.2e}", time.perf_counter() - start, 1)


def power_table_report() -> tuple[int, int, float]:
    """Cells checked, cells off at 4 decimals, and the largest such deviation."""
    checked, off, worst = 0, 0, 0.0
    for tid, panels in golden.POWER_TABLES.items():
        for panel, ref in zip(emit_power_table(tid).panels, panels):
            dev = np.abs(np.round(panel.cells, 4) - np.array(ref))
            checked += dev.size
            off += int((dev > 5e-5).sum())
            worst = max(worst, float(dev.max()))
    return checked, off, worst


def criterion_4() -> bool:
    start = time.perf_counter()
    checked, off, worst = power_table_report()
    passed = off == 0 or (off <= 2 and worst <= 1e-3)
    return _record(4, "power tables 1-3", passed,
                   f"{checked - off}/{checked} cells match at 4 decimals", time.perf_counter() - start, 10)


def criterion_5(reps: int = 10_000, workers: int | None = None) -> bool:
    start = time.perf_counter()
    worst, lbar_ok, theta_ok = 0.0, True, True
    for model in ("ss", "ws"):
        rows = lr_power_table(model, reps=reps, n=500, seed=0, workers=workers)
        for row, (_, theta, lbar, power, se) in zip(rows, golden.LR_POWER_TABLE[model]):
            dev = abs(row.lr.power - power)
            worst = max(worst, dev / se if se else (0.0 if dev == 0 else np.inf))
            lbar_ok &= abs(round(row.lbar_power, 4) - lbar) <= 5e-5
            theta_ok &= abs(row.theta - theta) <= 1e-5
    return _record(5, "LR power table", worst <= 3 and lbar_ok and theta_ok,
                   f"largest deviation {worst:.2f} s.e., lbar column "
                   f"{'matches' if lbar_ok else 'differs'}", time.perf_counter() - start, 7200)


def criterion_6() -> bool:
    start = time.perf_counter()
    ex = golden.WORKED_EXAMPLE
    out = lr_test("ss", HandSample.from_run_length(ex["counts"]), alpha=0.05)
    passed = (abs(out.theta_hat - ex["theta_hat"]) <= 1e-3
              and abs(out.statistic - ex["statistic"]) <= 1e-3 and not out.reject)
    return _record(6, "worked LR example", passed,
                   f"theta_hat {out.theta_hat:.6f}, statistic {out.statistic:.5f}, "
                   f"{'reject' if out.reject else 'no reject'}", time.perf_counter() - start, 1)


SAMPLER_RECIPES = [("ss", "AA"), ("ss", "AB"), ("ss", "AC"), ("ws", "1562"), ("ws", "2424")]


def criterion_7(draws: int = 1_000_000) -> bool:
    start = time.perf_counter()
    xs = range(2, 301)
    oracle_err = 0.0
    for model in ("ss", "ws"):
        for theta in np.round(np.linspace(0, 1, 21), 10):
            spectral = hand_tail(model, theta, np.arange(2, 301))
            oracle = np.array([hand_tail_oracle(model, float(theta), x) for x in xs])
            oracle_err = max(oracle_err, float(np.abs(spectral - oracle).max()))
    worst_z = 0.0
    for model, dice_set in SAMPLER_RECIPES:
        for theta in (0.0, 0.25, 0.5, 0.75, 1.0):
            sample = sample_totals(model, dice_set, theta, draws, RngStream(17, 0))
            freq = np.bincount(sample, minlength=13)[2:] / draws
            p = total_pmf(model, dice_set, theta)
            impossible = p <= 0
            if np.any(freq[impossible] > 0):
                worst_z = np.inf
            se = np.sqrt(p[~impossible] * (1 - p[~impossible]) / draws)
            worst_z = max(worst_z, float((np.abs(freq - p)[~impossible] / se).max()))
    return _record(7, "oracle equivalence", oracle_err <= 1e-9 and worst_z <= 5,
                   f"max |spectral - oracle| {oracle_err:.1e}, worst sampler cell {worst_z:.2f} s.e.",
                   time.perf_counter() - start, 300)


def criterion_8() -> bool:
    start = time.perf_counter()
    wong = sorted(map(len, orbit_partition("wong")))
    axis = sorted(map(len, orbit_partition("axis")))
    b_wong, b_axis = burnside_count("wong"), burnside_count("axis")
    passed = (len(enumerate_dice_sets()) == 576 and wong == [8] * 18 + [16] * 27
              and axis == [64] * 3 + [128] * 3 and b_wong == (720, 16, 45)
              and b_axis == (768, 128, 6))
    return _record(8, "dice-set combinatorics", passed,
                   f"{len(wong)} and {len(axis)} orbits, Burnside {b_wong[0]}/{b_wong[1]} and "
                   f"{b_axis[0]}/{b_axis[1]}", time.perf_counter() - start, 1)


def criterion_9() -> bool:
    start = time.perf_counter()
    ss, ws = verify_tail_monotonicity("ss", 75), verify_tail_monotonicity("ws", 75)
    b_ss, b_ws = ss.bounds, ws.bounds
    bounds_ok = (b_ss.min_c_de[0] >= 0.0394 and b_ws.min_c_de[0] >= 0.0967
                 and b_ss.max_ratio[0] <= 0.860 and b_ws.max_ratio[0] <= 0.873)
    passed = (not ss.exceptions and tuple(ws.exceptions) == golden.WS_MONOTONICITY_EXCEPTIONS
              and ws.all_resolved and bounds_ok)
    return _record(9, "tail monotonicity apparatus", passed,
                   f"SS exceptions {ss.exceptions}, WS exceptions {ws.exceptions} "
                   f"({'all resolved' if ws.all_resolved else 'unresolved'}), "
                   f"min c1e1' {b_ss.min_c_de[0]:.4f} / {b_ws.min_c_de[0]:.4f}, "
                   f"max e2/e1 {b_ss.max_ratio[0]:.4f} / {b_ws.max_ratio[0]:.4f}",
                   time.perf_counter() - start, 600)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("number", range(1, 10))
def test_criterion(number):
    passed = CRITERIA[number - 1]()
    print(RESULTS[number])
    assert passed, RESULTS[number]


if __name__ == "__main__":
    for check in CRITERIA:
        check()
    print("\n".join(RESULTS[k] for k in sorted(RESULTS)))
