from fractions import Fraction

import pytest

from dicecontrol.hand_length import hand_tail_oracle
from dicecontrol.monotonicity import (
    check_coefficients,
    derivative_coefficients,
    nonnegative_on_unit_interval,
    tail_polynomials,
    verify_tail_monotonicity,
)


@pytest.fixture(scope="module")
def reports():
    return {m: verify_tail_monotonicity(m, 75) for m in ("ss", "ws")}


def test_polynomials_match_oracle(model):
    denom = 144 if model == "ss" else 36
    for x, coeffs in tail_polynomials(model, 8):
        for t in (Fraction(0), Fraction(2, 5), Fraction(1)):
            value = sum(c * t**i for i, c in enumerate(coeffs)) / Fraction(denom) ** (x - 1)
            assert value == hand_tail_oracle(model, t, x)


def test_small_x_derivatives():
    polys = dict(tail_polynomials("ws", 4))
    # (288 + 27 t - 2 t^2) / 324, rescaled to 36^2
    assert derivative_coefficients(polys[3]) == [4 * 27, -4 * 4]


def test_ss_passes_every_x(reports):
    ss = reports["ss"]
    assert [c.x for c in ss.checks] == list(range(3, 76))
    assert ss.exceptions == []


def test_ws_exceptions_resolved(reports):
    ws = reports["ws"]
    assert ws.exceptions == [3, 6, 7, 8, 9]
    assert "a1" in next(c for c in ws.checks if c.x == 3).failure
    assert ws.all_resolved


def test_bound_constants(reports):
    ss, ws = reports["ss"].bounds, reports["ws"].bounds
    assert ss.min_c_de[0] >= 0.0394 and ws.min_c_de[0] >= 0.0967
    assert ss.max_ratio[0] <= 0.860 and ws.max_ratio[0] <= 0.873
    assert ss.max_ratio[1] <= 0.823 and ws.max_ratio[1] <= 0.843
    assert ss.min_dc_e[0] == pytest.approx(-0.0966, abs=1e-4)
    assert ws.min_dc_e[0] == pytest.approx(-0.1404, abs=1e-4)


def test_small_and_large_x_cover_everything(reports):
    for report in reports.values():
        assert report.covers_all_x
        assert report.bounds.lower_bound(report.bounds.threshold_x) >= 0
        assert any("monotone for every x" in line for line in report.summary_lines())


def test_coefficient_conditions():
    assert check_coefficients(5, [3, 2, 1]).passed
    isolated = check_coefficients(5, [3, 5, -2, 1])
    assert isolated.passed and 1 in isolated.conditions
    pair = check_coefficients(5, [3, 9, -2, -3, 1])
    assert pair.passed and 2 in pair.conditions
    assert not check_coefficients(5, [3, 1, -2, -3, -1, 4]).passed
    assert not check_coefficients(5, [0, 1]).passed


def test_nonnegativity_check():
    assert nonnegative_on_unit_interval([1, -2, 1])  # (1 - t)^2
    assert not nonnegative_on_unit_interval([1, -3, 1])
    assert nonnegative_on_unit_interval([])


def test_x_max_limit():
    with pytest.raises(ValueError):
        verify_tail_monotonicity("ss", 201)
