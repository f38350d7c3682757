"""Normal-approximation power of the three analytic tests for dice control.

The tests reject for large values of the sample proportion of 7s on point
rolls (``prop7``), the pass-line win margin (``passline``), or the sample mean
hand length (``lbar``).  Alternatives are given on a common scale: ``recip7``
for the proportion-of-7s comparison and ``gain`` for the pass-line comparison.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import ndtr, ndtri

from .dice import Model, break_even_theta
from .hand_length import mean_hand_length, var_hand_length
from .reparam import NO_CONTROL_GAIN, Parameterization, rate_functions, to_theta


def normal_cdf(z: float) -> float:
    return float(ndtr(z))


def normal_quantile(p: float) -> float:
    if not 0.0 < p < 1.0:
        raise ValueError(f"normal quantile needs p in (0, 1), got {p}")
    return float(ndtri(p))


class NullKind(str, Enum):
    SIMPLE = "simple"
    COMPOSITE = "composite"

    @classmethod
    def parse(cls, value: "NullKind | str") -> "NullKind":
        try:
            return cls(str(getattr(value, "value", value)).lower())
        except ValueError:
            raise ValueError(f"unknown null {value!r}; expected simple or composite") from None


@dataclass(frozen=True)
class PowerResult:
    power: float
    method: str = "normal_approx"


def _result(value: float) -> PowerResult:
    return PowerResult(min(1.0, max(0.0, float(value))))


def _check_common(n: float, alpha: float, critical: float | None) -> float:
    if not n > 0:
        raise ValueError(f"sample size must be positive, got {n}")
    z = normal_quantile(1 - alpha)
    return z if critical is None else float(critical)


def power_prop7(eta: float, n: float, alpha: float = 0.05, null_eta0: float = 6.0,
                critical: float | None = None) -> PowerResult:
    """Test of ``recip7 = eta0`` using the proportion of 7s among ``n`` point rolls.

    ``critical`` overrides the one-sided normal critical value, which otherwise
    is the exact ``1 - alpha`` quantile.
    """
    z = _check_common(n, alpha, critical)
    if not eta >= null_eta0 >= 6:
        raise ValueError(f"need eta >= eta0 >= 6, got eta={eta}, eta0={null_eta0}")
    p0, p = 1 / null_eta0, 1 / eta
    num = math.sqrt(n) * (p0 - p) - z * math.sqrt(p0 * (1 - p0))
    return _result(normal_cdf(num / math.sqrt(p * (1 - p))))


def power_passline(eta: float, n: float, alpha: float = 0.05,
                   null_eta0: float = float(NO_CONTROL_GAIN),
                   critical: float | None = None) -> PowerResult:
    """Test of ``gain = eta0`` using the win margin over ``n`` pass-line decisions.

    ``null_eta0`` is ``-7/495`` for the simple null and ``0`` for the composite
    null, whose least favourable point is the fair bet.
    """
    z = _check_common(n, alpha, critical)
    if not -1 < eta < 1:
        raise ValueError(f"gain must lie in (-1, 1), got {eta}")
    num = math.sqrt(n) * (null_eta0 - eta) + z * math.sqrt(1 - null_eta0**2)
    return _result(1 - normal_cdf(num / math.sqrt(1 - eta**2)))


def _null_theta(model: Model, null: NullKind) -> float:
    return 0.0 if null is NullKind.SIMPLE else break_even_theta(model)


def power_lbar(model: Model | str, eta: float, n: float, alpha: float = 0.05,
               null: NullKind | str = NullKind.SIMPLE,
               param: Parameterization | str = Parameterization.GAIN,
               critical: float | None = None) -> PowerResult:
    """Power of the sample-mean hand-length test.

    The critical region is centred at the least favourable null point: theta=0
    for the simple null and the break-even theta for the composite null.
    """
    model = Model.parse(model)
    null = NullKind.parse(null)
    z = _check_common(n, alpha, critical)
    theta = float(to_theta(model, eta, param))
    theta0 = _null_theta(model, null)
    m0, sd0 = float(mean_hand_length(model, theta0)), math.sqrt(var_hand_length(model, theta0))
    m, sd = float(mean_hand_length(model, theta)), math.sqrt(var_hand_length(model, theta))
    return _result(1 - normal_cdf((math.sqrt(n) * (m0 - m) + z * sd0) / sd))


def passline_multiplier(model: Model | str, gain: float) -> float:
    """Mean number of pass-line decisions per hand at the given gain."""
    return rate_functions(model, to_theta(model, gain, Parameterization.GAIN)).gamma


# ---------------------------------------------------------------- tables

TABLE_NS = (100, 200, 500, 1000)
RECIP7_ETAS = (6.125, 6.25, 6.5, 7.0, 8.0)
GAIN_ETAS = (0.0, 0.025, 0.05, 0.1, 0.2)


@dataclass
class PowerPanel:
    title: str
    etas: tuple[float, ...]
    ns: tuple[int, ...]
    n_label: str  # how the row label scales into the test's sample size
    cells: np.ndarray  # shape (len(ns), len(etas))


@dataclass
class PowerTable:
    table_id: int
    title: str
    panels: list[PowerPanel]

    def cell(self, panel: int, n: int, eta: float) -> float:
        p = self.panels[panel]
        return float(p.cells[p.ns.index(n), p.etas.index(eta)])

    def to_text(self) -> str:
        out = [self.title]
        for p in self.panels:
            out.append("")
            out.append(p.title)
            header = f"{'n':>10}" + "".join(f"{'eta=' + format(e, 'g'):>12}" for e in p.etas)
            out.append(header)
            for n, row in zip(p.ns, p.cells):
                label = f"{n}{p.n_label}"
                out.append(f"{label:>10}" + "".join(f"{v:>12.4f}" for v in row))
        return "\n".join(out) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["table", "panel", "n", "n_scaling", "eta", "power"])
        for p in self.panels:
            for n, row in zip(p.ns, p.cells):
                for eta, v in zip(p.etas, row):
                    w.writerow([self.table_id, p.title, n, p.n_label.strip() or "1", eta, f"{v:.4f}"])
        return buf.getvalue()

    def to_records(self) -> list[dict]:
        return [
            {"panel": p.title, "n": n, "eta": eta, "power": round(float(v), 4)}
            for p in self.panels for n, row in zip(p.ns, p.cells) for eta, v in zip(p.etas, row)
        ]


def _grid(fn, ns, etas) -> np.ndarray:
    return np.array([[fn(n, eta) for eta in etas] for n in ns])


def emit_power_table(table_id: int, alpha: float = 0.05,
                     quantile_decimals: int | None = 3) -> PowerTable:
    """Rebuild one of the three published power grids.

    The published grids use the normal critical value rounded to three
    decimals (1.645 at alpha = 0.05); pass ``quantile_decimals=None`` for the
    exact quantile.
    """
    z = normal_quantile(1 - alpha)
    crit = None if quantile_decimals is None else round(z, quantile_decimals)
    if table_id == 1:
        panels = [
            PowerPanel(f"lbar test, {m.value.upper()} model", RECIP7_ETAS, TABLE_NS, "",
                       _grid(lambda n, eta, m=m: power_lbar(m, eta, n, alpha, NullKind.SIMPLE,
                                                            Parameterization.RECIP7, crit).power,
                             TABLE_NS, RECIP7_ETAS))
            for m in (Model.SS, Model.WS)
        ]
        panels.append(PowerPanel(
            "proportion of 7s test, either model", RECIP7_ETAS, TABLE_NS, " x eta",
            _grid(lambda n, eta: power_prop7(eta, n * eta, alpha, critical=crit).power,
                  TABLE_NS, RECIP7_ETAS)))
        return PowerTable(1, "Power for H0: recip7 = 6", panels)

    if table_id not in (2, 3):
        raise ValueError(f"table_id must be 1, 2 or 3, got {table_id}")
    null = NullKind.SIMPLE if table_id == 2 else NullKind.COMPOSITE
    eta0 = float(NO_CONTROL_GAIN) if table_id == 2 else 0.0
    panels = [
        PowerPanel(f"lbar test, {m.value.upper()} model", GAIN_ETAS, TABLE_NS, "",
                   _grid(lambda n, eta, m=m: power_lbar(m, eta, n, alpha, null,
                                                        critical=crit).power,
                         TABLE_NS, GAIN_ETAS))
        for m in (Model.SS, Model.WS)
    ]
    for m in (Model.SS, Model.WS):
        panels.append(PowerPanel(
            f"pass-line wins test, {m.value.upper()} model", GAIN_ETAS, TABLE_NS, " x gamma",
            _grid(lambda n, eta, m=m: power_passline(
                eta, n * passline_multiplier(m, eta), alpha, eta0, crit).power,
                TABLE_NS, GAIN_ETAS)))
    title = "Power for H0: gain = -7/495" if table_id == 2 else "Power for H0: gain <= 0"
    return PowerTable(table_id, title, panels)


__all__ = [
    "NullKind", "PowerResult", "PowerTable", "PowerPanel", "normal_cdf",
    "normal_quantile", "power_prop7", "power_passline", "power_lbar", "passline_multiplier",
    "emit_power_table",
]
