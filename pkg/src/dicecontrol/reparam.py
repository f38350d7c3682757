"""Common-scale parameterizations of the two control models.

``recip7`` is the reciprocal probability of a 7 on a point roll, ``gain`` is
the pass-line expected gain.  Both are increasing in theta, so the inverses are
well-defined; ``gain`` is inverted numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from scipy.optimize import brentq

from .dice import Model, _scalars, expected_gain

NO_CONTROL_GAIN = Fraction(-7, 495)
# intersection of the two models' gain ranges
COMMON_GAIN_MAX = Fraction(13, 40)
COMMON_RECIP7 = (6, 8)


class Parameterization(str, Enum):
    THETA = "theta"
    RECIP7 = "recip7"
    GAIN = "gain"

    @classmethod
    def parse(cls, value: "Parameterization | str") -> "Parameterization":
        if isinstance(value, Parameterization):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(
                f"unknown parameterization {value!r}; expected theta, recip7 or gain"
            ) from None


@dataclass(frozen=True)
class RateFunctions:
    gamma: float  # mean pass-line decisions per hand
    delta: float  # mean point rolls per hand
    p7o: float  # probability a decision ends in seven-out


def rho1(model: Model | str, theta):
    model = Model.parse(model)
    theta, _, _ = _scalars(theta)
    if model is Model.SS:
        return 24 / (4 - theta)
    return 18 / (3 - 2 * theta)


def recip7_range(model: Model | str) -> tuple[float, float]:
    return (6.0, 8.0) if Model.parse(model) is Model.SS else (6.0, 18.0)


def rho1_inv(model: Model | str, eta):
    model = Model.parse(model)
    lo, hi = recip7_range(model)
    if not lo <= eta <= hi:
        raise ValueError(f"recip7 value {eta} outside [{lo}, {hi}] for model {model.value}")
    if model is Model.SS:
        return 4 - 24 / eta
    return Fraction(3, 2) - 9 / eta if isinstance(eta, Fraction) else 1.5 - 9 / eta


def rho2(model: Model | str, theta):
    return expected_gain(model, theta)


@lru_cache(maxsize=None)
def gain_range(model: Model | str) -> tuple[float, float]:
    model = Model.parse(model)
    return float(rho2(model, 0.0)), float(rho2(model, 1.0))


def rho2_inv(model: Model | str, eta: float) -> float:
    """Native theta with the given pass-line expected gain."""
    model = Model.parse(model)
    lo, hi = gain_range(model)
    eta = float(eta)
    tol = 1e-15
    if not lo - tol <= eta <= hi + tol:
        raise ValueError(f"gain {eta} outside [{lo}, {hi}] for model {model.value}")
    if eta <= lo:
        return 0.0
    if eta >= hi:
        return 1.0
    return brentq(lambda t: float(rho2(model, t)) - eta, 0.0, 1.0, xtol=1e-14, rtol=1e-15)


@lru_cache(maxsize=None)
def ws_theta_max() -> float:
    """WS theta whose gain equals the upper end of the common gain range."""
    return rho2_inv(Model.WS, float(COMMON_GAIN_MAX))


def to_theta(model: Model | str, value, param: Parameterization | str):
    param = Parameterization.parse(param)
    if param is Parameterization.THETA:
        theta, _, _ = _scalars(value)
        return theta
    if param is Parameterization.RECIP7:
        return rho1_inv(model, value)
    return rho2_inv(model, value)


def from_theta(model: Model | str, theta, param: Parameterization | str):
    param = Parameterization.parse(param)
    if param is Parameterization.THETA:
        return theta
    if param is Parameterization.RECIP7:
        return rho1(model, theta)
    return rho2(model, theta)


def p_seven_out(model: Model | str, theta):
    model = Model.parse(model)
    theta, _, _ = _scalars(theta)
    if model is Model.SS:
        return (4 - theta) * (8 + theta) * (28 - theta) ** 2 / (
            144 * (10 - theta) * (44 + theta))
    return (3 - 2 * theta) * (196 - 85 * theta + 6 * theta**2) / (
        27 * (5 - 2 * theta) * (11 - 3 * theta))


def rate_functions(model: Model | str, theta) -> RateFunctions:
    p7o = p_seven_out(model, theta)
    return RateFunctions(gamma=1 / p7o, delta=rho1(model, theta), p7o=p7o)
