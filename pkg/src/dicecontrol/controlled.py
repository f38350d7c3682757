"""A control model fixed at one skill level, with the derived quantities attached."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .dice import Model, _scalars, break_even_theta, expected_gain, total_pmf
from .hand_length import GeometricMixture, eigen_mixture, mean_hand_length, var_hand_length
from .reparam import Parameterization, RateFunctions, from_theta, rate_functions, to_theta


@dataclass(frozen=True)
class ControlledModel:
    model: Model
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "model", Model.parse(self.model))
        theta, _, _ = _scalars(self.theta)  # range check
        object.__setattr__(self, "theta", theta)

    @classmethod
    def at(cls, model: Model | str, value, param: Parameterization | str = "theta") -> ControlledModel:
        return cls(Model.parse(model), to_theta(model, value, param))

    def eta(self, param: Parameterization | str):
        return from_theta(self.model, self.theta, param)

    def total_pmf(self, dice_set):
        return total_pmf(self.model, dice_set, self.theta)

    @property
    def expected_gain(self):
        return expected_gain(self.model, self.theta)

    @property
    def break_even_theta(self) -> float:
        return break_even_theta(self.model)

    @property
    def rates(self) -> RateFunctions:
        return rate_functions(self.model, self.theta)

    @property
    def mean_length(self):
        return mean_hand_length(self.model, self.theta)

    @property
    def var_length(self):
        return var_hand_length(self.model, self.theta)

    @cached_property
    def hand_mixture(self) -> GeometricMixture:
        return eigen_mixture(self.model, self.theta)
