from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from wiman_lab.bounds.params import BoundParams
from wiman_lab.core.domain.series import MultiPowerSeries, RadiusVector
from wiman_lab.series.operations import maximal_term, sum_modulus
from wiman_lab.torus.budget import TorusBudget
from wiman_lab.torus.max_modulus import max_modulus


class RadialPoint:
    """
    One radius vector of a scan with lazily computed, shared quantities, so
    that predicates needing the same value (mu_f, M_f, sup |f|) compute it once.
    """

    def __init__(self, f: MultiPowerSeries, log_radii, budget: Optional[TorusBudget] = None):
        self.f = f
        self.radius = RadiusVector.from_logs(log_radii)
        self.budget = budget or TorusBudget()

    @property
    def log_radii(self) -> np.ndarray:
        return self.radius.logs

    @cached_property
    def mu_log(self) -> float:
        return maximal_term(self.f, self.radius)[0]

    @cached_property
    def sum_log(self) -> float:
        return sum_modulus(self.f, self.radius)

    @cached_property
    def max_log(self) -> float:
        # nonnegative coefficients: the maximum sits at zero angles and equals M_f
        if not np.any(self.f.phase):
            return self.sum_log
        return max_modulus(self.f, self.radius, self.budget).log_value


@dataclass(frozen=True)
class PredicateValue:
    lhs_log: float
    rhs_log: float

    @property
    def flagged(self) -> bool:
        return self.lhs_log > self.rhs_log

    @property
    def margin(self) -> float:
        return self.rhs_log - self.lhs_log


class BasePredicate(ABC):
    """An inequality lhs <= rhs, both sides as natural logarithms."""

    name: str = ""
    lhs_quantity: str = ""

    def __init__(self, params: Optional[BoundParams] = None):
        self.params = params or BoundParams()

    @abstractmethod
    def evaluate(self, point: RadialPoint) -> PredicateValue:
        pass

    def describe(self) -> dict:
        return {"predicate": self.name, "lhs": self.lhs_quantity, **self.params.as_dict()}
