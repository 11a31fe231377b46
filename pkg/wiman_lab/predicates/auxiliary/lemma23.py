import math
from typing import Optional

from wiman_lab.bounds.params import BoundParams
from wiman_lab.bounds.rhs import lemma23_rhs_from_logs
from wiman_lab.core.errors import DomainError
from wiman_lab.predicates.base import BasePredicate, PredicateValue, RadialPoint
from wiman_lab.series.operations import partial_log_derivative


class LogDerivativePredicate(BasePredicate):
    """
    d_s ln M_f(r) <= h(ln r_1, ..., ln M_f(r), ..., ln r_p) with
    h(u) = prod u_i ln^{1+delta1} u_i.

    ``axis`` pins s; by default every axis is checked and the one with the
    smallest margin is reported.
    """

    name = "lemma23"
    lhs_quantity = "log_derivative"

    def __init__(self, params: Optional[BoundParams] = None, axis: Optional[int] = None):
        super().__init__(params)
        self.axis = axis

    def evaluate(self, point: RadialPoint) -> PredicateValue:
        axes = [self.axis] if self.axis is not None else range(1, point.f.dimension + 1)
        worst = None
        for s in axes:
            derivative = partial_log_derivative(point.f, point.radius, s)
            if not derivative > 0.0:
                raise DomainError(f"[ERROR] the series has no term with n_{s} >= 1, so d_{s} ln M_f vanishes.")
            lhs = math.log(derivative)
            rhs = math.log(lemma23_rhs_from_logs(point.sum_log, point.log_radii, s, self.params.delta1))
            value = PredicateValue(lhs, rhs)
            if worst is None or value.margin < worst.margin:
                worst = value
        return worst

    def describe(self) -> dict:
        return {**super().describe(), "axis": self.axis}
