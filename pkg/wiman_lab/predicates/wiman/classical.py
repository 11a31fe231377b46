from typing import Optional

from wiman_lab.bounds.params import BoundParams
from wiman_lab.bounds.rhs import rhs_classical, rhs_power
from wiman_lab.core.errors import DomainError
from wiman_lab.predicates.base import BasePredicate, PredicateValue, RadialPoint


class ClassicalPredicate(BasePredicate):
    """
    One variable: M_f(r) <= mu_f(r) ln^{1/2+eps} mu_f(r).

    ``exponent`` replaces 1/2 + eps by any real power, e.g. 1/4 - 0.1 for a
    negative control that randomized series are expected to break.
    """

    name = "eq1"
    lhs_quantity = "max_modulus"

    def __init__(self, params: Optional[BoundParams] = None, exponent: Optional[float] = None):
        super().__init__(params)
        self.exponent = exponent

    def evaluate(self, point: RadialPoint) -> PredicateValue:
        if point.f.dimension != 1:
            raise DomainError(f"[ERROR] eq1 is a one-variable inequality, got p={point.f.dimension}.")
        if self.exponent is None:
            rhs = rhs_classical(point.mu_log, self.params.eps)
        else:
            rhs = rhs_power(point.mu_log, self.exponent)
        return PredicateValue(point.max_log, rhs)

    def describe(self) -> dict:
        return {**super().describe(), "exponent": self.exponent}
