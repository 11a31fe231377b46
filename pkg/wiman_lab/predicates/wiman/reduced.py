from wiman_lab.bounds.rhs import P_HALF, P_QUARTER, rhs_reduced_from_logs
from wiman_lab.predicates.base import BasePredicate, PredicateValue, RadialPoint


class ReducedHalfPredicate(BasePredicate):
    """Majorant sum <= mu_f(r) ln^{p/2+delta} mu_f(r)."""

    name = "thm11b_half"
    lhs_quantity = "sum_modulus"

    def evaluate(self, point: RadialPoint) -> PredicateValue:
        rhs = rhs_reduced_from_logs(point.mu_log, point.f.dimension, self.params.delta, P_HALF)
        return PredicateValue(point.sum_log, rhs)


class StarQuarterPredicate(BasePredicate):
    """sup |f(z, t)| <= mu_f(r) ln^{p/4+delta} mu_f(r)."""

    name = "star_quarter"
    lhs_quantity = "max_modulus"

    def evaluate(self, point: RadialPoint) -> PredicateValue:
        rhs = rhs_reduced_from_logs(point.mu_log, point.f.dimension, self.params.delta, P_QUARTER)
        return PredicateValue(point.max_log, rhs)
