from wiman_lab.bounds.rhs import HALF, QUARTER, rhs_multivariate_from_logs
from wiman_lab.predicates.base import BasePredicate, PredicateValue, RadialPoint


class MultivariateHalfPredicate(BasePredicate):
    """M_f(r) <= mu_f(r) (prod ln^{p-1} r_i ln^p mu_f(r))^{1/2+delta}, M_f the majorant sum."""

    name = "eq3"
    lhs_quantity = "sum_modulus"

    def evaluate(self, point: RadialPoint) -> PredicateValue:
        rhs = rhs_multivariate_from_logs(point.mu_log, point.log_radii, self.params.delta, HALF)
        return PredicateValue(point.sum_log, rhs)


class MultivariateQuarterPredicate(BasePredicate):
    """sup_{|z|=r} |f(z, t)| <= mu_f(r) (prod ln^{p-1} r_i ln^p mu_f(r))^{1/4+delta}."""

    name = "eq5"
    lhs_quantity = "max_modulus"

    def evaluate(self, point: RadialPoint) -> PredicateValue:
        rhs = rhs_multivariate_from_logs(point.mu_log, point.log_radii, self.params.delta, QUARTER)
        return PredicateValue(point.max_log, rhs)
