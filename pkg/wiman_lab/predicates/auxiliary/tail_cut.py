import math

from wiman_lab.core.errors import DomainError
from wiman_lab.predicates.base import BasePredicate, PredicateValue, RadialPoint
from wiman_lab.series.operations import tail_cut_index_from_logs, tail_sum


class TailCutPredicate(BasePredicate):
    """
    sum_{||n|| >= d(r)} |a_n| r^n <= mu_f(r).

    The tail starts at min(d(r), N): past the truncation the stored tail is
    empty, and starting at N keeps the checked quantity finite and no smaller.
    A series with no stored term of degree >= that start is refused.
    """

    name = "eq9_tail"
    lhs_quantity = "tail_sum"

    def evaluate(self, point: RadialPoint) -> PredicateValue:
        d = tail_cut_index_from_logs(point.mu_log, point.log_radii, self.params.delta2)
        start = min(d, float(point.f.truncation))
        lhs = tail_sum(point.f, point.radius, start)
        if lhs == -math.inf:
            raise DomainError(
                f"[ERROR] tail check needs stored terms of degree >= {start:.6g}, "
                f"but the series stops below its truncation N={point.f.truncation}."
            )
        return PredicateValue(lhs, point.mu_log)
