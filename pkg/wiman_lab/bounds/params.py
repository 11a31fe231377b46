from dataclasses import dataclass, fields


@dataclass(frozen=True)
class BoundParams:
    """
    Slack parameters of the inequalities:
      delta   exponent slack of the multivariate theorem
      delta1  slack of the logarithmic-derivative lemma
      delta2  slack of the tail-cut index
      eps     slack of the classical one-variable inequality
    """

    delta: float = 0.05
    delta1: float = 0.05
    delta2: float = 0.1
    eps: float = 0.05

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not value > 0.0:
                raise ValueError(f"[ERROR] {f.name} must be > 0, got {value!r}.")
            object.__setattr__(self, f.name, float(value))

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}
