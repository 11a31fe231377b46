import importlib
from typing import Optional

from wiman_lab.bounds.params import BoundParams
from wiman_lab.predicates.base import BasePredicate

PREDICATES = {
    "eq1": "wiman_lab.predicates.wiman.classical.ClassicalPredicate",
    "eq3": "wiman_lab.predicates.wiman.multivariate.MultivariateHalfPredicate",
    "eq5": "wiman_lab.predicates.wiman.multivariate.MultivariateQuarterPredicate",
    "thm11b_half": "wiman_lab.predicates.wiman.reduced.ReducedHalfPredicate",
    "star_quarter": "wiman_lab.predicates.wiman.reduced.StarQuarterPredicate",
    "eq9_tail": "wiman_lab.predicates.auxiliary.tail_cut.TailCutPredicate",
    "lemma23": "wiman_lab.predicates.auxiliary.lemma23.LogDerivativePredicate",
}


def get_predicate_class(short_name: str):
    """
    Retrieves the predicate class registered under a short name.
    Returns: predicate_class
    """
    class_path = PREDICATES.get(short_name)
    if class_path is None:
        raise ValueError(f"[ERROR] Predicate '{short_name}' not found. Known: {sorted(PREDICATES)}.")

    module_path, class_name = class_path.rsplit(".", 1)
    module_path = module_path.strip()
    class_name = class_name.strip()

    try:
        module = importlib.import_module(module_path)
        predicate_class = getattr(module, class_name)
    except Exception as e:
        raise ImportError(f"[ERROR] Failed to load '{class_path}': {e}")

    return predicate_class


def get_predicate(short_name: str, params: Optional[BoundParams] = None, **options) -> BasePredicate:
    predicate_class = get_predicate_class(short_name)
    return predicate_class(params, **options)
