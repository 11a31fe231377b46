import importlib
import logging

from wiman_lab.core.domain.series import MultiPowerSeries

logger = logging.getLogger(__name__)

FAMILIES = {
    "exp_sum": "wiman_lab.series.families.make_exp_sum",
    "unit": "wiman_lab.series.families.make_unit",
    "log_square": "wiman_lab.series.families.make_log_square",
}


def get_family(short_name: str):
    """
    Resolves a series family builder from its short name.
    Returns: callable (p, N) -> MultiPowerSeries
    """
    class_path = FAMILIES.get(short_name)
    if class_path is None:
        raise ValueError(f"[ERROR] Series family '{short_name}' is unknown. Known: {sorted(FAMILIES)}.")

    module_path, func_name = class_path.rsplit(".", 1)
    try:
        module = importlib.import_module(module_path.strip())
        builder = getattr(module, func_name.strip())
    except Exception as e:
        raise ImportError(f"[ERROR] Failed to load '{class_path}': {e}")

    return builder


def build_series(short_name: str, p: int, N: int) -> MultiPowerSeries:
    series = get_family(short_name)(p, N)
    logger.info(f"Built {short_name}(p={p}, N={N}) with {len(series)} terms.")
    return series
