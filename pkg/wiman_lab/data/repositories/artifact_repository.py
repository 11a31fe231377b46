import json
import logging
import math
from pathlib import Path
from threading import current_thread
from typing import Union

import numpy as np
import pandas as pd

from wiman_lab.core.errors import ManifestError

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.12g"
SUMMARY_FILE = "summary.json"
MANIFEST_FILE = "manifest.json"

PathLike = Union[str, Path]


def write_text(path: Path, text: str) -> None:
    """Single write seam for every artifact (monkeypatchable in tests)."""
    path.write_text(text, encoding="utf-8")


def _ensure_dir(out_dir: PathLike) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return out_dir


def _check_finite(obj, where: str = "$") -> None:
    if isinstance(obj, float) and not math.isfinite(obj):
        raise ValueError(f"[ERROR] non-finite value {obj!r} at {where} cannot be written to JSON.")
    if isinstance(obj, dict):
        for k, v in obj.items():
            _check_finite(v, f"{where}.{k}")
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _check_finite(v, f"{where}[{i}]")


def _dumps(obj: dict) -> str:
    _check_finite(obj)
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _check_finite_rows(rows: pd.DataFrame, name: str) -> None:
    numeric = rows.select_dtypes(include="number")
    bad = ~np.isfinite(numeric.to_numpy(dtype=float))
    if bad.any():
        row, col = (int(i) for i in np.argwhere(bad)[0])
        raise ValueError(
            f"[ERROR] non-finite value {float(numeric.iat[row, col])!r} in column '{numeric.columns[col]}' "
            f"cannot be written to {name}.csv."
        )


def save_rows_csv(rows: pd.DataFrame, out_dir: PathLike, name: str) -> Path:
    """
    Save a result table as ``<out_dir>/<name>.csv`` in its canonical row order
    (the order of the frame's leading columns).
    """
    _check_finite_rows(rows, name)
    path = _ensure_dir(out_dir) / f"{name}.csv"
    ordered = rows.sort_values(list(rows.columns[:1]), kind="mergesort") if len(rows.columns) else rows
    write_text(path, ordered.to_csv(index=False, float_format=FLOAT_FORMAT))
    logger.info(f"[{current_thread().name}] Saved {len(rows)} rows to {path}")
    return path


def save_summary_json(summary: dict, out_dir: PathLike, name: str = SUMMARY_FILE) -> Path:
    path = _ensure_dir(out_dir) / name
    write_text(path, _dumps(summary))
    logger.info(f"[{current_thread().name}] Saved summary to {path}")
    return path


def save_manifest(manifest: dict, out_dir: PathLike) -> Path:
    path = _ensure_dir(out_dir) / MANIFEST_FILE
    write_text(path, _dumps(manifest))
    logger.info(f"Saved manifest to {path}")
    return path


def load_manifest(path: PathLike) -> dict:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ManifestError(f"[ERROR] manifest '{path}' does not exist.")
    except json.JSONDecodeError as e:
        raise ManifestError(f"[ERROR] manifest '{path}' is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise ManifestError(f"[ERROR] manifest '{path}' must hold a JSON object.")
    return data
