"""
Plain-text series format:

    p N
    n_1 ... n_p log_modulus phase
    ...

Floats are written with ``repr`` (shortest round-trip form), so a save/load
cycle reproduces the table exactly.
"""
import logging
from pathlib import Path
from typing import Union

import numpy as np

from wiman_lab.core.domain.series import MultiPowerSeries

logger = logging.getLogger(__name__)


def dumps(series: MultiPowerSeries) -> str:
    lines = [f"{series.dimension} {series.truncation}"]
    for n, lm, ph in zip(series.indices.tolist(), series.log_modulus.tolist(), series.phase.tolist()):
        lines.append(" ".join(str(e) for e in n) + f" {lm!r} {ph!r}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> MultiPowerSeries:
    rows = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise ValueError("[ERROR] series text must start with a 'p N' header line.")
    try:
        p, N = int(rows[0][0]), int(rows[0][1])
    except ValueError:
        raise ValueError(f"[ERROR] malformed header {' '.join(rows[0])!r}.")

    body = rows[1:]
    bad = [i + 2 for i, row in enumerate(body) if len(row) != p + 2]
    if bad:
        raise ValueError(f"[ERROR] expected {p + 2} fields per term line; bad lines: {bad[:5]}.")
    if not body:
        return MultiPowerSeries(p, N, np.zeros((0, p), dtype=np.int64), np.zeros(0), np.zeros(0))

    indices = np.asarray([[int(e) for e in row[:p]] for row in body], dtype=np.int64)
    log_modulus = np.asarray([float(row[p]) for row in body])
    phase = np.asarray([float(row[p + 1]) for row in body])
    return MultiPowerSeries(p, N, indices, log_modulus, phase)


def save_series(series: MultiPowerSeries, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(dumps(series), encoding="utf-8")
    logger.info(f"Saved series (p={series.dimension}, N={series.truncation}, {len(series)} terms) to {path}")
    return path


def load_series(path: Union[str, Path]) -> MultiPowerSeries:
    series = loads(Path(path).read_text(encoding="utf-8"))
    logger.info(f"Loaded series (p={series.dimension}, N={series.truncation}, {len(series)} terms) from {path}")
    return series
