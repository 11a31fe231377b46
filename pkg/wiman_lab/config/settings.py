from dotenv import load_dotenv
import os
import logging
from typing import Optional

load_dotenv()

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(message)s"


def _int_setting(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"[ERROR] {name} must be an integer, got {raw!r}.")


OUTPUT_DIR = os.getenv("WIMAN_LAB_OUTPUT_DIR") or "results"
WORKERS = _int_setting("WIMAN_LAB_WORKERS", 1)
SEED = _int_setting("WIMAN_LAB_SEED", 7)
LOG_LEVEL = (os.getenv("WIMAN_LAB_LOG_LEVEL") or "INFO").upper()
LOG_FILE = os.getenv("WIMAN_LAB_LOG_FILE") or None

if WORKERS < 1:
    raise ValueError(f"[ERROR] WIMAN_LAB_WORKERS must be >= 1, got {WORKERS}.")


def setup_logging(level: str = LOG_LEVEL, logfile: Optional[str] = LOG_FILE) -> None:
    handlers = [logging.StreamHandler()]
    if logfile:
        handlers.append(logging.FileHandler(logfile))
    logging.basicConfig(level=getattr(logging, level, logging.INFO), format=LOG_FORMAT, handlers=handlers, force=True)
