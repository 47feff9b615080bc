"""
Runtime configuration.

Values come from the environment (optionally a .env file at the project
root) using the DIVFIELD_ prefix; command-line flags override them.
"""
from pathlib import Path
import logging
import os
import sys

from dotenv import load_dotenv

ROOT = Path(__file__).resolve().parents[1]
load_dotenv(ROOT / ".env")

DB_URL = os.getenv("DIVFIELD_DB_URL", f"sqlite:///{ROOT / 'db' / 'divfield.db'}")
OUTPUT_DIR = Path(os.getenv("DIVFIELD_OUTPUT_DIR", str(ROOT / "outputs")))

THREADS = int(os.getenv("DIVFIELD_THREADS", str(os.cpu_count() or 1)))
SEED = int(os.getenv("DIVFIELD_SEED", "11"))

MAX_Q = int(os.getenv("DIVFIELD_MAX_Q", "1000000"))
ORACLE_MAX_W = int(os.getenv("DIVFIELD_ORACLE_MAX_W", "1000000"))
ORACLE_MAX_STEPS = int(os.getenv("DIVFIELD_ORACLE_MAX_STEPS", "100000000"))
BASIS_RETRIES = int(os.getenv("DIVFIELD_BASIS_RETRIES", "200"))
TATE_PRECISION = int(os.getenv("DIVFIELD_TATE_PRECISION", "25"))

LOG_LEVEL = os.getenv("DIVFIELD_LOG_LEVEL", "WARNING")
LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


def setup_logging(level: str | int | None = None, quiet: bool = False) -> None:
    """Log to stderr. Replaces handlers installed by imported libraries."""
    level = level or LOG_LEVEL
    if isinstance(level, str):
        name = level.upper()
        level = logging.getLevelName(name)
        if not isinstance(level, int):
            raise ValueError(f"unknown log level {name!r}")
    if quiet:
        level = max(level, logging.WARNING)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)
