"""
Environment-backed settings.

Values come from the process environment (optionally seeded from a .env
file) with defaults suitable for desk-scale runs.
"""

import os
from dataclasses import dataclass

from dotenv import load_dotenv

from .errors import InvalidArgumentError

# Load environment variables from .env file
load_dotenv()

DEFAULT_CAP_CYCLES = 1_000_000
DEFAULT_MAX_D = 8
DEFAULT_MAX_D_DOUBLE = 4
DEFAULT_MAX_N_DIFF = 22
DEFAULT_MAX_N_SUM = 10
DEFAULT_WORKERS = 4
DEFAULT_CROSSCHECK_SAMPLES = 1000


@dataclass(frozen=True)
class Settings:
    """Process-wide limits and tuning knobs."""

    cap_cycles: int = DEFAULT_CAP_CYCLES
    max_d: int = DEFAULT_MAX_D
    max_d_double: int = DEFAULT_MAX_D_DOUBLE
    max_n_diff: int = DEFAULT_MAX_N_DIFF
    max_n_sum: int = DEFAULT_MAX_N_SUM
    workers: int = DEFAULT_WORKERS
    crosscheck_samples: int = DEFAULT_CROSSCHECK_SAMPLES
    log_level: str = "WARNING"


def _int_from_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError:
        raise InvalidArgumentError(f"{name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise InvalidArgumentError(f"{name} must be positive, got {value}")
    return value


def get_settings() -> Settings:
    """
    Read settings from the environment.

    The environment is re-read on every call so that tests and long-lived
    callers see updates.

    Returns:
        A frozen Settings instance

    Raises:
        InvalidArgumentError: If a numeric variable does not parse
    """
    return Settings(
        cap_cycles=_int_from_env("CONVOPOLY_CAP_CYCLES", DEFAULT_CAP_CYCLES),
        max_d=_int_from_env("CONVOPOLY_MAX_D", DEFAULT_MAX_D),
        max_d_double=_int_from_env("CONVOPOLY_MAX_D_DOUBLE", DEFAULT_MAX_D_DOUBLE),
        max_n_diff=_int_from_env("CONVOPOLY_MAX_N_DIFF", DEFAULT_MAX_N_DIFF),
        max_n_sum=_int_from_env("CONVOPOLY_MAX_N_SUM", DEFAULT_MAX_N_SUM),
        workers=_int_from_env("CONVOPOLY_WORKERS", DEFAULT_WORKERS),
        crosscheck_samples=_int_from_env(
            "CONVOPOLY_CROSSCHECK_SAMPLES", DEFAULT_CROSSCHECK_SAMPLES
        ),
        log_level=os.getenv("CONVOPOLY_LOG_LEVEL", "WARNING").upper(),
    )
