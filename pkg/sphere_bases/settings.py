from __future__ import annotations

import os
from pathlib import Path

from dotenv import load_dotenv

from .errors import ConfigError


BASE_DIR = Path(__file__).resolve().parent.parent
load_dotenv(BASE_DIR / ".env")

TRUE_VALUES = {"1", "true", "yes", "on"}


def env(*names: str, default: str = "") -> str:
    for name in names:
        value = os.getenv(name)
        if value:
            return value
    return default


def env_int(*names: str, default: int) -> int:
    raw = env(*names, default=str(default))
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{names[0]} must be an integer, got {raw!r}") from None


def env_bool(*names: str, default: bool = False) -> bool:
    return env(*names, default="true" if default else "false").lower() in TRUE_VALUES


# Directory for persisted bases; empty disables the cache.
CACHE_DIR = env("SPHERE_BASES_CACHE_DIR", "SB_CACHE_DIR")
SEED = env_int("SPHERE_BASES_SEED", "SB_SEED", default=20181)
NODE_BUDGET = env_int("SPHERE_BASES_NODE_BUDGET", "SB_NODE_BUDGET", default=200_000)
WORKERS = env_int("SPHERE_BASES_WORKERS", "SB_WORKERS", default=1)
LOG_LEVEL = env("SPHERE_BASES_LOG_LEVEL", "LOG_LEVEL", default="WARNING").upper()
PROGRESS = env_bool("SPHERE_BASES_PROGRESS", default=False)

# Size guards
MAX_CUBE_N = env_int("SPHERE_BASES_MAX_CUBE_N", default=8)
MAX_SIMPLEX_N = env_int("SPHERE_BASES_MAX_SIMPLEX_N", default=10)
MAX_ROBUST_N = env_int("SPHERE_BASES_MAX_ROBUST_N", default=5)
