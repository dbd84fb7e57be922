# -*- coding: utf-8 -*-
"""
Runtime configuration for regular-loops.

Values come from environment variables (a local .env file is merged first).
Getters never fail on malformed values: they fall back to the default and
clamp into a sane range.
"""
import os
import sys
import logging
from dataclasses import dataclass, fields, replace
from typing import Any, Dict, Optional

from dotenv import load_dotenv

try:
    from regular_loops import __version__ as PACKAGE_VERSION
except ImportError:
    PACKAGE_VERSION = "1.0.0"

# Load environment variables from .env file
load_dotenv()

logger = logging.getLogger(__name__)

APP_NAME = "Regular Loops"
APP_DESCRIPTION = "Non-backtracking loop census and birthday-transition experiments on random regular graphs"
SUPPORTED_MODELS = ["configuration", "uniform-simple"]
SUPPORTED_METHODS = ["dfs", "exact-trace", "spectral"]

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def configure_logging(level: Optional[str] = None) -> None:
    """Configure root logging on stderr; LOG_LEVEL wins when no level is given"""
    level_name = (level or os.getenv("LOG_LEVEL", "INFO")).upper()
    logging.basicConfig(
        level=getattr(logging, level_name, logging.INFO),
        format=LOG_FORMAT,
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


def _int_from_env(name: str, default: int, minimum: int, maximum: int) -> int:
    """Read an integer variable, clamped to [minimum, maximum]"""
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(float(raw.strip()))
    except (ValueError, TypeError):
        logger.warning(f"Ignoring malformed {name}={raw!r}, using {default}")
        return default
    return max(minimum, min(maximum, value))


def get_worker_count() -> int:
    """
    Number of worker processes used by sweeps.

    Environment Variable: RLG_THREADS
    - Default: 1 (everything runs in-process)
    - Valid range: 1-256 (values outside this range are clamped)
    """
    return _int_from_env("RLG_THREADS", 1, 1, 256)


@dataclass(frozen=True)
class Budgets:
    """Resource limits; a method whose cost exceeds its limit is refused, never approximated"""
    enumeration: int = 10_000_000
    oracle: int = 2_000_000
    dfs: int = 50_000_000
    trace: int = 20_000
    direct: int = 2000
    rejection: int = 1000

    @classmethod
    def from_env(cls) -> "Budgets":
        defaults = cls()
        return cls(
            enumeration=_int_from_env("RLG_BUDGET_ENUMERATION", defaults.enumeration, 1, 10**12),
            oracle=_int_from_env("RLG_BUDGET_ORACLE", defaults.oracle, 1, 10**12),
            dfs=_int_from_env("RLG_BUDGET_DFS", defaults.dfs, 1, 10**15),
            trace=_int_from_env("RLG_BUDGET_TRACE", defaults.trace, 1, 10**12),
            direct=_int_from_env("RLG_BUDGET_DIRECT", defaults.direct, 1, 10**6),
            rejection=_int_from_env("RLG_BUDGET_REJECTION", defaults.rejection, 1, 10**9),
        )

    def with_overrides(self, **overrides: Optional[int]) -> "Budgets":
        """Return a copy with every non-None override applied"""
        known = {f.name for f in fields(self)}
        changes = {k: int(v) for k, v in overrides.items() if v is not None and k in known}
        return replace(self, **changes)

    def as_dict(self) -> Dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def get_app_info() -> Dict[str, Any]:
    """Application information for --info and --version"""
    return {
        "name": APP_NAME,
        "version": PACKAGE_VERSION,
        "description": APP_DESCRIPTION,
        "models": SUPPORTED_MODELS,
        "methods": SUPPORTED_METHODS,
        "workers": get_worker_count(),
        "budgets": Budgets.from_env().as_dict(),
        "python_version": f"{sys.version_info.major}.{sys.version_info.minor}.{sys.version_info.micro}",
        "log_level": os.getenv("LOG_LEVEL", "INFO").upper(),
    }


def format_version_info() -> str:
    """Format version information for the terminal"""
    info = get_app_info()
    budget_lines = "\n".join(f"- {name}: {value}" for name, value in info["budgets"].items())
    return f"""
{info['name']} v{info['version']}
{info['description']}

System Information:
- Python: {info['python_version']}
- Workers (RLG_THREADS): {info['workers']}
- Log level: {info['log_level']}

Budgets:
{budget_lines}

Graph models: {', '.join(info['models'])}
Counting methods: {', '.join(info['methods'])}
"""
