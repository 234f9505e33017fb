"""
Configuration settings for the NOMA post-SIC analysis server
환경변수(.env)와 key=value 설정 파일에서 기본값을 읽어옵니다
"""

import logging
import os
import sys
from typing import Any, Callable, Dict, Optional

from dotenv import load_dotenv

from services.errors import ConfigError

# Load environment variables
load_dotenv()


def _env(name: str, default: Any, cast: Callable[[str], Any] = float) -> Any:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return cast(raw)
    except ValueError as e:
        raise ConfigError(name, f"invalid value {raw!r}: {e}")


# Scenario defaults (Ω=1 as in the numerical results)
DEFAULT_ALPHA1 = _env("NOMA_ALPHA1", 0.8)
DEFAULT_SNR_DB = _env("NOMA_SNR_DB", 10.0)
DEFAULT_OMEGA = _env("NOMA_OMEGA", 1.0)
DEFAULT_RATE = _env("NOMA_RATE", 1.0)
DEFAULT_ZETA = _env("NOMA_ZETA", 0.0)

# Monte Carlo Configuration
DEFAULT_SEED = _env("NOMA_SEED", 2024, int)
DEFAULT_MC_SAMPLES = _env("NOMA_MC_SAMPLES", 10_000_000, int)
DEFAULT_MC_CHUNK = _env("NOMA_MC_CHUNK", 2 ** 20, int)
DEFAULT_MC_BINS = _env("NOMA_MC_BINS", 200, int)
DEFAULT_MC_WORKERS = _env("NOMA_MC_WORKERS", min(8, os.cpu_count() or 1), int)

# Quadrature Configuration
QUAD_TOL = _env("NOMA_QUAD_TOL", 1e-9)
LAGUERRE_ORDER = _env("NOMA_LAGUERRE_ORDER", 64, int)

# Server Configuration
SERVER_HOST = os.getenv("NOMA_SERVER_HOST", "0.0.0.0")
SERVER_PORT = _env("NOMA_SERVER_PORT", 3001, int)

LOG_LEVEL = os.getenv("NOMA_LOG_LEVEL", "INFO").upper()

# Flat key=value config file keys -> parser
CONFIG_KEYS: Dict[str, Callable[[str], Any]] = {
    "alpha1": float,
    "snr_db": float,
    "omega": float,
    "rate": float,
    "zeta": float,
    "seed": int,
    "samples": int,
}


def defaults() -> Dict[str, Any]:
    """Resolved defaults for every config key (environment already applied)"""
    return {
        "alpha1": DEFAULT_ALPHA1,
        "snr_db": DEFAULT_SNR_DB,
        "omega": DEFAULT_OMEGA,
        "rate": DEFAULT_RATE,
        "zeta": DEFAULT_ZETA,
        "seed": DEFAULT_SEED,
        "samples": DEFAULT_MC_SAMPLES,
    }


def parse_config_text(text: str) -> Dict[str, Any]:
    """
    Parse a flat key=value config

    Args:
        text: file contents; '#' starts a comment, blank lines are ignored

    Returns:
        dict of typed values for the keys present
    """
    values: Dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected key=value, got {line!r}")
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(key, "unknown config key")
        try:
            values[key] = CONFIG_KEYS[key](raw)
        except ValueError:
            raise ConfigError(key, f"cannot parse {raw!r}")
    return values


def load_config_file(path: str) -> Dict[str, Any]:
    """Read a key=value config file from disk"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            return parse_config_text(f.read())
    except OSError as e:
        raise ConfigError("config", f"cannot read {path}: {e}")


def resolve_config(file_values: Optional[Dict[str, Any]] = None,
                   overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """Precedence: overrides (flags) > config file > environment/defaults"""
    resolved = defaults()
    resolved.update(file_values or {})
    resolved.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return resolved


def format_config(values: Dict[str, Any]) -> str:
    """Inverse of parse_config_text for the known keys"""
    return "\n".join(f"{key}={values[key]!r}" for key in CONFIG_KEYS if key in values) + "\n"


def configure_logging(level: Optional[str] = None) -> None:
    """Single stderr handler so stdout stays clean for CSV output"""
    logging.basicConfig(
        level=getattr(logging, (level or LOG_LEVEL), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
