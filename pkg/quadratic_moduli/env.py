import os

from dotenv import load_dotenv

load_dotenv()


def _get_int_env(key: str, default: int, minimum: int = 0) -> int:
    raw = os.getenv(key)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{key} environment variable must be an integer, got {raw!r}")
    if value < minimum:
        raise ValueError(f"{key} environment variable must be >= {minimum}, got {value}")
    return value


LOG_LEVEL: str = os.getenv("QM_LOG_LEVEL", "WARNING").upper()

# Desk-scale ceilings for the CLI and HTTP surfaces.
MAX_FAMILY_N: int = _get_int_env("QM_MAX_FAMILY_N", 16, minimum=1)
DEFAULT_COEFF_BOUND: int = _get_int_env("QM_DEFAULT_COEFF_BOUND", 3)
DEFAULT_EQ_BOUND: int = _get_int_env("QM_DEFAULT_EQ_BOUND", 6)

TRACE_ENDPOINT: str | None = os.getenv("QM_TRACE_ENDPOINT") or None
API_KEY: str | None = os.getenv("QM_API_KEY") or None
API_HOST: str = os.getenv("QM_API_HOST", "127.0.0.1")
API_PORT: int = _get_int_env("QM_API_PORT", 8000, minimum=1)
