"""Desk-scale resource limits, overridable through the environment."""

import os

DEFAULT_ENUM_CAP = 200_000
DEFAULT_MAX_DEGREE = 8


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    value = int(raw)
    if value < 1:
        raise ValueError(f"{name} must be a positive integer, got {raw!r}")
    return value


def enum_cap():
    """Maximum number of words a single enumeration may produce."""
    return _env_int("RSALG_ENUM_CAP", DEFAULT_ENUM_CAP)


def max_degree():
    return _env_int("RSALG_MAX_DEGREE", DEFAULT_MAX_DEGREE)
