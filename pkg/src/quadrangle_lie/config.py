"""Configuration management for quadrangle-lie."""

import os
from pathlib import Path

DEFAULT_GROUP_LIMIT = 60000
DEFAULT_JACOBI_SAMPLES = 10000
DEFAULT_SEED = 20240601


def get_log_level() -> str:
    """
    Get logging level from environment or use default.

    Returns:
        str: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
    """
    return os.getenv("QUADRANGLE_LIE_LOG_LEVEL", "INFO").upper()


def get_output_dir() -> Path:
    """
    Get the directory used for exports and verification reports.

    Returns:
        Path: Absolute path of the output directory (not created here)
    """
    env_path = os.getenv("QUADRANGLE_LIE_OUTPUT_DIR")
    if env_path:
        return Path(env_path).expanduser().resolve()
    return (Path.cwd() / "quadrangle-lie-out").resolve()


def get_group_limit() -> int:
    """
    Get the size guard for permutation-group closure.

    Returns:
        int: Maximum number of elements a closure may reach
    """
    return _get_int("QUADRANGLE_LIE_GROUP_LIMIT", DEFAULT_GROUP_LIMIT)


def get_jacobi_samples() -> int:
    """
    Get the number of random triples for sampled Jacobi checks.

    Returns:
        int: Number of triples
    """
    return _get_int("QUADRANGLE_LIE_JACOBI_SAMPLES", DEFAULT_JACOBI_SAMPLES)


def get_seed() -> int:
    """
    Get the seed shared by every sampled check.

    Returns:
        int: Random seed
    """
    return _get_int("QUADRANGLE_LIE_SEED", DEFAULT_SEED)


def get_regression_path() -> Path:
    """
    Get the path of the frozen regression values.

    Returns:
        Path: Path to the regression JSON file
    """
    env_path = os.getenv("QUADRANGLE_LIE_REGRESSION_PATH")
    if env_path:
        return Path(env_path).expanduser().resolve()
    return Path(__file__).parent / "verification" / "regression.json"


def _get_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or not value.strip():
        return default
    try:
        return int(value)
    except ValueError as e:
        raise ValueError(f"{name} must be an integer, got {value!r}") from e
