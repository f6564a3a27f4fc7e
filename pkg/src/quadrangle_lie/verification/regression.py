"""Frozen values derived by brute force: counts, weight multiplicities, table digests.

The regression file is JSON. A value that is null or missing fails the
regression suite; ``freeze`` fills in every key from a fresh computation.
"""

import json
import logging
from collections.abc import Iterable
from dataclasses import replace
from pathlib import Path
from typing import Any

from quadrangle_lie.geometry.rootbases import enumerate_phi
from quadrangle_lie.geometry.weyl import order3_in_normalizer
from quadrangle_lie.liealg.operators import cartan_op
from quadrangle_lie.liealg.subalgebra import fold_pattern, ideal_dimension, ideal_scan, weight_decomposition
from quadrangle_lie.liealg.tables import structure_table
from quadrangle_lie.verification.context import SuiteContext

logger = logging.getLogger("quadrangle-lie")

REGRESSION_VERSION = 1
HEADER_KEYS = ("version", "line")
VALUE_KEYS = (
    "order3_in_normalizer",
    "fold_pattern",
    "weight_multiplicities",
    "g2_table_sha256",
    "g2_ideal_dimensions",
    "e6_cartan_ideal_dimension",
)


class RegressionError(ValueError):
    """Raised when the regression file is missing or malformed."""

    pass


def load_regression(path: Path) -> dict[str, Any]:
    """
    Read the regression file.

    Raises:
        RegressionError: If the file is missing, unreadable or has the wrong version
    """
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise RegressionError(f"Cannot read regression file {path}: {e}") from e
    if not isinstance(data, dict) or data.get("version") != REGRESSION_VERSION:
        raise RegressionError(f"Unsupported regression file {path}")
    return data


def _value(ctx: SuiteContext, key: str) -> Any:
    match key:
        case "order3_in_normalizer":
            return len(order3_in_normalizer(ctx.group, ctx.line))
        case "fold_pattern":
            return {f"{a},{b}": n for (a, b), n in fold_pattern(ctx.group, ctx.line).items()}
        case "weight_multiplicities":
            return weight_decomposition(ctx.g2()).nonzero_multiplicities
        case "g2_table_sha256":
            return structure_table(ctx.g2()).digest()
        case "g2_ideal_dimensions":
            return ideal_scan(ctx.g2())
        case "e6_cartan_ideal_dimension":
            return ideal_dimension(ctx.e6(), cartan_op(enumerate_phi()[0].s))
        case _:
            raise RegressionError(f"Unknown regression key: {key!r}")


def compute_regression(ctx: SuiteContext, line_id: int = 0, keys: Iterable[str] | None = None) -> dict[str, Any]:
    """
    Compute regression values on line ``line_id`` with the automatic choice of d.

    Args:
        ctx: Context supplying the operator table and seed
        line_id: Line the values refer to
        keys: Keys to compute (header keys are skipped; all values by default)
    """
    frozen_ctx = ctx if (ctx.line_id, ctx.d_policy) == (line_id, "auto") else replace(
        ctx, line_id=line_id, d_policy="auto", _cache={}
    )
    selected = VALUE_KEYS if keys is None else [k for k in keys if k not in HEADER_KEYS]
    return {key: _value(frozen_ctx, key) for key in selected}


def compare_regression(expected: dict[str, Any], actual: dict[str, Any]) -> dict[str, tuple[Any, Any]]:
    """Pairs (expected, actual) for every frozen, non-null key."""
    return {
        key: (value, actual.get(key))
        for key, value in expected.items()
        if key not in HEADER_KEYS and value is not None
    }


def freeze(ctx: SuiteContext, path: Path, line_id: int = 0) -> dict[str, Any]:
    """Recompute every value and write the regression file."""
    data: dict[str, Any] = {"version": REGRESSION_VERSION, "line": line_id}
    data.update(compute_regression(ctx, line_id))
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
    logger.info(f"Regression values frozen to {path}")
    return data
