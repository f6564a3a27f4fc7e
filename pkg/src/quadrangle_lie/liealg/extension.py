"""Scalar extension to GF(2^k).

All operators have 0/1 entries, so a subalgebra over GF(2) spans a
subalgebra over every GF(2^k). These checks redo the rank and closure
computations with ``galois`` field arrays to confirm it.
"""

import logging
from collections.abc import Sequence
from itertools import combinations

import numpy as np

from quadrangle_lie.config import get_seed
from quadrangle_lie.geometry.fields import scalar_field
from quadrangle_lie.geometry.quadrangle import POINT_COUNT
from quadrangle_lie.liealg.operators import FLAT_BITS, Endo
from quadrangle_lie.liealg.subalgebra import MixedFieldError, Subalgebra

logger = logging.getLogger("quadrangle-lie")

DEFAULT_SAMPLES = 32


def endo_bits(op: Endo) -> np.ndarray:
    """The 27×27 0/1 matrix of ``op`` as a uint8 array."""
    return np.array(
        [[(row >> y) & 1 for y in range(POINT_COUNT)] for row in op.rows], dtype=np.uint8
    )


def lift(op: Endo, degree: int) -> np.ndarray:
    """``op`` as a 27×27 array over GF(2^degree)."""
    return scalar_field(degree).galois_type(endo_bits(op))


def span_rank_over(arrays: Sequence[np.ndarray]) -> int:
    """
    Rank of the flattened matrices over their common field.

    Raises:
        MixedFieldError: If the arrays belong to different fields
    """
    if not arrays:
        return 0
    field_types = {type(a) for a in arrays}
    if len(field_types) != 1:
        raise MixedFieldError(f"Operators over {len(field_types)} different fields")
    gf = field_types.pop()
    stacked = gf(np.stack([np.asarray(a).reshape(-1) for a in arrays]))
    return int(np.linalg.matrix_rank(stacked))


class ExtendedSpan:
    """Membership tests in the K-span of a subalgebra's basis, via its reduced row echelon form."""

    def __init__(self, sub: Subalgebra, degree: int) -> None:
        self.field = scalar_field(degree)
        gf = self.field.galois_type
        self.basis = gf(np.stack([endo_bits(op).reshape(-1) for op in sub.ops]))
        reduced = self.basis.row_reduce()
        nonzero = [r for r in range(reduced.shape[0]) if np.any(reduced[r])]
        self.rows = reduced[nonzero]
        self.pivots = [int(np.flatnonzero(np.asarray(row))[0]) for row in self.rows]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def contains(self, vector: np.ndarray) -> bool:
        flat = vector.reshape(FLAT_BITS)
        residual = flat - flat[self.pivots] @ self.rows
        return not np.any(residual)


def verify_closure_over(
    sub: Subalgebra, degree: int, samples: int = DEFAULT_SAMPLES, seed: int | None = None
) -> list[str]:
    """
    Re-check a subalgebra over GF(2^degree).

    The basis must stay independent over K. Every bracket of two basis
    elements, and the bracket of random K-linear combinations of them,
    must stay in the K-span.

    Returns:
        list: Descriptions of the failures (empty on success)
    """
    span = ExtendedSpan(sub, degree)
    gf = span.field.galois_type
    failures = []
    if span.rank != sub.dim:
        failures.append(f"rank over {span.field.label} is {span.rank}, expected {sub.dim}")
        return failures

    lifted = [lift(op, degree) for op in sub.ops]
    labels = sub.labels
    pairs = list(combinations(range(sub.dim), 2))
    for i, j in pairs:
        x, y = lifted[i], lifted[j]
        if not span.contains(x @ y - y @ x):
            failures.append(f"[{labels[i]}, {labels[j]}] leaves the span over {span.field.label}")

    rng = np.random.default_rng(get_seed() if seed is None else seed)
    for n in range(samples):
        a = gf.Random(sub.dim, seed=rng)
        b = gf.Random(sub.dim, seed=rng)
        x = (a @ span.basis).reshape(POINT_COUNT, POINT_COUNT)
        y = (b @ span.basis).reshape(POINT_COUNT, POINT_COUNT)
        if not span.contains(x @ y - y @ x):
            failures.append(f"sample {n}: bracket of random combinations leaves the span")
    logger.info(
        f"{sub.name} over {span.field.label}: {len(pairs)} basis pairs, "
        f"{samples} samples, {len(failures)} failures"
    )
    return failures
