"""Tests for scalar extension to GF(2^k)."""

from itertools import combinations

import numpy as np
import pytest

from quadrangle_lie.geometry.fields import scalar_field
from quadrangle_lie.liealg.extension import (
    ExtendedSpan,
    endo_bits,
    lift,
    span_rank_over,
    verify_closure_over,
)
from quadrangle_lie.liealg.operators import Endo, OperatorTable, bracket
from quadrangle_lie.liealg.subalgebra import MixedFieldError, Subalgebra


def test_should_expand_operator_to_bit_matrix() -> None:
    """Test endo_bits on a single entry."""
    bits = endo_bits(Endo.from_entries([(2, 5)]))
    assert bits.shape == (27, 27)
    assert bits[2, 5] == 1
    assert int(bits.sum()) == 1


def test_should_lift_into_field_arrays(table: OperatorTable) -> None:
    """Test lift keeps 0/1 entries and carries the field type."""
    lifted = lift(table.root(0), 3)
    assert type(lifted) is scalar_field(3).galois_type
    assert np.array_equal(lifted.view(np.ndarray), endo_bits(table.root(0)))


def test_should_keep_rank_over_extension(table: OperatorTable) -> None:
    """Test that six independent roots stay independent over GF(4)."""
    ops = [lift(table.root(i), 2) for i in range(6)]
    assert span_rank_over(ops) == 6
    assert span_rank_over([]) == 0


def test_should_refuse_mixed_fields(table: OperatorTable) -> None:
    """Test span_rank_over on arrays from two fields."""
    with pytest.raises(MixedFieldError):
        span_rank_over([lift(table.root(0), 2), lift(table.root(1), 3)])


def test_should_span_g2_over_gf4(g2: Subalgebra) -> None:
    """Test the K-span of G2 has rank 14 and contains its basis."""
    span = ExtendedSpan(g2, 2)
    assert span.rank == 14
    for op in g2.ops[:3]:
        assert span.contains(lift(op, 2))


def test_should_reject_vector_outside_span(g2: Subalgebra) -> None:
    """Test membership of the identity matrix."""
    span = ExtendedSpan(g2, 2)
    assert not span.contains(lift(Endo.identity(), 2))


@pytest.mark.parametrize("degree", [2, 3])
def test_should_stay_closed_over_extension(g2: Subalgebra, degree: int) -> None:
    """Test brackets of random K-combinations stay in the span."""
    assert verify_closure_over(g2, degree, samples=4, seed=11) == []


def test_should_report_basis_pairs_leaving_the_span(g2: Subalgebra) -> None:
    """Test the basis-pair check on two elements whose bracket is outside their span."""
    i, j = next(
        (i, j)
        for i, j in combinations(range(g2.dim), 2)
        if not Subalgebra.from_elements("pair", [g2.basis[i], g2.basis[j]]).contains(
            bracket(g2.basis[i].op, g2.basis[j].op)
        )
    )
    pair = Subalgebra.from_elements("pair", [g2.basis[i], g2.basis[j]])
    failures = verify_closure_over(pair, 2, samples=0)
    assert failures == [f"[{g2.basis[i].label}, {g2.basis[j].label}] leaves the span over GF(2^2)"]


@pytest.mark.slow
def test_should_keep_dl_closed_over_gf256(dl0: Subalgebra) -> None:
    """Test D_L over the largest supported field."""
    assert verify_closure_over(dl0, 8, samples=4, seed=5) == []
