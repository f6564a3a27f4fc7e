"""Tests for GF(2) linear algebra on bitsets."""

from hypothesis import given
from hypothesis import strategies as st

from quadrangle_lie.liealg.gf2 import Echelon, iter_bits, kernel, rank

vectors = st.lists(st.integers(min_value=0, max_value=(1 << 40) - 1), max_size=12)


def test_should_iterate_set_bits_lowest_first() -> None:
    """Test iter_bits."""
    assert list(iter_bits(0b101001)) == [0, 3, 5]
    assert list(iter_bits(0)) == []


def test_should_track_rank_and_dependencies() -> None:
    """Test insert on independent and dependent vectors."""
    echelon = Echelon()
    assert echelon.insert(0b011) is None
    assert echelon.insert(0b110) is None
    assert echelon.insert(0b101) == 0b111
    assert echelon.rank == 2
    assert echelon.inserted == 3


def test_should_express_vector_in_inserted_basis() -> None:
    """Test coordinates inside and outside the span."""
    echelon = Echelon([0b0011, 0b0110, 0b1000])
    assert echelon.coordinates(0b1101) == 0b111
    assert echelon.coordinates(0b0001) is None
    assert echelon.contains(0b0101)


def test_should_give_equal_canonical_forms_for_equal_spans() -> None:
    """Test canonical bases."""
    assert Echelon([0b011, 0b110]).canonical() == Echelon([0b101, 0b011]).canonical()
    assert Echelon([0b011]).canonical() != Echelon([0b101]).canonical()


def test_should_return_kernel_masks() -> None:
    """Test kernel on images with two relations."""
    relations = kernel([0b01, 0b10, 0b11, 0b01])
    assert relations == [0b0111, 0b1001]


@given(vectors)
def test_should_bound_rank_by_count(values: list[int]) -> None:
    """Test rank ≤ number of vectors and rank + kernel = count."""
    r = rank(values)
    assert r <= len(values)
    assert r + len(kernel(values)) == len(values)


@given(vectors)
def test_should_contain_every_inserted_vector(values: list[int]) -> None:
    """Test that coordinates reconstruct each inserted vector."""
    echelon = Echelon(values)
    for v in values:
        mask = echelon.coordinates(v)
        assert mask is not None
        total = 0
        for i in iter_bits(mask):
            total ^= values[i]
        assert total == v
