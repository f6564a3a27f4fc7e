"""GF(2) linear algebra on int bitsets.

A vector is a Python int; bit i is coordinate i. ``Echelon`` keeps one row
per pivot, the pivot being the row's highest set bit, and remembers for
each row which inserted vectors it combines.
"""

from bisect import insort
from collections.abc import Iterable, Iterator


def iter_bits(value: int) -> Iterator[int]:
    """Positions of the set bits of ``value``, lowest first."""
    while value:
        low = value & -value
        yield low.bit_length() - 1
        value ^= low


class Echelon:
    """
    Incremental row echelon form over GF(2).

    ``add`` returns whether the vector was independent; ``reduce`` returns the
    residue and the combination of inserted vectors that was subtracted.
    """

    def __init__(self, vectors: Iterable[int] = ()) -> None:
        self._rows: dict[int, tuple[int, int]] = {}
        self._pivots: list[int] = []
        self._count = 0
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def inserted(self) -> int:
        """Number of vectors offered to ``add`` so far."""
        return self._count

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(self._pivots)

    def reduce(self, vector: int) -> tuple[int, int]:
        """
        Reduce ``vector`` against the stored rows.

        Returns:
            tuple[int, int]: (residue, combination mask over inserted vectors)
        """
        combo = 0
        for pivot in reversed(self._pivots):
            if (vector >> pivot) & 1:
                row, row_combo = self._rows[pivot]
                vector ^= row
                combo ^= row_combo
        return vector, combo

    def insert(self, vector: int) -> int | None:
        """
        Insert a vector.

        Returns:
            int | None: None if the rank grew, otherwise the dependency mask
            (the inserted vectors, this one included, that sum to zero)
        """
        index = self._count
        self._count += 1
        residue, combo = self.reduce(vector)
        if not residue:
            return combo | (1 << index)
        pivot = residue.bit_length() - 1
        self._rows[pivot] = (residue, combo | (1 << index))
        insort(self._pivots, pivot)
        return None

    def add(self, vector: int) -> bool:
        """Insert a vector; True if it increased the rank."""
        return self.insert(vector) is None

    def contains(self, vector: int) -> bool:
        return self.reduce(vector)[0] == 0

    def coordinates(self, vector: int) -> int | None:
        """
        Express ``vector`` in the inserted vectors.

        Returns:
            int | None: Mask of inserted-vector indices summing to ``vector``,
            or None if it is outside the span
        """
        residue, combo = self.reduce(vector)
        return None if residue else combo

    def canonical(self) -> tuple[int, ...]:
        """Fully reduced basis, ascending; equal spans give equal tuples."""
        rows: dict[int, int] = {}
        for position, pivot in enumerate(self._pivots):
            row = self._rows[pivot][0]
            for lower in reversed(self._pivots[:position]):
                if (row >> lower) & 1:
                    row ^= rows[lower]
            rows[pivot] = row
        return tuple(rows[p] for p in self._pivots)


def rank(vectors: Iterable[int]) -> int:
    return Echelon(vectors).rank


def kernel(images: list[int]) -> list[int]:
    """
    Basis of {c : Σ_{i ∈ c} images[i] = 0}, as masks over indices.

    One kernel vector is produced for every image that depends on earlier ones.
    """
    echelon = Echelon()
    result = []
    for image in images:
        dependency = echelon.insert(image)
        if dependency is not None:
            result.append(dependency)
    return result
