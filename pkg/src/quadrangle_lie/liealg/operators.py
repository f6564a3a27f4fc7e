"""Endomorphisms of the 27-dimensional module A = ⟨e_x | x ∈ ℙ⟩ over GF(2).

Matrices act on row vectors: e_x·X is row x of X, so products compose left
to right, matching the right actions used for the Weyl group. Row x of an
``Endo`` is a 27-bit mask of its nonzero columns.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cache, reduce
from operator import xor

from quadrangle_lie.geometry.quadrangle import POINT_COUNT, bilinear_form, build_catalog
from quadrangle_lie.geometry.rootbases import PhiCatalog, RootBase, enumerate_phi
from quadrangle_lie.geometry.weyl import WeylElem
from quadrangle_lie.liealg.gf2 import Echelon, iter_bits, rank

FLAT_BITS = POINT_COUNT * POINT_COUNT
_ROW_MASK = (1 << POINT_COUNT) - 1


@dataclass(frozen=True)
class Endo:
    """
    A 27×27 matrix over GF(2), indexed by point ids.

    Attributes:
        rows: rows[x] has bit y set iff entry (x, y) is 1
    """

    rows: tuple[int, ...]

    @classmethod
    def zero(cls) -> "Endo":
        return cls((0,) * POINT_COUNT)

    @classmethod
    def identity(cls) -> "Endo":
        return cls(tuple(1 << x for x in range(POINT_COUNT)))

    @classmethod
    def from_flat(cls, flat: int) -> "Endo":
        return cls(tuple((flat >> (POINT_COUNT * x)) & _ROW_MASK for x in range(POINT_COUNT)))

    @classmethod
    def from_entries(cls, entries: Iterable[tuple[int, int]]) -> "Endo":
        rows = [0] * POINT_COUNT
        for x, y in entries:
            rows[x] ^= 1 << y
        return cls(tuple(rows))

    @property
    def flat(self) -> int:
        """The 729-bit vector: row x occupies bits 27x .. 27x + 26."""
        return reduce(xor, (row << (POINT_COUNT * x) for x, row in enumerate(self.rows)), 0)

    def entry(self, x: int, y: int) -> int:
        return (self.rows[x] >> y) & 1

    def entries(self) -> list[tuple[int, int]]:
        return [(x, y) for x, row in enumerate(self.rows) for y in iter_bits(row)]

    def __bool__(self) -> bool:
        return any(self.rows)

    def __add__(self, other: "Endo") -> "Endo":
        return Endo(tuple(a ^ b for a, b in zip(self.rows, other.rows, strict=True)))

    def __matmul__(self, other: "Endo") -> "Endo":
        return Endo(
            tuple(reduce(xor, (other.rows[y] for y in iter_bits(row)), 0) for row in self.rows)
        )

    def scale(self, bit: int) -> "Endo":
        return self if bit & 1 else Endo.zero()

    def transpose(self) -> "Endo":
        return Endo.from_entries((y, x) for x, y in self.entries())

    def is_diagonal(self) -> bool:
        return all(row & ~(1 << x) == 0 for x, row in enumerate(self.rows))

    def rank(self) -> int:
        return rank(self.rows)

    def flipped(self, x: int, y: int) -> "Endo":
        """Copy with entry (x, y) toggled."""
        rows = list(self.rows)
        rows[x] ^= 1 << y
        return Endo(tuple(rows))


def bracket(a: Endo, b: Endo) -> Endo:
    """[X, Y] = XY − YX, which is XY + YX in characteristic 2."""
    return (a @ b) + (b @ a)


def cartan_op(v: int) -> Endo:
    """H_v: diagonal with entry (x|v) at point x."""
    catalog = build_catalog()
    return Endo(tuple((bilinear_form(code, v) << x) for x, code in enumerate(catalog.points)))


def root_op(base: RootBase) -> Endo:
    """R_Δ: e_x ↦ e_{x + s_Δ} for x ∈ Δ, every other basis vector to 0."""
    catalog = build_catalog()
    return Endo.from_entries(
        (x, catalog.point_id(catalog.points[x] ^ base.s)) for x in base.points
    )


def permutation_matrix(w: WeylElem) -> Endo:
    """P_w with e_x·P_w = e_{x^w}."""
    return Endo.from_entries(enumerate(w.perm))


def conjugate_by(w: WeylElem, a: Endo) -> Endo:
    """P_w⁻¹ X P_w: entry (x, y) of X moves to (x^w, y^w)."""
    rows = [0] * POINT_COUNT
    for x, row in enumerate(a.rows):
        rows[w.perm[x]] = reduce(xor, (1 << w.perm[y] for y in iter_bits(row)), 0)
    return Endo(tuple(rows))


def span_rank(ops: Sequence[Endo]) -> int:
    """Rank over GF(2) of the flattened operators."""
    return rank(op.flat for op in ops)


def span_echelon(ops: Sequence[Endo]) -> tuple[int, tuple[Endo, ...]]:
    """
    Rank and fully reduced basis of the span of ``ops``.

    Returns:
        tuple[int, tuple[Endo, ...]]: (rank, basis ordered by pivot); operator
        lists with the same span give the same basis
    """
    echelon = Echelon(op.flat for op in ops)
    return echelon.rank, tuple(Endo.from_flat(v) for v in echelon.canonical())


@dataclass(frozen=True)
class OperatorTable:
    """
    The 72 Lie roots, indexed by root-base id.

    Verification runs read R_Δ from a table rather than rebuilding it, so a
    deliberately corrupted table can be fed to the checks.
    """

    roots: tuple[Endo, ...]

    def root(self, base: RootBase | int) -> Endo:
        return self.roots[base if isinstance(base, int) else base.id]

    def with_flipped_entry(self, base_id: int, x: int, y: int) -> "OperatorTable":
        roots = list(self.roots)
        roots[base_id] = roots[base_id].flipped(x, y)
        return OperatorTable(tuple(roots))


@cache
def default_operator_table() -> OperatorTable:
    phi: PhiCatalog = enumerate_phi()
    return OperatorTable(tuple(root_op(base) for base in phi.bases))
