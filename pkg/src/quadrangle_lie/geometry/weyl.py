"""The Weyl group W of type E6 as permutations of the 27 points.

Elements act on the right: x^{gh} = (x^g)^h. A permutation ``perm`` stores
the image of point i at index i, so ``compose(g, h)[i] == h[g[i]]``.
"""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from functools import cache, cached_property
from math import lcm

import numpy as np

from quadrangle_lie.config import get_group_limit
from quadrangle_lie.geometry.quadrangle import (
    POINT_COUNT,
    VECTOR_COUNT,
    Line,
    bilinear_form,
    build_catalog,
    quadratic_form,
)
from quadrangle_lie.geometry.rootbases import RootBase, enumerate_phi

logger = logging.getLogger("quadrangle-lie")

WEYL_ORDER = 51840
REFLECTION_COUNT = 36


class WeylError(ValueError):
    """Raised for maps that are not isometries and for invalid group queries."""

    pass


class GroupTooLargeError(WeylError):
    """Raised when a closure exceeds the configured size guard."""

    pass


class Action(StrEnum):
    POINTS = "on-points"
    LINES = "on-lines"
    ROOTBASES = "on-rootbases"


@cache
def _point_basis() -> tuple[tuple[int, ...], tuple[int, ...]]:
    """
    A basis of V made of points, and each vector's coordinates in it.

    Returns:
        tuple: (basis point ids, coordinate bitmask for every vector code)
    """
    catalog = build_catalog()
    basis: list[int] = []
    spanned = {0: 0}
    for pid, code in enumerate(catalog.points):
        if code in spanned:
            continue
        bit = 1 << len(basis)
        basis.append(pid)
        spanned |= {w ^ code: mask | bit for w, mask in spanned.items()}
        if len(spanned) == VECTOR_COUNT:
            break
    return tuple(basis), tuple(spanned[v] for v in range(VECTOR_COUNT))


@dataclass(frozen=True, order=True)
class WeylElem:
    """
    An isometry of (V, Q) stored as the permutation it induces on the points.

    Attributes:
        perm: perm[i] is the id of the image of point i
    """

    perm: tuple[int, ...]

    @classmethod
    def identity(cls) -> "WeylElem":
        return cls(tuple(range(POINT_COUNT)))

    @classmethod
    def from_vector_map(cls, image: Sequence[int]) -> "WeylElem":
        """
        Build an element from the images of all 64 vector codes.

        Raises:
            WeylError: If the map is not a linear isometry
        """
        if len(image) != VECTOR_COUNT or sorted(image) != list(range(VECTOR_COUNT)):
            raise WeylError("Vector map is not a bijection of V")
        for u in range(VECTOR_COUNT):
            if quadratic_form(image[u]) != quadratic_form(u):
                raise WeylError(f"Vector map does not preserve Q at {u}")
            for v in range(u):
                if image[u ^ v] != image[u] ^ image[v]:
                    raise WeylError(f"Vector map is not additive at ({u}, {v})")
        catalog = build_catalog()
        return cls(tuple(catalog.point_id(image[code]) for code in catalog.points))

    def __post_init__(self) -> None:
        if sorted(self.perm) != list(range(POINT_COUNT)):
            raise WeylError("perm is not a permutation of the 27 points")

    def compose(self, other: "WeylElem") -> "WeylElem":
        """self followed by other."""
        return WeylElem(tuple(other.perm[i] for i in self.perm))

    def __mul__(self, other: "WeylElem") -> "WeylElem":
        return self.compose(other)

    def inverse(self) -> "WeylElem":
        inv = [0] * POINT_COUNT
        for i, j in enumerate(self.perm):
            inv[j] = i
        return WeylElem(tuple(inv))

    def power(self, n: int) -> "WeylElem":
        if n < 0:
            return self.inverse().power(-n)
        result = WeylElem.identity()
        for _ in range(n):
            result = result.compose(self)
        return result

    @property
    def is_identity(self) -> bool:
        return self.perm == tuple(range(POINT_COUNT))

    def order(self) -> int:
        """Least n ≥ 1 with g^n = 1, as the lcm of the cycle lengths."""
        seen = [False] * POINT_COUNT
        result = 1
        for start in range(POINT_COUNT):
            length = 0
            i = start
            while not seen[i]:
                seen[i] = True
                i = self.perm[i]
                length += 1
            if length:
                result = lcm(result, length)
        return result

    @cached_property
    def vector_table(self) -> tuple[int, ...]:
        """Images of all 64 vector codes under the linear extension of ``perm``."""
        catalog = build_catalog()
        basis, coords = _point_basis()
        images = [catalog.points[self.perm[p]] for p in basis]
        table = []
        for v in range(VECTOR_COUNT):
            mask, image = coords[v], 0
            for k, w in enumerate(images):
                if (mask >> k) & 1:
                    image ^= w
            table.append(image)
        return tuple(table)

    def vector_image(self, v: int) -> int:
        return self.vector_table[v]

    def is_linear_isometry(self) -> bool:
        """Check that the linear extension agrees with perm on every point and preserves Q."""
        catalog = build_catalog()
        table = self.vector_table
        if any(table[code] != catalog.points[self.perm[i]] for i, code in enumerate(catalog.points)):
            return False
        return all(quadratic_form(table[v]) == quadratic_form(v) for v in range(VECTOR_COUNT))

    def matrix(self) -> tuple[int, ...]:
        """6×6 matrix over GF(2) in the code-bit basis; row i is the image of 1 << i."""
        return tuple(self.vector_table[1 << i] for i in range(6))

    def image_of_line(self, line: Line) -> int:
        return build_catalog().line_id(self.perm[p] for p in line.points)

    def image_of_base(self, base: RootBase) -> RootBase:
        return enumerate_phi().lookup({self.perm[p] for p in base.points})


def reflection(v: int) -> WeylElem:
    """
    The reflection σ_v: x ↦ x + (x|v)v.

    Raises:
        WeylError: If v is zero or isotropic
    """
    if not 0 < v < VECTOR_COUNT or quadratic_form(v) != 1:
        raise WeylError(f"Reflection vector must be anisotropic, got {v!r}")
    catalog = build_catalog()
    return WeylElem(
        tuple(
            catalog.point_id(code ^ (v if bilinear_form(code, v) else 0)) for code in catalog.points
        )
    )


def reflections() -> list[WeylElem]:
    """All 36 reflections, in ascending order of their vectors."""
    return [reflection(v) for v in build_catalog().exterior]


@dataclass(frozen=True, eq=False)
class GroupCatalog:
    """
    A fully enumerated permutation group.

    Attributes:
        elements: (order, 27) uint8 array, rows sorted lexicographically
        index: Row bytes mapped to row position
    """

    elements: np.ndarray
    index: dict[bytes, int] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return self.order

    def __getitem__(self, position: int) -> WeylElem:
        return WeylElem(tuple(int(i) for i in self.elements[position]))

    def __iter__(self):
        for position in range(self.order):
            yield self[position]

    def position(self, element: WeylElem) -> int:
        try:
            return self.index[bytes(element.perm)]
        except KeyError as e:
            raise WeylError("Element is not in the group") from e

    def __contains__(self, element: object) -> bool:
        return isinstance(element, WeylElem) and bytes(element.perm) in self.index


def generate_group(gens: Iterable[WeylElem], limit: int | None = None) -> GroupCatalog:
    """
    Breadth-first closure of the generators under composition.

    Args:
        gens: Generating isometries
        limit: Size guard (defaults to the configured group limit)

    Raises:
        WeylError: If a generator is not a linear isometry
        GroupTooLargeError: If the closure exceeds ``limit`` elements
    """
    limit = limit if limit is not None else get_group_limit()
    generators = list(gens)
    for g in generators:
        if not g.is_linear_isometry():
            raise WeylError(f"Generator {g.perm} does not preserve Q")
    gen_arrays = [np.asarray(g.perm, dtype=np.uint8) for g in generators]

    identity = np.arange(POINT_COUNT, dtype=np.uint8)
    seen = {identity.tobytes()}
    frontier = identity[np.newaxis, :]
    while len(frontier) and gen_arrays:
        candidates = np.unique(np.concatenate([g[frontier] for g in gen_arrays]), axis=0)
        fresh = [row for row in candidates if row.tobytes() not in seen]
        seen.update(row.tobytes() for row in fresh)
        if len(seen) > limit:
            raise GroupTooLargeError(f"Closure exceeded {limit} elements")
        frontier = np.array(fresh, dtype=np.uint8).reshape(-1, POINT_COUNT)
        logger.debug(f"Closure layer added {len(fresh)} elements ({len(seen)} total)")

    keys = sorted(seen)
    elements = np.frombuffer(b"".join(keys), dtype=np.uint8).reshape(-1, POINT_COUNT).copy()
    return GroupCatalog(elements=elements, index={key: i for i, key in enumerate(keys)})


@cache
def weyl_group() -> GroupCatalog:
    """W generated by the 36 reflections (computed once)."""
    logger.info("Generating the Weyl group from 36 reflections...")
    group = generate_group(reflections())
    logger.info(f"Weyl group generated: order {group.order}")
    return group


def _point_sets(seed: object, action: Action | str) -> tuple[Action, tuple[int, ...]]:
    try:
        kind = Action(action)
    except ValueError as e:
        raise WeylError(f"Unknown action: {action!r}") from e
    match kind:
        case Action.POINTS:
            if not isinstance(seed, int) or not 0 <= seed < POINT_COUNT:
                raise WeylError(f"Invalid point: {seed!r}")
            return kind, (seed,)
        case Action.LINES:
            line = seed if isinstance(seed, Line) else build_catalog().line(seed)  # type: ignore[arg-type]
            return kind, line.points
        case Action.ROOTBASES:
            base = seed if isinstance(seed, RootBase) else enumerate_phi()[seed]  # type: ignore[index]
            return kind, base.points


def _images(group: GroupCatalog, points: tuple[int, ...]) -> np.ndarray:
    return np.sort(group.elements[:, list(points)], axis=1)


def orbit(group: GroupCatalog, seed: object, action: Action | str) -> set[int]:
    """
    The orbit of a point, line or root base, as a set of ids.

    Raises:
        WeylError: On an unknown action name or invalid seed
    """
    kind, points = _point_sets(seed, action)
    rows = {tuple(int(i) for i in row) for row in np.unique(_images(group, points), axis=0)}
    match kind:
        case Action.POINTS:
            return {row[0] for row in rows}
        case Action.LINES:
            catalog = build_catalog()
            return {catalog.line_id(row) for row in rows}
        case Action.ROOTBASES:
            phi = enumerate_phi()
            return {phi.lookup(row).id for row in rows}


def stabilizer_mask(group: GroupCatalog, seed: object, action: Action | str) -> np.ndarray:
    _, points = _point_sets(seed, action)
    return np.all(_images(group, points) == np.asarray(sorted(points)), axis=1)


def stabilizer(group: GroupCatalog, seed: object, action: Action | str) -> list[WeylElem]:
    """The elements fixing the seed (setwise for lines and root bases), in canonical order."""
    positions = np.flatnonzero(stabilizer_mask(group, seed, action))
    return [group[int(p)] for p in positions]


def induced_permutations(group: GroupCatalog, seed: object, action: Action | str) -> np.ndarray:
    """
    The distinct permutations the stabilizer induces on the points of the seed.

    Rows list the images of the seed's points in their sorted order.
    """
    _, points = _point_sets(seed, action)
    rows = group.elements[stabilizer_mask(group, seed, action)][:, list(points)]
    return np.unique(rows, axis=0)


def element_order(g: WeylElem) -> int:
    return g.order()


def line_normalizer(group: GroupCatalog, line: Line) -> list[WeylElem]:
    """N_W(L), read as the setwise stabilizer of the line."""
    return stabilizer(group, line, Action.LINES)


def order3_in_normalizer(group: GroupCatalog, line: Line) -> list[WeylElem]:
    """All elements of order exactly 3 in N_W(L), least permutation first."""
    normalizer = group.elements[stabilizer_mask(group, line, Action.LINES)]
    square = np.take_along_axis(normalizer, normalizer, axis=1)
    cube = np.take_along_axis(square, normalizer, axis=1)
    identity = np.arange(POINT_COUNT)
    mask = np.all(cube == identity, axis=1) & ~np.all(normalizer == identity, axis=1)
    return [WeylElem(tuple(int(i) for i in row)) for row in normalizer[mask]]


def transitivity_witness(group: GroupCatalog, x: int, y: int) -> WeylElem:
    """Least element mapping point x to point y."""
    positions = np.flatnonzero(group.elements[:, x] == y)
    if not len(positions):
        raise WeylError(f"No element maps point {x} to point {y}")
    return group[int(positions[0])]


def reflection_pair_orders() -> dict[int, int]:
    """Histogram of element_order(σ_u σ_v) over all ordered pairs of reflections."""
    refl = reflections()
    histogram: dict[int, int] = {}
    for u in refl:
        for v in refl:
            n = u.compose(v).order()
            histogram[n] = histogram.get(n, 0) + 1
    return dict(sorted(histogram.items()))

