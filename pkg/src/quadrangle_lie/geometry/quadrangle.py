"""The quadratic space V = GF(4)^3 over GF(2) and its generalized quadrangle.

Vectors are integer codes 0..63, code = 16·a + 4·b + c for GF(4) codes
(a, b, c). Because GF(4) addition is XOR of codes, vector addition is XOR of
vector codes and the six code bits are GF(2)-coordinates of V.

Points are the 27 nonzero isotropic vectors, indexed by ascending code.
Lines are the 45 totally singular 2-subspaces, indexed by their sorted
point-index triples in lexicographic order.
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cache
from itertools import combinations

from quadrangle_lie.geometry.fields import f4_conj, f4_mul, f4_trace

logger = logging.getLogger("quadrangle-lie")

VECTOR_COUNT = 64
POINT_COUNT = 27
EXTERIOR_COUNT = 36
LINE_COUNT = 45
LINES_PER_POINT = 5


class GeometryError(ValueError):
    """Raised for invalid vectors, points or lines and violated preconditions."""

    pass


def encode(a: int, b: int, c: int) -> int:
    """Pack GF(4) coordinates into a vector code."""
    for coord in (a, b, c):
        if coord not in (0, 1, 2, 3):
            raise GeometryError(f"Not a GF(4) code: {coord!r}")
    return 16 * a + 4 * b + c


def decode(code: int) -> tuple[int, int, int]:
    """Unpack a vector code into GF(4) coordinates."""
    _check_vector(code)
    return (code >> 4) & 3, (code >> 2) & 3, code & 3


def _check_vector(code: int) -> None:
    if not isinstance(code, int) or not 0 <= code < VECTOR_COUNT:
        raise GeometryError(f"Not a vector code: {code!r}")


def quadratic_form(v: int) -> int:
    """Q(x) = Σ x_i·conj(x_i): the parity of the number of nonzero coordinates."""
    return sum(1 for coord in decode(v) if coord) & 1


def bilinear_form(u: int, v: int) -> int:
    """(u|v) = Q(u + v) + Q(u) + Q(v)."""
    return quadratic_form(u ^ v) ^ quadratic_form(u) ^ quadratic_form(v)


def trace_bilinear_form(u: int, v: int) -> int:
    """(u|v) computed coordinate-wise as Σ Tr(u_i · conj(v_i))."""
    total = 0
    for a, b in zip(decode(u), decode(v), strict=True):
        total ^= f4_trace(f4_mul(a, f4_conj(b)))
    return total


def span(vectors: Iterable[int]) -> list[int]:
    """All GF(2)-linear combinations of the given vectors, sorted by code."""
    result = {0}
    for v in vectors:
        _check_vector(v)
        if v not in result:
            result |= {w ^ v for w in result}
    return sorted(result)


def perp(vectors: Iterable[int]) -> list[int]:
    """
    The orthogonal complement {v ∈ V : (v|s) = 0 for all s}.

    Args:
        vectors: Any collection of vector codes (empty means all of V)

    Returns:
        list[int]: Codes of the subspace, ascending
    """
    given = list(vectors)
    for s in given:
        _check_vector(s)
    return [v for v in range(VECTOR_COUNT) if all(bilinear_form(v, s) == 0 for s in given)]


def is_totally_singular(vectors: Iterable[int]) -> bool:
    """True if every vector in the span of ``vectors`` is isotropic."""
    return all(quadratic_form(v) == 0 for v in span(vectors))


@dataclass(frozen=True)
class Line:
    """
    A line of the quadrangle.

    Attributes:
        id: Index 0..44 in canonical order
        points: Sorted triple of point ids
        vectors: Codes of the three points, in the order of ``points``
    """

    id: int
    points: tuple[int, int, int]
    vectors: tuple[int, int, int]

    @property
    def basis(self) -> tuple[int, int]:
        """Two vectors spanning the line."""
        return self.vectors[0], self.vectors[1]

    def __contains__(self, point: object) -> bool:
        return point in self.points


@dataclass(frozen=True, eq=False)
class QuadrangleCatalog:
    """
    Points, exterior points, lines and incidence of the O6-(2) quadrangle.

    Attributes:
        points: Codes of the 27 points, ascending
        exterior: Codes of the 36 anisotropic vectors, ascending
        lines: The 45 lines in canonical order
        gram: Row x is a 27-bit mask of the points y with (x|y) = 1
        incidence: Line ids through each point
    """

    points: tuple[int, ...]
    exterior: tuple[int, ...]
    lines: tuple[Line, ...]
    gram: tuple[int, ...]
    incidence: tuple[tuple[int, ...], ...]
    _point_ids: dict[int, int] = field(repr=False)
    _line_ids: dict[tuple[int, ...], int] = field(repr=False)

    def point_id(self, code: int) -> int:
        """Point id of an isotropic nonzero vector."""
        try:
            return self._point_ids[code]
        except KeyError as e:
            raise GeometryError(f"Vector {code!r} is not a point") from e

    def is_point(self, code: int) -> bool:
        return code in self._point_ids

    def line(self, line_id: int) -> Line:
        if not isinstance(line_id, int) or not 0 <= line_id < len(self.lines):
            raise GeometryError(f"Invalid line id: {line_id!r}")
        return self.lines[line_id]

    def line_id(self, points: Iterable[int]) -> int:
        """Line id of a set of three point ids."""
        key = tuple(sorted(points))
        try:
            return self._line_ids[key]
        except KeyError as e:
            raise GeometryError(f"Points {key} do not form a line") from e

    def form(self, x: int, y: int) -> int:
        """(x|y) for point ids, read from the Gram table."""
        return (self.gram[x] >> y) & 1

    def lines_through(self, x: int) -> list[Line]:
        self._check_point(x)
        return [self.lines[i] for i in self.incidence[x]]

    def collinear_point(self, x: int, line: Line) -> int:
        """
        The unique point of ``line`` collinear with ``x``.

        Raises:
            GeometryError: If x lies on the line
        """
        self._check_point(x)
        if x in line.points:
            raise GeometryError(f"Point {x} lies on line {line.id}")
        candidates = [y for y in line.points if self.form(x, y) == 0]
        if len(candidates) != 1:
            raise GeometryError(
                f"Quadrangle axiom violated for point {x} and line {line.id}: {candidates}"
            )
        return candidates[0]

    def summary(self) -> dict[str, int]:
        return {
            "points": len(self.points),
            "lines": len(self.lines),
            "exterior": len(self.exterior),
        }

    def _check_point(self, x: int) -> None:
        if not isinstance(x, int) or not 0 <= x < len(self.points):
            raise GeometryError(f"Invalid point id: {x!r}")


@cache
def build_catalog() -> QuadrangleCatalog:
    """Enumerate the quadrangle once; later calls return the same catalog."""
    points = tuple(v for v in range(1, VECTOR_COUNT) if quadratic_form(v) == 0)
    exterior = tuple(v for v in range(1, VECTOR_COUNT) if quadratic_form(v) == 1)
    point_ids = {code: i for i, code in enumerate(points)}

    gram = tuple(
        sum(1 << j for j, other in enumerate(points) if bilinear_form(code, other))
        for code in points
    )

    triples = set()
    for i, j in combinations(range(len(points)), 2):
        if bilinear_form(points[i], points[j]) == 0:
            k = point_ids[points[i] ^ points[j]]
            triples.add(tuple(sorted((i, j, k))))
    lines = tuple(
        Line(id=n, points=triple, vectors=tuple(points[p] for p in triple))  # type: ignore[arg-type]
        for n, triple in enumerate(sorted(triples))
    )
    incidence = tuple(
        tuple(line.id for line in lines if x in line.points) for x in range(len(points))
    )

    catalog = QuadrangleCatalog(
        points=points,
        exterior=exterior,
        lines=lines,
        gram=gram,
        incidence=incidence,
        _point_ids=point_ids,
        _line_ids={line.points: line.id for line in lines},
    )
    logger.debug(f"Quadrangle catalog built: {catalog.summary()}")
    return catalog


def exterior_points() -> list[int]:
    """The 36 exterior points (vectors with Q = 1), ascending."""
    return list(build_catalog().exterior)


def lines_through(x: int) -> list[Line]:
    """The five lines through point ``x``."""
    return build_catalog().lines_through(x)


def collinear_point(x: int, line: Line) -> int:
    """The unique point on ``line`` collinear with the point ``x`` (x not on the line)."""
    return build_catalog().collinear_point(x, line)


def points_csv(catalog: QuadrangleCatalog | None = None) -> str:
    """Rows ``id,code,a,b,c`` for every point."""
    catalog = catalog or build_catalog()
    rows = ["id,code,a,b,c"]
    for i, code in enumerate(catalog.points):
        a, b, c = decode(code)
        rows.append(f"{i},{code},{a},{b},{c}")
    return "\n".join(rows) + "\n"


def lines_csv(catalog: QuadrangleCatalog | None = None) -> str:
    """Rows ``id,p0,p1,p2`` for every line."""
    catalog = catalog or build_catalog()
    rows = ["id,p0,p1,p2"]
    rows.extend(f"{line.id},{line.points[0]},{line.points[1]},{line.points[2]}" for line in catalog.lines)
    return "\n".join(rows) + "\n"
