"""Root bases of the quadrangle: six pairwise non-orthogonal points forming a basis of V."""

import logging
from dataclasses import dataclass, field
from enum import StrEnum
from functools import cache, reduce
from itertools import combinations
from operator import xor

from quadrangle_lie.geometry.quadrangle import (
    GeometryError,
    Line,
    QuadrangleCatalog,
    bilinear_form,
    build_catalog,
    perp,
    quadratic_form,
    span,
)

logger = logging.getLogger("quadrangle-lie")

ROOT_BASE_COUNT = 72
ROOT_BASE_SIZE = 6


class RootBaseError(ValueError):
    """Raised when an operation's precondition on root bases fails."""

    pass


@dataclass(frozen=True)
class RootBase:
    """
    A root base Δ.

    Attributes:
        id: Index 0..71 in canonical order (lexicographic on ``points``)
        points: Sorted six point ids
        s: Code of s_Δ, the sum of the six vectors
    """

    id: int
    points: tuple[int, ...]
    s: int

    def __contains__(self, point: object) -> bool:
        return point in self.points

    def to_dict(self) -> dict[str, object]:
        return {"id": self.id, "points": list(self.points), "s": self.s}


@dataclass(frozen=True, eq=False)
class PhiCatalog:
    """
    The 72 root bases with their duals.

    Attributes:
        bases: Root bases in canonical order
        dual: dual[i] is the id of Δ_i* = Δ_i + s_Δ
        by_s: Each of the 36 exterior vectors mapped to its two root-base ids
    """

    bases: tuple[RootBase, ...]
    dual: tuple[int, ...]
    by_s: dict[int, tuple[int, int]]
    _ids: dict[tuple[int, ...], int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.bases)

    def __getitem__(self, base_id: int) -> RootBase:
        return self.bases[base_id]

    def lookup(self, points: frozenset[int] | tuple[int, ...] | set[int]) -> RootBase:
        """Root base with exactly the given point ids."""
        key = tuple(sorted(points))
        try:
            return self.bases[self._ids[key]]
        except KeyError as e:
            raise RootBaseError(f"Points {key} do not form a root base") from e

    def contains(self, points: frozenset[int] | tuple[int, ...] | set[int]) -> bool:
        return tuple(sorted(points)) in self._ids

    def dual_of(self, base: RootBase) -> RootBase:
        return self.bases[self.dual[base.id]]


def root_base_points(x: int, y: int, catalog: QuadrangleCatalog | None = None) -> frozenset[int]:
    """
    The point set Δ_{x,y} = {x} ∪ {v ∈ ℙ ∖ {y} : (x|v) = 1, (y|v) = 0}.

    The result is the root base containing x with s_Δ = x + y; y itself lies
    in the dual base and is excluded.

    Raises:
        RootBaseError: If (x|y) ≠ 1
    """
    catalog = catalog or build_catalog()
    if catalog.form(x, y) != 1:
        raise RootBaseError(f"Points {x} and {y} are not in general position: (x|y) = 0")
    return frozenset({x}) | {
        v
        for v in range(len(catalog.points))
        if v != y and catalog.form(x, v) == 1 and catalog.form(y, v) == 0
    }


def sum_vectors(points: tuple[int, ...] | frozenset[int], catalog: QuadrangleCatalog) -> int:
    return reduce(xor, (catalog.points[p] for p in points), 0)


def is_root_base(points: frozenset[int] | tuple[int, ...], catalog: QuadrangleCatalog) -> bool:
    """Check Definition: six points, a GF(2)-basis of V, pairwise form value 1."""
    members = tuple(points)
    if len(set(members)) != ROOT_BASE_SIZE:
        return False
    if any(catalog.form(a, b) != 1 for a, b in combinations(members, 2)):
        return False
    return len(span(catalog.points[p] for p in members)) == 1 << ROOT_BASE_SIZE


@cache
def enumerate_phi() -> PhiCatalog:
    """Enumerate all root bases as Δ_{x,y} over every pair with (x|y) = 1."""
    catalog = build_catalog()
    found: set[frozenset[int]] = set()
    for x in range(len(catalog.points)):
        for y in range(len(catalog.points)):
            if catalog.form(x, y) == 1:
                found.add(root_base_points(x, y, catalog))

    keys = sorted(tuple(sorted(points)) for points in found)
    ids = {key: i for i, key in enumerate(keys)}
    bases = tuple(
        RootBase(id=i, points=key, s=sum_vectors(key, catalog)) for i, key in enumerate(keys)
    )
    dual = tuple(
        ids[tuple(sorted(catalog.point_id(catalog.points[p] ^ base.s) for p in base.points))]
        for base in bases
    )
    by_s: dict[int, list[int]] = {}
    for base in bases:
        by_s.setdefault(base.s, []).append(base.id)

    logger.debug(f"Enumerated {len(bases)} root bases over {len(by_s)} exterior vectors")
    return PhiCatalog(
        bases=bases,
        dual=dual,
        by_s={s: (pair[0], pair[1]) for s, pair in sorted(by_s.items())},
        _ids=ids,
    )


def root_base_from_pair(x: int, y: int) -> RootBase:
    """
    The root base Δ_{x,y} for points with (x|y) = 1.

    Raises:
        RootBaseError: If (x|y) ≠ 1
    """
    return enumerate_phi().lookup(root_base_points(x, y))


def dual(base: RootBase) -> RootBase:
    """Δ* = Δ + s_Δ."""
    return enumerate_phi().dual_of(base)


def delta_zero(base: RootBase) -> frozenset[int]:
    """Δ₀ = {v ∈ ℙ : (v|s_Δ) = 0}."""
    catalog = build_catalog()
    return frozenset(
        v for v, code in enumerate(catalog.points) if bilinear_form(code, base.s) == 0
    )


def reflect_points(points: tuple[int, ...] | frozenset[int], s: int) -> frozenset[int]:
    """Image of a point set under the reflection σ_s: x ↦ x + (x|s)s."""
    catalog = build_catalog()
    if quadratic_form(s) != 1:
        raise RootBaseError(f"Reflection vector {s} is not anisotropic")
    return frozenset(
        catalog.point_id(catalog.points[p] ^ (s if bilinear_form(catalog.points[p], s) else 0))
        for p in points
    )


def reflect_base(base: RootBase, s: int) -> RootBase:
    """Δ^{σ_s}."""
    return enumerate_phi().lookup(reflect_points(base.points, s))


class PairCase(StrEnum):
    ORTHOGONAL = "orthogonal"
    SHARED = "shared"  # (s_Δ|s_Γ) = 1, |Δ ∩ Γ| = 3
    DISJOINT = "disjoint"  # (s_Δ|s_Γ) = 1, Δ ∩ Γ = ∅


@dataclass(frozen=True)
class PairClassification:
    """
    How two root bases with distinct sums meet.

    Attributes:
        form: (s_Δ|s_Γ)
        sizes: |Δ∩Γ|, |Δ∩Γ*|, |Δ*∩Γ|, |Δ*∩Γ*|
        case: Case label derived from ``form`` and ``sizes``
        composed: Δ^{σ_Γ} in the disjoint case, otherwise None
        fixed_by_reflection: Whether Δ^{σ_Γ} = Δ
    """

    form: int
    sizes: tuple[int, int, int, int]
    case: PairCase
    composed: RootBase | None = None
    fixed_by_reflection: bool = False


def classify_pair(delta: RootBase, gamma: RootBase) -> PairClassification:
    """
    Intersection pattern of two root bases with s_Δ ≠ s_Γ.

    Raises:
        RootBaseError: If s_Δ = s_Γ (the pair is equal or dual)
    """
    if delta.s == gamma.s:
        raise RootBaseError(f"Root bases {delta.id} and {gamma.id} have the same sum")
    d, g = set(delta.points), set(gamma.points)
    d_star, g_star = set(dual(delta).points), set(dual(gamma).points)
    sizes = (len(d & g), len(d & g_star), len(d_star & g), len(d_star & g_star))
    form = bilinear_form(delta.s, gamma.s)
    reflected = reflect_points(delta.points, gamma.s)

    if form == 0:
        case = PairCase.ORTHOGONAL
    elif sizes[0]:
        case = PairCase.SHARED
    else:
        case = PairCase.DISJOINT
    composed = enumerate_phi().lookup(reflected) if case is PairCase.DISJOINT else None
    return PairClassification(
        form=form,
        sizes=sizes,
        case=case,
        composed=composed,
        fixed_by_reflection=reflected == d,
    )


class LineClass(StrEnum):
    CONTAINED = "contained-in-delta0"
    TRANSVERSAL = "transversal"


def classify_line(line: Line, base: RootBase) -> LineClass:
    """
    Position of a line relative to the partition ℙ = Δ₀ ∪ Δ ∪ Δ*.

    Raises:
        GeometryError: If the line is neither inside Δ₀ nor transversal
    """
    zero = delta_zero(base)
    star = dual(base).points
    hits = (
        sum(1 for p in line.points if p in zero),
        sum(1 for p in line.points if p in base.points),
        sum(1 for p in line.points if p in star),
    )
    if hits == (3, 0, 0):
        return LineClass.CONTAINED
    if hits == (1, 1, 1):
        return LineClass.TRANSVERSAL
    raise GeometryError(f"Line {line.id} meets root base {base.id} as {hits}")


def root_bases_for_line(line: Line) -> list[RootBase]:
    """Φ_L = {Δ : s_Δ ∈ L^⊥}, in canonical order."""
    orthogonal = set(perp(line.vectors))
    return [base for base in enumerate_phi().bases if base.s in orthogonal]


def phi_csv(phi: PhiCatalog | None = None) -> str:
    """Rows ``id,p0..p5,s_code,dual_id`` for every root base."""
    phi = phi or enumerate_phi()
    rows = ["id,p0,p1,p2,p3,p4,p5,s_code,dual_id"]
    for base in phi.bases:
        points = ",".join(str(p) for p in base.points)
        rows.append(f"{base.id},{points},{base.s},{phi.dual[base.id]}")
    return "\n".join(rows) + "\n"
