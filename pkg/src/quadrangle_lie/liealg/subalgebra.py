"""Subalgebras of End(A) spanned by Cartan operators, Lie roots and folded roots.

A ``Subalgebra`` is a list of independent basis operators together with the
echelon form of their flattened 729-bit vectors. ``closed`` is set only by
``certify_closure``, after every pairwise bracket was found in the span.
"""

import logging
import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field, replace
from enum import StrEnum
from itertools import combinations

from quadrangle_lie.config import get_seed
from quadrangle_lie.geometry.quadrangle import Line, perp
from quadrangle_lie.geometry.rootbases import RootBase, enumerate_phi, root_bases_for_line
from quadrangle_lie.geometry.weyl import GroupCatalog, WeylElem, WeylError, order3_in_normalizer
from quadrangle_lie.liealg.gf2 import Echelon, iter_bits, kernel
from quadrangle_lie.liealg.operators import (
    Endo,
    OperatorTable,
    bracket,
    cartan_op,
    conjugate_by,
    default_operator_table,
)

logger = logging.getLogger("quadrangle-lie")

E6_DIM = 78
DL_DIM = 28
G2_DIM = 14
E6_CARTAN_CODES = (1, 2, 4, 8, 16, 32)


class ClosureError(RuntimeError):
    """Raised when a bracket of two basis elements escapes the span."""

    def __init__(self, algebra: str, left: str, right: str) -> None:
        super().__init__(f"[{left}, {right}] is not in the span of {algebra}")
        self.algebra = algebra
        self.pair = (left, right)


class InvariantViolation(RuntimeError):
    """Raised when a count, dimension or identity differs from the expected value."""

    pass


class NotStableError(RuntimeError):
    """Raised when conjugation does not map a subalgebra into itself."""

    pass


class MixedFieldError(ValueError):
    """Raised when operators over different scalar fields are combined."""

    pass


class FoldPatternError(ValueError):
    """Raised when an order-3 element does not fold Φ_L into 6 fixed roots and 6 orbits."""

    pass


class TagKind(StrEnum):
    CARTAN = "H"
    ROOT = "R"
    FOLDED = "S"
    COMBO = "X"


@dataclass(frozen=True)
class BasisTag:
    """
    Where a basis operator comes from.

    Attributes:
        kind: Cartan H_v, root R_Δ, folded S_X or a combination of another basis
        key: Vector code, root-base id, orbit triple, or a mask over the parent basis
    """

    kind: TagKind
    key: int | tuple[int, int, int]

    @property
    def label(self) -> str:
        match self.kind:
            case TagKind.FOLDED:
                return "S:" + "-".join(str(i) for i in self.key)  # type: ignore[union-attr]
            case TagKind.COMBO:
                return f"X:{self.key:x}"
            case _:
                return f"{self.kind.value}:{self.key}"

    @classmethod
    def parse(cls, label: str) -> "BasisTag":
        """Inverse of ``label``."""
        prefix, _, body = label.partition(":")
        try:
            kind = TagKind(prefix)
            match kind:
                case TagKind.FOLDED:
                    a, b, c = (int(part) for part in body.split("-"))
                    return cls(kind, (a, b, c))
                case TagKind.COMBO:
                    return cls(kind, int(body, 16))
                case _:
                    return cls(kind, int(body))
        except ValueError as e:
            raise ValueError(f"Invalid basis label: {label!r}") from e


@dataclass(frozen=True)
class LieBasisElem:
    tag: BasisTag
    op: Endo

    @property
    def label(self) -> str:
        return self.tag.label


@dataclass(frozen=True, eq=False)
class Subalgebra:
    """
    A GF(2)-subspace of End(A) with a distinguished basis.

    Attributes:
        name: Display name ("E6", "D_L[0]", "G2[0]", ...)
        basis: Independent basis elements
        echelon: Echelon form of the flattened basis; inserted index i is basis[i]
        closed: True once ``certify_closure`` succeeded
        metadata: Construction parameters (line id, d permutation, ...)
    """

    name: str
    basis: tuple[LieBasisElem, ...]
    echelon: Echelon = field(repr=False)
    closed: bool = False
    metadata: dict[str, object] = field(default_factory=dict)

    @classmethod
    def from_elements(
        cls, name: str, elements: Iterable[LieBasisElem], metadata: dict[str, object] | None = None
    ) -> "Subalgebra":
        """
        Collect basis elements, rejecting linear dependence.

        Raises:
            InvariantViolation: If an element lies in the span of the earlier ones
        """
        basis = tuple(elements)
        echelon = Echelon()
        for elem in basis:
            if not echelon.add(elem.op.flat):
                raise InvariantViolation(f"{name}: basis element {elem.label} is dependent")
        return cls(name=name, basis=basis, echelon=echelon, metadata=dict(metadata or {}))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def labels(self) -> list[str]:
        return [elem.label for elem in self.basis]

    @property
    def ops(self) -> list[Endo]:
        return [elem.op for elem in self.basis]

    def contains(self, op: Endo) -> bool:
        return self.echelon.contains(op.flat)

    def coordinates(self, op: Endo) -> int | None:
        """Mask over basis indices whose elements sum to ``op``, or None outside the span."""
        return self.echelon.coordinates(op.flat)

    def same_span(self, other: "Subalgebra") -> bool:
        return self.echelon.canonical() == other.echelon.canonical()

    def element(self, mask: int) -> Endo:
        """The sum of the basis elements selected by ``mask``."""
        result = Endo.zero()
        for i in iter_bits(mask):
            result = result + self.basis[i].op
        return result


def _bracket_table(sub: Subalgebra) -> dict[tuple[int, int], Endo]:
    return {(i, j): bracket(sub.basis[i].op, sub.basis[j].op) for i, j in combinations(range(sub.dim), 2)}


def certify_closure(sub: Subalgebra) -> Subalgebra:
    """
    Check every pairwise bracket against the span.

    Returns:
        Subalgebra: A copy with ``closed`` set

    Raises:
        ClosureError: For the first pair whose bracket escapes the span
    """
    logger.info(f"Certifying bracket closure of {sub.name} (dim {sub.dim})...")
    for i, j in combinations(range(sub.dim), 2):
        if not sub.contains(bracket(sub.basis[i].op, sub.basis[j].op)):
            raise ClosureError(sub.name, sub.basis[i].label, sub.basis[j].label)
    logger.info(f"{sub.name} is closed under the bracket")
    return replace(sub, closed=True)


def jacobi_check(
    sub: Subalgebra, samples: int | None = None, seed: int | None = None
) -> list[tuple[str, str, str]]:
    """
    Jacobi identity on basis triples.

    Args:
        sub: Subalgebra to check
        samples: Number of random triples; None means every triple i < j < k
        seed: Seed for sampling (defaults to the configured seed)

    Returns:
        list: Label triples for which the identity fails
    """
    n = sub.dim
    if samples is None:
        triples: Sequence[tuple[int, int, int]] = list(combinations(range(n), 3))
    else:
        rng = random.Random(get_seed() if seed is None else seed)
        triples = [tuple(sorted(rng.sample(range(n), 3))) for _ in range(samples)]  # type: ignore[misc]

    pairs: dict[tuple[int, int], Endo] = {}

    def pair(i: int, j: int) -> Endo:
        if (i, j) not in pairs:
            pairs[i, j] = bracket(sub.basis[i].op, sub.basis[j].op)
        return pairs[i, j]

    failures = []
    for i, j, k in triples:
        ops = sub.basis
        total = (
            bracket(pair(i, j), ops[k].op) + bracket(pair(j, k), ops[i].op) + bracket(pair(i, k), ops[j].op)
        )
        if total:
            failures.append((ops[i].label, ops[j].label, ops[k].label))
    logger.debug(f"Jacobi on {sub.name}: {len(triples)} triples, {len(failures)} failures")
    return failures


def vector_basis(vectors: Iterable[int]) -> list[int]:
    """Greedy GF(2)-basis of the given vector codes, scanning in order."""
    echelon = Echelon()
    return [v for v in vectors if v and echelon.add(v)]


def _cartan(v: int) -> LieBasisElem:
    return LieBasisElem(BasisTag(TagKind.CARTAN, v), cartan_op(v))


def _root(base: RootBase, table: OperatorTable) -> LieBasisElem:
    return LieBasisElem(BasisTag(TagKind.ROOT, base.id), table.root(base))


def build_e6(table: OperatorTable | None = None, certify: bool = True) -> Subalgebra:
    """
    𝔼 = ⟨H_v, R_Δ⟩: six Cartan operators for the code-bit basis plus the 72 Lie roots.

    Raises:
        InvariantViolation: If the 78 operators are dependent
        ClosureError: If a bracket escapes the span
    """
    table = table or default_operator_table()
    elements = [_cartan(v) for v in E6_CARTAN_CODES]
    elements += [_root(base, table) for base in enumerate_phi().bases]
    sub = Subalgebra.from_elements("E6", elements)
    if sub.dim != E6_DIM:
        raise InvariantViolation(f"E6 has dimension {sub.dim}, expected {E6_DIM}")
    return certify_closure(sub) if certify else sub


def build_dl(line: Line, table: OperatorTable | None = None, certify: bool = True) -> Subalgebra:
    """
    D_L = ⟨H_L, R_L⟩ for a line L.

    Raises:
        InvariantViolation: If |Φ_L| ≠ 24, dim H_L ≠ 4 or dim D_L ≠ 28
        ClosureError: If a bracket escapes the span
    """
    table = table or default_operator_table()
    roots = root_bases_for_line(line)
    if len(roots) != 24:
        raise InvariantViolation(f"Line {line.id}: |Φ_L| = {len(roots)}, expected 24")
    cartan = vector_basis(perp(line.vectors))
    if len(cartan) != 4:
        raise InvariantViolation(f"Line {line.id}: dim H_L = {len(cartan)}, expected 4")

    elements = [_cartan(v) for v in cartan] + [_root(base, table) for base in roots]
    sub = Subalgebra.from_elements(f"D_L[{line.id}]", elements, {"line": line.id})
    if sub.dim != DL_DIM:
        raise InvariantViolation(f"D_L has dimension {sub.dim}, expected {DL_DIM}")
    return certify_closure(sub) if certify else sub


@dataclass(frozen=True)
class FoldResult:
    """
    Φ_L split into d-orbits.

    Attributes:
        fixed: Root bases with Δ^d = Δ
        orbits: Triples (Δ, Δ^d, Δ^{d²}) rotated so the least id comes first
    """

    fixed: tuple[RootBase, ...]
    orbits: tuple[tuple[int, int, int], ...]

    @property
    def counts(self) -> tuple[int, int]:
        return len(self.fixed), len(self.orbits)


def _check_order3_normalizer(line: Line, d: WeylElem) -> None:
    if d.order() != 3:
        raise WeylError(f"Element has order {d.order()}, expected 3")
    if d.image_of_line(line) != line.id:
        raise WeylError(f"Element does not normalize line {line.id}")


def fold_roots(line: Line, d: WeylElem) -> FoldResult:
    """
    Partition Φ_L into d-fixed root bases and orbits of length 3.

    Raises:
        WeylError: If d does not have order 3 or does not stabilize L
    """
    _check_order3_normalizer(line, d)
    fixed: list[RootBase] = []
    orbits: set[tuple[int, int, int]] = set()
    for base in root_bases_for_line(line):
        image = d.image_of_base(base)
        if image.id == base.id:
            fixed.append(base)
            continue
        ids = (base.id, image.id, d.image_of_base(image).id)
        start = ids.index(min(ids))
        orbits.add(ids[start:] + ids[:start])  # type: ignore[arg-type]
    return FoldResult(fixed=tuple(fixed), orbits=tuple(sorted(orbits)))


def fold_pattern(group: GroupCatalog, line: Line) -> dict[tuple[int, int], int]:
    """How many order-3 elements of N_W(L) give each (fixed, orbits) pattern."""
    pattern: dict[tuple[int, int], int] = {}
    for d in order3_in_normalizer(group, line):
        counts = fold_roots(line, d).counts
        pattern[counts] = pattern.get(counts, 0) + 1
    return dict(sorted(pattern.items()))


def qualifying_elements(group: GroupCatalog, line: Line) -> list[WeylElem]:
    """Order-3 elements of N_W(L) with fold pattern (6, 6), least permutation first."""
    return [d for d in order3_in_normalizer(group, line) if fold_roots(line, d).counts == (6, 6)]


def select_d(group: GroupCatalog, line: Line, policy: str | int = "auto") -> WeylElem:
    """
    Choose the order-3 element d.

    Args:
        group: The Weyl group
        line: The line L
        policy: "auto" for the least qualifying element, or an index into the
            order-3 elements of N_W(L) in canonical order

    Raises:
        WeylError: If the index is out of range or no element qualifies
    """
    if policy == "auto":
        candidates = qualifying_elements(group, line)
        if not candidates:
            raise WeylError(f"No order-3 element of N_W(L) folds line {line.id} as (6, 6)")
        return candidates[0]
    elements = order3_in_normalizer(group, line)
    index = int(policy)
    if not 0 <= index < len(elements):
        raise WeylError(f"d index {index} out of range 0..{len(elements) - 1}")
    return elements[index]


def fixed_vectors(vectors: Iterable[int], d: WeylElem) -> list[int]:
    return [v for v in vectors if d.vector_image(v) == v]


def build_g2(
    line: Line, d: WeylElem, table: OperatorTable | None = None, certify: bool = True
) -> Subalgebra:
    """
    G = C_{H_L}(d) ⊕ ⟨S_X⟩: two fixed Cartan operators, 6 fixed roots and 6 folded roots.

    Raises:
        WeylError: If d is not an order-3 element of N_W(L)
        FoldPatternError: If d does not fold Φ_L as (6, 6)
        InvariantViolation: If a dimension differs or a basis element is not d-fixed
        ClosureError: If a bracket escapes the span
    """
    table = table or default_operator_table()
    fold = fold_roots(line, d)
    if fold.counts != (6, 6):
        raise FoldPatternError(f"d folds line {line.id} as {fold.counts}, expected (6, 6)")

    cartan = vector_basis(fixed_vectors(perp(line.vectors), d))
    if len(cartan) != 2:
        raise InvariantViolation(f"dim C_H_L(d) = {len(cartan)}, expected 2")

    elements = [_cartan(v) for v in cartan]
    elements += [_root(base, table) for base in fold.fixed]
    for orbit in fold.orbits:
        op = table.root(orbit[0]) + table.root(orbit[1]) + table.root(orbit[2])
        elements.append(LieBasisElem(BasisTag(TagKind.FOLDED, orbit), op))

    metadata: dict[str, object] = {"line": line.id, "d": list(d.perm)}
    sub = Subalgebra.from_elements(f"G2[{line.id}]", elements, metadata)
    if sub.dim != G2_DIM:
        raise InvariantViolation(f"G2 has dimension {sub.dim}, expected {G2_DIM}")
    moved = [elem.label for elem in sub.basis if conjugate_by(d, elem.op) != elem.op]
    if moved:
        raise InvariantViolation(f"G2 basis elements not fixed by d: {moved}")
    return certify_closure(sub) if certify else sub


def centralizer(sub: Subalgebra, d: WeylElem, certify: bool = True) -> Subalgebra:
    """
    C_S(d) = {X ∈ S : X^d = X}, the kernel of conjugation minus identity on S.

    Basis elements that are single elements of S keep their tag; longer
    combinations are tagged with their mask over S's basis.

    Raises:
        NotStableError: If conjugation by d moves a basis element out of S
    """
    images = []
    for elem in sub.basis:
        moved = conjugate_by(d, elem.op)
        if not sub.contains(moved):
            raise NotStableError(f"{elem.label}^d is not in {sub.name}")
        images.append((moved + elem.op).flat)

    elements = []
    for mask in kernel(images):
        indices = list(iter_bits(mask))
        if len(indices) == 1:
            elements.append(sub.basis[indices[0]])
        else:
            elements.append(LieBasisElem(BasisTag(TagKind.COMBO, mask), sub.element(mask)))
    metadata = {**sub.metadata, "d": list(d.perm)}
    result = Subalgebra.from_elements(f"C({sub.name})", elements, metadata)
    logger.info(f"Centralizer of d in {sub.name} has dimension {result.dim}")
    return certify_closure(result) if certify else result


@dataclass(frozen=True)
class WeightReport:
    """
    Weights of the non-Cartan basis elements of G2.

    Attributes:
        cartan: The vector codes v of the Cartan basis H_v
        weights: Basis label mapped to (λ(H_v₁), λ(H_v₂))
    """

    cartan: tuple[int, ...]
    weights: dict[str, tuple[int, ...]]

    @property
    def multiplicities(self) -> dict[tuple[int, ...], int]:
        counts: dict[tuple[int, ...], int] = {}
        for weight in self.weights.values():
            counts[weight] = counts.get(weight, 0) + 1
        return dict(sorted(counts.items()))

    @property
    def nonzero_multiplicities(self) -> list[int]:
        return sorted(n for w, n in self.multiplicities.items() if any(w))


def weight_decomposition(g2: Subalgebra) -> WeightReport:
    """
    Eigenvalues of the Cartan part on every root and folded root.

    Raises:
        InvariantViolation: If some [H, b] is neither 0 nor b
    """
    cartan = [elem for elem in g2.basis if elem.tag.kind is TagKind.CARTAN]
    weights: dict[str, tuple[int, ...]] = {}
    for elem in g2.basis:
        if elem.tag.kind is TagKind.CARTAN:
            continue
        weight = []
        for h in cartan:
            image = bracket(h.op, elem.op)
            if image == elem.op:
                weight.append(1)
            elif not image:
                weight.append(0)
            else:
                raise InvariantViolation(f"[{h.label}, {elem.label}] is not a multiple of {elem.label}")
        weights[elem.label] = tuple(weight)
    return WeightReport(cartan=tuple(h.tag.key for h in cartan), weights=weights)  # type: ignore[misc]


def ideal_dimension(sub: Subalgebra, start: Endo) -> int:
    """Dimension of the smallest ideal of ``sub`` containing ``start``."""
    echelon = Echelon([start.flat])
    queue = [start]
    while queue:
        current = queue.pop()
        for elem in sub.basis:
            image = bracket(current, elem.op)
            if image and echelon.add(image.flat):
                queue.append(image)
    return echelon.rank


def ideal_scan(sub: Subalgebra, indices: Iterable[int] | None = None) -> list[int]:
    """Ideal dimensions for the selected basis elements (all by default), in order."""
    selected = range(sub.dim) if indices is None else indices
    return [ideal_dimension(sub, sub.basis[i].op) for i in selected]


def d_equivariance_failures(sub: Subalgebra, d: WeylElem) -> list[tuple[str, str]]:
    """Basis pairs with conjugate_by(d, [X, Y]) ≠ [X^d, Y^d]."""
    moved = [conjugate_by(d, elem.op) for elem in sub.basis]
    failures = []
    for (i, j), value in _bracket_table(sub).items():
        if conjugate_by(d, value) != bracket(moved[i], moved[j]):
            failures.append((sub.basis[i].label, sub.basis[j].label))
    return failures

