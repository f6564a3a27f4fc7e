"""Structure-constant tables: computation, export (JSON v1 / CSV) and re-import."""

import hashlib
import json
import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Any

from quadrangle_lie.geometry.fields import scalar_field
from quadrangle_lie.liealg.gf2 import iter_bits
from quadrangle_lie.liealg.operators import Endo, OperatorTable, bracket, cartan_op, default_operator_table
from quadrangle_lie.liealg.subalgebra import BasisTag, ClosureError, Subalgebra, TagKind

logger = logging.getLogger("quadrangle-lie")

FORMAT_VERSION = 1
CSV_HEADER = "i,j,k,coeff"


class TableFormatError(ValueError):
    """Raised when an exported table cannot be parsed."""

    pass


@dataclass(frozen=True)
class StructureTable:
    """
    The brackets of a basis, written in that basis.

    Attributes:
        name: Algebra name
        labels: Basis labels in order
        triples: (i, j, mask) with i < j and [b_i, b_j] = Σ_{k ∈ mask} b_k, nonzero only
        metadata: Construction parameters carried into the export
    """

    name: str
    labels: tuple[str, ...]
    triples: tuple[tuple[int, int, int], ...]
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def coefficients(self, i: int, j: int) -> int:
        """Coefficient mask of [b_i, b_j]; symmetric, zero on the diagonal."""
        if i == j:
            return 0
        key = (min(i, j), max(i, j))
        return self._lookup.get(key, 0)

    @cached_property
    def _lookup(self) -> dict[tuple[int, int], int]:
        return {(i, j): mask for i, j, mask in self.triples}

    def to_dict(self, field_degree: int = 1) -> dict[str, Any]:
        return {
            "version": FORMAT_VERSION,
            "field": scalar_field(field_degree).label,
            "algebra": {"name": self.name, "dimension": self.dim},
            "basis": list(self.labels),
            "brackets": [[i, j, f"{mask:x}"] for i, j, mask in self.triples],
            "metadata": self.metadata,
        }

    def to_json(self, field_degree: int = 1) -> str:
        return json.dumps(self.to_dict(field_degree), indent=2, ensure_ascii=False) + "\n"

    def to_csv(self) -> str:
        rows = [CSV_HEADER]
        for i, j, mask in self.triples:
            rows.extend(f"{i},{j},{k},1" for k in iter_bits(mask))
        return "\n".join(rows) + "\n"

    def digest(self) -> str:
        """SHA-256 of the GF(2) JSON export."""
        return hashlib.sha256(self.to_json().encode("utf-8")).hexdigest()


def structure_table(sub: Subalgebra) -> StructureTable:
    """
    Coefficients of every pairwise bracket in the basis of ``sub``.

    Raises:
        ClosureError: If a bracket is outside the span
    """
    triples = []
    for i, j in combinations(range(sub.dim), 2):
        value = bracket(sub.basis[i].op, sub.basis[j].op)
        if not value:
            continue
        mask = sub.coordinates(value)
        if mask is None:
            raise ClosureError(sub.name, sub.basis[i].label, sub.basis[j].label)
        triples.append((i, j, mask))
    logger.debug(f"{sub.name}: {len(triples)} nonzero brackets")
    return StructureTable(
        name=sub.name, labels=tuple(sub.labels), triples=tuple(triples), metadata=dict(sub.metadata)
    )


def load_table(text: str) -> StructureTable:
    """
    Parse a JSON v1 export.

    Raises:
        TableFormatError: On malformed documents or an unsupported version
    """
    try:
        data = json.loads(text)
        version = data["version"]
        labels = tuple(str(label) for label in data["basis"])
        triples = tuple((int(i), int(j), int(mask, 16)) for i, j, mask in data["brackets"])
        name = str(data["algebra"]["name"])
        metadata = dict(data.get("metadata", {}))
    except (KeyError, TypeError, ValueError) as e:
        raise TableFormatError(f"Malformed structure table: {e}") from e
    if version != FORMAT_VERSION:
        raise TableFormatError(f"Unsupported table version: {version!r}")
    if data["algebra"]["dimension"] != len(labels):
        raise TableFormatError("Dimension does not match the basis length")
    for i, j, mask in triples:
        if not 0 <= i < j < len(labels) or mask >> len(labels):
            raise TableFormatError(f"Bracket entry out of range: ({i}, {j}, {mask:x})")
    return StructureTable(name=name, labels=labels, triples=triples, metadata=metadata)


def read_table(path: Path) -> StructureTable:
    return load_table(path.read_text(encoding="utf-8"))


def label_operator(label: str, table: OperatorTable | None = None) -> Endo:
    """
    Rebuild the operator behind a basis label.

    Raises:
        TableFormatError: For combination labels, which depend on a parent basis
    """
    table = table or default_operator_table()
    try:
        tag = BasisTag.parse(label)
    except ValueError as e:
        raise TableFormatError(str(e)) from e
    match tag.kind:
        case TagKind.CARTAN:
            return cartan_op(tag.key)  # type: ignore[arg-type]
        case TagKind.ROOT:
            return table.root(tag.key)  # type: ignore[arg-type]
        case TagKind.FOLDED:
            a, b, c = tag.key  # type: ignore[misc]
            return table.root(a) + table.root(b) + table.root(c)
        case _:
            raise TableFormatError(f"Cannot rebuild combination label {label!r}")


def verify_table(structure: StructureTable, table: OperatorTable | None = None) -> list[tuple[int, int]]:
    """
    Recompute every bracket from the labels and compare with the stored coefficients.

    Returns:
        list: Index pairs whose stored coefficients do not reconstruct the bracket
    """
    ops = [label_operator(label, table) for label in structure.labels]
    failures = []
    for i, j in combinations(range(structure.dim), 2):
        expected = Endo.zero()
        for k in iter_bits(structure.coefficients(i, j)):
            expected = expected + ops[k]
        if bracket(ops[i], ops[j]) != expected:
            failures.append((i, j))
    return failures


def write_table(structure: StructureTable, path: Path, fmt: str = "json", field_degree: int = 1) -> Path:
    """Write an export, creating parent directories."""
    text = structure.to_csv() if fmt == "csv" else structure.to_json(field_degree)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info(f"Wrote {structure.name} table to {path}")
    return path
