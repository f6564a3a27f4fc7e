"""Inputs shared by the verification suites, with cached constructions."""

from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from quadrangle_lie.config import get_jacobi_samples, get_regression_path, get_seed
from quadrangle_lie.geometry.quadrangle import Line, build_catalog
from quadrangle_lie.geometry.weyl import GroupCatalog, WeylElem, weyl_group
from quadrangle_lie.liealg.operators import OperatorTable, default_operator_table
from quadrangle_lie.liealg.subalgebra import Subalgebra, build_dl, build_e6, build_g2, select_d


@dataclass
class SuiteContext:
    """
    Shared inputs and cached constructions for a verification run.

    Attributes:
        table: The Lie roots every suite reads
        line_id: Line L used by the G2 suites
        d_policy: "auto" or an index into the order-3 elements of N_W(L)
        field_degree: k for the extension suite (GF(4) is used when k = 1)
        seed: Seed for sampled checks
        jacobi_samples: Random triples for the E6 Jacobi check
        regression_path: Frozen regression values
    """

    table: OperatorTable = field(default_factory=default_operator_table)
    line_id: int = 0
    d_policy: str | int = "auto"
    field_degree: int = 1
    seed: int = field(default_factory=get_seed)
    jacobi_samples: int = field(default_factory=get_jacobi_samples)
    regression_path: Path = field(default_factory=get_regression_path)
    _cache: dict[str, Any] = field(default_factory=dict, repr=False)

    @property
    def line(self) -> Line:
        return build_catalog().line(self.line_id)

    @property
    def group(self) -> GroupCatalog:
        return weyl_group()

    def _cached(self, key: str, build: Callable[[], Any]) -> Any:
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def d(self) -> WeylElem:
        return self._cached("d", lambda: select_d(self.group, self.line, self.d_policy))

    def e6(self) -> Subalgebra:
        return self._cached("e6", lambda: build_e6(self.table))

    def dl(self) -> Subalgebra:
        return self._cached("dl", lambda: build_dl(self.line, self.table))

    def g2(self) -> Subalgebra:
        return self._cached("g2", lambda: build_g2(self.line, self.d(), self.table))
