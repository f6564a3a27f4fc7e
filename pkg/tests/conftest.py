"""Shared fixtures: the catalogs, the Weyl group and the algebras on line 0."""

import pytest

from quadrangle_lie.geometry.quadrangle import Line, QuadrangleCatalog, build_catalog
from quadrangle_lie.geometry.rootbases import PhiCatalog, enumerate_phi
from quadrangle_lie.geometry.weyl import GroupCatalog, WeylElem, weyl_group
from quadrangle_lie.liealg.operators import OperatorTable, default_operator_table
from quadrangle_lie.liealg.subalgebra import Subalgebra, build_dl, build_e6, build_g2, select_d


@pytest.fixture(scope="session")
def catalog() -> QuadrangleCatalog:
    """The quadrangle catalog."""
    return build_catalog()


@pytest.fixture(scope="session")
def phi() -> PhiCatalog:
    """The 72 root bases."""
    return enumerate_phi()


@pytest.fixture(scope="session")
def group() -> GroupCatalog:
    """The Weyl group, generated once per session."""
    return weyl_group()


@pytest.fixture(scope="session")
def table() -> OperatorTable:
    """The uncorrupted Lie roots."""
    return default_operator_table()


@pytest.fixture(scope="session")
def line0(catalog: QuadrangleCatalog) -> Line:
    """Line 0, the default line."""
    return catalog.line(0)


@pytest.fixture(scope="session")
def d_auto(group: GroupCatalog, line0: Line) -> WeylElem:
    """The least order-3 element of N_W(L) folding Φ_L as (6, 6)."""
    return select_d(group, line0, "auto")


@pytest.fixture(scope="session")
def e6(table: OperatorTable) -> Subalgebra:
    """E6, closure certified."""
    return build_e6(table)


@pytest.fixture(scope="session")
def dl0(line0: Line, table: OperatorTable) -> Subalgebra:
    """D_L for line 0, closure certified."""
    return build_dl(line0, table)


@pytest.fixture(scope="session")
def g2(line0: Line, d_auto: WeylElem, table: OperatorTable) -> Subalgebra:
    """G2 for line 0 and the automatic d, closure certified."""
    return build_g2(line0, d_auto, table)
