"""Tests for the operators on the 27-dimensional module."""

from quadrangle_lie.geometry.quadrangle import POINT_COUNT, VECTOR_COUNT, QuadrangleCatalog, bilinear_form
from quadrangle_lie.geometry.rootbases import PhiCatalog, dual
from quadrangle_lie.geometry.weyl import reflections, weyl_group
from quadrangle_lie.liealg.operators import (
    Endo,
    OperatorTable,
    bracket,
    cartan_op,
    conjugate_by,
    permutation_matrix,
    root_op,
    span_echelon,
    span_rank,
)

# Tests for Endo


def test_should_multiply_row_vectors_left_to_right() -> None:
    """Test that e_x·(AB) follows A then B."""
    a = Endo.from_entries([(0, 1)])
    b = Endo.from_entries([(1, 2)])
    assert a @ b == Endo.from_entries([(0, 2)])
    assert not b @ a


def test_should_flatten_and_restore() -> None:
    """Test the 729-bit encoding."""
    op = Endo.from_entries([(0, 0), (3, 26), (26, 5)])
    assert Endo.from_flat(op.flat) == op
    assert op.entries() == [(0, 0), (3, 26), (26, 5)]


def test_should_have_zero_self_bracket() -> None:
    """Test [X, X] = 0 and [X, Y] = [Y, X] in characteristic 2."""
    x = Endo.from_entries([(0, 1), (1, 2)])
    y = Endo.from_entries([(2, 0)])
    assert not bracket(x, x)
    assert bracket(x, y) == bracket(y, x)


def test_should_toggle_one_entry() -> None:
    """Test flipped."""
    op = Endo.zero().flipped(4, 7)
    assert op.entry(4, 7) == 1
    assert op.flipped(4, 7) == Endo.zero()
    assert Endo.identity().rank() == POINT_COUNT


# Tests for Cartan operators


def test_should_build_diagonal_cartan_operators(catalog: QuadrangleCatalog) -> None:
    """Test H_v entries and additivity in v."""
    for v in range(VECTOR_COUNT):
        h = cartan_op(v)
        assert h.is_diagonal()
        assert all(h.entry(x, x) == bilinear_form(code, v) for x, code in enumerate(catalog.points))
    assert cartan_op(3) + cartan_op(12) == cartan_op(15)
    assert not cartan_op(0)


def test_should_give_cartan_subalgebra_of_dimension_six() -> None:
    """Test dim ⟨H_v⟩ = 6."""
    assert span_rank([cartan_op(v) for v in range(VECTOR_COUNT)]) == 6


def test_should_count_cartan_support(catalog: QuadrangleCatalog) -> None:
    """Test that H_s has 12 ones for exterior s and 16 for points."""
    assert all(cartan_op(s).rank() == 12 for s in catalog.exterior)
    assert all(cartan_op(p).rank() == 16 for p in catalog.points)


# Tests for Lie roots


def test_should_map_root_base_onto_dual(catalog: QuadrangleCatalog, phi: PhiCatalog) -> None:
    """Test R_Δ: e_x ↦ e_{x+s} on Δ."""
    base = phi[0]
    op = root_op(base)
    star = set(dual(base).points)
    assert op.rank() == 6
    for x, y in op.entries():
        assert x in base.points
        assert y in star
        assert catalog.points[x] ^ catalog.points[y] == base.s


def test_should_square_to_zero_and_transpose_to_dual(phi: PhiCatalog, table: OperatorTable) -> None:
    """Test R_Δ² = 0 and R_Δᵀ = R_{Δ*}."""
    for base in phi.bases:
        op = table.root(base)
        assert not op @ op
        assert op.transpose() == table.root(dual(base))


def test_should_bracket_root_with_dual_to_cartan(phi: PhiCatalog, table: OperatorTable) -> None:
    """Test [R_Δ, R_Δ*] = H_{s_Δ}."""
    for base in phi.bases:
        assert bracket(table.root(base), table.root(dual(base))) == cartan_op(base.s)


def test_should_span_78_dimensions(table: OperatorTable) -> None:
    """Test that 72 roots and 6 Cartan operators are independent."""
    ops = list(table.roots) + [cartan_op(1 << i) for i in range(6)]
    assert span_rank(ops) == 78


def test_should_return_canonical_echelon_basis() -> None:
    """Test that span_echelon depends only on the span."""
    rank, basis = span_echelon([cartan_op(v) for v in range(VECTOR_COUNT)])
    assert rank == 6
    assert all(op.is_diagonal() for op in basis)
    assert span_echelon([cartan_op(1 << i) for i in range(6)]) == (rank, basis)


def test_should_corrupt_one_root_only(table: OperatorTable) -> None:
    """Test with_flipped_entry."""
    corrupted = table.with_flipped_entry(0, 0, 0)
    assert corrupted.root(0) != table.root(0)
    assert corrupted.roots[1:] == table.roots[1:]


# Tests for conjugation


def test_should_conjugate_like_permutation_matrices(phi: PhiCatalog, table: OperatorTable) -> None:
    """Test conjugate_by(w, X) = P_w⁻¹ X P_w."""
    w = weyl_group()[1234]
    op = table.root(phi[5]) + cartan_op(9)
    assert conjugate_by(w, op) == permutation_matrix(w.inverse()) @ op @ permutation_matrix(w)


def test_should_move_roots_and_cartans_with_the_group(phi: PhiCatalog, table: OperatorTable) -> None:
    """Test R_Δ^w = R_{Δ^w} and H_v^w = H_{v^w}."""
    for w in reflections()[:6]:
        for base in phi.bases:
            assert conjugate_by(w, table.root(base)) == table.root(w.image_of_base(base))
        for v in range(VECTOR_COUNT):
            assert conjugate_by(w, cartan_op(v)) == cartan_op(w.vector_image(v))
