"""Tests for the Weyl group as permutations of the points."""

import math

import pytest

from quadrangle_lie.geometry.quadrangle import (
    LINE_COUNT,
    POINT_COUNT,
    VECTOR_COUNT,
    Line,
    QuadrangleCatalog,
    bilinear_form,
)
from quadrangle_lie.geometry.rootbases import ROOT_BASE_COUNT, ROOT_BASE_SIZE, PhiCatalog, dual
from quadrangle_lie.geometry.weyl import (
    REFLECTION_COUNT,
    WEYL_ORDER,
    Action,
    GroupCatalog,
    GroupTooLargeError,
    WeylElem,
    WeylError,
    generate_group,
    induced_permutations,
    line_normalizer,
    orbit,
    order3_in_normalizer,
    reflection,
    reflection_pair_orders,
    reflections,
    stabilizer,
    stabilizer_mask,
    transitivity_witness,
)

# Tests for elements


def test_should_build_reflections_of_order_two(catalog: QuadrangleCatalog) -> None:
    """Test that every reflection is an involutive isometry."""
    refl = reflections()
    assert len(refl) == REFLECTION_COUNT
    for w in refl:
        assert w.order() == 2
        assert w.is_linear_isometry()
        assert w.compose(w).is_identity


def test_should_apply_reflection_formula(catalog: QuadrangleCatalog) -> None:
    """Test σ_s(x) = x + (x|s)s on vectors."""
    s = catalog.exterior[0]
    w = reflection(s)
    for v in range(VECTOR_COUNT):
        assert w.vector_image(v) == v ^ (s if bilinear_form(v, s) else 0)


def test_should_refuse_isotropic_reflection_vector() -> None:
    """Test that reflections need an anisotropic vector."""
    with pytest.raises(WeylError):
        reflection(5)
    with pytest.raises(WeylError):
        reflection(0)


def test_should_compose_on_the_right() -> None:
    """Test x^{gh} = (x^g)^h and inverses."""
    g, h = reflections()[0], reflections()[1]
    gh = g * h
    assert all(gh.perm[x] == h.perm[g.perm[x]] for x in range(POINT_COUNT))
    assert (gh * gh.inverse()).is_identity
    assert gh.power(gh.order()).is_identity
    assert gh.power(-1) == gh.inverse()


def test_should_build_identity_from_vector_map() -> None:
    """Test from_vector_map on the identity and its matrix."""
    identity = WeylElem.from_vector_map(list(range(VECTOR_COUNT)))
    assert identity == WeylElem.identity()
    assert identity.matrix() == (1, 2, 4, 8, 16, 32)


def test_should_reject_non_isometric_vector_maps() -> None:
    """Test that maps moving Q or breaking additivity are refused."""
    swapped = list(range(VECTOR_COUNT))
    swapped[1], swapped[5] = 5, 1
    with pytest.raises(WeylError):
        WeylElem.from_vector_map(swapped)
    with pytest.raises(WeylError):
        WeylElem.from_vector_map([0] * VECTOR_COUNT)


def test_should_reject_non_permutations() -> None:
    """Test the permutation check."""
    with pytest.raises(WeylError):
        WeylElem((0,) * POINT_COUNT)


# Tests for the group


def test_should_generate_group_of_order_51840(group: GroupCatalog) -> None:
    """Test |W| = 51840."""
    assert group.order == WEYL_ORDER
    assert WeylElem.identity() in group
    assert group.position(group[17]) == 17


def test_should_stop_closure_at_size_guard() -> None:
    """Test the size guard."""
    with pytest.raises(GroupTooLargeError):
        generate_group(reflections(), limit=100)


def test_should_generate_small_subgroup() -> None:
    """Test that one reflection generates a group of order 2."""
    assert generate_group([reflections()[0]]).order == 2


def test_should_act_transitively(group: GroupCatalog, phi: PhiCatalog) -> None:
    """Test the orbits of points, lines and root bases."""
    assert len(orbit(group, 0, Action.POINTS)) == POINT_COUNT
    assert len(orbit(group, 0, Action.LINES)) == LINE_COUNT
    assert len(orbit(group, phi[0], Action.ROOTBASES)) == ROOT_BASE_COUNT
    for y in range(POINT_COUNT):
        assert transitivity_witness(group, 0, y).perm[0] == y


def test_should_reject_unknown_action(group: GroupCatalog) -> None:
    """Test the action name check."""
    with pytest.raises(WeylError):
        orbit(group, 0, "on-planes")


def test_should_respect_the_dual_block_system(phi: PhiCatalog) -> None:
    """Test (Δ^w)* = (Δ*)^w."""
    for w in reflections():
        for base in phi.bases:
            assert dual(w.image_of_base(base)).id == w.image_of_base(dual(base)).id


def test_should_count_reflection_pair_orders() -> None:
    """Test the 3-transposition histogram."""
    assert reflection_pair_orders() == {1: 36, 2: 540, 3: 720}


def test_should_stabilize_a_point(group: GroupCatalog) -> None:
    """Test |W_x| = |W| / 27."""
    assert len(stabilizer(group, 0, Action.POINTS)) == WEYL_ORDER // POINT_COUNT


def test_should_induce_all_of_s6_on_a_root_base(group: GroupCatalog, phi: PhiCatalog) -> None:
    """Test that the stabilizer of Δ has order 720 and acts as S_6 on its points."""
    base = phi[0]
    assert len(stabilizer(group, base, Action.ROOTBASES)) == math.factorial(ROOT_BASE_SIZE)
    images = induced_permutations(group, base, Action.ROOTBASES)
    assert images.shape == (math.factorial(ROOT_BASE_SIZE), ROOT_BASE_SIZE)
    assert {tuple(sorted(int(p) for p in row)) for row in images} == {base.points}


@pytest.mark.parametrize(
    ("action", "seed", "orbit_size"),
    [(Action.POINTS, 5, POINT_COUNT), (Action.LINES, 17, LINE_COUNT), (Action.ROOTBASES, 40, ROOT_BASE_COUNT)],
)
def test_should_satisfy_orbit_stabilizer(
    group: GroupCatalog, action: Action, seed: int, orbit_size: int
) -> None:
    """Test |orbit| · |stabilizer| = |W|."""
    stabilizer_order = int(stabilizer_mask(group, seed, action).sum())
    assert len(orbit(group, seed, action)) == orbit_size
    assert orbit_size * stabilizer_order == WEYL_ORDER


# Tests for the line normalizer


def test_should_have_normalizer_of_order_1152(group: GroupCatalog, line0: Line) -> None:
    """Test |N_W(L)| = |W| / 45."""
    normalizer = line_normalizer(group, line0)
    assert len(normalizer) == 1152
    assert all(w.image_of_line(line0) == line0.id for w in normalizer)


def test_should_find_80_order3_elements(group: GroupCatalog, line0: Line) -> None:
    """Test the order-3 elements of N_W(L)."""
    elements = order3_in_normalizer(group, line0)
    assert len(elements) == 80
    assert all(d.order() == 3 for d in elements)
    assert elements == sorted(elements)
