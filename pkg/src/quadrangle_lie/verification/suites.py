"""Named verification suites.

Every suite reads the Lie roots from ``SuiteContext.table`` so that a
corrupted operator table propagates into all of them.
"""

import logging
import math
import random
from collections.abc import Callable
from typing import NamedTuple

from quadrangle_lie.geometry.quadrangle import (
    EXTERIOR_COUNT,
    LINE_COUNT,
    LINES_PER_POINT,
    POINT_COUNT,
    GeometryError,
    bilinear_form,
    build_catalog,
    quadratic_form,
    trace_bilinear_form,
)
from quadrangle_lie.geometry.rootbases import (
    ROOT_BASE_COUNT,
    ROOT_BASE_SIZE,
    classify_line,
    delta_zero,
    dual,
    enumerate_phi,
    is_root_base,
    root_base_points,
)
from quadrangle_lie.geometry.weyl import (
    WEYL_ORDER,
    Action,
    induced_permutations,
    line_normalizer,
    orbit,
    order3_in_normalizer,
    reflection_pair_orders,
    reflections,
    stabilizer_mask,
    transitivity_witness,
)
from quadrangle_lie.liealg.checks import (
    CheckReport,
    verify_e6_permutation,
    verify_pair_patterns,
    verify_bracket_laws,
    verify_g2_cases,
    verify_root_ops,
    verify_weyl_equivariance,
)
from quadrangle_lie.liealg.extension import verify_closure_over
from quadrangle_lie.liealg.operators import cartan_op, span_rank
from quadrangle_lie.liealg.subalgebra import (
    DL_DIM,
    E6_DIM,
    G2_DIM,
    ClosureError,
    InvariantViolation,
    NotStableError,
    TagKind,
    build_dl,
    build_g2,
    centralizer,
    d_equivariance_failures,
    fold_pattern,
    jacobi_check,
    qualifying_elements,
    weight_decomposition,
)
from quadrangle_lie.verification.context import SuiteContext
from quadrangle_lie.verification.regression import (
    VALUE_KEYS,
    compare_regression,
    compute_regression,
    load_regression,
)
from quadrangle_lie.verification.report import SuiteResult, VerifyReport

logger = logging.getLogger("quadrangle-lie")

NORMALIZER_ORDER = WEYL_ORDER // LINE_COUNT
EQUIVARIANCE_SAMPLES = 4


def suite_catalog(ctx: SuiteContext) -> SuiteResult:
    """Counts, incidence, the quadrangle axiom and the two formulas for (u|v)."""
    catalog = build_catalog()
    result = SuiteResult("catalog")
    result.expect_equal("points", POINT_COUNT, len(catalog.points))
    result.expect_equal("exterior", EXTERIOR_COUNT, len(catalog.exterior))
    result.expect_equal("lines", LINE_COUNT, len(catalog.lines))
    result.expect_equal(
        "lines_per_point", [LINES_PER_POINT], sorted({len(lines) for lines in catalog.incidence})
    )

    report = CheckReport("quadrangle")
    for x, u in enumerate(catalog.points):
        for line in catalog.lines:
            if x in line:
                continue
            try:
                catalog.collinear_point(x, line)
                unique = True
            except GeometryError:
                unique = False
            report.expect(unique, f"point {x} has no unique collinear point on line {line.id}")
        for y, v in enumerate(catalog.points):
            report.expect(bilinear_form(u, v) == trace_bilinear_form(u, v), f"(x|y) formulas differ at {x},{y}")
            if x != y:
                collinear = any(y in catalog.lines[i] for i in catalog.incidence[x])
                report.expect(collinear == (catalog.form(x, y) == 0), f"collinearity of {x},{y}")
    for s in catalog.exterior:
        report.expect(quadratic_form(s) == 1, f"exterior vector {s} is isotropic")
    result.absorb(report)
    return result


def suite_weyl(ctx: SuiteContext) -> SuiteResult:
    """|W|, the 3-transposition property, transitivity and the block system {Δ, Δ*}."""
    group = ctx.group
    result = SuiteResult("weyl")
    result.expect_equal("order", WEYL_ORDER, group.order)

    histogram = reflection_pair_orders()
    result.details["reflection_pair_orders"] = {str(k): v for k, v in histogram.items()}
    result.expect_equal("reflection_pair_orders_at_most_3", True, set(histogram) <= {1, 2, 3})

    result.expect_equal("point_orbit", POINT_COUNT, len(orbit(group, 0, Action.POINTS)))
    result.expect_equal("line_orbit", LINE_COUNT, len(orbit(group, 0, Action.LINES)))
    result.expect_equal("rootbase_orbit", ROOT_BASE_COUNT, len(orbit(group, 0, Action.ROOTBASES)))
    result.expect_equal("normalizer_order", NORMALIZER_ORDER, len(line_normalizer(group, ctx.line)))
    for kind, seed in ((Action.LINES, ctx.line.id), (Action.ROOTBASES, 0)):
        size = len(orbit(group, seed, kind)) * int(stabilizer_mask(group, seed, kind).sum())
        result.expect_equal(f"orbit_stabilizer_{kind}", WEYL_ORDER, size)
    result.expect_equal(
        "rootbase_stabilizer_is_symmetric",
        math.factorial(ROOT_BASE_SIZE),
        len(induced_permutations(group, 0, Action.ROOTBASES)),
    )

    report = CheckReport("weyl")
    for y in range(POINT_COUNT):
        report.expect(transitivity_witness(group, 0, y).perm[0] == y, f"no element maps 0 to {y}")
    for w in reflections():
        for base in enumerate_phi().bases:
            report.expect(
                dual(w.image_of_base(base)).id == w.image_of_base(dual(base)).id,
                f"{{Δ, Δ*}} is not a block at {base.id}",
            )
    result.absorb(report)
    return result


def suite_rootbases(ctx: SuiteContext) -> SuiteResult:
    """Φ from Δ_{x,y}, duals, the partition ℙ = Δ₀ ∪ Δ ∪ Δ* and the line dichotomy."""
    catalog = build_catalog()
    phi = enumerate_phi()
    result = SuiteResult("rootbases")
    result.expect_equal("rootbases", ROOT_BASE_COUNT, len(phi))
    result.expect_equal("distinct_s", EXTERIOR_COUNT, len(phi.by_s))

    report = CheckReport("rootbases")
    generated = set()
    for x in range(POINT_COUNT):
        partners = [y for y in range(POINT_COUNT) if catalog.form(x, y) == 1]
        report.expect(len(partners) == 16, f"point {x} has {len(partners)} partners")
        for y in partners:
            points = root_base_points(x, y)
            report.expect(len(points) == 6, f"Δ_{x},{y} has {len(points)} points")
            generated.add(tuple(sorted(points)))
    report.expect(generated == {base.points for base in phi.bases}, "Δ_{x,y} sets differ from Φ")

    for base in phi.bases:
        star = dual(base)
        zero = delta_zero(base)
        report.expect(is_root_base(base.points, catalog), f"{base.id} is not a root base")
        report.expect(quadratic_form(base.s) == 1, f"s_{base.id} is isotropic")
        report.expect(star.id != base.id and dual(star).id == base.id, f"dual of {base.id}")
        report.expect(star.s == base.s, f"s of dual of {base.id}")
        report.expect(len(zero) == 15, f"|Δ₀| of {base.id} is {len(zero)}")
        everything = zero | set(base.points) | set(star.points)
        report.expect(len(everything) == POINT_COUNT, f"partition of ℙ by {base.id}")
        union = {v for v, code in enumerate(catalog.points) if bilinear_form(code, base.s) == 1}
        report.expect(union == set(base.points) | set(star.points), f"Δ ∪ Δ* of {base.id}")
        for x in base.points:
            partner = catalog.point_id(catalog.points[x] ^ base.s)
            report.expect(root_base_points(x, partner) == frozenset(base.points), f"Δ_x,x+s of {base.id}")
        for line in catalog.lines:
            try:
                classify_line(line, base)
                ok = True
            except GeometryError:
                ok = False
            report.expect(ok, f"line {line.id} is neither in Δ₀ nor transversal to {base.id}")
    result.absorb(report)
    return result


def suite_pairs(ctx: SuiteContext) -> SuiteResult:
    result = SuiteResult("pairs")
    result.absorb(verify_pair_patterns())
    return result


def suite_brackets(ctx: SuiteContext) -> SuiteResult:
    result = SuiteResult("brackets")
    result.absorb(verify_root_ops(ctx.table))
    result.absorb(verify_bracket_laws(ctx.table))
    return result


def suite_e6(ctx: SuiteContext) -> SuiteResult:
    """dim 𝔼 = 78 with closure; ℍ = ⟨H_v⟩ has dimension 6."""
    result = SuiteResult("e6")
    result.expect_equal("dim", E6_DIM, ctx.e6().dim)
    result.expect_equal("cartan_dim", 6, span_rank([cartan_op(v) for v in range(64)]))
    return result


def suite_dl(ctx: SuiteContext) -> SuiteResult:
    """D_L for every line: 24 roots, dim H_L = 4, dim D_L = 28, closed."""
    result = SuiteResult("dl")
    dims = {}
    for line in build_catalog().lines:
        try:
            dims[line.id] = build_dl(line, ctx.table).dim
        except (ClosureError, InvariantViolation) as e:
            result.fail(f"line {line.id}: {e}")
    result.expect_equal("lines_with_dim_28", LINE_COUNT, sum(1 for d in dims.values() if d == DL_DIM))
    return result


def suite_centralizer(ctx: SuiteContext) -> SuiteResult:
    """C_{D_L}(d) = G for every order-3 d ∈ N_W(L) that folds Φ_L as (6, 6)."""
    result = SuiteResult("centralizer")
    line = ctx.line
    pattern = fold_pattern(ctx.group, line)
    result.details["fold_pattern"] = {f"{a},{b}": n for (a, b), n in pattern.items()}
    result.details["order3_in_normalizer"] = len(order3_in_normalizer(ctx.group, line))

    dl = ctx.dl()
    candidates = qualifying_elements(ctx.group, line)
    result.details["qualifying"] = len(candidates)
    if not candidates:
        result.fail(f"no order-3 element folds line {line.id} as (6, 6)")
    for n, d in enumerate(candidates):
        g2 = build_g2(line, d, ctx.table)
        fixed_part = centralizer(dl, d)
        cartan = [e for e in g2.basis if e.tag.kind is TagKind.CARTAN]
        folded = [e.op for e in g2.basis if e.tag.kind is not TagKind.CARTAN]
        result.checked += 4
        if fixed_part.dim != G2_DIM:
            result.fail(f"d #{n}: dim C_D_L(d) = {fixed_part.dim}")
        if len(cartan) != 2:
            result.fail(f"d #{n}: dim C_H_L(d) = {len(cartan)}")
        if span_rank(folded) != 12:
            result.fail(f"d #{n}: dim ⟨S_X⟩ = {span_rank(folded)}")
        if not fixed_part.same_span(g2):
            result.fail(f"d #{n}: centralizer and folded basis span different subspaces")
    return result


def suite_weights(ctx: SuiteContext) -> SuiteResult:
    """Eigenrelation [H, b] = λ_b(H)·b for the 12 non-Cartan basis elements of G2."""
    result = SuiteResult("weights")
    g2 = ctx.g2()
    weights = weight_decomposition(g2)
    phi = enumerate_phi()
    for elem in g2.basis:
        kind = elem.tag.kind
        if kind is TagKind.CARTAN:
            continue
        first = elem.tag.key if kind is TagKind.ROOT else elem.tag.key[0]  # type: ignore[index]
        s = phi[first].s  # type: ignore[index]
        expected = tuple(bilinear_form(s, v) for v in weights.cartan)
        result.checked += 1
        if weights.weights[elem.label] != expected:
            result.fail(f"weight of {elem.label} is {weights.weights[elem.label]}, expected {expected}")
    result.details["weights"] = {label: list(w) for label, w in weights.weights.items()}
    result.details["nonzero_multiplicities"] = weights.nonzero_multiplicities
    return result


def suite_g2cases(ctx: SuiteContext) -> SuiteResult:
    result = SuiteResult("g2cases")
    result.absorb(verify_g2_cases(ctx.g2(), ctx.line, ctx.d(), ctx.table))
    return result


def suite_jacobi(ctx: SuiteContext) -> SuiteResult:
    """Jacobi: E6 on sampled triples, D_L and G2 on every triple."""
    result = SuiteResult("jacobi")
    for name, sub, samples in (
        ("e6", ctx.e6(), ctx.jacobi_samples),
        ("dl", ctx.dl(), None),
        ("g2", ctx.g2(), None),
    ):
        failures = jacobi_check(sub, samples=samples, seed=ctx.seed)
        result.expect_equal(f"{name}_failures", 0, len(failures))
        result.violations.extend(f"{name}: {triple}" for triple in failures[:5])
    return result


def suite_equivariance(ctx: SuiteContext) -> SuiteResult:
    """W acts on the Lie roots by conjugation, and d is an automorphism of D_L and G2."""
    result = SuiteResult("equivariance")
    result.absorb(verify_weyl_equivariance(reflections(), ctx.table))
    rng = random.Random(ctx.seed)
    sample = [ctx.group[p] for p in rng.sample(range(ctx.group.order), EQUIVARIANCE_SAMPLES)]
    result.absorb(verify_e6_permutation(ctx.e6(), sample))
    for sub in (ctx.dl(), ctx.g2()):
        failures = d_equivariance_failures(sub, ctx.d())
        result.expect_equal(f"{sub.name}_d_equivariance_failures", 0, len(failures))
    return result


def suite_extension(ctx: SuiteContext) -> SuiteResult:
    """Independence and closure of D_L and G2 over GF(2^k)."""
    degree = max(ctx.field_degree, 2)
    result = SuiteResult("extension")
    result.details["field_degree"] = degree
    for sub in (ctx.dl(), ctx.g2()):
        failures = verify_closure_over(sub, degree, seed=ctx.seed)
        result.expect_equal(f"{sub.name}_failures", 0, len(failures))
        result.violations.extend(failures[:5])
    return result


def suite_regression(ctx: SuiteContext) -> SuiteResult:
    """Derived values against the frozen regression file."""
    result = SuiteResult("regression")
    expected = load_regression(ctx.regression_path)
    frozen = [key for key, value in expected.items() if value is not None]
    actual = compute_regression(ctx, line_id=expected.get("line", 0), keys=frozen)
    for key, (want, got) in compare_regression(expected, actual).items():
        result.expect_equal(key, want, got)
    unfrozen = [key for key in VALUE_KEYS if expected.get(key) is None]
    for key in unfrozen:
        result.fail(f"{key} is not frozen (run verify --freeze)")
    result.details["unfrozen"] = unfrozen
    return result


class Suite(NamedTuple):
    name: str
    description: str
    run: Callable[[SuiteContext], SuiteResult]


SUITES: dict[str, Suite] = {
    suite.name: suite
    for suite in (
        Suite("catalog", "points, lines, exterior points and the quadrangle axiom", suite_catalog),
        Suite("weyl", "group order, 3-transpositions, orbits and normalizer", suite_weyl),
        Suite("rootbases", "root bases, duals and the partition of the points", suite_rootbases),
        Suite("pairs", "intersection patterns of pairs of root bases", suite_pairs),
        Suite("brackets", "bracket laws of the Lie roots", suite_brackets),
        Suite("e6", "E6 of dimension 78", suite_e6),
        Suite("dl", "D_L of dimension 28 for every line", suite_dl),
        Suite("centralizer", "centralizer of d in D_L equals the folded G2", suite_centralizer),
        Suite("weights", "weights of the G2 roots", suite_weights),
        Suite("g2cases", "closure of G2 by pair geometry", suite_g2cases),
        Suite("jacobi", "Jacobi identity", suite_jacobi),
        Suite("equivariance", "Weyl and d equivariance", suite_equivariance),
        Suite("extension", "closure over GF(2^k)", suite_extension),
        Suite("regression", "frozen derived values", suite_regression),
    )
}


def run_suite(name: str, ctx: SuiteContext) -> SuiteResult:
    """
    Run one suite, turning closure and invariant failures into a failed result.

    Raises:
        ValueError: For an unknown suite name
    """
    if name not in SUITES:
        raise ValueError(f"Unknown suite: {name!r} (known: {', '.join(SUITES)})")
    logger.info(f"Running suite {name}...")
    try:
        result = SUITES[name].run(ctx)
    except (ClosureError, InvariantViolation, NotStableError) as e:
        logger.error(f"Suite {name} aborted: {e}")
        result = SuiteResult(name)
        result.fail(str(e))
    logger.info(f"Suite {name}: {'passed' if result.passed else 'FAILED'}")
    return result


def run_suites(names: list[str] | None, ctx: SuiteContext) -> VerifyReport:
    """Run the named suites in the given order (all, in registry order, by default)."""
    selected = list(SUITES) if not names else names
    for name in selected:
        if name not in SUITES:
            raise ValueError(f"Unknown suite: {name!r} (known: {', '.join(SUITES)})")
    return VerifyReport([run_suite(name, ctx) for name in selected])
