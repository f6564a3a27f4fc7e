"""Exhaustive bracket-law checks for the Lie roots and the folded G2 basis.

Every expectation here is derived from the geometry (``classify_pair``,
duals, reflections) and only then compared with the matrices read from an
``OperatorTable``. A corrupted table therefore shows up as a violation.
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field

from quadrangle_lie.geometry.quadrangle import Line, bilinear_form, perp, quadratic_form, span
from quadrangle_lie.geometry.rootbases import (
    PairCase,
    RootBase,
    classify_pair,
    dual,
    enumerate_phi,
    reflect_base,
    reflect_points,
)
from quadrangle_lie.geometry.weyl import WeylElem
from quadrangle_lie.liealg.operators import (
    Endo,
    OperatorTable,
    bracket,
    cartan_op,
    conjugate_by,
    default_operator_table,
)
from quadrangle_lie.liealg.subalgebra import Subalgebra, TagKind

logger = logging.getLogger("quadrangle-lie")

MAX_REPORTED = 20


@dataclass
class CheckReport:
    """
    Outcome of one family of checks.

    Attributes:
        name: Short name of the family
        checked: Number of individual comparisons made
        violations: Human-readable counterexamples (at most ``MAX_REPORTED`` kept)
        failures: Total number of failed comparisons
    """

    name: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)
    failures: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def expect(self, condition: bool, message: str) -> None:
        self.checked += 1
        if not condition:
            self.failures += 1
            if len(self.violations) < MAX_REPORTED:
                self.violations.append(message)

    def merge(self, other: "CheckReport") -> None:
        self.checked += other.checked
        self.failures += other.failures
        room = MAX_REPORTED - len(self.violations)
        self.violations.extend(other.violations[:room])


def predicted_bracket(delta: RootBase, gamma: RootBase, table: OperatorTable) -> Endo:
    """[R_Δ, R_Γ] as the geometry predicts it: 0, H_{s_Δ} or R_{Δ^{σ_Γ}}."""
    if delta.id == gamma.id:
        return Endo.zero()
    if dual(delta).id == gamma.id:
        return cartan_op(delta.s)
    pair = classify_pair(delta, gamma)
    if pair.case is PairCase.DISJOINT and pair.composed is not None:
        return table.root(pair.composed)
    return Endo.zero()


def verify_root_ops(table: OperatorTable | None = None) -> CheckReport:
    """R_Δ has rank 6, squares to zero and transposes to R_{Δ*}."""
    table = table or default_operator_table()
    report = CheckReport("root-ops")
    for base in enumerate_phi().bases:
        op = table.root(base)
        report.expect(op.rank() == 6, f"R_{base.id} has rank {op.rank()}")
        report.expect(not op @ op, f"R_{base.id}² ≠ 0")
        report.expect(op.transpose() == table.root(dual(base)), f"R_{base.id}ᵀ ≠ R_{dual(base).id}")
    return report


def verify_bracket_laws(table: OperatorTable | None = None) -> CheckReport:
    """
    The six bracket laws of the Lie roots, over all ordered pairs of root bases.

    (1) [H_v, H_w] = 0 and [H_v, R_Δ] = (s_Δ|v)R_Δ for v, w in the code-bit basis.
    (2) [R_Δ, R_Δ*] = H_{s_Δ}.
    (3) [R_Δ, R_Γ] = 0 for (s_Δ|s_Γ) = 0, s_Δ ≠ s_Γ.
    (4) [R_Δ, R_Γ] = 0 for (s_Δ|s_Γ) = 1 and Δ ∩ Γ ≠ ∅.
    (5) [R_Δ, R_Γ] = R_{Γ^{σ_Δ}} = R_{Δ^{σ_Γ}} for (s_Δ|s_Γ) = 1 and Δ ∩ Γ = ∅.
    (6) R_Δ R_Γ R_Δ = 0 for Γ ∉ {Δ, Δ*}, while R_Δ R_Δ* R_Δ = R_Δ.
    """
    table = table or default_operator_table()
    phi = enumerate_phi()
    report = CheckReport("brackets")
    cartan = [1 << i for i in range(6)]

    for v in cartan:
        h = cartan_op(v)
        for w in cartan:
            report.expect(not bracket(h, cartan_op(w)), f"(1) [H_{v}, H_{w}] ≠ 0")
        for base in phi.bases:
            expected = table.root(base).scale(bilinear_form(base.s, v))
            report.expect(
                bracket(h, table.root(base)) == expected,
                f"(1) [H_{v}, R_{base.id}] ≠ (s|v)R_{base.id}",
            )

    for delta in phi.bases:
        r_delta = table.root(delta)
        star = dual(delta)
        report.expect(
            bracket(r_delta, table.root(star)) == cartan_op(delta.s),
            f"(2) [R_{delta.id}, R_{star.id}] ≠ H_{delta.s}",
        )
        report.expect(
            r_delta @ table.root(star) @ r_delta == r_delta,
            f"(6) R_{delta.id} R_{star.id} R_{delta.id} ≠ R_{delta.id}",
        )
        for gamma in phi.bases:
            if gamma.s == delta.s:
                continue
            r_gamma = table.root(gamma)
            value = bracket(r_delta, r_gamma)
            pair = classify_pair(delta, gamma)
            match pair.case:
                case PairCase.ORTHOGONAL:
                    report.expect(not value, f"(3) [R_{delta.id}, R_{gamma.id}] ≠ 0")
                case PairCase.SHARED:
                    report.expect(not value, f"(4) [R_{delta.id}, R_{gamma.id}] ≠ 0")
                case PairCase.DISJOINT:
                    other = reflect_base(gamma, delta.s)
                    report.expect(
                        pair.composed is not None and other.id == pair.composed.id,
                        f"(5) Γ^σ_Δ ≠ Δ^σ_Γ for ({delta.id}, {gamma.id})",
                    )
                    report.expect(
                        value == table.root(other),
                        f"(5) [R_{delta.id}, R_{gamma.id}] ≠ R_{other.id}",
                    )
            report.expect(
                not r_delta @ r_gamma @ r_delta,
                f"(6) R_{delta.id} R_{gamma.id} R_{delta.id} ≠ 0",
            )
    logger.info(f"Bracket laws: {report.checked} comparisons, {report.failures} failures")
    return report


def verify_pair_patterns() -> CheckReport:
    """Intersection patterns and reflections for all ordered pairs with s_Δ ≠ s_Γ."""
    phi = enumerate_phi()
    report = CheckReport("pairs")
    for delta in phi.bases:
        for gamma in phi.bases:
            if delta.s == gamma.s:
                continue
            pair = classify_pair(delta, gamma)
            where = f"({delta.id}, {gamma.id})"
            match pair.case:
                case PairCase.ORTHOGONAL:
                    report.expect(pair.sizes == (1, 1, 1, 1), f"orthogonal {where}: sizes {pair.sizes}")
                    report.expect(pair.fixed_by_reflection, f"orthogonal {where}: Δ^σ_Γ ≠ Δ")
                case PairCase.SHARED:
                    report.expect(pair.sizes == (3, 0, 0, 3), f"shared {where}: sizes {pair.sizes}")
                case PairCase.DISJOINT:
                    report.expect(pair.sizes == (0, 3, 3, 0), f"disjoint {where}: sizes {pair.sizes}")
                    composed = pair.composed
                    report.expect(
                        composed is not None and composed.s == delta.s ^ gamma.s,
                        f"disjoint {where}: s of Δ^σ_Γ ≠ s_Δ + s_Γ",
                    )
                    report.expect(
                        composed is not None and reflect_base(gamma, delta.s).id == composed.id,
                        f"disjoint {where}: Δ^σ_Γ ≠ Γ^σ_Δ",
                    )
    return report


def orbit_sum(op: Endo, d: WeylElem) -> Endo:
    """X + X^d + X^{d²}."""
    once = conjugate_by(d, op)
    return op + once + conjugate_by(d, once)


def verify_g2_cases(
    g2: Subalgebra, line: Line, d: WeylElem, table: OperatorTable | None = None
) -> CheckReport:
    """
    Re-derive every bracket of the G2 basis from the pair geometry.

    Fixed-fixed pairs follow the root laws directly. A fixed root against a
    folded root gives the d-orbit sum of one root bracket (0 or a folded
    root). Two folded roots give three orbit sums, one per shift of the
    second orbit. For each fixed Δ the dual Δ* is fixed too, s_Δ lies in
    L^⊥ ∖ L and H_{s_Δ} lies in G.
    """
    table = table or default_operator_table()
    phi = enumerate_phi()
    report = CheckReport("g2cases")
    line_span = set(span(line.vectors))
    orthogonal = set(perp(line.vectors))
    folded_ops = [e.op for e in g2.basis if e.tag.kind is TagKind.FOLDED]

    for base in phi.bases:
        report.expect(
            reflect_points(dual(base).points, base.s) == frozenset(base.points),
            f"Δ ∩ (Δ*)^σ_Δ ≠ Δ for {base.id}",
        )

    for elem in g2.basis:
        if elem.tag.kind is not TagKind.ROOT:
            continue
        base = phi[elem.tag.key]  # type: ignore[index]
        star = dual(base)
        report.expect(d.image_of_base(star).id == star.id, f"case 2: dual of fixed {base.id} moves")
        report.expect(
            base.s in orthogonal and base.s not in line_span and quadratic_form(base.s) == 1,
            f"case 2: s_{base.id} not in L^⊥ ∖ L",
        )
        h = cartan_op(base.s)
        report.expect(conjugate_by(d, h) == h and g2.contains(h), f"case 2: H_s of {base.id} not in C(d)")

    basis = g2.basis
    for i, left in enumerate(basis):
        for right in basis[i + 1 :]:
            kinds = (left.tag.kind, right.tag.kind)
            if TagKind.CARTAN in kinds:
                continue
            actual = bracket(left.op, right.op)
            where = f"[{left.label}, {right.label}]"
            match kinds:
                case (TagKind.ROOT, TagKind.ROOT):
                    expected = predicted_bracket(phi[left.tag.key], phi[right.tag.key], table)  # type: ignore[index]
                    report.expect(actual == expected, f"fixed-fixed {where}")
                case (TagKind.ROOT, TagKind.FOLDED) | (TagKind.FOLDED, TagKind.ROOT):
                    fixed, folded = (left, right) if kinds[0] is TagKind.ROOT else (right, left)
                    first = phi[folded.tag.key[0]]  # type: ignore[index]
                    expected = orbit_sum(predicted_bracket(phi[fixed.tag.key], first, table), d)  # type: ignore[index]
                    report.expect(actual == expected, f"case 1 {where}: mismatch")
                    report.expect(
                        not actual or any(actual == op for op in folded_ops),
                        f"case 1 {where}: neither 0 nor a folded root",
                    )
                case (TagKind.FOLDED, TagKind.FOLDED):
                    x = phi[left.tag.key[0]]  # type: ignore[index]
                    expected = Endo.zero()
                    for shifted in right.tag.key:  # type: ignore[union-attr]
                        summand = orbit_sum(predicted_bracket(x, phi[shifted], table), d)
                        report.expect(g2.contains(summand), f"case 3 {where}: summand outside G")
                        expected = expected + summand
                    report.expect(actual == expected, f"case 3 {where}: summands do not add up")
    return report


def verify_weyl_equivariance(
    elements: Iterable[WeylElem], table: OperatorTable | None = None
) -> CheckReport:
    """R_Δ^w = R_{Δ^w} and s_{Δ^w} = (s_Δ)^w for every given w and every Δ."""
    table = table or default_operator_table()
    report = CheckReport("weyl-equivariance")
    for w in elements:
        for base in enumerate_phi().bases:
            image = w.image_of_base(base)
            report.expect(image.s == w.vector_image(base.s), f"s of Δ^w for Δ={base.id}")
            report.expect(
                conjugate_by(w, table.root(base)) == table.root(image),
                f"R_{base.id}^w ≠ R_{image.id}",
            )
    return report


def verify_e6_permutation(e6: Subalgebra, elements: Iterable[WeylElem]) -> CheckReport:
    """Conjugation by w permutes the Lie roots of E6 and maps H_v to H_{v^w}."""
    report = CheckReport("e6-permutation")
    roots = {e.op: e.label for e in e6.basis if e.tag.kind is TagKind.ROOT}
    for w in elements:
        images = set()
        for elem in e6.basis:
            moved = conjugate_by(w, elem.op)
            if elem.tag.kind is TagKind.CARTAN:
                v = elem.tag.key
                report.expect(moved == cartan_op(w.vector_image(v)), f"H_{v}^w ≠ H_(v^w)")  # type: ignore[arg-type]
            else:
                report.expect(moved in roots, f"{elem.label}^w is not a Lie root")
                images.add(roots.get(moved))
        report.expect(len(images) == len(roots), "conjugation is not a bijection on the Lie roots")
    return report
