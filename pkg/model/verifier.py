"""Rebuild the PSL_3(p^2) construction for one prime and check every step of it.

Checks run in a fixed order and each step declares the ids it emits, so the set
of ids is the same for every admissible prime. A step whose inputs are missing
because an earlier structural check failed emits "skipped" fail records; an
error inside a step turns its remaining ids into fail records.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

from utils import to_json_value

from .certificate import SKIPPED, Certificate, CheckRecord
from .digraph import arc_stabilizers, local_patch, two_arc_stabilizer_orbits
from .exceptions import PrimdigraphError
from .fields import FqElement, golden_root, is_admissible, legendre, omega_root, require_admissible
from .groups import (
    A5_ORDER,
    A6_ORDER,
    DEFAULT_CAP,
    a5_recognize,
    antisymmetry_check,
    double_coset,
    generate,
    intersect,
    normalizes,
    product_factorizes,
    verify_a6_presentation,
)
from .matrices import (
    Mat3,
    canonicalize,
    charpoly,
    det,
    displayed_g_inverse,
    displayed_w,
    displayed_x_squared,
    displayed_x_squared_y,
    displayed_x_y_x,
    displayed_y_x,
    element_order,
    is_in_psl,
    psl3_order,
    theorem_matrices,
)


logger = logging.getLogger(__name__)

VALENCY = 6
TWO_ARC_STABILIZER_ORDER = 10

CLAIMS: dict[str, str] = {
    "field.admissible": "p > 3 is prime and p = +-2 (mod 5)",
    "field.legendre_5": "5 is a non-square mod p",
    "field.legendre_minus3": "-3 is a square mod p exactly when p = 1 (mod 3)",
    "roots.a_quadratic": "a^2 + a - 1 = 0",
    "roots.b_quadratic": "b^2 + b + 1 = 0",
    "identity.a_minus_b": "(a - b)(a + b + 1) = 2",
    "identity.inverse_sums": "a^-1 + b^-1 = a - b and 1 - a b^-1 = ab + a^-1",
    "matrix.g_inverse": "g times the displayed inverse of g is 2I",
    "matrix.x_squared": "x^2 equals its displayed matrix in both scalings",
    "matrix.x_squared_y": "x^2 y equals its displayed matrix",
    "matrix.y_x": "yx equals its displayed matrix",
    "matrix.x_y_x": "xyx equals its displayed matrix in both scalings",
    "matrix.w_displayed": "w = z g z^-1 g^-1 equals its displayed matrix",
    "det.g_value": "det g = d = -2(a - b)",
    "det.frobenius_branch": "d^(p+1) = -8 when p = 1 (mod 3), d^(p-1) = -1 when p = 2 (mod 3)",
    "det.cube": "d^((p^2 - 1)/3) = 1, so det g is a nonzero cube",
    "psl.membership": "g, x, y and z lie in PSL_3(p^2)",
    "order.x": "x has order 5",
    "order.y": "y has order 2",
    "order.z": "z has order 3",
    "order.w": "w has order 4",
    "charpoly.x_quintic": "chi_x(l) (l^2 + (2a + 2) l + 4) = l^5 - 32",
    "charpoly.yx": "yx has the characteristic polynomial of x, hence (yx)^5 = 1",
    "charpoly.w_quartic": "chi_w(l) (l + 2) = l^4 - 16",
    "relation.w_conjugate": "w (x^2 y) = (x^2 y) xyx, so w lies in H",
    "relation.x2zw": "x^2 z w = yx",
    "relation.z_word": "z = x^-2 yx w^-1, so z lies in H",
    "group.a6_presentation": "x, y satisfy X^5 = Y^2 = (XY)^5 = (XYX)^4 = 1 and generate 360 elements",
    "group.h_order": "|H| = |<x, y>| = 360",
    "group.z_in_h": "z lies in H",
    "group.w_in_h": "w lies in H",
    "group.g_not_in_h": "g does not lie in H",
    "group.g_not_normalizing": "g does not normalize H",
    "relation.gx_commute": "gx = xg",
    "relation.gzg_inverse": "g z g^-1 = w^-1 z, so z lies in g^-1 H g",
    "stabilizer.k1_order": "|H n g^-1 H g| = 60",
    "stabilizer.k1_a5": "H n g^-1 H g is an A5 inside H",
    "stabilizer.k2_order": "|g H g^-1 n H| = 60",
    "stabilizer.distinct": "H n g^-1 H g and g H g^-1 n H are different subgroups",
    "stabilizer.w_outside_reverse": "w does not lie in g H g^-1 n H",
    "stabilizer.x_in_both": "x lies in both arc stabilizers",
    "stabilizer.two_arc_order": "the two arc stabilizers meet in 10 elements",
    "stabilizer.factorization": "H = (H n g^-1 H g)(g H g^-1 n H)",
    "digraph.antisymmetry": "g^-1 does not lie in HgH",
    "digraph.double_coset": "|HgH| = |H|^2 / |H n g^-1 H g| = 2160",
    "count.vertices": "|G : H| = |PSL_3(p^2)| / 360 is an integer",
    "local.out_degree": "v = H has 6 out-neighbours",
    "local.in_degree": "v = H has 6 in-neighbours",
    "local.disjoint": "no vertex is both an out- and an in-neighbour of v",
    "local.underlying_valency": "the underlying graph has valency 12 at v",
    "local.two_arc_orbits": "the 2-arc stabilizer has at least 2 orbits on out(w), so R_H(G) is not 3-arc-transitive",
    "assumed.h_maximal": "H is maximal in G (subgroup classification, not machine-checked)",
    "assumed.automorphism_group": "the full automorphism group (classification, not machine-checked)",
}

# most specific prefix wins
LOCATORS: dict[str, str] = {
    "field": "theorem statement",
    "roots": "theorem statement",
    "identity": "determinant lemma proof",
    "matrix": "theorem statement matrices",
    "det": "determinant lemma proof",
    "psl": "determinant lemma",
    "order": "element order lemma",
    "charpoly": "element order lemma proof",
    "relation": "A6 presentation lemma proof",
    "relation.gx_commute": "arc stabilizer lemma proof",
    "relation.gzg_inverse": "arc stabilizer lemma proof",
    "group": "A6 presentation lemma",
    "group.g_not_in_h": "theorem proof",
    "group.g_not_normalizing": "directed lemma",
    "stabilizer": "arc stabilizer lemma",
    "stabilizer.factorization": "coset digraph lemma (e)",
    "digraph": "coset digraph lemma (a)",
    "digraph.double_coset": "factorization lemma (d)",
    "count": "theorem proof",
    "local": "coset digraph lemma (d)",
    "local.underlying_valency": "remark on the underlying graph",
    "local.two_arc_orbits": "remark on 3-arc-transitivity",
    "assumed.h_maximal": "A6 presentation lemma, maximality clause",
    "assumed.automorphism_group": "theorem statement",
}


def paper_ref(check_id: str) -> str:
    """Locator of the result a check reproduces, followed by the quoted claim."""
    key = check_id
    while key not in LOCATORS:
        key = key.rpartition(".")[0]
    return f'{LOCATORS[key]}, "{CLAIMS[check_id]}"'


@dataclass(frozen=True)
class Step:
    name: str
    ids: tuple[str, ...]
    needs: tuple[str, ...] = ()


STEPS: tuple[Step, ...] = (
    Step("field", ("field.admissible", "field.legendre_5", "field.legendre_minus3")),
    Step(
        "roots",
        ("roots.a_quadratic", "roots.b_quadratic", "identity.a_minus_b", "identity.inverse_sums"),
    ),
    Step(
        "matrices",
        (
            "matrix.g_inverse",
            "matrix.x_squared",
            "matrix.x_squared_y",
            "matrix.y_x",
            "matrix.x_y_x",
            "matrix.w_displayed",
        ),
        needs=("roots",),
    ),
    Step("determinant", ("det.g_value", "det.frobenius_branch", "det.cube"), needs=("matrices",)),
    Step("psl", ("psl.membership",), needs=("elements",)),
    Step(
        "orders",
        (
            "order.x",
            "order.y",
            "order.z",
            "order.w",
            "charpoly.x_quintic",
            "charpoly.yx",
            "charpoly.w_quartic",
            "relation.w_conjugate",
            "relation.x2zw",
            "relation.z_word",
        ),
        needs=("elements",),
    ),
    Step(
        "a6",
        ("group.a6_presentation", "group.h_order", "group.z_in_h", "group.w_in_h"),
        needs=("elements",),
    ),
    Step(
        "normalizer",
        ("group.g_not_in_h", "group.g_not_normalizing", "relation.gx_commute", "relation.gzg_inverse"),
        needs=("H",),
    ),
    Step(
        "stabilizers",
        (
            "stabilizer.k1_order",
            "stabilizer.k1_a5",
            "stabilizer.k2_order",
            "stabilizer.distinct",
            "stabilizer.w_outside_reverse",
            "stabilizer.x_in_both",
            "stabilizer.two_arc_order",
            "stabilizer.factorization",
        ),
        needs=("H",),
    ),
    Step(
        "digraph",
        ("digraph.antisymmetry", "digraph.double_coset", "count.vertices"),
        needs=("H", "stabilizers"),
    ),
    Step(
        "local",
        (
            "local.out_degree",
            "local.in_degree",
            "local.disjoint",
            "local.underlying_valency",
            "local.two_arc_orbits",
        ),
        needs=("H", "antisymmetric"),
    ),
    Step("assumed", ("assumed.h_maximal", "assumed.automorphism_group")),
)

CHECK_IDS: tuple[str, ...] = tuple(cid for step in STEPS for cid in step.ids)


def _fq(n: int, p: int) -> FqElement:
    return FqElement.from_int(n, p)


def _poly(coefficients: list[int], p: int) -> list[FqElement]:
    return [_fq(c, p) for c in coefficients]


class TheoremVerifier:
    """One run of the pipeline for one prime and one choice of roots."""

    def __init__(self, p: int, conjugate_roots: bool = False, closure_cap: int = DEFAULT_CAP):
        self.p = require_admissible(p)
        self.conjugate_roots = conjugate_roots
        self.closure_cap = closure_cap
        self.a = golden_root(p, conjugate=conjugate_roots)
        self.b = omega_root(p, conjugate=conjugate_roots)
        self.d = -2 * (self.a - self.b)
        self.ctx: dict[str, Any] = {}
        self.records: dict[str, CheckRecord] = {}

    def field_params(self) -> dict[str, list[int]]:
        return {"a": self.a.to_json(), "b": self.b.to_json(), "d": self.d.to_json()}

    def _record(self, check_id: str, status: str, observed: Any, expected: Any) -> None:
        self.records[check_id] = CheckRecord(
            id=check_id,
            status=status,
            observed=to_json_value(observed),
            expected=to_json_value(expected),
            paper_ref=paper_ref(check_id),
        )
        if status == "fail":
            logger.warning(f"Verifier: [fail] {check_id}: observed {observed!r}")
        else:
            logger.info(f"Verifier: [{status}] {check_id}")

    def _check(self, check_id: str, ok: bool, observed: Any, expected: Any) -> bool:
        self._record(check_id, "pass" if ok else "fail", observed, expected)
        return ok

    def run(self) -> Certificate:
        logger.info(f"Verifier: p = {self.p}, conjugate roots: {self.conjugate_roots}")
        for step in STEPS:
            missing = [k for k in step.needs if k not in self.ctx]
            if missing:
                logger.warning(f"Verifier: [fail] step {step.name} skipped, missing {missing}")
                for cid in step.ids:
                    self._record(cid, "fail", SKIPPED, None)
                continue
            try:
                getattr(self, f"_step_{step.name}")()
            except (PrimdigraphError, ArithmeticError) as exc:
                logger.error(f"Verifier: [fail] step {step.name} raised {type(exc).__name__}: {exc}")
                for cid in step.ids:
                    if cid not in self.records:
                        self._record(cid, "fail", f"error: {type(exc).__name__}: {exc}", None)
        checks = [self.records[cid] for cid in CHECK_IDS]
        cert = Certificate.build(self.p, self.field_params(), checks)
        s = cert.summary
        logger.info(
            f"Verifier: p = {self.p}: {s.passed} pass, {s.failed} fail, {s.assumed} assumed, verdict {s.verdict}"
        )
        return cert

    def _step_field(self) -> None:
        p = self.p
        self._check("field.admissible", is_admissible(p), {"p": p, "p_mod_5": p % 5}, {"p": p, "p_mod_5": [2, 3]})
        l5 = legendre(5, p)
        self._check("field.legendre_5", l5 == -1, l5, -1)
        l3 = legendre(-3, p)
        expected = 1 if p % 3 == 1 else -1
        self._check("field.legendre_minus3", l3 == expected, l3, expected)

    def _step_roots(self) -> None:
        a, b, p = self.a, self.b, self.p
        zero = FqElement.zero(p)
        qa = a * a + a - 1
        qb = b * b + b + 1
        ok_a = self._check("roots.a_quadratic", qa == zero, qa, zero)
        ok_b = self._check("roots.b_quadratic", qb == zero, qb, zero)
        prod = (a - b) * (a + b + 1)
        self._check("identity.a_minus_b", prod == _fq(2, p), prod, _fq(2, p))
        observed = {"inverse_sum": 1 / a + 1 / b, "one_minus_ratio": 1 - a / b}
        expected = {"inverse_sum": a - b, "one_minus_ratio": a * b + 1 / a}
        self._check("identity.inverse_sums", observed == expected, observed, expected)
        if ok_a and ok_b:
            self.ctx["roots"] = (a, b)

    def _step_matrices(self) -> None:
        a, b, p = self.a, self.b, self.p
        m = theorem_matrices(p, conjugate_roots=self.conjugate_roots)
        els = m.elements()
        g, x, y, z = els
        w = z * g * z.inverse() * g.inverse()
        self.ctx["matrices"] = m
        self.ctx["elements"] = els
        self.ctx["w"] = w

        two = Mat3.scalar(_fq(2, p))
        product = m.g @ displayed_g_inverse(a, b)
        self._check("matrix.g_inverse", product == two, product, two)

        def displayed(check_id: str, computed, *shown: Mat3) -> None:
            images = [canonicalize(s) for s in shown]
            ok = all(e == computed for e in images)
            self._check(check_id, ok, computed, images[0])

        displayed("matrix.x_squared", x * x, *displayed_x_squared(a, b))
        displayed("matrix.x_squared_y", x * x * y, displayed_x_squared_y(a, b))
        displayed("matrix.y_x", y * x, displayed_y_x(a, b))
        displayed("matrix.x_y_x", x * y * x, *displayed_x_y_x(a, b))
        displayed("matrix.w_displayed", w, displayed_w(a, b))

    def _step_determinant(self) -> None:
        p, d = self.p, self.d
        m = self.ctx["matrices"]
        observed = det(m.g)
        self._check("det.g_value", observed == d, observed, d)
        if p % 3 == 1:
            branch, value, target = "p+1", d ** (p + 1), _fq(-8, p)
        else:
            branch, value, target = "p-1", d ** (p - 1), _fq(-1, p)
        self._check(
            "det.frobenius_branch",
            value == target,
            {"branch": branch, "value": value},
            {"branch": branch, "value": target},
        )
        cube = d ** ((p * p - 1) // 3)
        self._check("det.cube", cube == FqElement.one(p), cube, FqElement.one(p))

    def _step_psl(self) -> None:
        membership = {name: is_in_psl(e) for name, e in self.ctx["elements"]._asdict().items()}
        self._check("psl.membership", all(membership.values()), membership, {k: True for k in membership})

    def _step_orders(self) -> None:
        p, a, b = self.p, self.a, self.b
        g, x, y, z = self.ctx["elements"]
        w = self.ctx["w"]
        for name, e, expected in (("x", x, 5), ("y", y, 2), ("z", z, 3), ("w", w, 4)):
            n = element_order(e)
            self._check(f"order.{name}", n == expected, n, expected)

        m = self.ctx["matrices"]
        quintic = _poly([1, 0, 0, 0, 0, -32], p)
        cofactor = [FqElement.one(p), 2 * a + 2, _fq(4, p)]
        chi = charpoly(m.x)
        product = chi.times(cofactor)
        self._check("charpoly.x_quintic", product == quintic, product, quintic)
        psi = charpoly(displayed_y_x(a, b))
        self._check("charpoly.yx", psi == chi and psi.times(cofactor) == quintic, psi, chi)
        quartic = _poly([1, 0, 0, 0, -16], p)
        product = charpoly(displayed_w(a, b)).times([1, 2])
        self._check("charpoly.w_quartic", product == quartic, product, quartic)

        x2y = x * x * y
        xyx = x * y * x
        lhs, rhs = w * x2y, x2y * xyx
        self._check("relation.w_conjugate", lhs == rhs, lhs, rhs)
        lhs, rhs = x * x * z * w, y * x
        self._check("relation.x2zw", lhs == rhs, lhs, rhs)
        word = (x * x).inverse() * (y * x) * w.inverse()
        self._check("relation.z_word", word == z, word, z)

    def _step_a6(self) -> None:
        g, x, y, z = self.ctx["elements"]
        w = self.ctx["w"]
        presented = verify_a6_presentation(x, y, cap=self.closure_cap)
        self._check("group.a6_presentation", presented, presented, True)
        H = generate([x, y], cap=self.closure_cap)
        ok = self._check("group.h_order", len(H) == A6_ORDER, len(H), A6_ORDER)
        self._check("group.z_in_h", z in H, z in H, True)
        self._check("group.w_in_h", w in H, w in H, True)
        if ok:
            self.ctx["H"] = H
        else:
            logger.error(f"Verifier: [fail] |H| = {len(H)}, later group checks are skipped")

    def _step_normalizer(self) -> None:
        H = self.ctx["H"]
        g, x, y, z = self.ctx["elements"]
        w = self.ctx["w"]
        self._check("group.g_not_in_h", g not in H, g in H, False)
        normal = normalizes(g, H)
        self._check("group.g_not_normalizing", not normal, normal, False)
        lhs, rhs = g * x, x * g
        self._check("relation.gx_commute", lhs == rhs, lhs, rhs)
        lhs, rhs = g * z * g.inverse(), w.inverse() * z
        self._check("relation.gzg_inverse", lhs == rhs and rhs in H, lhs, rhs)

    def _step_stabilizers(self) -> None:
        H = self.ctx["H"]
        g, x, y, z = self.ctx["elements"]
        w = self.ctx["w"]
        k1, k2 = arc_stabilizers(H, g)
        self._check("stabilizer.k1_order", len(k1) == A5_ORDER, len(k1), A5_ORDER)
        recognized = a5_recognize(k1, H)
        self._check("stabilizer.k1_a5", recognized, recognized, True)
        self._check("stabilizer.k2_order", len(k2) == A5_ORDER, len(k2), A5_ORDER)
        self._check("stabilizer.distinct", k1 != k2, k1 != k2, True)
        self._check("stabilizer.w_outside_reverse", w not in k2, w in k2, False)
        both = x in k1 and x in k2
        self._check("stabilizer.x_in_both", both, both, True)
        k12 = intersect(k1, k2)
        self._check(
            "stabilizer.two_arc_order", len(k12) == TWO_ARC_STABILIZER_ORDER, len(k12), TWO_ARC_STABILIZER_ORDER
        )
        factorizes = product_factorizes(k1, k2, H)
        self._check("stabilizer.factorization", factorizes, factorizes, True)
        self.ctx["stabilizers"] = (k1, k2)

    def _step_digraph(self) -> None:
        H = self.ctx["H"]
        g = self.ctx["elements"].g
        k1, _ = self.ctx["stabilizers"]
        antisymmetric = antisymmetry_check(H, g)
        if self._check("digraph.antisymmetry", antisymmetric, antisymmetric, True):
            self.ctx["antisymmetric"] = True
        size = len(double_coset(H, g))
        expected = len(H) ** 2 // len(k1)
        self._check("digraph.double_coset", size == expected, size, expected)
        order = psl3_order(self.p**2)
        index = order // len(H)
        self._check(
            "count.vertices",
            order % len(H) == 0,
            {"group_order": order, "vertices": index},
            {"group_order": order, "divisible_by": len(H)},
        )

    def _step_local(self) -> None:
        H = self.ctx["H"]
        g = self.ctx["elements"].g
        patch = local_patch(H, g)
        self._check("local.out_degree", patch.out_degree == VALENCY, patch.out_degree, VALENCY)
        self._check("local.in_degree", patch.in_degree == VALENCY, patch.in_degree, VALENCY)
        disjoint = patch.is_disjoint()
        self._check("local.disjoint", disjoint, disjoint, True)
        valency = patch.underlying_valency()
        self._check("local.underlying_valency", valency == 2 * VALENCY, valency, 2 * VALENCY)
        orbits = two_arc_stabilizer_orbits(patch)
        self._check(
            "local.two_arc_orbits",
            len(orbits) >= 2 and sum(orbits) == patch.out_degree,
            {"orbit_sizes": orbits, "orbit_count": len(orbits)},
            {"orbit_count_at_least": 2},
        )

    def _step_assumed(self) -> None:
        self._record(
            "assumed.h_maximal",
            "assumed",
            {
                "claim": "H is a maximal subgroup of G = PSL_3(p^2)",
                "consequences": [
                    "R_H(G) is primitive on the vertices",
                    "Cos(G, H, g) is connected",
                ],
            },
            None,
        )
        if self.p % 3 == 1:
            group = "PSL_3(p^2):<gamma phi>"
        else:
            group = "PSL_3(p^2):<phi> = PSigmaL_3(p^2)"
        self._record("assumed.automorphism_group", "assumed", group, None)


def verify_theorem(p: int, conjugate_roots: bool = False, closure_cap: int = DEFAULT_CAP) -> Certificate:
    return TheoremVerifier(p, conjugate_roots=conjugate_roots, closure_cap=closure_cap).run()


def field_diagnostics(p: int, conjugate_roots: bool = False) -> dict[str, Any]:
    """a, b, d and the branch identities, without any group computation."""
    a = golden_root(p, conjugate=conjugate_roots)
    b = omega_root(p, conjugate=conjugate_roots)
    d = -2 * (a - b)
    exponent = p + 1 if p % 3 == 1 else p - 1
    return {
        "p": p,
        "a": a.to_json(),
        "b": b.to_json(),
        "d": d.to_json(),
        "legendre_5": legendre(5, p),
        "legendre_minus3": legendre(-3, p),
        "branch": "p+1" if p % 3 == 1 else "p-1",
        "branch_value": (d**exponent).to_json(),
        "cube_test": (d ** ((p * p - 1) // 3)).to_json(),
    }
