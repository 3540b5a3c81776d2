"""Executable checks of distributivity and the bi-invariance criteria."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from bispace import kernels
from bispace.actions import (
    MATRIX_SET, BinaryAction, Carrier, UnaryAction, conjugation_action_I, induced_action,
    is_effective, kernel, left_translation,
)
from bispace.errors import DomainError, UnsupportedInstance
from bispace.groups import FiniteGroup, Subgroup, conjugate_set, normalizer, subgroup_generated
from bispace.matrix import FINITE_LISTED, MatrixGroup, Mat2, mat_inv, mat_mul, unitriangular
from bispace.orbits import PointImage, bi_invariance_witness, image_set, is_bi_invariant

HOLDS = "holds"
FAILS = "fails"


@dataclass(frozen=True)
class LawReport:
    law: str
    verdict: str
    counterexample: dict | None = None
    details: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS


# -- distributivity ----------------------------------------------------


def distributive_sides(A: BinaryAction, g, h, x, x1, x2):
    """(g(h(x,x1), h(x,x2)), h(x, g(x1,x2))) through the public apply."""
    return A(g, A(h, x, x1), A(h, x, x2)), A(h, x, A(g, x1, x2))


def is_distributive(A: BinaryAction) -> LawReport:
    """Scan g(h(x,x'), h(x,x'')) = h(x, g(x',x'')) over all quintuples.

    The counterexample is the first failing (g, h, x, x', x'') in canonical
    lexicographic order. Non-finite instances are scanned over the group
    samples and carrier sample points, and say so in ``details``.
    """
    if A.tabulable:
        hit = kernels.distributive_scan(A.table)
        exhaustive = True
        if hit is not None:
            gs, pts = A.group.elements, A.carrier.points
            g, h, x, x1, x2, lhs, rhs = hit
            hit = (gs[g], gs[h], pts[x], pts[x1], pts[x2], pts[lhs], pts[rhs])
    else:
        exhaustive = False
        hit = None
        gs, pts = A.group.samples, A.carrier.points
        for g, h, x, x1, x2 in product(gs, gs, pts, pts, pts):
            lhs, rhs = distributive_sides(A, g, h, x, x1, x2)
            if lhs != rhs:
                hit = (g, h, x, x1, x2, lhs, rhs)
                break
    details = {"exhaustive": exhaustive}
    if hit is None:
        return LawReport("distributivity", HOLDS, None, details)
    cx = dict(zip(("g", "h", "x", "x1", "x2", "lhs", "rhs"), hit))
    return LawReport("distributivity", FAILS, cx, details)


def recheck(A: BinaryAction, report: LawReport) -> bool:
    """Re-evaluate a distributivity counterexample; True if its sides still differ."""
    c = report.counterexample
    lhs, rhs = distributive_sides(A, c["g"], c["h"], c["x"], c["x1"], c["x2"])
    return lhs != rhs and lhs == c["lhs"] and rhs == c["rhs"]


def pair_image(A: BinaryAction, S1, S2, K=None) -> frozenset:
    """K(S1, S2) = {g(a, b) : g in K, a in S1, b in S2}."""
    K = A.group.elements if K is None else K
    return frozenset(A.checked(g, a, b) for g in K for a in S1 for b in S2)


def distributive_image_law(A: BinaryAction, x, x2) -> LawReport:
    """G(G(x,x), G(x,x')) = G(x,x') for a distributive action."""
    if not is_distributive(A).holds:
        raise DomainError(f"{A.name} is not distributive")
    Gxx = image_set(A, {x})
    Gxx2 = pair_image(A, {x}, {x2})
    lhs = pair_image(A, Gxx, Gxx2)
    details = {"G(x,x)": Gxx, "G(x,x')": Gxx2, "lhs": lhs}
    if lhs == Gxx2:
        return LawReport("distributive-image", HOLDS, None, details)
    extra = sorted(lhs ^ Gxx2, key=repr)[0]
    return LawReport("distributive-image", FAILS, {"point": extra, "in_lhs": extra in lhs}, details)


# -- normalizer criterion ------------------------------------------------


def normalizer_criterion(H, x, carrier: Carrier | None = None) -> LawReport:
    """Both sides of: H(x,x) is bi-invariant  <=>  x^-1 H x <= N_G(H).

    H is a finite ``Subgroup`` (sides decided by enumeration) or a
    ``MatrixGroup`` in GL(2) (structural kinds decided on the parameter grid).
    The verdict says whether the two sides agree.
    """
    if isinstance(H, Subgroup):
        G = H.parent
        x = G.index(x)
        A = conjugation_action_I(H)
        S = image_set(A, {x})
        wit = bi_invariance_witness(A, S)
        bi = wit is None
        N = normalizer(G, H)
        conj = conjugate_set(G, H.members, x)
        outside = sorted(conj - N.members)
        in_norm = not outside
        side_b_witness = None
        if outside:
            k = outside[0]
            moved = sorted(conjugate_set(G, H.members, k) - H.members)
            side_b_witness = {"conjugate": k, "moved": moved[0]}
        details = {"H(x,x)": S, "normalizer": N.members}
    elif isinstance(H, MatrixGroup):
        x = Mat2.of(x)
        if x.det == 0:
            raise DomainError(f"{x} is singular")
        carrier = carrier or Carrier(MATRIX_SET, (x,), universe=lambda m: isinstance(m, Mat2) and m.det != 0,
                                     exhaustive=False)
        A = conjugation_action_I(H, carrier)
        xi = mat_inv(x)
        if H.kind == FINITE_LISTED:
            S = image_set(A, {x})
            wit = bi_invariance_witness(A, S)
            bi = wit is None
            gens = H.listed
            details = {"H(x,x)": S}
        else:
            bi = is_bi_invariant(A, PointImage(x))
            wit = None if bi else bi_invariance_witness(A, PointImage(x))
            gens = H.samples
            details = {}
        side_b_witness = None
        in_norm = True
        for h in gens:
            k = mat_mul(mat_mul(xi, h), x)
            if not H.normalizes(k):
                in_norm = False
                ki = mat_inv(k)
                probes = H.listed if H.kind == FINITE_LISTED else (unitriangular(1),)
                moved = next(m2 for m2 in (mat_mul(mat_mul(ki, m), k) for m in probes) if m2 not in H)
                side_b_witness = {"conjugate": k, "moved": moved}
                break
    else:
        raise UnsupportedInstance(f"no normalizer criterion for {type(H).__name__}")

    details.update({"bi_invariant": bi, "conjugate_in_normalizer": in_norm,
                    "bi_invariance_witness": wit, "normalizer_witness": side_b_witness})
    if bi == in_norm:
        return LawReport("normalizer-criterion", HOLDS, None, details)
    return LawReport("normalizer-criterion", FAILS, {"x": x, "bi_invariant": bi,
                                                     "conjugate_in_normalizer": in_norm}, details)


# -- induced actions -----------------------------------------------------


def commutator_subgroup_of(group: Subgroup) -> Subgroup:
    G = group.parent
    comms = {G.product(G.inv(a), G.inv(b), a, b) for a in group for b in group}
    return subgroup_generated(G, comms)


def induced_distributivity_criterion(U: UnaryAction) -> LawReport:
    """Both sides of: induced action distributive  <=>  G' <= Ker U."""
    if not isinstance(U.group, Subgroup):
        raise UnsupportedInstance("the kernel criterion needs a finite acting group")
    dist = is_distributive(induced_action(U))
    comm = commutator_subgroup_of(U.group)
    ker = kernel(U)
    contained = comm.members <= ker.members
    details = {"distributive": dist.holds, "commutator_in_kernel": contained,
               "commutator_subgroup": comm.members, "kernel": ker.members,
               "distributivity": dist}
    if dist.holds == contained:
        return LawReport("kernel-criterion", HOLDS, None, details)
    return LawReport("kernel-criterion", FAILS, {"distributive": dist.holds,
                                                 "commutator_in_kernel": contained}, details)


@dataclass(frozen=True)
class Problem1Certificate:
    group: FiniteGroup
    action: BinaryAction
    bi_invariant: dict
    distributivity: LawReport
    recheck_ok: bool

    @property
    def certified(self) -> bool:
        return (all(self.bi_invariant.values()) and not self.distributivity.holds
                and self.recheck_ok)


def problem1_counterexample(G: FiniteGroup, U: UnaryAction | None = None) -> Problem1Certificate:
    """Every G(x,x) bi-invariant, yet the action is not distributive.

    Uses the induced action of an effective G-space; left translation of G
    on itself unless ``U`` is given.
    """
    if G.is_abelian():
        raise DomainError(f"{G.name} is Abelian: its induced actions on effective G-spaces are distributive")
    U = U or left_translation(G)
    if not is_effective(U):
        raise DomainError(f"{U.name} is not effective")
    A = induced_action(U)
    bi = {x: is_bi_invariant(A, image_set(A, {x})) for x in A.carrier.points}
    dist = is_distributive(A)
    ok = dist.holds or recheck(A, dist)
    return Problem1Certificate(G, A, bi, dist, ok)


def normal_images_bi_invariant(H: Subgroup) -> bool:
    """For normal H every H(x,x) is bi-invariant."""
    A = conjugation_action_I(H)
    return all(is_bi_invariant(A, image_set(A, {x})) for x in H.parent)
