"""The eight acceptance criteria, one PASS/FAIL line each.

Runs under pytest (lines are printed even with output capture on) or as a
script: ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import sys
import time
from itertools import chain, combinations
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bispace import catalog  # noqa: E402
from bispace.actions import (  # noqa: E402
    MATRIX_SET, Carrier, coset_action, conjugation_action_I, conjugation_action_II, induced_action,
    is_invariant, left_translation, natural_g_square, trivial_unary,
)
from bispace.groups import all_subgroups, left_cosets, normalizer, subgroup_generated  # noqa: E402
from bispace.laws import (  # noqa: E402
    induced_distributivity_criterion, is_distributive, normalizer_criterion, problem1_counterexample,
    recheck,
)
from bispace.matrix import UPPER_UNITRIANGULAR, Mat2, MatrixGroup, in_subgroup, mat_inv  # noqa: E402
from bispace.orbits import (  # noqa: E402
    PointImage, find_union_violation, image_set, intersect_bi_invariant, is_bi_invariant,
    orbit_layers, orbits_intersect,
)
from bispace.scenario import layer_agreement  # noqa: E402
from bispace.words import growth_certificate, symbolic_layers  # noqa: E402

from oracles import (  # noqa: E402
    bi_invariant, first_distributive_failure, image, mat_key, minv, mm, worklist_orbit,
)


def _m(rows):
    return Mat2.of(rows)


def _carrier(*pts):
    return Carrier(MATRIX_SET, tuple(pts), universe=lambda m: isinstance(m, Mat2) and m.det != 0,
                   exhaustive=False)


def _subsets(pts):
    return chain.from_iterable(combinations(pts, r) for r in range(len(pts) + 1))


# -- criteria -------------------------------------------------------------


def criterion_1():
    """Unitriangular H in GL(2): conjugates, the escaping matrix, and the non-bi-invariant H(x,x)."""
    t = time.perf_counter()
    x, h = _m([[0, 1], [1, 0]]), _m([[1, 1], [0, 1]])
    k = mat_inv(x) * h * x
    w = mat_inv(k) * h * k
    U = MatrixGroup(UPPER_UNITRIANGULAR)
    r = normalizer_criterion(U, x)
    A = conjugation_action_I(U, _carrier(x))
    bi = is_bi_invariant(A, PointImage(x))
    elapsed = time.perf_counter() - t
    # oracle: nested-list arithmetic
    ok_oracle = (mat_key(mm(mm(minv([[0, 1], [1, 0]]), [[1, 1], [0, 1]]), [[0, 1], [1, 0]]))
                 == mat_key([[1, 0], [1, 1]]))
    ok = (k == _m([[1, 0], [1, 1]]) and w == _m([[2, 1], [-1, 0]]) and not in_subgroup(w, U)
          and r.holds and not r.details["bi_invariant"] and not r.details["conjugate_in_normalizer"]
          and r.details["normalizer_witness"]["moved"] == w and not bi and ok_oracle and elapsed < 1)
    return ok, f"x^-1hx={k}, conjugate={w}, H(x,x) bi-invariant={bi}, {elapsed:.3f}s"


def criterion_2():
    """Orbit intersection: h(x,x) = h, so h lies in both [x] and [h]."""
    t = time.perf_counter()
    h, x = _m([[0, 1], [1, 0]]), _m([[0, -1], [1, -1]])
    A = conjugation_action_I(MatrixGroup.generated([h]), _carrier(x))
    v = A(h, x, x)
    r = orbits_intersect(A, x, h)
    elapsed = time.perf_counter() - t
    ok = v == h and r.witness == h and elapsed < 1
    return ok, f"h(x,x)={v}, witness={r.witness}, {elapsed:.3f}s"


def criterion_3():
    """Dihedral layers, strict growth to depth 6, and agreement with exact matrices."""
    t = time.perf_counter()
    L = symbolic_layers(7)
    first = [{str(w) for w in L[0]}, {str(w) for w in L[1]}]
    strict = all(L[k] < L[k + 1] for k in range(6))
    agree, sizes = layer_agreement(6)
    subst = all(len({w.to_matrix() for w in layer}) == len(layer) for layer in L)
    cert = growth_certificate(6).ok
    elapsed = time.perf_counter() - t
    ok = (first == [{"x", "xh"}, {"x", "xh", "h(xh)^2x", "h(xh)^3"}] and strict and agree and subst
          and cert and elapsed < 5)
    return ok, f"sizes {[len(x) for x in L]}, strict={strict}, matrices agree={agree}, {elapsed:.2f}s"


def criterion_4():
    """S3 by left translation: every G(x,x) bi-invariant, distributivity fails, quintuple re-evaluates."""
    t = time.perf_counter()
    S3 = catalog.get("S3")
    cert = problem1_counterexample(S3)
    A = cert.action
    c = cert.distributivity.counterexample
    elapsed = time.perf_counter() - t
    oracle_hit = first_distributive_failure(A.fn, list(S3), list(S3))
    oracle_bi = all(bi_invariant(A.fn, list(S3), image(A.fn, list(S3), {x})) for x in S3)
    ok = (cert.certified and recheck(A, cert.distributivity) and cert.distributivity.details["exhaustive"]
          and oracle_bi and oracle_hit == (c["g"], c["h"], c["x"], c["x1"], c["x2"]) and elapsed < 10)
    q = ", ".join(S3.names[c[k]] for k in ("g", "h", "x", "x1", "x2"))
    return ok, f"6^5 quintuples scanned, first failure ({q}), {elapsed:.3f}s"


def _kernel_criterion_instances():
    S3, S4 = catalog.get("S3"), catalog.get("S4")
    out = [(name, left_translation(catalog.get(name))) for name in ("S3", "D4", "Q8", "A4", "S4", "C4", "C6")]
    out.append(("S3 on 2 cosets", coset_action(S3, subgroup_generated(S3, ["(123)"]))))
    out.append(("S3 on 3 cosets", coset_action(S3, subgroup_generated(S3, ["(12)"]))))
    A4 = subgroup_generated(S4, ["(123)", "(12)(34)"])
    out.append(("S4 on 2 cosets", coset_action(S4, A4)))
    out.append(("S4 on 3 cosets", coset_action(S4, subgroup_generated(S4, ["(1234)", "(13)"]))))
    out.append(("S3 trivially", trivial_unary(S3)))
    return out


def criterion_5():
    """Both biconditionals checked side by side, with instances of each truth value."""
    prop6 = {(True, True): 0, (False, False): 0, "mismatch": 0}
    instances = 0
    for name in ("S3", "D4", "Q8", "A4", "S4"):
        G = catalog.get(name)
        for H in all_subgroups(G):
            instances += 1
            A = conjugation_action_I(H)
            N = normalizer(G, H).members
            for x in G:
                side_a = bi_invariant(A.fn, H.elements, image(A.fn, H.elements, {x}))
                side_b = all(G.conjugate(h, x) in N for h in H)
                r = normalizer_criterion(H, x)
                reported = (r.details["bi_invariant"], r.details["conjugate_in_normalizer"])
                if reported != (side_a, side_b) or side_a != side_b:
                    prop6["mismatch"] += 1
                else:
                    prop6[reported] += 1
    thm2 = {(True, True): 0, (False, False): 0, "mismatch": 0}
    for _, U in _kernel_criterion_instances():
        instances += 1
        r = induced_distributivity_criterion(U)
        G = U.group.parent
        brute = first_distributive_failure(induced_action(U).fn, list(G), list(U.carrier.points)) is None
        pair = (r.details["distributive"], r.details["commutator_in_kernel"])
        if not r.holds or pair[0] != brute:
            thm2["mismatch"] += 1
        else:
            thm2[pair] += 1
    ok = (instances >= 10 and prop6["mismatch"] == 0 and thm2["mismatch"] == 0
          and all(prop6[k] > 0 and thm2[k] > 0 for k in ((True, True), (False, False))))
    return ok, (f"{instances} instances; normalizer criterion true/false "
                f"{prop6[True, True]}/{prop6[False, False]}, kernel criterion true/false "
                f"{thm2[True, True]}/{thm2[False, False]}, mismatches {prop6['mismatch'] + thm2['mismatch']}")


def criterion_6():
    """Action II is distributive on every catalog pair and its orbits are the left cosets."""
    pairs = bad = 0
    for name in catalog.CATALOG_NAMES:
        G = catalog.get(name)
        for H in all_subgroups(G):
            pairs += 1
            A = conjugation_action_II(H)
            r = is_distributive(A)
            orbits = {orbit_layers(A, x).orbit for x in G}
            if not (r.holds and r.details["exhaustive"]) or orbits != set(left_cosets(G, H)):
                bad += 1
    return bad == 0, f"{pairs} (G,H) pairs, {bad} failures"


def _finite_instances():
    for name in catalog.CATALOG_NAMES:
        G = catalog.get(name)
        for H in all_subgroups(G):
            yield f"{name} I", conjugation_action_I(H)
            yield f"{name} II", conjugation_action_II(H)
        yield f"{name} induced", induced_action(left_translation(G))


def criterion_7():
    """Converged orbit layers equal an independent worklist closure."""
    pairs = bad = 0
    for _, A in _finite_instances():
        K = A.group.elements
        for x in A.carrier.points:
            L = orbit_layers(A, x)
            pairs += 1
            if not L.converged or L.orbit != frozenset(worklist_orbit(A.fn, K, x)):
                bad += 1
    return pairs >= 100 and bad == 0, f"{pairs} (instance, point) pairs, {bad} mismatches"


def criterion_8():
    """Chain, fixpoint, intersection, G-square and transfer properties, plus a union witness."""
    failures = []
    S3, D4 = catalog.get("S3"), catalog.get("D4")
    small = [conjugation_action_I(subgroup_generated(S3, ["(12)"])),
             conjugation_action_II(subgroup_generated(S3, ["(12)"])),
             conjugation_action_I(subgroup_generated(D4, [D4.names[1]])),
             induced_action(left_translation(S3))]
    for A in small:
        K = A.group.elements
        for x in A.carrier.points:
            L = orbit_layers(A, x)
            if x not in L.layers[0] or any(not a <= b for a, b in zip(L.layers, L.layers[1:])):
                failures.append("monotone chain")
            if image_set(A, L.orbit) != L.orbit:
                failures.append("fixpoint")
        bis = [frozenset(S) for S in _subsets(A.carrier.points) if bi_invariant(A.fn, K, S)]
        for S in bis:
            for T in bis:
                if not is_bi_invariant(A, intersect_bi_invariant(A, S, T)):
                    failures.append("intersection")
        U = natural_g_square(A)
        for S in _subsets(A.carrier.points):
            sq = {(a, b) for a in S for b in S}
            if is_invariant(U, sq) != bi_invariant(A.fn, K, S):
                failures.append("G-square")
    for U in (left_translation(S3), coset_action(S3, subgroup_generated(S3, ["(12)"])),
              coset_action(D4, subgroup_generated(D4, [D4.names[1]]))):
        A = induced_action(U)
        for S in _subsets(U.carrier.points):
            if is_invariant(U, S) != is_bi_invariant(A, S):
                failures.append("transfer")
    A = conjugation_action_II(subgroup_generated(S3, ["(12)"]))
    found = find_union_violation(A)
    witness = ""
    if found is None:
        failures.append("union witness")
    else:
        S, T, (g, a, b, v) = found
        if not (bi_invariant(A.fn, A.group.elements, S) and bi_invariant(A.fn, A.group.elements, T)
                and A.fn(g, a, b) == v and v not in S | T):
            failures.append("union witness")
        witness = (f"; union witness {{{', '.join(S3.names[p] for p in sorted(S))}}} + "
                   f"{{{', '.join(S3.names[p] for p in sorted(T))}}}: "
                   f"{S3.names[g]}({S3.names[a]}, {S3.names[b]}) = {S3.names[v]}")
    return not failures, f"{len(failures)} property failures{witness}"


CRITERIA = [
    ("1 non-bi-invariant H(x,x) in GL(2)", criterion_1),
    ("2 intersecting orbits in GL(2)", criterion_2),
    ("3 infinitely generated dihedral orbit", criterion_3),
    ("4 bi-invariant G(x,x) without distributivity on S3", criterion_4),
    ("5 biconditional suites", criterion_5),
    ("6 action II distributive, orbits = cosets", criterion_6),
    ("7 orbit engine vs worklist oracle", criterion_7),
    ("8 property suite and union witness", criterion_8),
]


def _line(label, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {label}: {detail}"


@pytest.mark.parametrize("label,check", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(label, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(label, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = [(label, *check()) for label, check in CRITERIA]
    for label, ok, detail in results:
        print(_line(label, ok, detail))
    sys.exit(0 if all(ok for _, ok, _ in results) else 1)
