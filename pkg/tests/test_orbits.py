import pytest

from bispace import catalog
from bispace.actions import (
    MATRIX_SET, Carrier, conjugation_action_I, conjugation_action_II, induced_action, left_translation,
    table_action,
)
from bispace.errors import DomainError, UnsupportedInstance
from bispace.groups import left_cosets, subgroup_generated
from bispace.matrix import UPPER_UNITRIANGULAR, WHOLE_GL2, Mat2, MatrixGroup
from bispace.orbits import (
    PointImage, bi_invariance_witness, classify_orbit, find_union_violation, image_set,
    intersect_bi_invariant, is_bi_invariant, orbit_layers, orbits_intersect,
)
from bispace.words import word_action, parse_word

from oracles import bi_invariant, naive_layers, worklist_orbit

S3 = catalog.get("S3")


def matrix_carrier(*pts):
    return Carrier(MATRIX_SET, tuple(Mat2.of(p) for p in pts),
                   universe=lambda m: isinstance(m, Mat2) and m.det != 0, exhaustive=False)


def test_dihedral_first_layers_via_engine():
    A = word_action()
    x = parse_word("x")
    assert {str(w) for w in image_set(A, {x})} == {"x", "xh"}
    H2 = image_set(A, image_set(A, {x}))
    assert {str(w) for w in H2} == {"x", "xh", "h(xh)^2x", "h(xh)^3"}


def test_dihedral_orbit_never_converges():
    L = orbit_layers(word_action(), parse_word("x"), 6)
    assert not L.converged
    assert L.sizes == [2, 4, 10, 28, 82, 244]
    c = classify_orbit(word_action(), parse_word("x"), 8)
    assert c.verdict == "undetermined" and c.depth == 8
    assert all(a < b for a, b in zip(c.layers.sizes, c.layers.sizes[1:]))


def test_distributive_instance_converges_at_depth_one():
    A3 = subgroup_generated(S3, ["(123)"])
    A = conjugation_action_II(A3)
    for x in S3:
        L = orbit_layers(A, x)
        assert L.converged and L.depth_reached == 1
        assert L.orbit == frozenset(S3.mul(x, h) for h in A3)
        assert classify_orbit(A, x).verdict == "finitely-generated"


def test_induced_left_translation_orbit_is_whole_group():
    A = induced_action(left_translation(S3))
    for x in S3:
        L = orbit_layers(A, x)
        assert L.converged and L.depth_reached == 1 and L.orbit == frozenset(S3)


@pytest.mark.parametrize("name", ["S3", "D4", "Q8", "A4", "S4"])
def test_layers_match_naive_evaluation(name):
    G = catalog.get(name)
    for H in (subgroup_generated(G, [1]), subgroup_generated(G, [G.order - 1])):
        A = conjugation_action_I(H)
        for x in list(G)[:6]:
            L = orbit_layers(A, x, 6)
            ref = naive_layers(A.fn, H.elements, x, len(L.layers))
            assert list(L.layers) == ref
            assert x in L.layers[0]
            assert all(a <= b for a, b in zip(L.layers, L.layers[1:]))
            assert L.converged
            assert L.layers[-1] == L.layers[-2] == L.orbit
            assert L.orbit == frozenset(worklist_orbit(A.fn, H.elements, x))


def test_layer_convergence_rules():
    A = conjugation_action_II(S3.whole)
    L = orbit_layers(A, 0, 1)
    assert L.converged and L.depth_reached == 1 and len(L.layers) == 2
    with pytest.raises(DomainError):
        orbit_layers(A, 0, 0)
    with pytest.raises(DomainError):
        orbit_layers(A, 99)


def test_bi_invariance_checks():
    H = subgroup_generated(S3, ["(12)"])
    A = conjugation_action_I(H)
    assert is_bi_invariant(A, set(S3))
    assert is_bi_invariant(A, set())
    x = S3.index("(123)")
    S = image_set(A, {x})
    assert not is_bi_invariant(A, S)
    g, a, b, v = bi_invariance_witness(A, S)
    assert a in S and b in S and v not in S and A(g, a, b) == v
    assert is_bi_invariant(conjugation_action_II(H), image_set(conjugation_action_II(H), {x}))


def test_unitriangular_witness():
    U = MatrixGroup(UPPER_UNITRIANGULAR)
    x = Mat2.of([[0, 1], [1, 0]])
    A = conjugation_action_I(U, matrix_carrier(x))
    g, a1, a2, v = bi_invariance_witness(A, PointImage(x))
    assert not is_bi_invariant(A, PointImage(x))
    # v is not of the form x^-1 u x x
    assert not A.image_member(x, v)


def test_point_image_decided_on_grid():
    U = MatrixGroup(UPPER_UNITRIANGULAR)
    x = Mat2.of([[1, 3], [0, 1]])  # x normalizes U
    A = conjugation_action_I(U, matrix_carrier(x))
    assert is_bi_invariant(A, PointImage(x))
    W = MatrixGroup(WHOLE_GL2)
    assert is_bi_invariant(conjugation_action_I(W, matrix_carrier(x)), PointImage(x))


def test_point_image_without_decisive_grid():
    A = conjugation_action_II(MatrixGroup(UPPER_UNITRIANGULAR), matrix_carrier([[0, 1], [1, 0]]))
    with pytest.raises(UnsupportedInstance):
        is_bi_invariant(A, PointImage(Mat2.of([[0, 1], [1, 0]])))


def test_orbit_of_x_contains_h():
    h = Mat2.of([[0, 1], [1, 0]])
    x = Mat2.of([[0, -1], [1, -1]])
    A = conjugation_action_I(MatrixGroup.generated([h]), matrix_carrier(x))
    r = orbits_intersect(A, x, h)
    assert r.found and r.witness == h and r.depth == 1
    assert orbit_layers(A, h).orbit == frozenset({Mat2.of([[1, 0], [0, 1]]), h})
    assert orbits_intersect(A, x, x).witness == x


def test_distributive_orbits_disjoint():
    A3 = subgroup_generated(S3, ["(123)"])
    A = conjugation_action_II(A3)
    x, y = S3.index("e"), S3.index("(12)")
    r = orbits_intersect(A, x, y)
    assert not r.found and r.certified_disjoint


def test_intersection_of_bi_invariant_sets():
    A3 = subgroup_generated(S3, ["(123)"])
    A = conjugation_action_II(A3)
    c1, c2 = left_cosets(S3, A3)
    assert intersect_bi_invariant(A, c1, c1) == c1
    empty = intersect_bi_invariant(A, c1, c2)
    assert empty == frozenset() and is_bi_invariant(A, empty)
    H = subgroup_generated(S3, ["(12)"])
    B = conjugation_action_I(H)
    with pytest.raises(DomainError):
        intersect_bi_invariant(B, image_set(B, {S3.index("(123)")}), set(S3))


def test_union_witness_found():
    # two coset orbits of the distributive action: each is bi-invariant, their union is not
    H = subgroup_generated(S3, ["(12)"])
    A = conjugation_action_II(H)
    S, T, (g, a, b, v) = find_union_violation(A)
    U = S | T
    assert bi_invariant(A.fn, H.elements, S) and bi_invariant(A.fn, H.elements, T)
    assert a in U and b in U and A.fn(g, a, b) == v and v not in U


def test_union_witness_absent_with_a_single_orbit():
    A = induced_action(left_translation(S3))
    assert find_union_violation(A) is None


def test_table_action_orbits():
    # a(p, -) swaps q and r; every other pair is left alone
    C2 = catalog.get("C2")
    e_plane = [[0, 1, 2], [0, 1, 2], [0, 1, 2]]
    a_plane = [[0, 2, 1], [0, 1, 2], [0, 1, 2]]
    A = table_action(C2.whole, ["p", "q", "r"], [e_plane, a_plane])
    assert orbit_layers(A, "p").orbit == frozenset({"p"})
    assert orbit_layers(A, "q").orbit == frozenset({"q"})
    assert find_union_violation(A)[:2] == (frozenset({"p"}), frozenset({"q"}))
