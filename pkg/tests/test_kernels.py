import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bispace import _pykernels, catalog, kernels
from bispace.actions import conjugation_action_I, conjugation_action_II
from bispace.groups import subgroup_generated
from bispace.laws import is_distributive

cy = kernels.BACKENDS.get("cython")
needs_cython = pytest.mark.skipif(cy is None, reason="compiled extension not built")


@st.composite
def tables(draw):
    ng = draw(st.integers(1, 4))
    nx = draw(st.integers(1, 6))
    flat = draw(st.lists(st.integers(0, nx - 1), min_size=ng * nx * nx, max_size=ng * nx * nx))
    T = np.array(flat, dtype=np.int32).reshape(ng, nx, nx)
    mask = np.array(draw(st.lists(st.integers(0, 1), min_size=nx, max_size=nx)), dtype=np.uint8)
    return T, mask


def group_of(ng):
    M = np.array([[(i + j) % ng for j in range(ng)] for i in range(ng)], dtype=np.int32)
    return M, 0


@needs_cython
@settings(max_examples=200)
@given(tables(), st.booleans())
def test_expand_agrees(tm, first_only):
    T, mask = tm
    members = np.flatnonzero(mask).astype(np.int32)
    delta = members[::2]
    ks = np.arange(T.shape[0], dtype=np.int32)
    a = list(_pykernels.expand(T, mask, delta, ks, first_only))
    b = list(cy.expand(T, mask, delta, ks, first_only))
    if first_only:
        assert bool(a) == bool(b)
    else:
        assert a == b


@needs_cython
@settings(max_examples=200)
@given(tables())
def test_image_agrees(tm):
    T, mask = tm
    members = np.flatnonzero(mask).astype(np.int32)
    ks = np.arange(T.shape[0], dtype=np.int32)
    assert sorted(_pykernels.image(T, members, ks)) == sorted(cy.image(T, members, ks))


@needs_cython
@settings(max_examples=200)
@given(tables(), st.integers(0, 3))
def test_axiom_scan_agrees(tm, limit):
    T, _ = tm
    M, e = group_of(T.shape[0])
    a = _pykernels.axiom_scan(T, M, e, limit)
    b = cy.axiom_scan(T, M, e, limit)
    assert [list(map(tuple, x)) for x in a] == [list(map(tuple, x)) for x in b]


@needs_cython
@settings(max_examples=200)
@given(tables())
def test_distributive_scan_agrees(tm):
    T, _ = tm
    a = _pykernels.distributive_scan(T)
    b = cy.distributive_scan(T)
    assert (None if a is None else tuple(a)) == (None if b is None else tuple(b))


@pytest.mark.parametrize("backend", sorted(kernels.BACKENDS))
def test_backends_give_identical_verdicts(backend):
    S4 = catalog.get("S4")
    H = subgroup_generated(S4, ["(12)"])
    before = kernels.backend_name()
    try:
        kernels.use_backend(backend)
        assert kernels.backend_name() == backend
        r = is_distributive(conjugation_action_I(H))
        assert is_distributive(conjugation_action_II(H)).holds
    finally:
        kernels.use_backend(before)
    ref = is_distributive(conjugation_action_I(H))
    assert r.counterexample == ref.counterexample


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


def test_fallback_selected_without_extension():
    code = ("import sys; sys.modules['bispace._ckernels'] = None\n"
            "from bispace import kernels, catalog, laws, actions\n"
            "assert kernels.backend_name() == 'python' and 'cython' not in kernels.BACKENDS\n"
            "A = actions.induced_action(actions.left_translation(catalog.get('S3')))\n"
            "assert not laws.is_distributive(A).holds\n")
    subprocess.run([sys.executable, "-c", code], check=True)
