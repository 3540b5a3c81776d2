"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it was built; otherwise
the numpy reference in ``_pykernels`` takes over with identical results.
"""
from __future__ import annotations

from types import ModuleType

from bispace import _pykernels

try:
    from bispace import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS: dict[str, ModuleType] = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

_active: ModuleType = _ckernels or _pykernels


def backend_name() -> str:
    return "cython" if _active is _ckernels and _ckernels is not None else "python"


def use_backend(name: str) -> None:
    global _active
    try:
        _active = BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None


def expand(T, mask, delta, ks, first_only=False):
    return _active.expand(T, mask, delta, ks, first_only)


def image(T, members, ks):
    return _active.image(T, members, ks)


def axiom_scan(T, M, e, limit=0):
    return _active.axiom_scan(T, M, e, limit)


def distributive_scan(T):
    return _active.distributive_scan(T)
