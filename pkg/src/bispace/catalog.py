"""Named small groups addressable from scenarios."""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from bispace.errors import GroupError
from bispace.groups import FiniteGroup


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group order must be positive")
    names = ["e"] + ["a" if k == 1 else f"a^{k}" for k in range(1, n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup.from_table(names, table, f"C{n}")


def symmetric(n: int) -> FiniteGroup:
    if n < 2:
        return FiniteGroup.from_table(["e"], [[0]], f"S{n}")
    swap = (1, 0) + tuple(range(2, n))
    cycle = tuple(range(1, n)) + (0,)
    return FiniteGroup.from_permutations([swap, cycle], f"S{n}")


def alternating(n: int) -> FiniteGroup:
    gens = []
    for p in permutations(range(n)):
        # 3-cycles generate A_n
        moved = [i for i in range(n) if p[i] != i]
        if len(moved) == 3:
            gens.append(p)
    if not gens:
        return FiniteGroup.from_table(["e"], [[0]], f"A{n}")
    return FiniteGroup.from_permutations(gens, f"A{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon (order 2n)."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return FiniteGroup.from_permutations([rot, ref], f"D{n}")


_QUAT_NAMES = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
# unit products of 1, i, j, k as (sign, unit)
_QUAT_UNIT = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def quaternion() -> FiniteGroup:
    def split(s):
        return (-1, s[1:]) if s.startswith("-") else (1, s)

    def name(sign, unit):
        return unit if sign > 0 else "-" + unit

    index = {s: i for i, s in enumerate(_QUAT_NAMES)}
    table = []
    for a in _QUAT_NAMES:
        sa, ua = split(a)
        row = []
        for b in _QUAT_NAMES:
            sb, ub = split(b)
            s, u = _QUAT_UNIT[ua, ub]
            row.append(index[name(sa * sb * s, u)])
        table.append(row)
    return FiniteGroup.from_table(_QUAT_NAMES, table, "Q8")


_BUILDERS = {
    **{f"C{n}": (lambda n=n: cyclic(n)) for n in range(1, 9)},
    "S3": lambda: symmetric(3),
    "S4": lambda: symmetric(4),
    "D4": lambda: dihedral(4),
    "Q8": quaternion,
    "A4": lambda: alternating(4),
}

CATALOG_NAMES = tuple(_BUILDERS)


@lru_cache(maxsize=None)
def get(name: str) -> FiniteGroup:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise GroupError(f"unknown catalog group {name!r}; known: {', '.join(CATALOG_NAMES)}") from None
