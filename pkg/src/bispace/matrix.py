"""Exact 2x2 rational matrices and subgroups of GL(2, Q) described by predicates."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from bispace.errors import DomainError


def _norm(v):
    """Canonical exact scalar: int when integral, else Fraction."""
    if isinstance(v, bool):
        raise DomainError("booleans are not matrix entries")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        v = Fraction(v.strip())
    elif isinstance(v, float):
        raise DomainError("floating-point entries are not accepted; use 'p/q' strings")
    else:
        v = Fraction(v)
    return v.numerator if v.denominator == 1 else v


@dataclass(frozen=True, order=True)
class Mat2:
    a: int | Fraction
    b: int | Fraction
    c: int | Fraction
    d: int | Fraction

    def __post_init__(self):
        for f in "abcd":
            object.__setattr__(self, f, _norm(getattr(self, f)))

    @classmethod
    def of(cls, rows) -> Mat2:
        """Build from ``[[a, b], [c, d]]`` with ints, Fractions or 'p/q' strings."""
        if isinstance(rows, Mat2):
            return rows
        try:
            (a, b), (c, d) = rows
        except (TypeError, ValueError):
            raise DomainError(f"expected [[a,b],[c,d]], got {rows!r}") from None
        return cls(a, b, c, d)

    @property
    def det(self):
        return _norm(self.a * self.d - self.b * self.c)

    def __mul__(self, other: Mat2) -> Mat2:
        return mat_mul(self, other)

    def __pow__(self, k: int) -> Mat2:
        if k < 0:
            return mat_inv(self) ** -k
        out, base = IDENTITY, self
        while k:
            if k & 1:
                out = mat_mul(out, base)
            base = mat_mul(base, base)
            k >>= 1
        return out

    def inverse(self) -> Mat2:
        return mat_inv(self)

    def to_literal(self) -> list:
        def enc(v):
            return v if isinstance(v, int) else f"{v.numerator}/{v.denominator}"
        return [[enc(self.a), enc(self.b)], [enc(self.c), enc(self.d)]]

    def __str__(self):
        lit = self.to_literal()
        return "[[{},{}],[{},{}]]".format(*lit[0], *lit[1])


IDENTITY = Mat2(1, 0, 0, 1)


def mat_mul(A: Mat2, B: Mat2) -> Mat2:
    return Mat2(A.a * B.a + A.b * B.c, A.a * B.b + A.b * B.d,
                A.c * B.a + A.d * B.c, A.c * B.b + A.d * B.d)


def mat_inv(A: Mat2) -> Mat2:
    det = A.det
    if det == 0:
        raise DomainError(f"{A} is singular")
    return Mat2(Fraction(A.d) / det, Fraction(-A.b) / det, Fraction(-A.c) / det, Fraction(A.a) / det)


def order_bounded(A: Mat2, bound: int) -> int | None:
    """Smallest n <= bound with A^n = I, or None when there is none."""
    if A.det == 0:
        raise DomainError(f"{A} is singular")
    if bound < 1:
        raise DomainError("bound must be positive")
    P = A
    for n in range(1, bound + 1):
        if P == IDENTITY:
            return n
        P = mat_mul(P, A)
    return None


# -- subgroups of GL(2) -----------------------------------------------

UPPER_UNITRIANGULAR = "upper-unitriangular"
FINITE_LISTED = "finite-listed"
WHOLE_GL2 = "whole-GL2"
KINDS = (UPPER_UNITRIANGULAR, FINITE_LISTED, WHOLE_GL2)

# Parameter grid for the one-parameter group {[[1,t],[0,1]]}. Conditions
# checked over it are polynomial of degree <= 2 in each parameter, so
# agreement on >= 3 values per parameter decides them for every real t.
PARAMETER_GRID = (0, 1, -1, 2)


def unitriangular(t) -> Mat2:
    return Mat2(1, t, 0, 1)


@dataclass(frozen=True)
class MatrixGroup:
    """A subgroup of GL(2) given structurally or by a finite list of members.

    Serves as the acting group of matrix actions: ``elements`` is the full
    member tuple when finite, else None; ``samples`` always lists finitely
    many members for bounded checks.
    """

    kind: str
    listed: tuple[Mat2, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown subgroup kind {self.kind!r}")

    @classmethod
    def generated(cls, gens: Iterable, limit: int = 10000) -> MatrixGroup:
        """Finite subgroup generated by matrices of finite order."""
        gens = [Mat2.of(g) for g in gens]
        members = {IDENTITY}
        frontier = [IDENTITY]
        while frontier:
            nxt = []
            for m in frontier:
                for g in gens:
                    p = mat_mul(m, g)
                    if p not in members:
                        members.add(p)
                        nxt.append(p)
                        if len(members) > limit:
                            raise DomainError("generated matrix group exceeds the size limit")
            frontier = nxt
        return cls(FINITE_LISTED, tuple(sorted(members)))

    @classmethod
    def listed_group(cls, members: Iterable) -> MatrixGroup:
        ms = tuple(sorted({Mat2.of(m) for m in members}))
        grp = cls(FINITE_LISTED, ms)
        s = set(ms)
        if IDENTITY not in s or any(mat_mul(a, b) not in s for a in ms for b in ms):
            raise DomainError("listed matrices are not closed under multiplication")
        return grp

    @property
    def identity(self) -> Mat2:
        return IDENTITY

    def mul(self, a: Mat2, b: Mat2) -> Mat2:
        return mat_mul(a, b)

    def inv(self, a: Mat2) -> Mat2:
        return mat_inv(a)

    @cached_property
    def _set(self):
        return frozenset(self.listed)

    def __contains__(self, A) -> bool:
        return in_subgroup(A, self)

    @property
    def elements(self):
        return self.listed if self.kind == FINITE_LISTED else None

    @cached_property
    def samples(self) -> tuple[Mat2, ...]:
        if self.kind == FINITE_LISTED:
            return self.listed
        if self.kind == UPPER_UNITRIANGULAR:
            return tuple(unitriangular(t) for t in PARAMETER_GRID)
        return (IDENTITY, Mat2(0, 1, 1, 0), Mat2(1, 1, 0, 1), Mat2(2, 0, 0, 1), Mat2(0, -1, 1, -1))

    def label(self, g: Mat2) -> str:
        return str(g)

    def normalizes(self, g: Mat2) -> bool:
        """Whether g lies in the normalizer of this subgroup in GL(2)."""
        if g.det == 0:
            raise DomainError(f"{g} is singular")
        if self.kind == WHOLE_GL2:
            return True
        gi = mat_inv(g)
        if self.kind == FINITE_LISTED:
            return frozenset(mat_mul(mat_mul(gi, h), g) for h in self.listed) == self._set
        # g^-1 U g = U iff g^-1 N g is a nonzero multiple of N = E12, which
        # is equivalent to g^-1 u(1) g lying in U.
        u = unitriangular(1)
        return in_subgroup(mat_mul(mat_mul(gi, u), g), self)


def in_subgroup(A: Mat2, P: MatrixGroup) -> bool:
    A = Mat2.of(A)
    if P.kind == UPPER_UNITRIANGULAR:
        return A.a == 1 and A.d == 1 and A.c == 0
    if P.kind == FINITE_LISTED:
        return A in P._set
    return A.det != 0
