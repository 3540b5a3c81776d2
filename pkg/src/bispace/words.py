"""Normal forms in the group generated by two involutions h, x with xh of
infinite order (the infinite dihedral group).

Every element is t^n x^r with t = xh, n an integer and r in {0, 1}, so a
word is stored as ``(shift, flip) = (n, r)``. Since x t x = t^-1,

    (t^a x^r)(t^b x^s) = t^(a + (-1)^r b) x^(r+s).

The familiar forms are read off the pair:

    (xh)^i     = t^i            I
    (xh)^i x   = t^i x          II
    h(xh)^i    = t^-(i+1) x     III
    h(xh)^i x  = t^-(i+1)       IV

with i >= 1, plus the base words e, x, h (= t^-1 x) and hx (= t^-1).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from bispace.actions import WORD_SET, BinaryAction, Carrier, conjugation_action_I
from bispace.errors import DomainError
from bispace.matrix import IDENTITY, Mat2, mat_mul

IDENTITY_FORM = "IDENTITY"
BASE_X = "BASE-X"
BASE_H = "BASE-H"
BASE_HX = "BASE-HX"
FORMS = ("I", "II", "III", "IV")
_FORM_RANK = {IDENTITY_FORM: -4, BASE_X: -3, BASE_H: -2, BASE_HX: -1, "I": 0, "II": 1, "III": 2, "IV": 3}

# the matrices substituted for h and x
H_MATRIX = Mat2(1, 0, 0, -1)
X_MATRIX = Mat2(-1, 0, 1, 1)


@dataclass(frozen=True)
class DWord:
    shift: int
    flip: bool

    @property
    def form(self) -> str:
        n, r = self.shift, self.flip
        if not r:
            return "I" if n > 0 else IDENTITY_FORM if n == 0 else BASE_HX if n == -1 else "IV"
        return "II" if n > 0 else BASE_X if n == 0 else BASE_H if n == -1 else "III"

    @property
    def power(self) -> int:
        """Exponent i of xh in the normal form (0 for the base words)."""
        n = self.shift
        return n if n > 0 else max(-n - 1, 0)

    @classmethod
    def of_form(cls, form: str, i: int = 0) -> DWord:
        if form in FORMS and i < 1:
            raise DomainError(f"form {form} needs an exponent >= 1")
        return {
            "I": lambda: cls(i, False),
            "II": lambda: cls(i, True),
            "III": lambda: cls(-(i + 1), True),
            "IV": lambda: cls(-(i + 1), False),
            IDENTITY_FORM: lambda: E,
            BASE_X: lambda: X,
            BASE_H: lambda: H,
            BASE_HX: lambda: cls(-1, False),
        }[form]()

    @classmethod
    def parse(cls, text: str) -> DWord:
        return parse_word(text)

    def sort_key(self):
        return (self.power, _FORM_RANK[self.form])

    def __lt__(self, other: DWord):
        return self.sort_key() < other.sort_key()

    def __mul__(self, other: DWord) -> DWord:
        return word_mul(self, other)

    def inverse(self) -> DWord:
        return self if self.flip else DWord(-self.shift, False)

    def __pow__(self, k: int) -> DWord:
        if self.flip:
            return self if k % 2 else E
        return DWord(self.shift * k, False)

    def __str__(self):
        f, i = self.form, self.power
        xh = "xh" if i == 1 else f"(xh)^{i}"
        return {
            IDENTITY_FORM: "e", BASE_X: "x", BASE_H: "h", BASE_HX: "hx",
            "I": xh, "II": xh + "x", "III": "h" + xh, "IV": "h" + xh + "x",
        }[f]

    def __repr__(self):
        return f"DWord({self})"

    def to_matrix(self) -> Mat2:
        return _t_power(self.shift) if not self.flip else mat_mul(_t_power(self.shift), X_MATRIX)


E = DWord(0, False)
X = DWord(0, True)
H = DWord(-1, True)
XH = DWord(1, False)


def word_mul(u: DWord, v: DWord) -> DWord:
    return DWord(u.shift - v.shift if u.flip else u.shift + v.shift, u.flip != v.flip)


@lru_cache(maxsize=4096)
def _t_power(n: int) -> Mat2:
    return mat_mul(X_MATRIX, H_MATRIX) ** n if n else IDENTITY


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(\^\s*-?\d+)|([hxe1]))")


def parse_word(text: str) -> DWord:
    """Parse strings over {h, x} with parentheses and integer powers,
    e.g. ``hxhx``, ``h(xh)^2x``, ``(xh)^-3``, ``e``."""
    tokens, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DomainError(f"cannot parse word {text!r} at position {pos}")
        tokens.append(m.group(0).strip().replace(" ", ""))
        pos = m.end()
    if not tokens:
        raise DomainError("empty word")

    def seq(i, closing):
        acc = E
        while i < len(tokens) and tokens[i] != ")":
            tok = tokens[i]
            if tok == "(":
                val, i = seq(i + 1, True)
            elif tok in ("h", "x", "e", "1"):
                val = {"h": H, "x": X}.get(tok, E)
                i += 1
            else:
                raise DomainError(f"unexpected {tok!r} in {text!r}")
            if i < len(tokens) and tokens[i].startswith("^"):
                k = int(tokens[i][1:])
                val = val ** k if k >= 0 else val.inverse() ** -k
                i += 1
            acc = word_mul(acc, val)
        if closing:
            if i >= len(tokens):
                raise DomainError(f"unbalanced parentheses in {text!r}")
            return acc, i + 1
        if i < len(tokens):
            raise DomainError(f"unbalanced parentheses in {text!r}")
        return acc, i

    return seq(0, False)[0]


def from_letters(letters: str) -> DWord:
    out = E
    for ch in letters:
        out = word_mul(out, {"h": H, "x": X}[ch])
    return out


# -- acting group and action ------------------------------------------


@dataclass(frozen=True)
class WordGroup:
    """A finite subgroup of the dihedral word group, e.g. {e, h}."""

    members: tuple

    @classmethod
    def generated_by_h(cls) -> WordGroup:
        return cls((E, H))

    @classmethod
    def generated(cls, gens, limit: int = 64) -> WordGroup:
        """Finite subgroup generated by ``gens``; an infinite one is refused."""
        members = {E}
        frontier = [E]
        while frontier:
            nxt = []
            for m in frontier:
                for g in gens:
                    p = word_mul(m, g)
                    if p not in members:
                        members.add(p)
                        nxt.append(p)
            if len(members) > limit:
                raise DomainError("the generated word group is infinite")
            frontier = nxt
        return cls(tuple(sorted(members)))

    @property
    def identity(self):
        return E

    def mul(self, a, b):
        return word_mul(a, b)

    def inv(self, a):
        return a.inverse()

    def __contains__(self, g):
        return g in self.members

    @property
    def elements(self):
        return self.members

    @property
    def samples(self):
        return self.members

    def label(self, g):
        return str(g)


def words_up_to(length: int) -> tuple:
    """All group elements of letter length <= ``length`` in canonical order."""
    seen = {E}
    for n in range(1, length + 1):
        for letters in product("hx", repeat=n):
            seen.add(from_letters("".join(letters)))
    return tuple(sorted(seen))


def word_carrier(sample_length: int = 6) -> Carrier:
    return Carrier(WORD_SET, words_up_to(sample_length), universe=lambda p: isinstance(p, DWord),
                   exhaustive=False)


def word_action(sample_length: int = 6) -> BinaryAction:
    """h(x1, x2) = x1^-1 h x1 x2 for H = {e, h} on the dihedral words."""
    return conjugation_action_I(WordGroup.generated_by_h(), word_carrier(sample_length))


def word_apply(hgen: DWord, x1: DWord, x2: DWord) -> DWord:
    if hgen != E and hgen != H:
        raise DomainError(f"{hgen} is not in H = {{e, h}}")
    return word_mul(word_mul(word_mul(x1.inverse(), hgen), x1), x2)


# -- layers and the growth certificate ---------------------------------


def symbolic_layers(n: int) -> list[frozenset]:
    """[H^1(x,x), ..., H^n(x,x)] under h(x1,x2) = x1^-1 h x1 x2, H = {e, h}."""
    if n < 1:
        raise DomainError("n must be at least 1")
    layers = []
    current = {X}
    delta = [X]
    for _ in range(n):
        new = set()
        for d in delta:
            for m in current:
                for v in (word_apply(H, d, m), word_apply(H, m, d)):
                    if v not in current:
                        new.add(v)
        current |= new
        delta = sorted(new)
        layers.append(frozenset(current))
    return layers


_CASES = {
    # form of y -> (case number, first argument, expected form of the product)
    "I": (1, XH, "III"),
    "II": (2, XH, "IV"),
    "III": (3, X, "I"),
    "IV": (4, X, "II"),
}


@dataclass(frozen=True)
class GrowthStep:
    layer: int
    y: DWord
    case: int
    first_argument: DWord
    produced: DWord
    expected_form: str
    in_next_layer: bool
    in_current_layer: bool

    @property
    def ok(self) -> bool:
        return (self.in_next_layer and not self.in_current_layer
                and self.produced.form == self.expected_form
                and self.produced.power == self.y.power + 2)


@dataclass(frozen=True)
class GrowthCertificate:
    steps: tuple
    matrices_distinct: bool

    @property
    def ok(self) -> bool:
        return self.matrices_distinct and all(s.ok for s in self.steps)


def max_power_element(layer) -> DWord:
    """Element with the highest power of xh; ties go to the earlier form I < II < III < IV."""
    return min(layer, key=lambda w: (-w.power, _FORM_RANK[w.form]))


def growth_certificate(n: int) -> GrowthCertificate:
    """Replay the four-case argument that H^{k+1}(x,x) strictly contains H^k(x,x), k <= n."""
    layers = symbolic_layers(n + 1)
    steps = []
    for k in range(1, n + 1):
        current, nxt = layers[k - 1], layers[k]
        y = max_power_element(current)
        case, first, expected = _CASES[y.form]
        z = word_apply(H, first, y)
        steps.append(GrowthStep(k, y, case, first, z, expected, z in nxt, z in current))
    words = {s.y for s in steps} | {s.produced for s in steps}
    mats = {w.to_matrix() for w in words}
    return GrowthCertificate(tuple(steps), len(mats) == len(words))
