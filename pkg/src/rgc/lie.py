"""Tensor algebra elements and the free Lie algebra in the Lyndon basis.

Letters follow :mod:`rgc.necklace` (``a1 < b1 < a2 < b2 < ...``).  The
standard bracketing ``P(w) = [P(u), P(v)]`` of a Lyndon word ``w = uv`` (``v``
its longest proper Lyndon suffix) expands to ``w`` plus lexicographically
larger words, so a Lie element is decomposed by repeatedly peeling off its
smallest word.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from ._combination import Combination
from .necklace import SymplecticBasis, pairing

__all__ = [
    "Tensor",
    "LieElement",
    "NotALieElement",
    "lyndon_words",
    "is_lyndon",
    "standard_factorization",
    "lyndon_basis",
    "omega",
    "tree_to_tensor",
    "bracket_tree",
    "expansion",
]

Word = tuple[int, ...]


class NotALieElement(ValueError):
    pass


class Tensor(Combination):
    """Rational combination of words in ``T(H)``."""

    __slots__ = ()

    def __init__(self, genus: int, terms: Mapping[Sequence[int], object] | None = None):
        super().__init__(genus, {tuple(w): c for w, c in (terms or {}).items()})

    @classmethod
    def letter(cls, genus: int, x: int) -> "Tensor":
        return cls(genus, {(x,): 1})

    def __matmul__(self, other: "Tensor") -> "Tensor":
        """Concatenation product."""
        if self._same(other) is NotImplemented:
            return NotImplemented
        out: dict[Word, Fraction] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                out[u + v] = out.get(u + v, 0) + a * b
        return Tensor(self.genus, out)

    def bracket(self, other: "Tensor") -> "Tensor":
        return self @ other - other @ self

    def degrees(self) -> set[int]:
        return {len(w) for w in self.terms}

    def __repr__(self) -> str:
        B = SymplecticBasis(self.genus)
        body = " + ".join(f"{c}*{''.join(B.symbol(x) for x in w) or '1'}" for w, c in self)
        return f"Tensor({body or '0'})"


def is_lyndon(w: Sequence[int]) -> bool:
    w = tuple(w)
    return bool(w) and all(w < w[i:] + w[:i] for i in range(1, len(w)))


def lyndon_words(alphabet: int, length: int) -> list[Word]:
    """Lyndon words of one length in lexicographic order (Duval's generator)."""
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        if len(w) == length:
            out.append(tuple(w))
        m = len(w)
        while len(w) < length:
            w.append(w[len(w) - m])
        while w and w[-1] == alphabet - 1:
            w.pop()
    return out


def standard_factorization(w: Sequence[int]) -> tuple[Word, Word]:
    w = tuple(w)
    if len(w) < 2:
        raise ValueError("letters have no factorization")
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise AssertionError("unreachable for Lyndon input")


@lru_cache(maxsize=None)
def _expansion(w: Word) -> tuple[tuple[Word, int], ...]:
    if len(w) == 1:
        return ((w, 1),)
    u, v = standard_factorization(w)
    out: dict[Word, int] = {}
    for x, a in _expansion(u):
        for y, b in _expansion(v):
            out[x + y] = out.get(x + y, 0) + a * b
            out[y + x] = out.get(y + x, 0) - a * b
    return tuple(sorted((k, c) for k, c in out.items() if c))


def bracket_tree(w: Word):
    """Standard bracketing of a Lyndon word as nested pairs of letters."""
    if len(w) == 1:
        return w[0]
    u, v = standard_factorization(w)
    return [bracket_tree(u), bracket_tree(v)]


def tree_to_tensor(genus: int, tree) -> Tensor:
    """Expand a bracket tree (a letter or a pair of trees) in ``T(H)``."""
    if isinstance(tree, int):
        return Tensor.letter(genus, tree)
    if len(tree) != 2:
        raise ValueError("bracket trees are binary")
    return tree_to_tensor(genus, tree[0]).bracket(tree_to_tensor(genus, tree[1]))


class LieElement(Combination):
    """Rational combination of Lyndon words standing for their standard brackets."""

    __slots__ = ()

    def __init__(self, genus: int, terms: Mapping[Sequence[int], object] | None = None):
        terms = {tuple(w): c for w, c in (terms or {}).items()}
        for w in terms:
            if not is_lyndon(w):
                raise ValueError(f"{w} is not a Lyndon word")
        super().__init__(genus, terms)

    def to_tensor(self) -> Tensor:
        out: dict[Word, Fraction] = {}
        for w, c in self.terms.items():
            for x, a in _expansion(w):
                out[x] = out.get(x, 0) + a * c
        return Tensor(self.genus, out)

    @classmethod
    def from_tensor(cls, t: Tensor) -> "LieElement":
        """Inverse of :meth:`to_tensor`; raises :class:`NotALieElement` otherwise."""
        rest = dict(t.terms)
        found: dict[Word, Fraction] = {}
        while rest:
            w = min(rest)
            if not is_lyndon(w):
                raise NotALieElement(f"word {w} cannot lead a Lie element")
            c = rest[w]
            found[w] = c
            for x, a in _expansion(w):
                y = rest.get(x, 0) - a * c
                if y:
                    rest[x] = y
                else:
                    rest.pop(x, None)
        return cls(t.genus, found)

    @classmethod
    def generator(cls, genus: int, x: int) -> "LieElement":
        return cls(genus, {(x,): 1})

    def bracket(self, other: "LieElement") -> "LieElement":
        return LieElement.from_tensor(self.to_tensor().bracket(other.to_tensor()))

    def to_json(self) -> list:
        B = SymplecticBasis(self.genus)

        def sym(tree):
            return B.symbol(tree) if isinstance(tree, int) else [sym(t) for t in tree]

        return [{"coeff": str(c), "tree": sym(bracket_tree(w))} for w, c in self]

    @classmethod
    def from_json(cls, genus: int, terms) -> "LieElement":
        B = SymplecticBasis(genus)

        def num(tree):
            return B.letter(tree) if isinstance(tree, str) else [num(t) for t in tree]

        total = Tensor(genus)
        for t in terms:
            total = total + Fraction(t["coeff"]) * tree_to_tensor(genus, num(t["tree"]))
        return cls.from_tensor(total)

    def __repr__(self) -> str:
        return f"LieElement({self.to_json()})"


def lyndon_basis(genus: int, degree: int) -> list[LieElement]:
    """Standard-bracketed Lyndon words of length ``degree`` on ``2 * genus`` letters."""
    if genus < 1 or degree < 1:
        raise ValueError("need genus >= 1 and degree >= 1")
    return [LieElement(genus, {w: 1}) for w in lyndon_words(2 * genus, degree)]


def expansion(w: Word) -> Iterator[tuple[Word, int]]:
    """Tensor expansion of the standard bracket of the Lyndon word ``w``."""
    return iter(_expansion(tuple(w)))


def omega(genus: int) -> Tensor:
    """The symplectic element ``sum_i [a_i, b_i]`` expanded in ``T(H)``."""
    out = {}
    for i in range(genus):
        a, b = 2 * i, 2 * i + 1
        out[(a, b)] = pairing(a, b)
        out[(b, a)] = -pairing(a, b)
    return Tensor(genus, out)
