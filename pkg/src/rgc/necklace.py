"""Cyclic words over a symplectic basis and the necklace Lie bialgebra.

Letters are small integers: ``a_i`` is ``2(i-1)`` and ``b_i`` is ``2i-1``, so
the alphabet order is ``a1 < b1 < a2 < b2 < ...`` and the symplectic partner
of a letter is ``x ^ 1``.  The empty cyclic word is kept as the unit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Iterator, Mapping, Sequence

from ._combination import Combination as _Combination
from .ribbon import OrientedClass, RibbonGraph, boundary_cycles

__all__ = [
    "SymplecticBasis",
    "Necklace",
    "NecklaceTensor",
    "pairing",
    "cyclic_reduce",
    "min_rotation",
    "goldman_bracket",
    "turaev_cobracket",
    "rho_eval",
    "all_necklaces",
]

Word = tuple[int, ...]
_SYMBOL = re.compile(r"^([ab])([1-9]\d*)$")


def pairing(x: int, y: int) -> int:
    """Symplectic pairing of two letters: ``<a_i, b_i> = 1 = -<b_i, a_i>``."""
    if x ^ 1 != y:
        return 0
    return 1 if x % 2 == 0 else -1


@dataclass(frozen=True)
class SymplecticBasis:
    genus: int

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be at least 1")

    @property
    def rank(self) -> int:
        return 2 * self.genus

    @property
    def letters(self) -> range:
        return range(2 * self.genus)

    def symbol(self, x: int) -> str:
        if not 0 <= x < 2 * self.genus:
            raise KeyError(f"letter {x} outside genus {self.genus}")
        return f"{'ab'[x % 2]}{x // 2 + 1}"

    def letter(self, symbol: str) -> int:
        m = _SYMBOL.match(symbol)
        if not m or int(m.group(2)) > self.genus:
            raise KeyError(f"unknown symbol {symbol!r} for genus {self.genus}")
        return 2 * (int(m.group(2)) - 1) + (m.group(1) == "b")

    def pairing(self, x: str, y: str) -> int:
        return pairing(self.letter(x), self.letter(y))

    def word(self, symbols: Iterable[str] | str) -> Word:
        if isinstance(symbols, str):
            symbols = re.findall(r"[ab]\d+", symbols)
        return tuple(self.letter(s) for s in symbols)


def min_rotation(word: Sequence[int]) -> Word:
    w = tuple(word)
    if not w:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


class Necklace(_Combination):
    """Rational combination of cyclic words, stored by minimal rotation."""

    __slots__ = ()

    def __init__(self, genus: int, terms: Mapping[Sequence[int], object] | None = None):
        merged: dict[Word, Fraction] = {}
        for w, c in (terms or {}).items():
            key = min_rotation(w)
            merged[key] = merged.get(key, 0) + Fraction(c)
        super().__init__(genus, merged)
        for w in self.terms:
            if any(not 0 <= x < 2 * genus for x in w):
                raise ValueError(f"word {w} uses letters outside genus {genus}")

    @classmethod
    def word(cls, genus: int, symbols, coeff=1) -> "Necklace":
        return cls(genus, {SymplecticBasis(genus).word(symbols): coeff})

    @classmethod
    def unit(cls, genus: int) -> "Necklace":
        return cls(genus, {(): 1})

    def lengths(self) -> set[int]:
        return {len(w) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.lengths()) <= 1

    def to_json(self) -> dict:
        B = SymplecticBasis(self.genus)
        return {
            "g": self.genus,
            "terms": [{"coeff": str(c), "word": [B.symbol(x) for x in w]} for w, c in self],
        }

    @classmethod
    def from_json(cls, obj) -> "Necklace":
        B = SymplecticBasis(int(obj["g"]))
        return cls(B.genus, {B.word(t["word"]): Fraction(t["coeff"]) for t in obj["terms"]})

    def __repr__(self) -> str:
        return f"Necklace({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        B = SymplecticBasis(self.genus)
        return " + ".join(f"{c}*|{''.join(B.symbol(x) for x in w)}|" for w, c in self)


class NecklaceTensor(_Combination):
    """Rational combination of tuples of cyclic words (a tensor of necklaces)."""

    __slots__ = ()

    def __init__(self, genus: int, terms: Mapping[Sequence[Sequence[int]], object] | None = None):
        merged: dict[tuple[Word, ...], Fraction] = {}
        for ws, c in (terms or {}).items():
            key = tuple(min_rotation(w) for w in ws)
            merged[key] = merged.get(key, 0) + Fraction(c)
        super().__init__(genus, merged)
        arities = {len(k) for k in self.terms}
        if len(arities) > 1:
            raise ValueError("tensor terms of mixed arity")

    @property
    def arity(self) -> int | None:
        return next((len(k) for k in self.terms), None)

    def swap(self, perm: Sequence[int]) -> "NecklaceTensor":
        """Permute tensor factors: factor ``i`` of the result is factor ``perm[i]``."""
        return NecklaceTensor(self.genus, {tuple(k[p] for p in perm): v for k, v in self.terms.items()})

    def apply(self, slot: int, op) -> "NecklaceTensor":
        """Apply a linear map ``Necklace -> Necklace | NecklaceTensor`` to one factor."""
        out: dict = {}
        for key, c in self.terms.items():
            image = op(Necklace(self.genus, {key[slot]: 1}))
            for parts, v in image.terms.items():
                parts = parts if isinstance(image, NecklaceTensor) else (parts,)
                k = key[:slot] + tuple(parts) + key[slot + 1:]
                out[k] = out.get(k, 0) + c * v
        return NecklaceTensor(self.genus, out)

    def to_json(self) -> dict:
        B = SymplecticBasis(self.genus)
        return {
            "g": self.genus,
            "terms": [
                {"coeff": str(c), "words": [[B.symbol(x) for x in w] for w in ws]} for ws, c in self
            ],
        }

    def __repr__(self) -> str:
        B = SymplecticBasis(self.genus)
        body = " + ".join(
            f"{c}*" + "⊗".join("|" + "".join(B.symbol(x) for x in w) + "|" for w in ws) for ws, c in self
        )
        return f"NecklaceTensor({body or '0'})"


def cyclic_reduce(word, genus: int | None = None) -> Necklace:
    """Necklace of a letter string (symbols or letter integers)."""
    if isinstance(word, str) or (word and isinstance(word[0], str)):
        if genus is None:
            nums = [int(n) for n in re.findall(r"\d+", word if isinstance(word, str) else " ".join(word))]
            genus = max(nums, default=1)
        return Necklace.word(genus, word)
    w = tuple(word)
    if genus is None:
        genus = max(w, default=0) // 2 + 1
    return Necklace(genus, {w: 1})


def _rest(w: Word, i: int) -> Word:
    """Letters after position ``i`` read cyclically back to just before it."""
    return w[i + 1:] + w[:i]


def _arc(w: Word, i: int, j: int) -> Word:
    """Letters strictly between positions ``i`` and ``j`` going forward."""
    if i < j:
        return w[i + 1:j]
    return w[i + 1:] + w[:j]


def goldman_bracket(u: Necklace, v: Necklace) -> Necklace:
    """Contract one letter of ``u`` with one letter of ``v`` and splice."""
    if u.genus != v.genus:
        raise ValueError("genus mismatch")
    out: dict[Word, Fraction] = {}
    for x, cu in u.terms.items():
        for y, cv in v.terms.items():
            for i, xi in enumerate(x):
                for j, yj in enumerate(y):
                    p = pairing(xi, yj)
                    if p:
                        key = min_rotation(_rest(x, i) + _rest(y, j))
                        out[key] = out.get(key, 0) + p * cu * cv
    return Necklace(u.genus, out)


def turaev_cobracket(u: Necklace) -> NecklaceTensor:
    """Contract two letters of one word and cut it into the two arcs between them."""
    out: dict = {}
    for x, c in u.terms.items():
        n = len(x)
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                p = pairing(x[i], x[j])
                if p:
                    key = (min_rotation(_arc(x, j, i)), min_rotation(_arc(x, i, j)))
                    out[key] = out.get(key, 0) + p * c
    return NecklaceTensor(u.genus, out)


def _vertex_states(word: Word, k: int) -> Iterator[tuple[tuple[int, ...], tuple[Word, ...]]]:
    """Cyclic-order-preserving placements of ``k`` letters on a ``k``-valent vertex.

    Yields the assigned letters (one per half-edge, in vertex order) and the
    corner words following each half-edge.
    """
    n = len(word)
    if k > n:
        return
    for first in range(n):
        for others in combinations(range(1, n), k - 1):
            pos = [first] + [(first + o) % n for o in others]
            letters = tuple(word[p] for p in pos)
            corners = tuple(_arc(word, pos[t], pos[(t + 1) % k]) if k > 1 else _rest(word, pos[0]) for t in range(k))
            yield letters, corners


def rho_eval(G, inputs: Sequence[Necklace]) -> NecklaceTensor:
    """State-sum operation of a ribbon graph on necklaces, one input per vertex.

    Vertices take inputs in the order of their smallest half-edge; outputs
    are the boundary cycles in the same order.  Each edge contributes the
    pairing of the letters on its (smaller, larger) half-edges.
    """
    if isinstance(G, OrientedClass):
        G = G.graph
    if not isinstance(G, RibbonGraph):
        raise TypeError("rho_eval needs a RibbonGraph or OrientedClass")
    verts = G.vertices()
    if len(inputs) != len(verts):
        raise ValueError(f"graph has {len(verts)} vertices but {len(inputs)} inputs were given")
    genera = {u.genus for u in inputs}
    if len(genera) != 1:
        raise ValueError("inputs must share one genus")
    genus = genera.pop()
    n = G.num_half_edges
    edges = G.edges()
    bounds = boundary_cycles(G)
    out: dict = {}
    per_vertex = [[(w, c) for w, c in u.terms.items()] for u in inputs]
    for choice in product(*per_vertex):
        coeff = Fraction(1)
        for _, c in choice:
            coeff *= c
        states = [list(_vertex_states(w, len(cyc))) for (w, _), cyc in zip(choice, verts)]
        for combo in product(*states):
            letter = [0] * n
            corner: list[Word] = [()] * n
            for (letters, corners), cyc in zip(combo, verts):
                for h, x, cw in zip(cyc, letters, corners):
                    letter[h] = x
                    corner[h] = cw
            weight = 1
            for t, h in edges:
                weight *= pairing(letter[t], letter[h])
                if not weight:
                    break
            if not weight:
                continue
            key = tuple(
                min_rotation(tuple(x for h in cyc for x in corner[G.iota[h]])) for cyc in bounds
            )
            out[key] = out.get(key, 0) + weight * coeff
    return NecklaceTensor(genus, out)


def all_necklaces(genus: int, length: int) -> list[Word]:
    """Minimal rotations of all cyclic words of a given length, sorted."""
    found = {min_rotation(w) for w in product(range(2 * genus), repeat=length)}
    return sorted(found)
