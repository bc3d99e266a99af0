"""Finite rational linear combinations keyed by hashable basis labels."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping


def _coerce(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


def _clean(terms: Mapping) -> dict:
    return {k: v for k, v in terms.items() if v}


class Combination:
    """Shared arithmetic for finite rational combinations keyed by words."""

    __slots__ = ("genus", "terms")

    def __init__(self, genus: int, terms: Mapping | None = None):
        self.genus = genus
        self.terms = _clean({k: _coerce(v) for k, v in (terms or {}).items()})

    def _same(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        if other.genus != self.genus:
            raise ValueError(f"genus mismatch: {self.genus} vs {other.genus}")
        return other

    def _new(self, terms):
        return type(self)(self.genus, terms)

    def __add__(self, other):
        if self._same(other) is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return self._new(out)

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, Combination):
            return NotImplemented
        c = _coerce(c)
        return self._new({k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return self.genus == other.genus and self.terms == other.terms

    def __hash__(self):
        return hash((self.genus, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms
