"""Single ribbon graphs: the permutation-pair encoding and orientation data.

A ribbon graph with ``E`` edges lives on the half-edges ``0..2E-1``.  The
vertex permutation ``sigma`` lists the half-edges around each vertex in
cyclic order; the edge involution ``iota`` pairs the two halves of each edge.
Boundary components are the cycles of ``beta = sigma o iota`` (apply ``iota``
first).

Orientations for the complex of parity ``d``: vertices and boundaries carry
degree ``d``, edges degree ``1 - d``, and reversing an edge costs
``(-1)**d``.  A labelled graph has an *induced* orientation: vertices,
edges and boundaries are ordered by their smallest half-edge and each edge
points from its smaller half-edge to its larger one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import kernels

__all__ = [
    "InvalidGraph",
    "RibbonGraph",
    "OrientedClass",
    "boundary_cycles",
    "genus",
    "degree",
    "automorphisms",
    "canonical_form",
    "relabel",
    "relabel_sign",
    "tadpole",
    "bar_graph",
    "bivalent_cycle",
]

MAX_EDGES = 127


class InvalidGraph(ValueError):
    """Raised for inputs that do not encode a connected ribbon graph.

    ``code`` is one of ``"syntax"``, ``"not-permutation"``,
    ``"iota-fixed-point"``, ``"iota-not-involution"``, ``"disconnected"``,
    ``"size"``.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def _check_permutation(p: Sequence[int], n: int, name: str) -> None:
    if len(p) != n or sorted(p) != list(range(n)):
        raise InvalidGraph("not-permutation", f"{name} is not a permutation of 0..{n - 1}")


def _cycles(perm: Sequence[int]) -> list[list[int]]:
    return kernels.vertex_cycles(perm)


@dataclass(frozen=True)
class RibbonGraph:
    """A connected ribbon graph as a permutation pair ``(sigma, iota)``."""

    sigma: tuple[int, ...]
    iota: tuple[int, ...]

    def __post_init__(self):
        sigma = tuple(int(x) for x in self.sigma)
        iota = tuple(int(x) for x in self.iota)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "iota", iota)
        n = len(sigma)
        if n == 0 or n % 2:
            raise InvalidGraph("size", "a ribbon graph needs a positive even number of half-edges")
        if n // 2 > MAX_EDGES:
            raise InvalidGraph("size", f"at most {MAX_EDGES} edges are supported")
        _check_permutation(sigma, n, "sigma")
        _check_permutation(iota, n, "iota")
        for h in range(n):
            if iota[h] == h:
                raise InvalidGraph("iota-fixed-point", f"iota fixes half-edge {h}")
            if iota[iota[h]] != h:
                raise InvalidGraph("iota-not-involution", "iota is not an involution")
        seen = {0}
        stack = [0]
        while stack:
            h = stack.pop()
            for k in (sigma[h], iota[h]):
                if k not in seen:
                    seen.add(k)
                    stack.append(k)
        if len(seen) != n:
            raise InvalidGraph("disconnected", "sigma and iota do not act transitively")

    @classmethod
    def from_code(cls, code: bytes) -> "RibbonGraph":
        """Graph with vertex permutation ``code`` and the standard involution."""
        n = len(code)
        return cls(tuple(code), tuple(h ^ 1 for h in range(n)))

    @property
    def num_half_edges(self) -> int:
        return len(self.sigma)

    @property
    def num_edges(self) -> int:
        return len(self.sigma) // 2

    def vertices(self) -> list[list[int]]:
        """Vertex cycles of ``sigma``, each starting at its smallest half-edge."""
        return _cycles(self.sigma)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices())

    def valences(self) -> list[int]:
        return [len(c) for c in self.vertices()]

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(tail, head)`` pairs in the induced orientation."""
        return [(h, k) for h, k in enumerate(self.iota) if h < k]

    @property
    def num_boundaries(self) -> int:
        return len(boundary_cycles(self))

    def __str__(self) -> str:
        from .formats import format_graph

        return format_graph(self)


@dataclass(frozen=True)
class OrientedClass:
    """Canonical representative of a graph in the complex of parity ``d``.

    ``sign_to_canonical`` is the sign ``s`` with ``G = s * canonical`` for the
    labelled graph ``G`` that was canonicalized (both with induced
    orientations).  A zero class has an orientation-reversing automorphism.
    """

    graph: RibbonGraph
    parity_d: int
    is_zero: bool
    sign_to_canonical: int

    @property
    def code(self) -> bytes:
        return bytes(self.graph.sigma)


def boundary_cycles(G: RibbonGraph) -> list[list[int]]:
    """Cycles of ``beta = sigma o iota``; their number is ``#B(G)``."""
    s, i = G.sigma, G.iota
    return _cycles([s[i[h]] for h in range(len(s))])


def genus(G: RibbonGraph) -> int:
    """Genus of the thickened surface from ``V - E + B = 2 - 2g``."""
    chi = G.num_vertices - G.num_edges + G.num_boundaries
    twice_g = 2 - chi
    if twice_g < 0 or twice_g % 2:
        raise ArithmeticError(f"Euler characteristic {chi} gives no integral genus")
    return twice_g // 2


def degree(G: RibbonGraph, d: int) -> int:
    """Degree ``d(#V + #B - 2) + (1 - d) #E`` in the complex of parity ``d``."""
    return d * (G.num_vertices + G.num_boundaries - 2) + (1 - d) * G.num_edges


def relabel(G: RibbonGraph, label: Sequence[int]) -> RibbonGraph:
    """Image of ``G`` under the half-edge bijection ``h -> label[h]``."""
    n = G.num_half_edges
    sigma = [0] * n
    iota = [0] * n
    for h in range(n):
        sigma[label[h]] = label[G.sigma[h]]
        iota[label[h]] = label[G.iota[h]]
    return RibbonGraph(tuple(sigma), tuple(iota))


def relabel_sign(G: RibbonGraph, label: Sequence[int], d: int) -> int:
    """Sign relating the induced orientations of ``G`` and ``relabel(G, label)``."""
    return kernels.relabel_sign(G.sigma, G.iota, list(label), d & 1)


def automorphisms(G: RibbonGraph) -> list[tuple[int, ...]]:
    """All half-edge permutations commuting with ``sigma`` and ``iota``.

    The identity comes first; the rest are sorted.
    """
    _, labels = kernels.canonical_labels(G.sigma, G.iota)
    n = G.num_half_edges
    base = labels[0]
    inv = [0] * n
    for h in range(n):
        inv[base[h]] = h
    # label_i maps G onto the canonical graph; inverse of base brings it back.
    auts = {tuple(inv[lab[h]] for h in range(n)) for lab in labels}
    ident = tuple(range(n))
    return [ident] + sorted(a for a in auts if a != ident)


def canonical_form(G: RibbonGraph, d: int) -> OrientedClass:
    """Canonical representative with its orientation sign and zero-class flag.

    The representative is the lexicographically smallest vertex permutation
    among relabellings produced by a breadth-first traversal from each
    half-edge (which always yields the standard edge involution).  For a
    connected map a relabelling is fixed by the image of one half-edge, so
    this is a complete invariant.
    """
    code, sign, zero = kernels.canonical(G.sigma, G.iota, d & 1)
    return OrientedClass(RibbonGraph.from_code(code), d & 1, zero, sign)


def tadpole() -> RibbonGraph:
    """``G_1``: one vertex, one loop."""
    return RibbonGraph((1, 0), (1, 0))


def bar_graph() -> RibbonGraph:
    """Two univalent vertices joined by an edge."""
    return RibbonGraph((0, 1), (1, 0))


def bivalent_cycle(k: int) -> RibbonGraph:
    """``G_k``: the bivalent cycle with ``k`` vertices and ``k`` edges."""
    if k < 1:
        raise ValueError("k must be positive")
    n = 2 * k
    sigma = [0] * n
    iota = [0] * n
    for i in range(k):
        sigma[2 * i] = 2 * i + 1
        sigma[2 * i + 1] = 2 * i
        a, b = 2 * i, 2 * ((i + 1) % k) + 1
        iota[a], iota[b] = b, a
    return RibbonGraph(tuple(sigma), tuple(iota))
