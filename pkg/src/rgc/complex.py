"""Graded bases, the vertex-expansion differential and cohomology.

Bases are lists of canonical codes (see :mod:`rgc.kernels`) sorted as bytes.
Iso-class enumeration does not depend on the parity ``d``; the parity only
decides which classes vanish.

Every connected graph with ``V >= 2`` vertices contracts along a non-loop edge
to a connected graph with ``(V - 1, E - 1)``, so the classes for ``(V, E)`` are
exactly the canonical forms of all splittings (empty arcs included) of the
classes for ``(V - 1, E - 1)``, seeded by one-vertex chord diagrams and the
single-edge tree.
"""

from __future__ import annotations

import logging
import multiprocessing
from dataclasses import dataclass, field
from functools import lru_cache

from . import cache, kernels
from .linalg import SparseMatrix, rank
from .ribbon import OrientedClass, RibbonGraph, canonical_form

log = logging.getLogger(__name__)

__all__ = [
    "Selector",
    "SectorBasis",
    "CohomologyReport",
    "TruncationError",
    "iso_classes",
    "enumerate_basis",
    "vertex_expansion",
    "differential_matrix",
    "image_matrix",
    "delta_squared",
    "cohomology",
]


class TruncationError(ValueError):
    """A requested cohomology group needs graphs outside the given edge range."""


@dataclass(frozen=True)
class Selector:
    """Either fixed ``(V, E)`` or fixed ``(g, n, E)`` (which forces ``V``)."""

    edges: int
    vertices: int | None = None
    genus: int | None = None
    boundaries: int | None = None

    def __post_init__(self):
        if self.edges <= 0:
            raise ValueError("E must be positive")
        sector = (self.genus is not None, self.boundaries is not None)
        if sector == (True, True):
            if self.genus < 0 or self.boundaries < 1:
                raise ValueError("need g >= 0 and n >= 1")
            forced = self.edges - self.boundaries + 2 - 2 * self.genus
            if self.vertices is not None and self.vertices != forced:
                raise ValueError(f"(g, n, E) forces V = {forced}, not {self.vertices}")
            object.__setattr__(self, "vertices", forced)
        elif sector != (False, False):
            raise ValueError("genus and boundaries must be given together")
        if self.vertices is None:
            raise ValueError("a selector needs V or (g, n)")
        if self.vertices <= 0:
            raise ValueError(f"V = {self.vertices} is not positive")
        if self.vertices > self.edges + 1:
            raise ValueError("a connected graph has V <= E + 1")

    @property
    def is_sector(self) -> bool:
        return self.genus is not None

    def next(self) -> "Selector":
        """Selector of the target of the differential."""
        return Selector(self.edges + 1, self.vertices + 1, self.genus, self.boundaries)

    def key(self) -> dict:
        k = {"V": self.vertices, "E": self.edges}
        if self.is_sector:
            k.update(g=self.genus, n=self.boundaries)
        return k

    def __str__(self) -> str:
        if self.is_sector:
            return f"g={self.genus},n={self.boundaries},E={self.edges}"
        return f"V={self.vertices},E={self.edges}"


@dataclass(frozen=True)
class SectorBasis:
    """Ordered nonzero oriented classes of one graded piece."""

    parity_d: int
    selector: Selector
    codes: tuple[bytes, ...]
    include_zero: bool = False
    _index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {c: i for i, c in enumerate(self.codes)})

    def __len__(self) -> int:
        return len(self.codes)

    def index(self, code: bytes) -> int:
        return self._index[code]

    def __contains__(self, code) -> bool:
        return code in self._index

    @property
    def graphs(self) -> list[RibbonGraph]:
        return [RibbonGraph.from_code(c) for c in self.codes]

    def classes(self) -> list[OrientedClass]:
        return [canonical_form(G, self.parity_d) for G in self.graphs]

    @property
    def ident(self) -> str:
        return f"d={self.parity_d};{self.selector}"


def _pool_map(func, items, jobs):
    if jobs <= 1 or len(items) < 2:
        return [func(x) for x in items]
    ctx = multiprocessing.get_context("fork")
    chunk = max(1, len(items) // (jobs * 8))
    with ctx.Pool(jobs) as pool:
        return pool.map(func, items, chunksize=chunk)


def _std_iota(n):
    return [h ^ 1 for h in range(n)]


def _matchings(points):
    if not points:
        yield []
        return
    a = points[0]
    for i in range(1, len(points)):
        rest = points[1:i] + points[i + 1:]
        for m in _matchings(rest):
            yield [(a, points[i])] + m


def _one_vertex_chunk(first_partner_and_E):
    b, E = first_partner_and_E
    n = 2 * E
    sigma = [(h + 1) % n for h in range(n)]
    rest = [h for h in range(1, n) if h != b]
    out = set()
    iota = [0] * n
    iota[0], iota[b] = b, 0
    for m in _matchings(rest):
        for x, y in m:
            iota[x], iota[y] = y, x
        out.add(kernels.code_only(sigma, iota))
    return out


def _split_children(code):
    n = len(code)
    out = set()
    for s2, i2, _ in kernels.splittings(list(code), _std_iota(n), True):
        out.add(kernels.code_only(s2, i2))
    return out


@lru_cache(maxsize=None)
def _iso_classes_cached(V: int, E: int, jobs: int) -> tuple[bytes, ...]:
    key = {"kind": "iso_classes", "V": V, "E": E}
    hit = cache.load(key)
    if hit is not None:
        return tuple(bytes.fromhex(h) for h in hit)
    if V == 1:
        found = set().union(*_pool_map(_one_vertex_chunk, [(b, E) for b in range(1, 2 * E)], jobs))
    elif (V, E) == (2, 1):
        found = {kernels.code_only([0, 1], [1, 0])}
    else:
        parents = list(_iso_classes_cached(V - 1, E - 1, jobs))
        found = set().union(set(), *_pool_map(_split_children, parents, jobs))
    result = tuple(sorted(found))
    cache.store(key, [c.hex() for c in result])
    log.debug("iso classes V=%d E=%d: %d", V, E, len(result))
    return result


def iso_classes(V: int, E: int, jobs: int = 1) -> tuple[bytes, ...]:
    """Canonical codes of all connected ribbon graphs with ``V`` vertices and ``E`` edges."""
    if V <= 0 or E <= 0:
        raise ValueError("V and E must be positive")
    if V > E + 1:
        return ()
    return _iso_classes_cached(V, E, 1 if jobs <= 1 else jobs)


def _num_boundaries(code: bytes) -> int:
    n = len(code)
    beta = [code[h ^ 1] for h in range(n)]
    return len(kernels.vertex_cycles(beta))


def enumerate_basis(selector: Selector, d: int, include_zero: bool = False, jobs: int = 1) -> SectorBasis:
    """Every isomorphism class matching ``selector``, once, in byte order.

    Zero classes of parity ``d`` are dropped unless ``include_zero``.
    """
    d &= 1
    codes = iso_classes(selector.vertices, selector.edges, jobs)
    if selector.is_sector:
        codes = [c for c in codes if _num_boundaries(c) == selector.boundaries]
    if not include_zero:
        n = 2 * selector.edges
        iota = _std_iota(n)
        codes = [c for c in codes if not kernels.canonical(list(c), iota, d)[2]]
    return SectorBasis(d, selector, tuple(codes), include_zero)


def _as_graph(G) -> RibbonGraph:
    return G.graph if isinstance(G, OrientedClass) else G


def vertex_expansion(G, d: int, full: bool = False) -> dict[RibbonGraph, int]:
    """Differential of one labelled graph (or oriented class) as canonical graphs.

    Each vertex is split into two vertices joined by a new edge, its cyclic
    sequence of half-edges cut into two contiguous arcs.  By default both arcs
    are non-empty; ``full=True`` also admits an empty arc (a new univalent
    vertex at each corner).
    """
    G = _as_graph(G)
    terms = kernels.expand(G.sigma, G.iota, d & 1, full)
    return {RibbonGraph.from_code(c): v for c, v in sorted(terms.items())}


def _expand_code(args):
    code, d, full = args
    return kernels.expand(list(code), _std_iota(len(code)), d, full)


def _image_columns(src: SectorBasis, full: bool, jobs: int):
    key = {"kind": "image", "d": src.parity_d, **src.selector.key(), "full": full}
    hit = cache.load(key)
    if hit is not None:
        return [{bytes.fromhex(k): v for k, v in col} for col in hit]
    cols = _pool_map(_expand_code, [(c, src.parity_d, full) for c in src.codes], jobs)
    cache.store(key, [sorted((k.hex(), v) for k, v in col.items()) for col in cols])
    return cols


def differential_matrix(src: SectorBasis, dst: SectorBasis, full: bool = False, jobs: int = 1) -> SparseMatrix:
    """Matrix of the differential from ``src`` to ``dst`` (shape ``(|dst|, |src|)``)."""
    if dst.parity_d != src.parity_d:
        raise ValueError("bases belong to different parities")
    if dst.selector != src.selector.next():
        raise ValueError(f"target selector {dst.selector} is not {src.selector.next()}")
    if dst.include_zero or src.include_zero:
        raise ValueError("differential bases must exclude zero classes")
    columns = []
    for col in _image_columns(src, full, jobs):
        entries = {}
        for code, v in col.items():
            if code not in dst:
                raise RuntimeError(f"term {code.hex()} missing from target basis {dst.ident}")
            entries[dst.index(code)] = v
        columns.append(entries)
    return SparseMatrix(len(dst), len(src), columns, dst.ident, src.ident)


def image_matrix(src: SectorBasis, full: bool = False, jobs: int = 1) -> SparseMatrix:
    """Differential of ``src`` with rows indexed by the target codes that occur."""
    cols = _image_columns(src, full, jobs)
    labels = sorted(set().union(*cols)) if cols else []
    index = {c: i for i, c in enumerate(labels)}
    columns = [{index[c]: v for c, v in col.items()} for col in cols]
    return SparseMatrix(len(labels), len(src), columns, "image", src.ident, row_labels=labels)


def delta_squared(src: SectorBasis, full: bool = False, jobs: int = 1) -> int:
    """Number of source classes whose image under the differential applied twice is nonzero.

    Intermediate graphs are expanded by canonical code, so the second target
    piece never has to be enumerated.
    """
    first = _image_columns(src, full, jobs)
    middle = sorted(set().union(set(), *first))
    second = dict(zip(middle, _pool_map(_expand_code, [(c, src.parity_d, full) for c in middle], jobs)))
    bad = 0
    for col in first:
        acc: dict[bytes, int] = {}
        for code, v in col.items():
            for k, w in second[code].items():
                acc[k] = acc.get(k, 0) + v * w
        if any(acc.values()):
            bad += 1
    return bad


@dataclass(frozen=True)
class CohomologyReport:
    parity_d: int
    sector: tuple[int, int] | None
    grading: str
    degree: int
    dim: int
    edges: int
    vertices: int
    e_range: tuple[int, int]
    exact: bool

    def to_json(self) -> dict:
        return {
            "d": self.parity_d,
            "sector": {"g": self.sector[0], "n": self.sector[1]} if self.sector else "all",
            "grading": self.grading,
            "degree": self.degree,
            "edges": self.edges,
            "dim": self.dim,
            "E_range": list(self.e_range),
            "exact": self.exact,
        }


def _piece(V, E, d, sector, jobs):
    if E <= 0 or V <= 0 or V > E + 1:
        return None
    if sector is None:
        sel = Selector(E, V)
    else:
        sel = Selector(E, V, sector[0], sector[1])
    return enumerate_basis(sel, d, jobs=jobs)


def _dim(V, E, d, sector, full, jobs, have_in=True, have_out=True):
    here = _piece(V, E, d, sector, jobs)
    if here is None or not len(here):
        return 0
    r_out = rank(image_matrix(here, full, jobs)) if have_out else 0
    r_in = 0
    if have_in:
        below = _piece(V - 1, E - 1, d, sector, jobs)
        if below is not None and len(below):
            r_in = rank(image_matrix(below, full, jobs))
    return len(here) - r_out - r_in


def cohomology(
    d: int,
    degree: int,
    *,
    grading: str = "vertex",
    sector: tuple[int, int] | None = None,
    edges: tuple[int, int],
    allow_truncation: bool = False,
    full: bool = False,
    jobs: int = 1,
) -> list[CohomologyReport]:
    """Cohomology dimensions in the vertex grading or the ``|G|_d`` grading.

    Vertex grading: ``degree`` is ``#V`` and one report is produced per edge
    count in ``edges`` (restricted to a sector if given).  Each piece is
    finite, so these reports are always exact; for ``#V = 1`` there is no
    incoming differential and the result is a kernel dimension.

    Degree grading (needs a sector): the edge count is forced by the degree,
    and the neighbouring edge counts must lie in ``edges`` for the report to
    be exact.  Inexact requests raise :class:`TruncationError` unless
    ``allow_truncation`` is set, in which case missing neighbours count as
    zero.
    """
    d &= 1
    lo, hi = edges
    if lo > hi or lo < 1:
        raise ValueError(f"bad edge range {lo}..{hi}")
    reports = []
    if grading == "vertex":
        V = degree
        if V < 1:
            raise ValueError("vertex degree must be positive")
        for E in range(lo, hi + 1):
            if sector is not None and E - sector[1] + 2 - 2 * sector[0] != V:
                continue
            dim = _dim(V, E, d, sector, full, jobs)
            reports.append(CohomologyReport(d, sector, "vertex", V, dim, E, V, (lo, hi), True))
        return reports
    if grading != "degree":
        raise ValueError(f"unknown grading {grading!r}")
    if sector is None:
        raise ValueError("the degree grading needs a (g, n) sector")
    g, n = sector
    E = degree if d == 0 else degree + 2 * g
    V = E - n + 2 - 2 * g
    # a neighbour with no graphs at all (V < 1) needs no enumeration
    have_in = lo <= E - 1 or V - 1 < 1
    have_out = E + 1 <= hi
    exact = lo <= E <= hi and have_in and have_out
    if not exact and not allow_truncation:
        raise TruncationError(
            f"degree {degree} in sector (g={g}, n={n}) needs E = {E - 1}..{E + 1}, "
            f"outside {lo}..{hi}; pass allow_truncation to accept a truncated value"
        )
    dim = 0
    if lo <= E <= hi and V >= 1:
        dim = _dim(V, E, d, sector, full, jobs, have_in and V > 1, have_out)
    reports.append(CohomologyReport(d, sector, "degree", degree, dim, E, V, (lo, hi), exact))
    return reports
