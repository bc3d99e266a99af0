"""Exact sparse linear algebra over the rationals.

Ranks are computed in three stages:

1. structural peeling: a row (or column) with a single live nonzero fixes a
   pivot over any field, so it is removed together with its column (row);
2. small cores (fewer than ``EXACT_NNZ`` nonzeros) go through fraction-free
   integer elimination;
3. larger cores are reduced modulo primes above ``2**31``.  A full-rank result
   modulo one prime is already exact; otherwise three primes must agree, and a
   disagreement falls back to exact elimination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

PRIMES = (2147483659, 2147483693, 2147483713)
EXACT_NNZ = 5000


@dataclass
class SparseMatrix:
    """Column-major sparse matrix with exact rational entries.

    ``columns[j]`` maps row index to a nonzero ``int`` or ``Fraction``.
    ``row_basis`` and ``col_basis`` are opaque identifiers of the bases.
    """

    nrows: int
    ncols: int
    columns: list[dict[int, int | Fraction]]
    row_basis: str = ""
    col_basis: str = ""
    row_labels: list | None = field(default=None, repr=False)

    def __post_init__(self):
        if len(self.columns) != self.ncols:
            raise ValueError("column count does not match ncols")
        for col in self.columns:
            for r, v in list(col.items()):
                if not 0 <= r < self.nrows:
                    raise IndexError(f"row index {r} outside 0..{self.nrows - 1}")
                if v == 0:
                    del col[r]

    @classmethod
    def from_triples(cls, nrows: int, ncols: int, triples: Iterable[tuple[int, int, object]], **kw):
        cols: list[dict] = [dict() for _ in range(ncols)]
        for r, c, v in triples:
            v = Fraction(v)
            if v.denominator == 1:
                v = v.numerator
            cols[c][r] = cols[c].get(r, 0) + v
        return cls(nrows, ncols, cols, **kw)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]]):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return cls.from_triples(
            nrows, ncols, ((i, j, v) for i, row in enumerate(rows) for j, v in enumerate(row) if v)
        )

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def triples(self) -> list[tuple[int, int, int | Fraction]]:
        return sorted((r, c, v) for c, col in enumerate(self.columns) for r, v in col.items())

    def to_dense(self) -> list[list[int | Fraction]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for c, col in enumerate(self.columns):
            for r, v in col.items():
                out[r][c] = v
        return out

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        """``self @ other``; the column space of ``other`` feeds ``self``."""
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = []
        for col in other.columns:
            acc: dict[int, int | Fraction] = {}
            for k, v in col.items():
                for r, w in self.columns[k].items():
                    acc[r] = acc.get(r, 0) + v * w
            cols.append({r: v for r, v in acc.items() if v})
        return SparseMatrix(self.nrows, other.ncols, cols, self.row_basis, other.col_basis)

    def is_zero(self) -> bool:
        return all(not c for c in self.columns)

    def to_json(self) -> dict:
        return {
            "rows": self.nrows,
            "cols": self.ncols,
            "row_basis": self.row_basis,
            "col_basis": self.col_basis,
            "entries": [[r, c, str(v)] for r, c, v in self.triples()],
        }


def _integer_columns(columns) -> list[dict[int, int]]:
    """Scale each column to coprime integers (rank is unchanged)."""
    out = []
    for col in columns:
        if not col:
            out.append({})
            continue
        den = 1
        for v in col.values():
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
        icol = {r: int(v * den) for r, v in col.items()}
        g = 0
        for v in icol.values():
            g = gcd(g, v)
        out.append({r: v // g for r, v in icol.items()})
    return out


def peel(columns: Sequence[dict[int, int]]) -> tuple[int, list[dict[int, int]]]:
    """Remove structural pivots.  Returns ``(pivots_found, core_columns)``."""
    ncols = len(columns)
    rows: dict[int, set[int]] = {}
    count = [0] * ncols
    for c, col in enumerate(columns):
        count[c] = len(col)
        for r in col:
            rows.setdefault(r, set()).add(c)
    col_alive = [count[c] > 0 for c in range(ncols)]
    row_alive = {r: True for r in rows}
    row_stack = sorted((r for r, cs in rows.items() if len(cs) == 1), reverse=True)
    col_stack = sorted((c for c in range(ncols) if count[c] == 1), reverse=True)
    rank = 0

    def kill_row(r):
        row_alive[r] = False
        for c2 in rows[r]:
            if col_alive[c2]:
                count[c2] -= 1
                if count[c2] == 0:
                    col_alive[c2] = False
                elif count[c2] == 1:
                    col_stack.append(c2)

    def kill_col(c):
        col_alive[c] = False
        for r2 in columns[c]:
            if row_alive[r2]:
                rows[r2].discard(c)
                if len(rows[r2]) == 1:
                    row_stack.append(r2)

    while row_stack or col_stack:
        if row_stack:
            r = row_stack.pop()
            if not row_alive[r] or len(rows[r]) != 1:
                continue
            (c,) = rows[r]
            if not col_alive[c]:
                continue
            rank += 1
            rows[r].discard(c)
            kill_col(c)
            kill_row(r)
        else:
            c = col_stack.pop()
            if not col_alive[c] or count[c] != 1:
                continue
            (r,) = [r for r in columns[c] if row_alive[r]]
            rank += 1
            rows[r].discard(c)
            col_alive[c] = False
            kill_row(r)
    core = []
    for c in range(ncols):
        if col_alive[c]:
            core.append({r: v for r, v in columns[c].items() if row_alive[r]})
    return rank, core


def _order(columns):
    return sorted(range(len(columns)), key=lambda c: (len(columns[c]), c))


def rank_exact_int(columns: Sequence[dict[int, int]]) -> int:
    """Fraction-free elimination on integer columns."""
    pivots: dict[int, dict[int, int]] = {}
    for j in _order(columns):
        v = dict(columns[j])
        while v:
            r = min(v)
            w = pivots.get(r)
            if w is None:
                pivots[r] = v
                break
            a, b = w[r], v[r]
            g = gcd(a, b)
            a, b = a // g, b // g
            nv = {k: a * x for k, x in v.items()}
            for k, x in w.items():
                y = nv.get(k, 0) - b * x
                if y:
                    nv[k] = y
                else:
                    nv.pop(k, None)
            g = 0
            for x in nv.values():
                g = gcd(g, x)
                if g == 1:
                    break
            v = {k: x // g for k, x in nv.items()} if g > 1 else nv
    return len(pivots)


def rank_modp(columns: Sequence[dict[int, int]], p: int) -> int:
    """Rank modulo the prime ``p``."""
    from . import kernels

    impl = getattr(kernels.compiled_backend, "rank_modp", None)
    reduced = [{r: v % p for r, v in c.items() if v % p} for c in columns]
    if impl is not None:
        return impl(reduced, p)
    return _rank_modp_python(reduced, p)


def _rank_modp_python(columns: Sequence[dict[int, int]], p: int) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for j in _order(columns):
        v = dict(columns[j])
        while v:
            r = min(v)
            w = pivots.get(r)
            if w is None:
                inv = pow(v[r], -1, p)
                pivots[r] = {k: x * inv % p for k, x in v.items()}
                break
            f = v[r]
            for k, x in w.items():
                y = (v.get(k, 0) - f * x) % p
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
    return len(pivots)


def rank(M: SparseMatrix | Sequence[dict], method: str = "auto") -> int:
    """Exact rank over the rationals.

    ``method`` is ``"auto"``, ``"exact"`` or ``"modular"``.
    """
    columns = M.columns if isinstance(M, SparseMatrix) else M
    icols = _integer_columns(columns)
    found, core = peel(icols)
    if not core:
        return found
    nnz = sum(len(c) for c in core)
    if method == "exact" or (method == "auto" and nnz < EXACT_NNZ):
        return found + rank_exact_int(core)
    first = rank_modp(core, PRIMES[0])
    if first == len(core):
        return found + first
    others = [rank_modp(core, p) for p in PRIMES[1:]]
    if all(r == first for r in others):
        return found + first
    return found + rank_exact_int(core)


def dense_rank_oracle(rows: Sequence[Sequence[object]]) -> int:
    """Plain Gaussian elimination over ``Fraction``; used as a test oracle."""
    A = [[Fraction(x) for x in row] for row in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        r += 1
        if r == m:
            break
    return r


def kernel_basis(columns: Sequence[dict[int, object]], ncols: int | None = None) -> list[dict[int, Fraction]]:
    """Exact basis of ``{x : sum_j x_j * column_j = 0}`` as sparse vectors.

    Vectors are returned in reduced form: each has a distinguished free
    column with coefficient 1.
    """
    n = len(columns) if ncols is None else ncols
    pivots: dict[int, tuple[dict[int, Fraction], dict[int, Fraction]]] = {}
    kernel = []
    for j in range(n):
        v = {r: Fraction(x) for r, x in columns[j].items() if x}
        combo = {j: Fraction(1)}
        while v:
            r = min(v)
            hit = pivots.get(r)
            if hit is None:
                pivots[r] = (v, combo)
                break
            w, wc = hit
            f = v[r] / w[r]
            for k, x in w.items():
                y = v.get(k, 0) - f * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
            for k, x in wc.items():
                y = combo.get(k, 0) - f * x
                if y:
                    combo[k] = y
                else:
                    combo.pop(k, None)
        else:
            kernel.append(combo)
    return kernel
