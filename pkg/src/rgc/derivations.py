"""Derivations of the tensor algebra and of the free Lie algebra.

A derivation of degree ``k`` is stored by the images of the ``2g`` letters,
each a homogeneous tensor of length ``k + 1``.  The ``lie`` flavour promises
that every image is a Lie element; the ``tensor`` flavour makes no promise.

The trace contracts the dual functional ``h*`` (``h*(h) = 1``, zero on other
letters) with the first letter of each word of ``D(h)`` and closes the rest up
into a necklace.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .lie import LieElement, Tensor, expansion, lyndon_words, omega
from .linalg import kernel_basis, rank
from .necklace import Necklace, SymplecticBasis, min_rotation, pairing

__all__ = [
    "Derivation",
    "AnnihilatorReport",
    "apply",
    "is_symplectic",
    "johnson_generator",
    "es_trace",
    "necklace_action",
    "necklace_to_derivation",
    "cocycle_check",
    "symplectic_derivations",
    "johnson_span",
    "annihilator_dim",
    "random_symplectic",
]

Word = tuple[int, ...]
FLAVORS = ("lie", "tensor")


def _apply_tensor(images: Sequence[Tensor], t: Tensor) -> Tensor:
    out: dict[Word, Fraction] = {}
    for w, c in t.terms.items():
        for i, x in enumerate(w):
            head, tail = w[:i], w[i + 1:]
            for y, a in images[x].terms.items():
                key = head + y + tail
                out[key] = out.get(key, 0) + a * c
    return Tensor(t.genus, out)


@dataclass(frozen=True, eq=False)
class Derivation:
    genus: int
    degree: int
    images: tuple[Tensor, ...]
    flavor: str = "tensor"
    _checked: bool = field(default=False, repr=False)

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"flavor must be one of {FLAVORS}")
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        if len(self.images) != 2 * self.genus:
            raise ValueError(f"need {2 * self.genus} images, got {len(self.images)}")
        for img in self.images:
            if img.genus != self.genus:
                raise ValueError("image genus mismatch")
            if img.degrees() - {self.degree + 1}:
                raise ValueError(f"images of a degree-{self.degree} derivation have length {self.degree + 1}")
            if self.flavor == "lie" and not self._checked:
                LieElement.from_tensor(img)

    @classmethod
    def from_images(cls, genus: int, images: Mapping, degree: int | None = None, flavor: str | None = None):
        """Build from ``{letter or symbol: Tensor | LieElement}``; missing letters map to 0."""
        B = SymplecticBasis(genus)
        tens = [Tensor(genus) for _ in range(2 * genus)]
        lie_input = True
        for key, img in images.items():
            x = B.letter(key) if isinstance(key, str) else key
            if isinstance(img, LieElement):
                img = img.to_tensor()
            else:
                lie_input = False
            tens[x] = img
        if degree is None:
            lengths = set().union(*(t.degrees() for t in tens))
            if len(lengths) != 1:
                raise ValueError("cannot infer the degree of a zero or inhomogeneous derivation")
            degree = lengths.pop() - 1
        if flavor is None:
            flavor = "lie" if lie_input else "tensor"
        return cls(genus, degree, tuple(tens), flavor)

    @classmethod
    def zero(cls, genus: int, degree: int, flavor: str = "lie") -> "Derivation":
        return cls(genus, degree, tuple(Tensor(genus) for _ in range(2 * genus)), flavor)

    def image(self, x) -> Tensor:
        if isinstance(x, str):
            x = SymplecticBasis(self.genus).letter(x)
        return self.images[x]

    def lie_images(self) -> list[LieElement]:
        return [LieElement.from_tensor(t) for t in self.images]

    def as_tensor(self) -> "Derivation":
        return Derivation(self.genus, self.degree, self.images, "tensor")

    def is_zero(self) -> bool:
        return all(t.is_zero() for t in self.images)

    def _combine(self, other, sign):
        if (other.genus, other.degree) != (self.genus, self.degree):
            raise ValueError("derivations of different genus or degree")
        flavor = "lie" if self.flavor == other.flavor == "lie" else "tensor"
        imgs = tuple(a + sign * b for a, b in zip(self.images, other.images))
        return Derivation(self.genus, self.degree, imgs, flavor, True)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, c):
        return Derivation(self.genus, self.degree, tuple(c * t for t in self.images), self.flavor, True)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return (self.genus, self.degree, self.images) == (other.genus, other.degree, other.images)

    def __hash__(self):
        return hash((self.genus, self.degree, self.images))

    def bracket(self, other: "Derivation") -> "Derivation":
        """Commutator ``self o other - other o self``."""
        if other.genus != self.genus:
            raise ValueError("genus mismatch")
        imgs = tuple(
            _apply_tensor(self.images, b) - _apply_tensor(other.images, a)
            for a, b in zip(self.images, other.images)
        )
        flavor = "lie" if self.flavor == other.flavor == "lie" else "tensor"
        return Derivation(self.genus, self.degree + other.degree, imgs, flavor, True)

    def vector(self) -> dict[tuple[int, Word], Fraction]:
        """Coordinates indexed by ``(letter, word)``."""
        return {(x, w): c for x, t in enumerate(self.images) for w, c in t.terms.items()}

    def to_json(self) -> dict:
        B = SymplecticBasis(self.genus)
        images = {}
        for x, t in enumerate(self.images):
            if self.flavor == "lie":
                images[B.symbol(x)] = LieElement.from_tensor(t).to_json()
            else:
                images[B.symbol(x)] = [{"coeff": str(c), "word": [B.symbol(y) for y in w]} for w, c in t]
        return {"g": self.genus, "degree": self.degree, "flavor": self.flavor, "images": images}

    @classmethod
    def from_json(cls, obj) -> "Derivation":
        try:
            genus = int(obj["g"])
            degree = int(obj["degree"])
            flavor = obj.get("flavor", "tensor")
            raw = obj["images"]
        except (KeyError, TypeError, ValueError):
            raise ValueError("derivation JSON needs g, degree and images") from None
        B = SymplecticBasis(genus)
        images = {}
        for sym, terms in raw.items():
            x = B.letter(sym)
            if flavor == "lie":
                images[x] = LieElement.from_json(genus, terms).to_tensor()
            else:
                images[x] = Tensor(genus, {B.word(t["word"]): Fraction(t["coeff"]) for t in terms})
        tens = tuple(images.get(x, Tensor(genus)) for x in range(2 * genus))
        return cls(genus, degree, tens, flavor)


def necklace_action(D: Derivation, u: Necklace) -> Necklace:
    """Letterwise Leibniz action of a derivation on cyclic words."""
    out: dict[Word, Fraction] = {}
    for w, c in u.terms.items():
        for i, x in enumerate(w):
            for y, a in D.images[x].terms.items():
                key = min_rotation(w[:i] + y + w[i + 1:])
                out[key] = out.get(key, 0) + a * c
    return Necklace(u.genus, out)


def apply(D: Derivation, x):
    """Apply ``D`` to a tensor, Lie element or necklace by the Leibniz rule."""
    if isinstance(x, LieElement):
        if D.flavor != "lie":
            raise ValueError("a tensor derivation need not preserve Lie elements")
        return LieElement.from_tensor(_apply_tensor(D.images, x.to_tensor()))
    if isinstance(x, Necklace):
        return necklace_action(D, x)
    if isinstance(x, Tensor):
        return _apply_tensor(D.images, x)
    raise TypeError(f"cannot apply a derivation to {type(x).__name__}")


def is_symplectic(D: Derivation) -> bool:
    """Whether ``D`` kills ``omega = sum_i [a_i, b_i]``."""
    return _apply_tensor(D.images, omega(D.genus)).is_zero()


def _letter(genus: int, x) -> int:
    return SymplecticBasis(genus).letter(x) if isinstance(x, str) else int(x)


def johnson_generator(x, y, z, genus: int) -> Derivation:
    """Degree-1 derivation of ``x ^ y ^ z``: ``h -> <x,h>[y,z] + <y,h>[z,x] + <z,h>[x,y]``."""
    x, y, z = (_letter(genus, s) for s in (x, y, z))
    imgs = []
    for h in range(2 * genus):
        t: dict[Word, int] = {}
        for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
            c = pairing(p, h)
            if c:
                t[(q, r)] = t.get((q, r), 0) + c
                t[(r, q)] = t.get((r, q), 0) - c
        imgs.append(Tensor(genus, t))
    return Derivation(genus, 1, tuple(imgs), "lie", True)


def es_trace(D: Derivation) -> Necklace:
    """Contract ``h*`` with the first letter of ``D(h)`` and close up cyclically."""
    if D.degree < 1:
        raise ValueError("the trace is defined in positive degree only")
    out: dict[Word, Fraction] = {}
    for h, t in enumerate(D.images):
        for w, c in t.terms.items():
            if w[0] == h:
                key = min_rotation(w[1:])
                out[key] = out.get(key, 0) + c
    return Necklace(D.genus, out)


# with this sign D_u intertwines the necklace bracket with the commutator
NECKLACE_SIGN = 1


def necklace_to_derivation(u: Necklace) -> Derivation:
    """Hamiltonian derivation of a homogeneous necklace of length at least 3.

    ``h -> sum_i <x_i, h> x_{i+1} ... x_{i-1}`` over the letters of each word.
    """
    lengths = u.lengths()
    if len(lengths) != 1:
        raise ValueError("necklace must be homogeneous and nonzero")
    (n,) = lengths
    if n < 3:
        raise ValueError("necklaces of length < 3 give no positive-degree derivation")
    imgs: list[dict[Word, Fraction]] = [{} for _ in range(2 * u.genus)]
    for w, c in u.terms.items():
        for i, x in enumerate(w):
            h = x ^ 1
            p = pairing(x, h)
            rest = w[i + 1:] + w[:i]
            imgs[h][rest] = imgs[h].get(rest, 0) + NECKLACE_SIGN * p * c
    return Derivation(u.genus, n - 2, tuple(Tensor(u.genus, t) for t in imgs), "tensor", True)


def cocycle_check(A: Derivation, B: Derivation, trace: Callable[[Derivation], Necklace] = es_trace) -> bool:
    """``Tr([A, B]) == A . Tr(B) - B . Tr(A)``."""
    lhs = trace(A.bracket(B))
    rhs = necklace_action(A, trace(B)) - necklace_action(B, trace(A))
    return lhs == rhs


def random_symplectic(genus: int, degree: int, rng: random.Random, terms: int = 3) -> Derivation:
    """Random element of the image of necklaces of length ``degree + 2``."""
    n = degree + 2
    words = {}
    for _ in range(terms):
        w = tuple(rng.randrange(2 * genus) for _ in range(n))
        words[w] = words.get(w, 0) + rng.randint(-3, 3)
    u = Necklace(genus, words)
    if u.is_zero():
        return Derivation.zero(genus, degree, "tensor")
    return necklace_to_derivation(u)


# -- symplectic derivations of the free Lie algebra, by torus weight ---------


def _weight(x: int, genus: int) -> tuple[int, ...]:
    v = [0] * genus
    v[x // 2] = 1 if x % 2 == 0 else -1
    return tuple(v)


def _word_weight(w: Word, genus: int) -> tuple[int, ...]:
    v = [0] * genus
    for x in w:
        v[x // 2] += 1 if x % 2 == 0 else -1
    return tuple(v)


@dataclass(frozen=True)
class _Block:
    weight: tuple[int, ...]
    unknowns: list[tuple[int, Word]]
    omega_cols: list[dict]
    trace_cols: list[dict]


def _blocks(genus: int, degree: int) -> list[_Block]:
    """Unknowns ``D(h) = P(w)`` grouped by derivation weight ``wt(w) - wt(h)``."""
    groups: dict[tuple[int, ...], list[tuple[int, Word]]] = {}
    words = lyndon_words(2 * genus, degree + 1)
    for h in range(2 * genus):
        hw = _weight(h, genus)
        for w in words:
            ww = _word_weight(w, genus)
            key = tuple(a - b for a, b in zip(ww, hw))
            groups.setdefault(key, []).append((h, w))
    blocks = []
    for key in sorted(groups):
        om_cols, tr_cols = [], []
        for h, w in groups[key]:
            # D(omega) for D(h) = P(w): [P(w), b_i] if h = a_i, [a_i, P(w)] if h = b_i
            partner = h ^ 1
            col: dict[Word, int] = {}
            tr: dict[Word, int] = {}
            for x, a in expansion(w):
                if h % 2 == 0:
                    pairs = ((x + (partner,), a), ((partner,) + x, -a))
                else:
                    pairs = (((partner,) + x, a), (x + (partner,), -a))
                for k, v in pairs:
                    col[k] = col.get(k, 0) + v
                if x[0] == h:
                    r = min_rotation(x[1:])
                    tr[r] = tr.get(r, 0) + a
            om_cols.append({k: v for k, v in col.items() if v})
            tr_cols.append({k: v for k, v in tr.items() if v})
        blocks.append(_Block(key, groups[key], om_cols, tr_cols))
    return blocks


def _index_columns(cols: list[dict], index: dict) -> list[dict[int, int]]:
    out = []
    for col in cols:
        out.append({index.setdefault(k, len(index)): v for k, v in col.items()})
    return out


def _lie_derivation(genus: int, degree: int, unknowns, coeffs: Mapping[int, Fraction]) -> Derivation:
    imgs = [dict() for _ in range(2 * genus)]
    for j, c in coeffs.items():
        h, w = unknowns[j]
        for x, a in expansion(w):
            imgs[h][x] = imgs[h].get(x, 0) + a * c
    return Derivation(genus, degree, tuple(Tensor(genus, t) for t in imgs), "lie", True)


def symplectic_derivations(genus: int, degree: int) -> list[Derivation]:
    """Basis of the degree-``degree`` symplectic derivations of the free Lie algebra."""
    out = []
    for blk in _blocks(genus, degree):
        index: dict = {}
        cols = _index_columns(blk.omega_cols, index)
        for vec in kernel_basis(cols, len(cols)):
            out.append(_lie_derivation(genus, degree, blk.unknowns, vec))
    return out


def _independent(vectors: Sequence[dict]) -> list[int]:
    """Indices of a maximal independent subset, greedily in order."""
    pivots: dict = {}
    keep = []
    for idx, vec in enumerate(vectors):
        v = {k: Fraction(c) for k, c in vec.items() if c}
        while v:
            r = min(v)
            hit = pivots.get(r)
            if hit is None:
                pivots[r] = v
                keep.append(idx)
                break
            f = v[r] / hit[r]
            for k, c in hit.items():
                y = v.get(k, 0) - f * c
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
    return keep


def johnson_span(genus: int, max_degree: int) -> dict[int, dict]:
    """Iterated brackets of degree-1 generators, degree by degree.

    For each degree ``k`` returns ``{"basis": [...], "brackets": n, "traces_zero": bool}``
    where ``brackets`` counts the brackets formed and ``traces_zero`` says all
    of them have zero trace.
    """
    gens = [johnson_generator(x, y, z, genus) for x, y, z in itertools.combinations(range(2 * genus), 3)]
    level1 = [gens[i] for i in _independent([g.vector() for g in gens])]
    result = {1: {"basis": level1, "brackets": len(gens), "traces_zero": all(es_trace(g).is_zero() for g in gens)}}
    prev = level1
    for k in range(2, max_degree + 1):
        cands = [a.bracket(b) for a in level1 for b in prev]
        zero = all(es_trace(c).is_zero() for c in cands)
        basis = [cands[i] for i in _independent([c.vector() for c in cands])]
        result[k] = {"basis": basis, "brackets": len(cands), "traces_zero": zero}
        prev = basis
    return result


@dataclass(frozen=True)
class AnnihilatorReport:
    genus: int
    degree: int
    der_dim: int
    trace_rank: int
    kernel_dim: int
    johnson_dim: int | None
    johnson_in_kernel: bool | None
    witness: Derivation | None

    def to_json(self) -> dict:
        return {
            "g": self.genus,
            "degree": self.degree,
            "der_omega_dim": self.der_dim,
            "trace_rank": self.trace_rank,
            "kernel_dim": self.kernel_dim,
            "johnson_dim": self.johnson_dim,
            "johnson_in_kernel": self.johnson_in_kernel,
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def annihilator_dim(degree: int, genus: int, johnson: bool = True, witness: bool = True) -> AnnihilatorReport:
    """Kernel of the trace on degree-``degree`` symplectic Lie derivations.

    ``rank(Tr on ker Omega) = rank [Omega; Tr] - rank Omega`` blockwise.  With
    ``witness`` a symplectic derivation of nonzero trace is returned when one
    exists.  With ``johnson`` the bracket-generated piece is computed and its
    inclusion in the kernel is checked.
    """
    if degree < 1 or genus < 1:
        raise ValueError("need degree >= 1 and genus >= 1")
    der_dim = 0
    trace_rank = 0
    found = None
    for blk in _blocks(genus, degree):
        index: dict = {}
        om = _index_columns(blk.omega_cols, index)
        r_om = rank(om)
        stacked = [dict(o) for o in om]
        tindex: dict = {}
        for col, tr in zip(stacked, blk.trace_cols):
            for k, v in tr.items():
                col[len(index) + tindex.setdefault(k, len(tindex))] = v
        r_all = rank(stacked) if tindex else r_om
        der_dim += len(om) - r_om
        trace_rank += r_all - r_om
        if witness and found is None and r_all > r_om:
            for vec in kernel_basis(om, len(om)):
                D = _lie_derivation(genus, degree, blk.unknowns, vec)
                if not es_trace(D).is_zero():
                    found = D
                    break
    jdim = jin = None
    if johnson:
        span = johnson_span(genus, degree)[degree]
        jdim = len(span["basis"])
        jin = span["traces_zero"] and all(is_symplectic(D) for D in span["basis"])
    return AnnihilatorReport(genus, degree, der_dim, trace_rank, der_dim - trace_rank, jdim, jin, found)
