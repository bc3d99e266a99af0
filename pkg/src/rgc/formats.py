"""Text and JSON encodings of ribbon graphs.

Text form, one graph per line::

    rg E=2; sigma=(0 1 2 3); iota=(0 2)(1 3)

JSON form: ``{"E": 2, "sigma": [[0, 1, 2, 3]], "iota": [[0, 2], [1, 3]]}``.
``sigma`` may also be given as a flat list of images.
"""

from __future__ import annotations

import json
import re

from .ribbon import InvalidGraph, RibbonGraph

_LINE = re.compile(
    r"^\s*rg\s+E\s*=\s*(\d+)\s*;\s*sigma\s*=\s*((?:\(\s*[\d\s]*\)\s*)+);"
    r"\s*iota\s*=\s*((?:\(\s*[\d\s]*\)\s*)+)\s*;?\s*$"
)
_CYCLE = re.compile(r"\(([^()]*)\)")


def _parse_cycles(text: str) -> list[list[int]]:
    return [[int(x) for x in body.split()] for body in _CYCLE.findall(text)]


def _perm_from_cycles(cycles, n: int, name: str) -> list[int]:
    perm = [-1] * n
    for cyc in cycles:
        if not cyc:
            raise InvalidGraph("syntax", f"empty cycle in {name}")
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            if not (0 <= a < n) or perm[a] != -1:
                raise InvalidGraph("not-permutation", f"{name}: half-edge {a} out of range or repeated")
            perm[a] = b
    if -1 in perm:
        raise InvalidGraph("not-permutation", f"{name} does not cover all {n} half-edges")
    return perm


def _iota_from_pairs(pairs, n: int) -> list[int]:
    for p in pairs:
        if len(p) == 1:
            raise InvalidGraph("iota-fixed-point", f"iota fixes half-edge {p[0]}")
        if len(p) != 2:
            raise InvalidGraph("iota-not-involution", f"iota cycle {tuple(p)} is not a transposition")
    return _perm_from_cycles(pairs, n, "iota")


def _build(E: int, sigma_cycles, iota_pairs) -> RibbonGraph:
    if E <= 0:
        raise InvalidGraph("size", "E must be positive")
    n = 2 * E
    sigma = _perm_from_cycles(sigma_cycles, n, "sigma")
    iota = _iota_from_pairs(iota_pairs, n)
    return RibbonGraph(tuple(sigma), tuple(iota))


def parse_graph(text: str) -> RibbonGraph:
    """Parse the ``rg`` text form or the JSON form."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise InvalidGraph("syntax", f"bad JSON: {exc}") from None
        return graph_from_json(obj)
    m = _LINE.match(stripped)
    if not m:
        raise InvalidGraph("syntax", f"cannot parse graph: {text!r}")
    return _build(int(m.group(1)), _parse_cycles(m.group(2)), _parse_cycles(m.group(3)))


def graph_from_json(obj) -> RibbonGraph:
    try:
        E = int(obj["E"])
        sigma = obj["sigma"]
        iota = obj["iota"]
    except (KeyError, TypeError, ValueError):
        raise InvalidGraph("syntax", "graph JSON needs integer E, sigma and iota") from None
    if sigma and all(isinstance(x, int) for x in sigma):
        if sorted(sigma) != list(range(2 * E)):
            raise InvalidGraph("not-permutation", "sigma is not a permutation")
        seen, sigma_cycles = set(), []
        for h in range(len(sigma)):
            if h in seen:
                continue
            cyc, j = [], h
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = sigma[j]
            sigma_cycles.append(cyc)
    else:
        sigma_cycles = [list(map(int, c)) for c in sigma]
    return _build(E, sigma_cycles, [list(map(int, p)) for p in iota])


def _cycles_str(cycles) -> str:
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def format_graph(G: RibbonGraph) -> str:
    pairs = [[h, k] for h, k in G.edges()]
    return f"rg E={G.num_edges}; sigma={_cycles_str(G.vertices())}; iota={_cycles_str(pairs)}"


def graph_to_json(G: RibbonGraph) -> dict:
    return {
        "E": G.num_edges,
        "sigma": G.vertices(),
        "iota": [[h, k] for h, k in G.edges()],
    }
