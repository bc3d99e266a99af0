"""Packaged verification suites.

Each check has a stable ID and returns a JSON-ready detail dict.  Reports
contain no timings unless asked, so two runs (any ``jobs`` setting) produce
identical bytes.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import complex as cx
from .derivations import (
    annihilator_dim,
    cocycle_check,
    es_trace,
    is_symplectic,
    johnson_generator,
    johnson_span,
    necklace_to_derivation,
    random_symplectic,
    symplectic_derivations,
)
from .necklace import (
    Necklace,
    NecklaceTensor,
    all_necklaces,
    goldman_bracket,
    rho_eval,
    turaev_cobracket,
)
from .ribbon import (
    RibbonGraph,
    automorphisms,
    bar_graph,
    bivalent_cycle,
    boundary_cycles,
    canonical_form,
    genus,
    relabel,
    relabel_sign,
    tadpole,
)

SEED = 20240917


@dataclass(frozen=True)
class Context:
    jobs: int = 1
    full: bool = False


@dataclass(frozen=True)
class Check:
    id: str
    suite: str
    title: str
    run: Callable[[Context], tuple[bool, dict]]


# -- ribbon ------------------------------------------------------------------


def _graph_invariants(ctx):
    seen = 0
    for E in range(1, 5):
        for V in range(1, E + 2):
            for code in cx.iso_classes(V, E, ctx.jobs):
                G = RibbonGraph.from_code(code)
                if sum(G.valences()) != 2 * E:
                    return False, {"graph": str(G), "failed": "valence sum"}
                if sorted(h for c in boundary_cycles(G) for h in c) != list(range(2 * E)):
                    return False, {"graph": str(G), "failed": "boundary partition"}
                g = genus(G)
                if V == 1 and E != 2 * g + G.num_boundaries - 1:
                    return False, {"graph": str(G), "failed": "one-vertex identity"}
                seen += 1
    return True, {"graphs": seen, "max_edges": 4}


def _canonical_invariance(ctx):
    rng = random.Random(SEED)
    graphs = [RibbonGraph.from_code(c) for E in (3, 4) for V in (1, 2, 3) for c in cx.iso_classes(V, E)]
    picked = rng.sample(graphs, 12)
    trials = 0
    for G in picked:
        n = G.num_half_edges
        for d in (0, 1):
            base = canonical_form(G, d)
            for _ in range(100):
                perm = list(range(n))
                rng.shuffle(perm)
                H = relabel(G, perm)
                c = canonical_form(H, d)
                if c.graph != base.graph or c.is_zero != base.is_zero:
                    return False, {"graph": str(G), "failed": "class changed"}
                if not base.is_zero:
                    if c.sign_to_canonical * relabel_sign(G, perm, d) != base.sign_to_canonical:
                        return False, {"graph": str(G), "failed": "sign"}
                trials += 1
    return True, {"graphs": len(picked), "relabelings": trials}


def _automorphism_groups(ctx):
    count = 0
    for E in range(1, 4):
        for V in range(1, E + 2):
            for code in cx.iso_classes(V, E):
                G = RibbonGraph.from_code(code)
                auts = set(automorphisms(G))
                for a in auts:
                    for b in auts:
                        if tuple(a[b[h]] for h in range(len(a))) not in auts:
                            return False, {"graph": str(G)}
                count += 1
    return True, {"graphs": count}


# -- complex -----------------------------------------------------------------


def _one_vertex_cocycles(ctx):
    dims = {}
    for r in cx.cohomology(1, 1, grading="vertex", edges=(1, 7), full=ctx.full, jobs=ctx.jobs):
        dims[str(r.edges)] = r.dim
    ok = dims == {"1": 1, **{str(E): 0 for E in range(2, 8)}}
    return ok, {"d": 1, "vertices": 1, "dims_by_E": dims}


def _delta_squared(ctx):
    pieces = 0
    bad = []
    for d in (0, 1):
        for E in range(1, 7):
            for V in range(1, E + 2):
                src = cx.enumerate_basis(cx.Selector(E, V), d, jobs=ctx.jobs)
                if not len(src):
                    continue
                n = cx.delta_squared(src, ctx.full, ctx.jobs)
                pieces += 1
                if n:
                    bad.append([d, V, E, n])
    return not bad, {"source_E_max": 6, "pieces": pieces, "nonzero": bad}


def _bivalent_cycles(ctx):
    rows = []
    ok = True
    for k in range(1, 10):
        G = bivalent_cycle(k)
        cls = canonical_form(G, 0)
        nonzero = not cls.is_zero
        closed = None
        if nonzero:
            closed = not cx.vertex_expansion(G, 0, ctx.full)
            ok &= closed
        ok &= nonzero == (k % 4 == 1)
        rows.append({"k": k, "nonzero": nonzero, "closed": closed})
    return ok, {"d": 0, "cycles": rows}


def _sector_11(ctx):
    out = {}
    for k in (2, 3):
        (r,) = cx.cohomology(0, k, grading="degree", sector=(1, 1), edges=(2, 4), full=ctx.full, jobs=ctx.jobs)
        out[str(k)] = r.to_json()
    ok = out["2"]["dim"] == 0 and out["3"]["dim"] == 1 and out["2"]["exact"] and out["3"]["exact"]
    return ok, {"reports": out}


def _degree_shift(ctx):
    rows = []
    ok = True
    for g, n in ((0, 1), (0, 2), (0, 3), (1, 1), (1, 2)):
        for E in range(1, 6):
            V = E - n + 2 - 2 * g
            if V < 1 or V > E + 1:
                continue
            dims = []
            for d in (0, 1):
                rs = cx.cohomology(d, V, grading="vertex", sector=(g, n), edges=(E, E), full=ctx.full, jobs=ctx.jobs)
                dims.append(rs[0].dim)
            ok &= dims[0] == dims[1]
            rows.append({"g": g, "n": n, "E": E, "dims": dims})
    return ok, {"pieces": rows}


# -- bialgebra ---------------------------------------------------------------


def _random_necklace(rng, genus, max_len=5):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        n = rng.randint(0, max_len)
        w = tuple(rng.randrange(2 * genus) for _ in range(n))
        terms[w] = terms.get(w, 0) + Fraction(rng.randint(-4, 4), rng.randint(1, 2))
    return Necklace(genus, terms)


def _derivation_on_tensor(u: Necklace, T: NecklaceTensor) -> NecklaceTensor:
    out = NecklaceTensor(T.genus)
    for slot in range(T.arity or 0):
        out = out + T.apply(slot, lambda x: goldman_bracket(u, x))
    return out


def _bialgebra_axioms(ctx):
    rng = random.Random(SEED)
    failures = {"antisymmetry": 0, "jacobi": 0, "co_antisymmetry": 0, "co_jacobi": 0, "drinfeld": 0, "grading": 0}
    samples = 0
    for trial in range(120):
        g = 1 + trial % 2
        u, v, w = (_random_necklace(rng, g) for _ in range(3))
        br = goldman_bracket
        if br(u, v) != -br(v, u):
            failures["antisymmetry"] += 1
        if not (br(u, br(v, w)) + br(v, br(w, u)) + br(w, br(u, v))).is_zero():
            failures["jacobi"] += 1
        du = turaev_cobracket(u)
        if du.swap([1, 0]) != -du:
            failures["co_antisymmetry"] += 1
        ddu = du.apply(0, turaev_cobracket)
        if not (ddu + ddu.swap([1, 2, 0]) + ddu.swap([2, 0, 1])).is_zero():
            failures["co_jacobi"] += 1
        lhs = turaev_cobracket(br(u, v))
        rhs = _derivation_on_tensor(u, turaev_cobracket(v)) - _derivation_on_tensor(v, du)
        if lhs != rhs:
            failures["drinfeld"] += 1
        for x in (u, v):
            for y in (u, v):
                for wx, _ in x:
                    for wy, _ in y:
                        b = br(Necklace(g, {wx: 1}), Necklace(g, {wy: 1}))
                        if any(len(k) != len(wx) + len(wy) - 2 for k, _ in b):
                            failures["grading"] += 1
            for wx, _ in x:
                if any(len(a) + len(b) != len(wx) - 2 for (a, b), _ in turaev_cobracket(Necklace(g, {wx: 1}))):
                    failures["grading"] += 1
        samples += 1
    return not any(failures.values()), {"samples": samples, "max_length": 5, "failures": failures}


def _generator_consistency(ctx):
    checked = 0
    mismatches = 0
    for g in (1, 2):
        words = [w for n in range(5) for w in all_necklaces(g, n)]
        for x in words:
            u = Necklace(g, {x: 1})
            if rho_eval(tadpole(), [u]) != turaev_cobracket(u):
                mismatches += 1
            checked += 1
            for y in words:
                v = Necklace(g, {y: 1})
                lhs = rho_eval(bar_graph(), [u, v])
                rhs = NecklaceTensor(g, {(k,): c for k, c in goldman_bracket(u, v).terms.items()})
                if lhs != rhs:
                    mismatches += 1
                checked += 1
    example = turaev_cobracket(Necklace.word(1, "a1a1b1"))
    return mismatches == 0, {"evaluations": checked, "mismatches": mismatches, "cobracket_a1a1b1": example.to_json()}


# -- derivations -------------------------------------------------------------


def _reduction_identity(ctx):
    constants = set()
    tested = 0
    for g in (1, 2):
        for n in (3, 4, 5):
            for w in all_necklaces(g, n):
                u = Necklace(g, {w: 1})
                lhs = es_trace(necklace_to_derivation(u))
                cob = turaev_cobracket(u)
                rhs = Necklace(g, {k[0]: c for k, c in cob.terms.items() if k[1] == ()})
                tested += 1
                if lhs.is_zero() and rhs.is_zero():
                    continue
                if rhs.is_zero():
                    constants.add("none")
                    continue
                (w0, c0) = next(iter(rhs))
                ratio = lhs.terms.get(w0, Fraction(0)) / c0
                constants.add(str(ratio) if lhs == ratio * rhs else "none")
    ok = len(constants) == 1 and "none" not in constants and constants != {"0"}
    return ok, {"necklaces": tested, "constant": sorted(constants)[0] if ok else sorted(constants)}


def _cocycle(ctx):
    rng = random.Random(SEED)
    lie_pool = {(2, k): symplectic_derivations(2, k) for k in (1, 2)}
    passed = 0
    total = 0
    for trial in range(120):
        g = 1 + trial % 2
        pair = []
        for _ in range(2):
            k = rng.randint(1, 3)
            if g == 2 and k <= 2 and rng.random() < 0.4:
                basis = lie_pool[(2, k)]
                D = sum((rng.randint(-2, 2) * b for b in rng.sample(basis, 3)), 0 * basis[0])
            else:
                D = random_symplectic(g, k, rng)
            pair.append(D)
        if not all(is_symplectic(D) for D in pair):
            return False, {"failed": "sample is not symplectic"}
        total += 1
        passed += cocycle_check(*pair)

    def corrupted(D):
        t = es_trace(D)
        if len(t) > 1:
            (w, _), *_ = t
            t = Necklace(t.genus, {k: v for k, v in t.terms.items() if k != w})
        return t

    caught = False
    for _ in range(40):
        pair = [random_symplectic(2, rng.randint(1, 3), rng) for _ in range(2)]
        if not cocycle_check(*pair, trace=corrupted):
            caught = True
            break
    return passed == total and caught, {"pairs": total, "passed": passed, "mutant_detected": caught}


def _johnson_kernel(ctx):
    span = johnson_span(3, 3)
    gens_ok = all(is_symplectic(D) for D in span[1]["basis"])
    degrees = {}
    for k in (2, 3):
        degrees[str(k)] = {
            "brackets": span[k]["brackets"],
            "dim": len(span[k]["basis"]),
            "traces_zero": span[k]["traces_zero"],
        }
    witness = None
    for k in (2, 3, 4):
        rep = annihilator_dim(k, 3, johnson=False)
        if rep.witness is not None:
            witness = {
                "degree": k,
                "der_omega_dim": rep.der_dim,
                "trace_rank": rep.trace_rank,
                "symplectic": is_symplectic(rep.witness),
                "trace_terms": len(es_trace(rep.witness)),
            }
            break
    ok = gens_ok and all(v["traces_zero"] for v in degrees.values()) and witness is not None and witness["symplectic"]
    ex = johnson_generator("a1", "a2", "b2", 2)
    return ok, {
        "g": 3,
        "generators": len(span[1]["basis"]),
        "johnson": degrees,
        "witness": witness,
        "trace_a1_a2_b2": es_trace(ex).to_json(),
    }


CHECKS = [
    Check("R1", "ribbon", "graph invariants on all classes with E <= 4", _graph_invariants),
    Check("R2", "ribbon", "canonical form constant under random relabeling", _canonical_invariance),
    Check("R3", "ribbon", "automorphisms form a group", _automorphism_groups),
    Check("AC1", "complex", "one-vertex cocycles: dim 1 at E=1, 0 for E=2..7", _one_vertex_cocycles),
    Check("AC2", "complex", "differential squares to zero", _delta_squared),
    Check("AC3", "complex", "bivalent cycles nonzero iff k = 1 mod 4, and closed", _bivalent_cycles),
    Check("AC4", "complex", "(g,n)=(1,1): H^3 = 1, H^2 = 0", _sector_11),
    Check("C1", "complex", "equal sector dimensions for d=0 and d=1", _degree_shift),
    Check("AC5", "bialgebra", "Lie bialgebra axioms on random necklaces", _bialgebra_axioms),
    Check("AC6", "bialgebra", "state sums on the two generators", _generator_consistency),
    Check("AC7", "derivations", "trace of necklace derivations vs reduced cobracket", _reduction_identity),
    Check("AC8", "derivations", "trace is a 1-cocycle", _cocycle),
    Check("AC9", "derivations", "trace kills Johnson brackets; nonzero witness", _johnson_kernel),
]

SUITES = {
    "ribbon": ["ribbon"],
    "complex": ["complex"],
    "bialgebra": ["bialgebra"],
    "necklaces": ["bialgebra"],
    "derivations": ["derivations"],
    "all": ["ribbon", "complex", "bialgebra", "derivations"],
}


def checks_for(suite: str) -> list[Check]:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    wanted = SUITES[suite]
    return [c for c in CHECKS if c.suite in wanted]


def run_suite(suite: str, jobs: int = 1, full: bool = False, timings: bool = False, only=None) -> dict:
    ctx = Context(jobs=jobs, full=full)
    results = []
    for chk in checks_for(suite):
        if only and chk.id not in only:
            continue
        t0 = time.perf_counter()
        try:
            ok, detail = chk.run(ctx)
        except Exception as exc:  # a crashing check is a failed check
            ok, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
        entry = {"id": chk.id, "title": chk.title, "status": "pass" if ok else "fail", "detail": detail}
        if timings:
            entry["seconds"] = round(time.perf_counter() - t0, 3)
        results.append(entry)
    return {
        "suite": suite,
        "with_empty_arcs": full,
        "ok": all(r["status"] == "pass" for r in results),
        "checks": results,
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
