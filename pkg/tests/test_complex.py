from fractions import Fraction

import pytest

from oracles import brute_classes, rooted_maps
from rgc import complex as cx
from rgc.ribbon import RibbonGraph, automorphisms, bivalent_cycle, canonical_form, genus, tadpole

CROSSED = RibbonGraph((1, 2, 3, 0), (2, 3, 0, 1))
LOLLIPOP = RibbonGraph((0, 2, 3, 1), (1, 0, 3, 2))


def test_selector_validation():
    assert cx.Selector(3, genus=1, boundaries=1).vertices == 2
    with pytest.raises(ValueError):
        cx.Selector(0, 1)
    with pytest.raises(ValueError):
        cx.Selector(3, 0)
    with pytest.raises(ValueError):
        cx.Selector(1, genus=1, boundaries=1)
    with pytest.raises(ValueError):
        cx.Selector(3, genus=1)
    with pytest.raises(ValueError):
        cx.Selector(3, 1, genus=1, boundaries=1)
    with pytest.raises(ValueError):
        cx.Selector(2, 4)


def test_single_tadpole_basis():
    b = cx.enumerate_basis(cx.Selector(1, 1), 1)
    assert b.graphs == [canonical_form(tadpole(), 1).graph]


def test_two_one_vertex_classes_before_filtering():
    assert len(cx.enumerate_basis(cx.Selector(2, 1), 1, include_zero=True)) == 2


def test_zero_edges_rejected():
    with pytest.raises(ValueError):
        cx.enumerate_basis(cx.Selector(0, 1), 1)


@pytest.mark.parametrize("E", [1, 2, 3])
def test_classes_match_exhaustive_relabeling(E):
    ours = sorted(c for V in range(1, E + 2) for c in cx.iso_classes(V, E))
    assert len(ours) == len(brute_classes(E))


@pytest.mark.parametrize("E", range(1, 7))
def test_orbit_sum_counts_rooted_maps(E):
    total = Fraction(0)
    for V in range(1, E + 2):
        for code in cx.iso_classes(V, E):
            total += Fraction(2 * E, len(automorphisms(RibbonGraph.from_code(code))))
    assert total == rooted_maps(E)


def test_basis_is_sorted_nonzero_and_distinct():
    for d in (0, 1):
        b = cx.enumerate_basis(cx.Selector(4, 2), d)
        assert list(b.codes) == sorted(set(b.codes))
        assert not any(c.is_zero for c in b.classes())


def test_sector_filter():
    b = cx.enumerate_basis(cx.Selector(4, genus=1, boundaries=1), 0)
    assert all(genus(G) == 1 and G.num_boundaries == 1 for G in b.graphs)
    assert b.selector.vertices == 3


@pytest.mark.parametrize("d", [0, 1])
def test_tadpole_is_closed(d):
    assert cx.vertex_expansion(tadpole(), d) == {}
    assert cx.vertex_expansion(canonical_form(tadpole(), d), d) == {}


@pytest.mark.parametrize("d", [0, 1])
def test_crossed_one_vertex_graph_is_zero(d):
    assert canonical_form(CROSSED, d).is_zero
    assert cx.vertex_expansion(CROSSED, d) == {}


@pytest.mark.parametrize("d", [0, 1])
def test_lollipop_is_not_closed(d):
    assert len(cx.vertex_expansion(LOLLIPOP, d)) == 1


@pytest.mark.parametrize("d", [0, 1])
@pytest.mark.parametrize("full", [False, True])
def test_expansion_preserves_genus_and_boundaries(d, full):
    for E in range(1, 4):
        for V in range(1, E + 2):
            for G in cx.enumerate_basis(cx.Selector(E, V), d).graphs:
                for H in cx.vertex_expansion(G, d, full):
                    assert (H.num_vertices, H.num_edges) == (V + 1, E + 1)
                    assert (genus(H), H.num_boundaries) == (genus(G), G.num_boundaries)


def test_empty_arc_variant_does_not_close_tadpole():
    assert cx.vertex_expansion(tadpole(), 1, full=True) != {}


def test_tadpole_column_is_zero():
    src = cx.enumerate_basis(cx.Selector(1, 1), 1)
    dst = cx.enumerate_basis(cx.Selector(2, 2), 1)
    M = cx.differential_matrix(src, dst)
    assert M.shape == (len(dst), 1)
    assert M.is_zero()


@pytest.mark.parametrize("d", [0, 1])
@pytest.mark.parametrize("full", [False, True])
def test_matrices_compose_to_zero(d, full):
    for E in range(1, 4):
        for V in range(1, E + 1):
            a = cx.enumerate_basis(cx.Selector(E, V), d)
            b = cx.enumerate_basis(cx.Selector(E + 1, V + 1), d)
            c = cx.enumerate_basis(cx.Selector(E + 2, V + 2), d)
            first = cx.differential_matrix(a, b, full)
            second = cx.differential_matrix(b, c, full)
            assert first.shape == (len(b), len(a))
            assert second.matmul(first).is_zero()


@pytest.mark.parametrize("d", [0, 1])
def test_code_keyed_square_matches(d):
    for E in range(1, 6):
        for V in range(1, E + 2):
            src = cx.enumerate_basis(cx.Selector(E, V), d)
            if len(src):
                assert cx.delta_squared(src) == 0


def test_mismatched_selectors_rejected():
    a = cx.enumerate_basis(cx.Selector(2, 1), 0)
    with pytest.raises(ValueError):
        cx.differential_matrix(a, cx.enumerate_basis(cx.Selector(3, 3), 0))
    with pytest.raises(ValueError):
        cx.differential_matrix(a, cx.enumerate_basis(cx.Selector(3, 2), 1))


@pytest.mark.parametrize("k", range(1, 10))
def test_bivalent_cycles(k):
    G = bivalent_cycle(k)
    for d in (0, 1):
        cls = canonical_form(G, d)
        assert cls.is_zero == (k % 4 != 1)
        if not cls.is_zero:
            assert cx.vertex_expansion(G, d) == {}


def test_one_vertex_kernel_small():
    dims = [r.dim for r in cx.cohomology(1, 1, edges=(1, 5))]
    assert dims == [1, 0, 0, 0, 0]


def test_sector_11_moduli_check():
    (h2,) = cx.cohomology(0, 2, grading="degree", sector=(1, 1), edges=(2, 4))
    (h3,) = cx.cohomology(0, 3, grading="degree", sector=(1, 1), edges=(2, 4))
    assert (h2.dim, h3.dim) == (0, 1)
    assert h3.to_json() == {
        "d": 0, "sector": {"g": 1, "n": 1}, "grading": "degree", "degree": 3,
        "edges": 3, "dim": 1, "E_range": [2, 4], "exact": True,
    }


def test_truncation_requires_acknowledgement():
    with pytest.raises(cx.TruncationError):
        cx.cohomology(0, 4, grading="degree", sector=(1, 1), edges=(2, 4))
    (r,) = cx.cohomology(0, 4, grading="degree", sector=(1, 1), edges=(2, 4), allow_truncation=True)
    assert r.exact is False


def test_degree_grading_needs_sector():
    with pytest.raises(ValueError):
        cx.cohomology(0, 3, grading="degree", edges=(1, 4))


def test_parities_agree_on_sectors():
    for g, n in ((0, 1), (0, 2), (1, 1), (1, 2)):
        for E in range(1, 6):
            V = E - n + 2 - 2 * g
            if 1 <= V <= E + 1:
                dims = [cx.cohomology(d, V, sector=(g, n), edges=(E, E))[0].dim for d in (0, 1)]
                assert dims[0] == dims[1]


def test_parallel_enumeration_matches_serial():
    cx._iso_classes_cached.cache_clear()
    serial = cx.iso_classes(3, 5)
    cx._iso_classes_cached.cache_clear()
    assert cx.iso_classes(3, 5, jobs=2) == serial


def test_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("RGC_CACHE_DIR", str(tmp_path))
    cx._iso_classes_cached.cache_clear()
    cold = [r.to_json() for r in cx.cohomology(1, 1, edges=(1, 5))]
    assert any(tmp_path.iterdir())
    cx._iso_classes_cached.cache_clear()
    warm = [r.to_json() for r in cx.cohomology(1, 1, edges=(1, 5))]
    assert cold == warm
    cx._iso_classes_cached.cache_clear()
