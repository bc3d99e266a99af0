import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import witt
from rgc.derivations import (
    Derivation,
    annihilator_dim,
    apply,
    cocycle_check,
    es_trace,
    is_symplectic,
    johnson_generator,
    johnson_span,
    necklace_action,
    necklace_to_derivation,
    random_symplectic,
    symplectic_derivations,
)
from rgc.lie import LieElement, Tensor
from rgc.necklace import Necklace, goldman_bracket, turaev_cobracket

T = Tensor
N = Necklace.word


def test_johnson_images():
    J = johnson_generator("a1", "a2", "b2", 2)
    assert J.image("a1").is_zero()
    assert J.image("b1") == T(2, {(2, 3): 1, (3, 2): -1})
    assert J.image("b2") == T(2, {(3, 0): 1, (0, 3): -1})
    assert J.image("a2") == T(2, {(2, 0): 1, (0, 2): -1})
    assert is_symplectic(J)


def test_johnson_alternates():
    assert johnson_generator("a2", "a1", "b2", 2) == -johnson_generator("a1", "a2", "b2", 2)
    assert johnson_generator("a1", "a1", "b2", 2).is_zero()


def test_genus_one_johnson_vanishes():
    assert johnson_generator("a1", "b1", "a1", 1).is_zero()


def test_symplectic_examples():
    assert not is_symplectic(Derivation.from_images(1, {"a1": T(1, {(0, 1): 1, (1, 0): -1})}))
    assert is_symplectic(Derivation.zero(1, 2))


def test_trace_examples():
    D = Derivation.from_images(1, {"a1": T(1, {(0, 1, 0): 1})})
    assert es_trace(D) == N(1, "a1b1")
    assert es_trace(Derivation.from_images(1, {"a1": T(1, {(1, 0, 1): 1})})).is_zero()
    assert es_trace(johnson_generator("a1", "a2", "b2", 2)) == 2 * N(2, "a1")


def test_trace_needs_positive_degree():
    with pytest.raises(ValueError):
        es_trace(Derivation.from_images(1, {"a1": T(1, {(1,): 1})}))


def test_flavor_checked():
    with pytest.raises(ValueError):
        Derivation.from_images(1, {"a1": T(1, {(0, 1): 1})}, flavor="lie")
    with pytest.raises(ValueError):
        Derivation.from_images(1, {"a1": T(1, {(0, 1): 1}), "b1": T(1, {(0, 1, 1): 1})})


def test_necklace_derivation_example():
    D = necklace_to_derivation(N(1, "a1a1b1"))
    assert D.degree == 1
    assert D.image("b1") == T(1, {(0, 1): 1, (1, 0): 1})
    assert D.image("a1") == T(1, {(0, 0): -1})
    assert all(t.degrees() <= {2} for t in D.images)
    assert is_symplectic(D)


def test_necklace_derivation_rejects_short_or_mixed():
    with pytest.raises(ValueError):
        necklace_to_derivation(N(1, "a1b1"))
    with pytest.raises(ValueError):
        necklace_to_derivation(N(1, "a1b1a1") + N(1, "a1b1a1b1"))


def test_necklace_derivation_acts_as_bracket():
    u, v = N(2, "a1b2a2"), N(2, "b1a1b2a2b1")
    assert necklace_action(necklace_to_derivation(u), v) == goldman_bracket(u, v)


words3 = st.lists(st.integers(0, 3), min_size=3, max_size=5).map(tuple)


@settings(max_examples=40, deadline=None)
@given(words3, words3)
def test_necklace_map_is_lie_homomorphism(x, y):
    u, v = Necklace(2, {x: 1}), Necklace(2, {y: 1})
    b = goldman_bracket(u, v)
    Du, Dv = necklace_to_derivation(u), necklace_to_derivation(v)
    if b.is_zero():
        assert Du.bracket(Dv).is_zero()
    else:
        assert necklace_to_derivation(b) == Du.bracket(Dv)


@settings(max_examples=40, deadline=None)
@given(words3)
def test_trace_is_reduced_cobracket(x):
    u = Necklace(2, {x: 1})
    cob = turaev_cobracket(u)
    reduced = Necklace(2, {k[0]: c for k, c in cob.terms.items() if k[1] == ()})
    assert es_trace(necklace_to_derivation(u)) == reduced


def test_cocycle_on_random_pairs():
    rng = random.Random(5)
    for _ in range(30):
        first = random_symplectic(2, rng.randint(1, 3), rng)
        second = random_symplectic(2, rng.randint(1, 3), rng)
        assert cocycle_check(first, second)


def test_cocycle_detects_wrong_trace():
    rng = random.Random(6)

    def doubled_first(D):
        t = es_trace(D)
        return t + Necklace(t.genus, dict(list(t.terms.items())[:1]))

    assert any(
        not cocycle_check(random_symplectic(2, 1, rng), random_symplectic(2, 2, rng), trace=doubled_first)
        for _ in range(30)
    )


@pytest.mark.parametrize("g,k", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)])
def test_symplectic_dimensions(g, k):
    expected = 2 * g * witt(2 * g, k + 1) - witt(2 * g, k + 2)
    basis = symplectic_derivations(g, k)
    assert len(basis) == expected
    assert all(is_symplectic(D) and D.flavor == "lie" for D in basis)


def test_annihilator_small():
    r = annihilator_dim(1, 1, johnson=False)
    assert (r.der_dim, r.kernel_dim) == (0, 0)
    r = annihilator_dim(1, 2)
    # degree one is spanned by the generators, whose traces are independent
    assert (r.der_dim, r.trace_rank, r.kernel_dim, r.johnson_dim) == (4, 4, 0, 4)
    assert not r.johnson_in_kernel
    with pytest.raises(ValueError):
        annihilator_dim(0, 2)


def test_johnson_degree_two_in_kernel():
    r = annihilator_dim(2, 3)
    assert r.der_dim == 2 * 3 * witt(6, 3) - witt(6, 4)
    assert r.johnson_in_kernel
    assert r.johnson_dim <= r.kernel_dim


def test_johnson_span_generators():
    span = johnson_span(2, 2)
    assert len(span[1]["basis"]) == 4
    assert span[2]["traces_zero"]


def test_apply_dispatch():
    J = johnson_generator("a1", "a2", "b2", 2)
    assert apply(J, LieElement.generator(2, 1)) == LieElement(2, {(2, 3): 1})
    assert apply(J, N(2, "b1")) == Necklace(2, {})
    with pytest.raises(TypeError):
        apply(J, 3)


def test_json_round_trip():
    for D in (johnson_generator("a1", "a2", "b2", 2), necklace_to_derivation(N(2, "a1b2a2b1") * Fraction(1, 3))):
        assert Derivation.from_json(json.loads(json.dumps(D.to_json()))) == D
    with pytest.raises(ValueError):
        Derivation.from_json({"g": 1})
