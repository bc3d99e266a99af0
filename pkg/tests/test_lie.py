import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import witt
from rgc.lie import (
    LieElement,
    NotALieElement,
    Tensor,
    bracket_tree,
    is_lyndon,
    lyndon_basis,
    lyndon_words,
    omega,
    standard_factorization,
)


@pytest.mark.parametrize("rank,k", [(r, k) for r in (2, 3, 4, 6) for k in range(1, 7)])
def test_lyndon_counts(rank, k):
    ws = lyndon_words(rank, k)
    assert len(ws) == witt(rank, k)
    assert ws == sorted(ws)
    assert all(is_lyndon(w) for w in ws)


def test_genus_one_small_degrees():
    assert [e.to_tensor() for e in lyndon_basis(1, 2)] == [Tensor(1, {(0, 1): 1, (1, 0): -1})]
    assert [list(e.terms) for e in lyndon_basis(1, 3)] == [[(0, 0, 1)], [(0, 1, 1)]]


def test_factorization():
    assert standard_factorization((0, 0, 1)) == ((0,), (0, 1))
    assert standard_factorization((0, 1, 1)) == ((0, 1), (1,))
    assert bracket_tree((0, 1, 1)) == [[0, 1], 1]
    with pytest.raises(ValueError):
        standard_factorization((0,))


def test_non_lie_tensor_rejected():
    with pytest.raises(NotALieElement):
        LieElement.from_tensor(Tensor(1, {(0, 1): 1}))
    with pytest.raises(ValueError):
        LieElement(1, {(1, 0): 1})


def test_omega():
    assert omega(2) == Tensor(2, {(0, 1): 1, (1, 0): -1, (2, 3): 1, (3, 2): -1})
    assert LieElement.from_tensor(omega(2)) == LieElement(2, {(0, 1): 1, (2, 3): 1})


letters = st.integers(0, 3)
lie = st.lists(st.tuples(letters, letters, st.integers(-2, 2)), min_size=1, max_size=3).map(
    lambda ts: LieElement.from_tensor(sum((c * Tensor(2, {(x,): 1}).bracket(Tensor(2, {(y,): 1})) for x, y, c in ts), Tensor(2)))
)


@settings(max_examples=50, deadline=None)
@given(lie, lie, lie)
def test_bracket_identities(x, y, z):
    assert x.bracket(y) == -y.bracket(x)
    assert (x.bracket(y.bracket(z)) + y.bracket(z.bracket(x)) + z.bracket(x.bracket(y))).is_zero()


@settings(max_examples=50, deadline=None)
@given(lie, lie)
def test_decomposition_round_trip(x, y):
    e = x.bracket(y)
    assert LieElement.from_tensor(e.to_tensor()) == e
    assert LieElement.from_json(2, json.loads(json.dumps(e.to_json()))) == e


def test_json_shape():
    e = LieElement(1, {(0, 0, 1): Fraction(1, 2)})
    assert e.to_json() == [{"coeff": "1/2", "tree": ["a1", ["a1", "b1"]]}]
