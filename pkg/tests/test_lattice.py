import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from enriques_gw.lattice import (
    LatticeVector,
    as_vector,
    basis_vector,
    decompositions_box_oracle,
    divisibility,
    enumerate_decompositions,
    format_vector,
    is_positive,
    pair,
    parse_vector,
    short_vectors,
    square,
    _short_vector_array,
)

V1 = basis_vector(1)
V2 = basis_vector(2)

coords = st.tuples(*[st.integers(min_value=-6, max_value=6)] * 10)
vectors = coords.map(LatticeVector)


def sigma3(m):
    return sum(d ** 3 for d in range(1, m + 1) if m % d == 0)


def test_hyperbolic_block():
    assert pair(V1, V2) == 1
    assert square(V1) == 0
    assert square(V2) == 0
    assert square(V1 + V2) == 2


def test_e8_block_is_negative_definite_on_samples():
    for i in range(3, 11):
        e = basis_vector(i)
        assert square(e) == -2
        assert pair(e, V1) == 0


def test_e8_bourbaki_edges():
    # nonzero off-diagonal pairings of the E8 simple roots
    edges = set()
    for i in range(3, 11):
        for j in range(i + 1, 11):
            if pair(basis_vector(i), basis_vector(j)) != 0:
                assert pair(basis_vector(i), basis_vector(j)) == 1
                edges.add((i - 2, j - 2))
    assert edges == {(1, 3), (2, 4), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8)}


@given(vectors, vectors)
def test_pair_symmetric(u, v):
    assert pair(u, v) == pair(v, u)


@given(vectors, vectors, vectors)
def test_pair_bilinear(u, v, w):
    assert pair(u + w, v) == pair(u, v) + pair(w, v)


@given(vectors)
def test_lattice_is_even(v):
    assert square(v) % 2 == 0


@given(vectors, st.integers(min_value=-5, max_value=5))
def test_square_scales_quadratically(v, n):
    assert square(n * v) == n * n * square(v)


def test_short_vector_counts():
    # theta series of E8: 1 + 240 sum sigma_3(m) q^(2m)
    assert len(short_vectors(0)) == 1
    total = 1
    for m in range(1, 7):
        total += 240 * sigma3(m)
        assert len(short_vectors(2 * m)) == total


def test_short_vectors_have_bounded_norm():
    for v in short_vectors(4):
        assert v.b1 == 0 and v.b2 == 0
        assert 0 <= -square(v) <= 4


def test_short_vector_array_prefix_nesting():
    small = _short_vector_array(6)
    large = _short_vector_array(12)
    assert np.array_equal(large[: len(small)], small)


def test_positivity():
    assert is_positive(V1)
    assert is_positive(3 * V1)
    assert not is_positive(-1 * V1)
    assert is_positive(V2)
    assert is_positive(V1 + V2)
    assert not is_positive(LatticeVector((0,) * 10))
    # nonzero E8 part disqualifies the b2 = 0 ray
    root = (1, 0, -1, 0, 0, 0, 0, 0, 0, 0)
    assert not is_positive(LatticeVector(root))
    # negative square does not disqualify by itself
    assert is_positive(LatticeVector((0, 1, 1, 0, 0, 0, 0, 0, 0, 0)))


def test_divisibility():
    assert divisibility(V1) == 1
    assert divisibility(2 * V1 + 2 * V2) == 2
    assert divisibility(LatticeVector((6, 9, 0, 3, 0, 0, 0, 0, 0, 0))) == 3
    with pytest.raises(ValueError):
        divisibility(LatticeVector((0,) * 10))


@given(coords)
def test_parse_format_round_trip(c):
    v = LatticeVector(c)
    assert parse_vector(format_vector(v)) == v


def test_parse_vector_rejects_garbage():
    with pytest.raises(ValueError):
        parse_vector("1,2,3")
    with pytest.raises(ValueError):
        parse_vector("a,b,c,d,e,f,g,h,i,j")


small_positive_classes = st.tuples(
    st.integers(min_value=0, max_value=2),
    st.integers(min_value=1, max_value=2),
    st.sampled_from(sorted(v.coords[2:] for v in short_vectors(2))),
).map(lambda t: LatticeVector((t[0], t[1]) + t[2]))


@settings(max_examples=30, deadline=None)
@given(small_positive_classes)
def test_enumeration_matches_box_oracle(beta):
    fast = enumerate_decompositions(beta)
    slow = decompositions_box_oracle(beta)
    assert fast == slow


@settings(max_examples=30, deadline=None)
@given(small_positive_classes)
def test_decomposition_postconditions(beta):
    seen = set()
    for b1, b2 in enumerate_decompositions(beta):
        assert b1 + b2 == beta
        assert is_positive(b1) and is_positive(b2)
        assert square(b1) >= 0 and square(b2) >= 0
        assert not b1.is_zero() and not b2.is_zero()
        seen.add((b1.coords, b2.coords))
    # ordered pairs are listed exactly once
    assert len(seen) == len(enumerate_decompositions(beta))


def test_decompositions_of_isotropic_multiples():
    # n*v1 splits only into k*v1 + (n-k)*v1
    got = enumerate_decompositions(3 * V1)
    want = [(V1, 2 * V1), (2 * V1, V1)]
    assert got == want


def test_decompositions_require_positive_class():
    with pytest.raises(ValueError):
        enumerate_decompositions(LatticeVector((-1, 0) + (0,) * 8))
