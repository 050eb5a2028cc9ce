import random
from math import gcd

import pytest
from hypothesis import given, strategies as st

from cyclosig.composite import (
    COROLLARY_EXCEPTION,
    circular_signature_basis,
    composite_prime_powers,
    composite_rank,
    corollary_check,
    embed_left,
    embed_right,
    embed_spans,
    theorem_bound,
    two_adic_bound,
)
from cyclosig.gf2 import SignVector
from cyclosig.residues import make_conductor
from cyclosig.verify import prime_powers, random_composite_instance
from oracles import span_size_rank


def V(*bits):
    return SignVector.from_bits(bits)


def test_embed_examples():
    assert embed_left(V(1, 0), 2).to_list() == [1, 1, 0, 0]
    assert embed_right(V(1, 0), 2).to_list() == [1, 0, 1, 0]
    assert embed_left(SignVector.ones(3), 4) == SignVector.ones(12)
    assert embed_right(SignVector.ones(3), 4) == SignVector.ones(12)


@st.composite
def vector_pairs(draw):
    dim = draw(st.integers(1, 12))
    return (SignVector(dim, draw(st.integers(0, 2**dim - 1))),
            SignVector(dim, draw(st.integers(0, 2**dim - 1))))


@given(vector_pairs(), st.integers(1, 12))
def test_embedding_is_linear(pair, other_dims):
    u, v = pair
    assert embed_left(u ^ v, other_dims) == embed_left(u, other_dims) ^ embed_left(v, other_dims)
    assert embed_right(u ^ v, other_dims) == embed_right(u, other_dims) ^ embed_right(v, other_dims)


@given(vector_pairs(), st.integers(1, 12))
def test_embedding_coordinates(pair, other_dims):
    v, _ = pair
    left = embed_left(v, other_dims)
    right = embed_right(v, other_dims)
    for sigma in range(v.dim):
        for tau in range(other_dims):
            assert left[sigma * other_dims + tau] == v[sigma]
    for sigma in range(other_dims):
        for tau in range(v.dim):
            assert right[sigma * v.dim + tau] == v[tau]


@given(st.integers(1, 12), st.integers(1, 12), st.integers(1, 2**12 - 1), st.integers(1, 2**12 - 1))
def test_only_all_ones_collides(r_dims, s_dims, vbits, wbits):
    v = SignVector(r_dims, vbits % (1 << r_dims))
    w = SignVector(s_dims, wbits % (1 << s_dims))
    if v.bits == 0 or w.bits == 0:
        return
    same = embed_left(v, s_dims) == embed_right(w, r_dims)
    assert same == (v.is_all_ones() and w.is_all_ones())


@pytest.mark.parametrize(
    "left, right, expected",
    [
        ([V(1, 1)], [V(1, 1)], (1, 1)),
        ([V(1, 0)], [V(0, 1)], (2, 2)),
        ([V(1, 0), V(0, 1)], [V(1, 1)], (2, 2)),
    ],
)
def test_composite_rank_examples(left, right, expected):
    assert composite_rank(left, right) == expected


def test_composite_rank_rejects_dependent_inputs():
    with pytest.raises(ValueError, match="dependent"):
        composite_rank([V(1, 0), V(1, 0)], [V(1, 1)])
    with pytest.raises(ValueError, match="dependent"):
        composite_rank([V(1, 0)], [V(0, 0)])


def test_embedded_span_flags():
    span = embed_spans([V(1, 0), V(0, 1)], [V(1, 0, 1)])
    assert span.left_has_all_ones and not span.right_has_all_ones
    assert span.predicted_rank == 3 == span.rank


def test_random_instances_against_enumeration():
    rng = random.Random(3)
    for _ in range(300):
        left, right = random_composite_instance(rng, max_dims=5, max_rank=4)
        span = embed_spans(left, right)
        vectors = [embed_left(v, right[0].dim).to_list() for v in left]
        vectors += [embed_right(w, left[0].dim).to_list() for w in right]
        assert span.rank == span.predicted_rank == span_size_rank(vectors)


def test_circular_pairs_small():
    qs = prime_powers(3, 40)
    for i, q1 in enumerate(qs):
        for q2 in qs[i + 1:]:
            if gcd(q1, q2) == 1:
                computed, predicted = composite_prime_powers(q1, q2)
                assert computed == predicted


def test_composite_prime_powers_checks_inputs():
    with pytest.raises(ValueError):
        composite_prime_powers(9, 27)
    with pytest.raises(ValueError):
        composite_prime_powers(15, 7)


def test_circular_basis_size_is_rank():
    assert len(circular_signature_basis(make_conductor(29))) == 11


def test_theorem_bound_examples():
    r = theorem_bound(make_conductor(3072))
    assert r.omega == 2
    assert r.theorem_bound == 5
    assert r.per_factor_bounds == ((1024, 8), (3, -1))
    assert r.combined_bound == 6
    assert abs(r.theorem_value - (11.584962500721156 - 8 + 1)) < 1e-12
    assert theorem_bound(make_conductor(35)).theorem_bound == 0
    r = theorem_bound(make_conductor(29))
    assert r.theorem_bound == 2 and r.combined_bound == 2


def test_combined_bound_for_prime_powers():
    for m in prime_powers(8, 10**4):
        r = theorem_bound(make_conductor(m))
        assert r.combined_bound == max(0, m.bit_length() - 3)
        assert r.theorem_bound >= r.theorem_value - 1e-9
        assert r.theorem_bound < r.theorem_value + 1 or r.theorem_bound == 0


def test_corollary():
    assert dict(corollary_check()) == {8: 2, 9: 3, 5: 2, 7: 3, 11: 5, 13: 6}
    assert COROLLARY_EXCEPTION["m"] == 12
    assert COROLLARY_EXCEPTION["fundamental_unit"] == "2 + sqrt(3)"


@pytest.mark.parametrize("d, bound", [(0, 0), (2, 6), (3, 9)])
def test_two_adic_bound(d, bound):
    assert two_adic_bound(d) == bound


def test_two_adic_bound_rejects_negative():
    with pytest.raises(ValueError):
        two_adic_bound(-1)
