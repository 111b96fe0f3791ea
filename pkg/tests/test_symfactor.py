import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mqclifford import f2, oracle
from mqclifford.exceptions import SingularMatrixError, TooLargeError
from mqclifford.symfactor import (
    SymmetricPair, factor_symmetric_pair, intertwiner_space, pair_from_intertwiner,
    perturb_factorization,
)


def test_upper_unitriangular_2x2():
    b = np.array([[1, 1], [0, 1]], dtype=np.uint8)
    pair = factor_symmetric_pair(b)
    assert pair.s1.tolist() == [[0, 1], [1, 0]]
    assert pair.s2.tolist() == [[0, 1], [1, 1]]
    assert pair.is_valid_for(b)
    brute = [p for p in oracle.brute_force_pairs(b) if p.order == "s1s2"]
    assert any(p == pair for p in brute)
    # frozen from enumeration: exactly two factorizations B = s1 s2
    assert len(brute) == 2


def test_identity_and_symmetric_inputs():
    pair = factor_symmetric_pair(f2.identity(4))
    assert np.array_equal(pair.s1, f2.identity(4)) and np.array_equal(pair.s2, f2.identity(4))
    b = np.array([[0, 1], [1, 0]], dtype=np.uint8)
    pair = factor_symmetric_pair(b)
    assert np.array_equal(pair.s1, f2.identity(2)) and np.array_equal(pair.s2, b)


def test_permutation_matrix_input():
    b = f2.permutation_matrix([1, 2, 0])
    assert factor_symmetric_pair(b).is_valid_for(b)


def test_singular_rejected():
    with pytest.raises(SingularMatrixError):
        factor_symmetric_pair(np.array([[1, 1], [1, 1]], dtype=np.uint8))


@pytest.mark.parametrize("n", [2, 3, 5, 8, 16, 33, 64])
def test_random_factorization_valid(rng, n):
    for _ in range(20 if n <= 16 else 3):
        b = f2.random_invertible(n, rng)
        assert factor_symmetric_pair(b, seed=int(rng.integers(1 << 30))).is_valid_for(b)


def test_structured_inputs(rng):
    n = 10
    # block-diagonal with repeated blocks, nilpotent-plus-identity, involution
    blk = f2.random_invertible(2, 3)
    reps = np.kron(f2.identity(5), blk)
    unip = f2.identity(n) ^ np.triu(rng.integers(0, 2, (n, n), dtype=np.uint8), 1)
    swap = f2.permutation_matrix([1, 0] * 0 + [1, 0, 3, 2, 5, 4, 7, 6, 9, 8])
    for b in (reps, unip, swap, f2.identity(n) ^ f2.elementary(n, 0, n - 1)):
        assert factor_symmetric_pair(b).is_valid_for(b)


def test_deterministic_for_seed(rng):
    b = f2.random_invertible(12, rng)
    assert factor_symmetric_pair(b, seed=4) == factor_symmetric_pair(b, seed=4)


def test_s2s1_order_relabels():
    b = np.array([[1, 1], [0, 1]], dtype=np.uint8)
    p = factor_symmetric_pair(b)
    flipped = SymmetricPair(p.s2, p.s1, "s2s1")
    assert flipped.is_valid_for(b)
    assert flipped.as_s1s2() == p
    with pytest.raises(ValueError):
        SymmetricPair(p.s1, p.s2, "xy")


@pytest.mark.parametrize("n", [2, 3])
def test_every_gl_element_factors_exhaustively(n):
    import itertools

    for bits in itertools.product((0, 1), repeat=n * n):
        b = np.array(bits, dtype=np.uint8).reshape(n, n)
        if f2.is_invertible(b):
            pair = factor_symmetric_pair(b)
            assert pair.is_valid_for(b)
            assert any(p == pair for p in oracle.brute_force_pairs(b))


def test_intertwiner_space_matches_enumeration(rng):
    for _ in range(10):
        b = f2.random_invertible(3, rng)
        space = intertwiner_space(b)
        members = [k for k in oracle.symmetric_matrices(3)
                   if np.array_equal(f2.mul(k, b), f2.mul(f2.transpose(b), k))]
        assert 2 ** len(space) == len(members)
        for k in space.basis:
            assert f2.is_symmetric(k)
            assert np.array_equal(f2.mul(k, b), f2.mul(f2.transpose(b), k))
        # invertible members correspond one-to-one with s1s2 factorizations
        brute = [p for p in oracle.brute_force_pairs(b) if p.order == "s1s2"]
        assert len(brute) == sum(f2.is_invertible(k) for k in members)


def test_pair_from_intertwiner_and_perturb(rng):
    b = f2.random_invertible(6, rng)
    space = intertwiner_space(b)
    pair = factor_symmetric_pair(b)
    assert perturb_factorization(pair, space, move=[]) == pair
    seen = 0
    for i in range(len(space)):
        new = perturb_factorization(pair, space, move=i)
        if new is not None:
            assert new.is_valid_for(b)
            seen += 1
    new = perturb_factorization(pair, space, rng=1)
    assert new is None or new.is_valid_for(b)
    with pytest.raises(SingularMatrixError):
        pair_from_intertwiner(b, f2.zeros(6))


def test_brute_force_size_limit():
    with pytest.raises(TooLargeError):
        oracle.brute_force_pairs(f2.identity(5))


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 12), st.integers(0, 2**32 - 1))
def test_factorization_property(n, seed):
    b = f2.random_invertible(n, seed)
    pair = factor_symmetric_pair(b, seed=seed % 97)
    assert pair.is_valid_for(b)
