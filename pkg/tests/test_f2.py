import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mqclifford import f2
from mqclifford.exceptions import ParseError, SingularMatrixError


def _all_matrices(n):
    for bits in itertools.product((0, 1), repeat=n * n):
        yield np.array(bits, dtype=np.uint8).reshape(n, n)


def _brute_rank(a):
    # size of the row span, by enumeration
    span = {tuple(np.zeros(a.shape[1], dtype=np.uint8))}
    for row in a:
        span |= {tuple(np.array(v, dtype=np.uint8) ^ row) for v in span}
    return int(np.log2(len(span)))


def test_elementary():
    assert f2.elementary(2, 0, 1).tolist() == [[0, 1], [0, 0]]
    assert f2.elementary(1, 0, 0).tolist() == [[1]]
    e = f2.elementary(4, 1, 3) ^ f2.elementary(4, 3, 1)
    assert f2.is_symmetric(e)
    with pytest.raises(IndexError):
        f2.elementary(2, 2, 0)


def test_mul_examples():
    a = np.array([[0, 1], [1, 0]], dtype=np.uint8)
    b = np.array([[0, 1], [1, 1]], dtype=np.uint8)
    assert f2.mul(a, b).tolist() == [[1, 1], [0, 1]]
    assert np.array_equal(f2.mul(f2.identity(2), b), b)
    with pytest.raises(ValueError):
        f2.mul(f2.zeros(2, 3), f2.zeros(2, 3))


def test_invert_examples():
    assert np.array_equal(f2.invert(f2.identity(3)), f2.identity(3))
    u = np.array([[1, 1], [0, 1]], dtype=np.uint8)
    assert np.array_equal(f2.invert(u), u)
    assert np.array_equal(f2.mul(u, u), f2.identity(2))
    with pytest.raises(SingularMatrixError):
        f2.invert(np.array([[1, 1], [1, 1]], dtype=np.uint8))


def test_rank_matches_enumeration(rng):
    for _ in range(50):
        a = rng.integers(0, 2, size=(4, 5), dtype=np.uint8)
        assert f2.rank(a) == _brute_rank(a)


@pytest.mark.parametrize("n", [1, 2, 5, 17, 64])
def test_inverse_random(rng, n):
    for _ in range(10):
        a = f2.random_invertible(n, rng)
        ai = f2.invert(a)
        assert np.array_equal(f2.mul(a, ai), f2.identity(n))
        assert np.array_equal(f2.mul(ai, a), f2.identity(n))


def test_nullspace(rng):
    a = rng.integers(0, 2, size=(5, 9), dtype=np.uint8)
    ns = f2.nullspace(a)
    assert ns.shape[0] == 9 - f2.rank(a)
    assert not f2.mul(a, ns.T).any()
    assert f2.rank(ns) == ns.shape[0]


def test_is_symmetric():
    assert f2.is_symmetric(f2.identity(3))
    assert not f2.is_symmetric(np.array([[1, 1], [0, 1]], dtype=np.uint8))
    with pytest.raises(ValueError):
        f2.is_symmetric(f2.zeros(2, 3))


def test_gauss_identity_is_empty():
    assert f2.gauss_cnot_synthesis(f2.identity(4)) == []


def test_gauss_single_cnot_matches_brute_force():
    m = f2.identity(2) ^ f2.elementary(2, 1, 0)
    # shortest sequences over the two possible CNOTs
    steps = [f2.CnotStep(0, 1), f2.CnotStep(1, 0)]
    shortest = None
    for length in range(3):
        for seq in itertools.product(steps, repeat=length):
            if np.array_equal(f2.cnot_steps_matrix(2, seq), m):
                shortest = list(seq)
                break
        if shortest is not None:
            break
    assert shortest == [f2.CnotStep(0, 1)]
    assert f2.gauss_cnot_synthesis(m) == shortest


@pytest.mark.parametrize("n", [2, 3, 6, 16, 64])
def test_gauss_recomposes_within_bound(rng, n):
    for _ in range(100 if n <= 16 else 10):
        m = f2.random_invertible(n, rng)
        steps = f2.gauss_cnot_synthesis(m)
        assert len(steps) <= n * n
        assert np.array_equal(f2.cnot_steps_matrix(n, steps), m)


def test_gauss_rejects_singular():
    with pytest.raises(SingularMatrixError):
        f2.gauss_cnot_synthesis(np.array([[1, 1], [1, 1]], dtype=np.uint8))


def test_random_invertible_small():
    assert f2.random_invertible(1, 0).tolist() == [[1]]
    gl2 = {tuple(m.ravel()) for m in _all_matrices(2) if _brute_rank(m) == 2}
    assert len(gl2) == 6


def test_random_invertible_uniform_gl2():
    gl2 = sorted(tuple(m.ravel()) for m in _all_matrices(2) if _brute_rank(m) == 2)
    rng = np.random.default_rng(5)
    counts = dict.fromkeys(gl2, 0)
    trials = 6000
    for _ in range(trials):
        counts[tuple(f2.random_invertible(2, rng).ravel())] += 1
    p = 1 / 6
    sigma = np.sqrt(trials * p * (1 - p))
    for c in counts.values():
        assert abs(c - trials * p) <= 5 * sigma


def test_random_invertible_full_rank_and_deterministic():
    rng = np.random.default_rng(1)
    for _ in range(10_000):
        assert f2.rank(f2.random_invertible(8, rng)) == 8
    assert np.array_equal(f2.random_invertible(9, 3), f2.random_invertible(9, 3))


mats = st.integers(1, 6).flatmap(
    lambda n: st.tuples(
        *[st.lists(st.integers(0, 1), min_size=n * n, max_size=n * n) for _ in range(3)]
    ).map(lambda t: [np.array(v, dtype=np.uint8).reshape(n, n) for v in t])
)


@settings(max_examples=200, deadline=None)
@given(mats)
def test_ring_axioms(triple):
    a, b, c = triple
    assert not f2.add(a, a).any()
    assert np.array_equal(f2.transpose(f2.transpose(a)), a)
    assert np.array_equal(f2.mul(f2.mul(a, b), c), f2.mul(a, f2.mul(b, c)))
    assert np.array_equal(f2.mul(a, f2.add(b, c)), f2.add(f2.mul(a, b), f2.mul(a, c)))
    assert np.array_equal(f2.transpose(f2.mul(a, b)), f2.mul(f2.transpose(b), f2.transpose(a)))


def test_matrix_text_round_trip(rng):
    a = rng.integers(0, 2, size=(3, 5), dtype=np.uint8)
    text = f2.format_matrix(a)
    assert text.splitlines()[0] == "3 5"
    assert np.array_equal(f2.parse_matrix(text), a)
    with pytest.raises(ParseError):
        f2.parse_matrix("2 2\n01\n2x\n")
