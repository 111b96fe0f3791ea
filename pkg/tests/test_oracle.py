import numpy as np
import pytest

from mqclifford import f2, oracle
from mqclifford.circuit import Circuit, Gate, mqx, mqz
from mqclifford.exceptions import TooManyQubitsError


def test_pauli_matrix_ordering():
    # qubit 0 is the most significant bit
    zi = oracle.pauli_matrix("ZI")
    assert np.allclose(np.diag(zi), [1, 1, -1, -1])


def test_dense_cnot():
    u = oracle.dense_unitary(Circuit(2, [Gate("CNOT", (0, 1))]))
    want = np.eye(4)[[0, 1, 3, 2]]
    assert np.allclose(u, want)


def test_mqz_phases():
    xi = np.array([[1, 1], [1, 0]], dtype=np.uint8)
    u = oracle.dense_unitary(Circuit(2, [mqz(xi)]))
    # v^T xi v for v = 00, 01, 10, 11
    assert np.allclose(np.diag(u), [1, 1, 1j, 1j ** 3])


def test_mqx_is_conjugated_mqz():
    xi = np.ones((2, 2), dtype=np.uint8)
    h = [Gate("H", (0,)), Gate("H", (1,))]
    a = oracle.dense_unitary(Circuit(2, [mqx(xi)]))
    b = oracle.dense_unitary(Circuit(2, [*h, mqz(xi), *h]))
    assert np.allclose(a, b)


def test_global_phase_equality():
    u = oracle.dense_unitary(Circuit(1, [Gate("H", (0,))]))
    assert oracle.equal_up_to_global_phase(u, 1j * u)
    assert not oracle.equal_up_to_global_phase(u, np.eye(2))


def test_size_limit():
    with pytest.raises(TooManyQubitsError):
        oracle.dense_unitary(Circuit(11))


def test_symmetric_matrices_count():
    assert len(list(oracle.symmetric_matrices(3))) == 2**6
    assert all(f2.is_symmetric(k) for k in oracle.symmetric_matrices(2))


def test_tableau_equivalent(rng):
    c = oracle.random_clifford_circuit(4, rng)
    assert oracle.tableau_equivalent(c, c)
    assert not oracle.tableau_equivalent(c, c + Circuit(4, [Gate("X", (0,))]))
