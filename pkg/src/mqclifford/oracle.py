"""Ground-truth checks: dense unitaries, tableau equality, brute-force pairs.

Qubit 0 is the most significant bit of a computational-basis index.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import f2
from .circuit import Circuit, Gate, to_symplectic
from .exceptions import TooLargeError, TooManyQubitsError
from .symfactor import SymmetricPair

MAX_DENSE_QUBITS = 10
TOL = 1e-9

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_ONE_QUBIT = {
    "H": _H,
    "S": np.diag([1, 1j]),
    "SDG": np.diag([1, -1j]),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.diag([1.0 + 0j, -1.0]),
}


def pauli_matrix(label: str) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for c in label:
        out = np.kron(out, np.eye(2) if c == "I" else _ONE_QUBIT[c])
    return out


def _basis_bits(n: int) -> np.ndarray:
    idx = np.arange(2**n)
    return ((idx[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1).astype(np.int64)


def _apply_1q(state, mat, q, n):
    t = state.reshape((2,) * n + (-1,))
    t = np.moveaxis(np.tensordot(mat, t, axes=([1], [q])), 0, q)
    return t.reshape(2**n, -1)


def _apply_h_all(state, n):
    for q in range(n):
        state = _apply_1q(state, _H, q, n)
    return state


def _gcz_phases(xi: np.ndarray) -> np.ndarray:
    """Diagonal of ``|v> -> i**(v^T xi v) |v>``."""
    v = _basis_bits(xi.shape[0])
    quad = np.einsum("bi,ij,bj->b", v, xi.astype(np.int64), v)
    return 1j ** (quad % 4)


def apply_gate_dense(state: np.ndarray, g: Gate, n: int) -> np.ndarray:
    """Left-multiply the columns of ``state`` by the unitary of ``g``."""
    k = g.kind
    if k in _ONE_QUBIT:
        return _apply_1q(state, _ONE_QUBIT[k], g.qubits[0], n)
    if k in ("CNOT", "CZ"):
        a, b = g.qubits
        t = state.reshape((2,) * n + (-1,)).copy()
        sel = [slice(None)] * n
        sel[a] = 1
        sub = t[tuple(sel)]
        # the target axis index shifts down by one once axis a is removed
        axis = b - (b > a)
        if k == "CNOT":
            sub = np.flip(sub, axis=axis)
        else:
            sub = sub.copy()
            idx = [slice(None)] * (n - 1)
            idx[axis] = 1
            sub[tuple(idx)] *= -1
        t[tuple(sel)] = sub
        return t.reshape(2**n, -1)
    if k == "MQZ":
        return _gcz_phases(g.xi)[:, None] * state
    if k == "MQX":
        state = _apply_h_all(state, n)
        state = _gcz_phases(g.xi)[:, None] * state
        return _apply_h_all(state, n)
    if k == "PAULI":
        for q in np.flatnonzero(g.eta):
            state = _apply_1q(state, _ONE_QUBIT["X"], q, n)
        for q in np.flatnonzero(g.mu):
            state = _apply_1q(state, _ONE_QUBIT["Z"], q, n)
        return state
    raise ValueError(k)  # pragma: no cover


def dense_unitary(c: Circuit) -> np.ndarray:
    """Full ``2**n x 2**n`` unitary, gates multiplied in temporal order."""
    if c.n > MAX_DENSE_QUBITS:
        raise TooManyQubitsError(f"dense simulation limited to {MAX_DENSE_QUBITS} qubits")
    u = np.eye(2**c.n, dtype=complex)
    for g in c.gates:
        u = apply_gate_dense(u, g, c.n)
    return u


def equal_up_to_global_phase(u: np.ndarray, v: np.ndarray, tol: float = TOL) -> bool:
    if u.shape != v.shape:
        return False
    return abs(abs(np.vdot(u, v)) - u.shape[0]) <= tol


def tableau_equivalent(a: Circuit, b: Circuit) -> bool:
    if a.n != b.n:
        return False
    return to_symplectic(a) == to_symplectic(b)


def symmetric_matrices(n: int):
    """Every symmetric n x n matrix over GF(2)."""
    iu = np.triu_indices(n)
    for bits in itertools.product((0, 1), repeat=len(iu[0])):
        m = f2.zeros(n)
        m[iu] = bits
        yield m | m.T


def brute_force_pairs(b: np.ndarray) -> list[SymmetricPair]:
    """All symmetric invertible ``(s1, s2)`` with ``b = s1 s2`` or ``b = s2 s1``."""
    b = f2.as_f2(b)
    n = b.shape[0]
    if n > 4:
        raise TooLargeError("enumeration limited to n <= 4")
    if not f2.is_invertible(b):
        return []
    out = []
    for k in symmetric_matrices(n):
        if not f2.is_invertible(k):
            continue
        kinv = f2.invert(k)
        right = f2.mul(kinv, b)
        if f2.is_symmetric(right):
            out.append(SymmetricPair(k, right, "s1s2"))
        left = f2.mul(b, kinv)
        if f2.is_symmetric(left):
            out.append(SymmetricPair(k, left, "s2s1"))
    return out


def random_clifford_circuit(n: int, rng=None, depth: int | None = None) -> Circuit:
    """Random circuit over ``H, S, SDG, X, Y, Z, CNOT, CZ``."""
    rng = np.random.default_rng(rng)
    depth = depth if depth is not None else 4 * n * max(1, int(np.log2(n + 1)))
    gates = []
    singles = ("H", "S", "SDG", "X", "Y", "Z")
    for _ in range(depth):
        if n > 1 and rng.random() < 0.5:
            a, b = rng.choice(n, size=2, replace=False)
            gates.append(Gate("CNOT" if rng.random() < 0.7 else "CZ", (int(a), int(b))))
        else:
            gates.append(Gate(singles[rng.integers(len(singles))], (int(rng.integers(n)),)))
    return Circuit(n, gates)
