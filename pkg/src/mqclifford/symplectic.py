"""Clifford operators as symplectic matrices over GF(2) with sign bits.

A Pauli vector is ``(a | b)`` with the X exponents first, and stands for the
Hermitian operator ``i**(a.b) X**a Z**b`` (so ``(1|1)`` is ``Y``). A
:class:`SymplecticOp` stores, for every generator ``X_0..X_{n-1}, Z_0..Z_{n-1}``,
the image under conjugation ``U P U^dagger``: column ``k`` of ``S`` is the
image vector and ``r[k]`` is its sign bit. ``S`` therefore acts on column
vectors, and the operator "``g`` then ``f``" has matrix ``S_f @ S_g``.

Global phase is never tracked.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import f2
from .exceptions import NonSymmetricXiError

__all__ = [
    "PauliString",
    "SymplecticOp",
    "omega",
    "pairing",
    "identity",
    "check_symplectic",
    "gen_mq",
    "gen_cnot",
    "gen_cz",
    "gen_hadamard",
    "gen_phase",
    "gen_pauli",
    "gen_cx_layer",
    "compose",
    "conjugate_pauli",
    "equal_up_to_pauli",
]


@dataclass(frozen=True, eq=False)
class PauliString:
    """``i**phase`` times the tensor product of ``I, X, Z, Y`` per qubit."""

    x: np.ndarray
    z: np.ndarray
    phase: int = 0

    def __post_init__(self):
        object.__setattr__(self, "x", f2.as_f2(self.x))
        object.__setattr__(self, "z", f2.as_f2(self.z))
        object.__setattr__(self, "phase", int(self.phase) % 4)
        if self.x.shape != self.z.shape or self.x.ndim != 1:
            raise ValueError("x and z must be equal-length bit vectors")

    @property
    def n(self) -> int:
        return self.x.size

    @property
    def sign(self) -> complex:
        return 1j ** self.phase

    @property
    def vector(self) -> np.ndarray:
        return np.concatenate([self.x, self.z])

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse labels such as ``"+XIZ"``, ``"-iY"`` or ``"ZZ"``."""
        phase = 0
        if label.startswith("+"):
            label = label[1:]
        elif label.startswith("-"):
            phase, label = 2, label[1:]
        if label.startswith("i"):
            phase, label = phase + 1, label[1:]
        x = [c in "XY" for c in label]
        z = [c in "ZY" for c in label]
        if set(label) - set("IXYZ"):
            raise ValueError(f"bad Pauli label {label!r}")
        return cls(np.array(x), np.array(z), phase)

    def label(self) -> str:
        prefix = ["+", "+i", "-", "-i"][self.phase]
        return prefix + "".join("IXZY"[a + 2 * b] for a, b in zip(self.x, self.z))

    def __eq__(self, other):
        if not isinstance(other, PauliString):
            return NotImplemented
        return (
            self.phase == other.phase
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.z, other.z)
        )

    def __repr__(self):
        return f"PauliString({self.label()!r})"


@dataclass(frozen=True, eq=False)
class SymplecticOp:
    """Clifford operator up to global phase: a symplectic matrix plus signs."""

    S: np.ndarray
    r: np.ndarray

    def __post_init__(self):
        s = f2.as_f2(self.S)
        r = f2.as_f2(self.r)
        if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape[0] % 2:
            raise ValueError(f"S must be 2n x 2n, got {s.shape}")
        if r.shape != (s.shape[0],):
            raise ValueError("sign vector length must match S")
        s.flags.writeable = False
        r.flags.writeable = False
        object.__setattr__(self, "S", s)
        object.__setattr__(self, "r", r)

    @property
    def n(self) -> int:
        return self.S.shape[0] // 2

    def blocks(self):
        """The four n x n blocks ``(XX, XZ, ZX, ZZ)`` of ``S``."""
        n = self.n
        return self.S[:n, :n], self.S[:n, n:], self.S[n:, :n], self.S[n:, n:]

    def __eq__(self, other):
        if not isinstance(other, SymplecticOp):
            return NotImplemented
        return np.array_equal(self.S, other.S) and np.array_equal(self.r, other.r)

    def __matmul__(self, other: "SymplecticOp") -> "SymplecticOp":
        return compose(self, other)

    def __repr__(self):
        return f"SymplecticOp(n={self.n})"


def omega(n: int) -> np.ndarray:
    """The form ``[[0, I], [I, 0]]`` (``-I = I`` over GF(2))."""
    z = f2.zeros(n)
    i = f2.identity(n)
    return np.block([[z, i], [i, z]])


def pairing(u: np.ndarray, v: np.ndarray) -> int:
    """``u^T Omega v``: 1 when the two Pauli vectors anticommute."""
    n = len(u) // 2
    return int((np.dot(u[:n], v[n:]) + np.dot(u[n:], v[:n])) & 1)


def identity(n: int) -> SymplecticOp:
    return SymplecticOp(f2.identity(2 * n), f2.zeros(1, 2 * n)[0])


def check_symplectic(op: SymplecticOp) -> bool:
    om = omega(op.n)
    return bool(np.array_equal(f2.mul(f2.mul(op.S.T, om), op.S), om))


# In-place gate updates on a tableau held as (x, z, phase): x and z are the
# n x 2n halves of S, phase holds 2*r as integers mod 4. Rows index qubits,
# columns index generator images.


def _tableau(op: SymplecticOp):
    n = op.n
    s = op.S.astype(np.int64)
    return s[:n].copy(), s[n:].copy(), 2 * op.r.astype(np.int64)


def _to_op(x, z, phase) -> SymplecticOp:
    if np.any(phase & 1):
        raise AssertionError("non-Hermitian generator image")
    return SymplecticOp(np.vstack([x, z]) & 1, (phase >> 1) & 1)


def _apply_h(x, z, phase, q):
    phase += 2 * (x[q] & z[q])
    x[q], z[q] = z[q].copy(), x[q].copy()


def _apply_s(x, z, phase, q):
    phase += 2 * (x[q] & z[q])
    z[q] ^= x[q]


def _apply_sdg(x, z, phase, q):
    phase += 2 * (x[q] & (1 - z[q]))
    z[q] ^= x[q]


def _apply_cnot(x, z, phase, c, t):
    phase += 2 * (x[c] & z[t] & (x[t] ^ z[c] ^ 1))
    x[t] ^= x[c]
    z[c] ^= z[t]


def _apply_gcz(x, z, phase, xi):
    """Conjugate by ``prod CZ^{xi_jk} prod S^{xi_kk}``.

    ``U X^a U^dag = i**(a^T xi a) X^a Z^(xi a)`` with the quadratic form taken
    over the integers; the Hermitian-representative phase is then corrected
    for the change in ``a.b``.
    """
    xi = xi.astype(np.int64)
    before = np.einsum("ij,ij->j", x, z)
    quad = np.einsum("ij,ik,kj->j", x, xi, x)
    z ^= (xi @ x) & 1
    after = np.einsum("ij,ij->j", x, z)
    phase += before + quad - after


def _apply_hadamard_all(x, z, phase):
    phase += 2 * np.einsum("ij,ij->j", x, z)
    x[:], z[:] = z.copy(), x.copy()


def _apply_pauli(x, z, phase, zmask, xmask):
    """Conjugate by ``Z**zmask X**xmask``."""
    phase += 2 * ((zmask.astype(np.int64) @ x + xmask.astype(np.int64) @ z) & 1)


def _check_xi(xi, n=None) -> np.ndarray:
    xi = f2.as_f2(xi)
    if xi.ndim != 2 or xi.shape[0] != xi.shape[1]:
        raise ValueError(f"xi must be square, got {xi.shape}")
    if n is not None and xi.shape[0] != n:
        raise ValueError(f"xi must be {n} x {n}")
    if not f2.is_symmetric(xi):
        raise NonSymmetricXiError("interaction matrix must be symmetric")
    return xi


def gen_mq(basis: str, xi) -> SymplecticOp:
    """Multiqubit gate ``U_MQ^P(xi)`` for ``P`` in ``{"X", "Z"}``.

    The Z gate is the generalized CZ ``|v> -> i**(v^T xi v) |v>``, whose
    matrix is ``[[I, 0], [xi, I]]``; the X gate is its Hadamard conjugate
    with matrix ``[[I, xi], [0, I]]``.
    """
    xi = _check_xi(xi)
    n = xi.shape[0]
    x, z, phase = _tableau(identity(n))
    basis = basis.upper()
    if basis == "Z":
        _apply_gcz(x, z, phase, xi)
    elif basis == "X":
        _apply_hadamard_all(x, z, phase)
        _apply_gcz(x, z, phase, xi)
        _apply_hadamard_all(x, z, phase)
    else:
        raise ValueError(f"basis must be 'X' or 'Z', got {basis!r}")
    return _to_op(x, z, phase & 3)


def _check_qubits(n, *qubits):
    for q in qubits:
        if not 0 <= q < n:
            raise IndexError(f"qubit {q} out of range for n={n}")
    if len(set(qubits)) != len(qubits):
        raise ValueError("qubit indices must be distinct")


def gen_cnot(n: int, control: int, target: int) -> SymplecticOp:
    _check_qubits(n, control, target)
    x, z, phase = _tableau(identity(n))
    _apply_cnot(x, z, phase, control, target)
    return _to_op(x, z, phase & 3)


def gen_cz(n: int, a: int, b: int) -> SymplecticOp:
    _check_qubits(n, a, b)
    return gen_mq("Z", f2.elementary(n, a, b) | f2.elementary(n, b, a))


def gen_hadamard(n: int, qubits) -> SymplecticOp:
    qubits = list(qubits)
    _check_qubits(n, *qubits)
    x, z, phase = _tableau(identity(n))
    for q in qubits:
        _apply_h(x, z, phase, q)
    return _to_op(x, z, phase & 3)


def gen_phase(n: int, qubit: int, dagger: bool = False) -> SymplecticOp:
    _check_qubits(n, qubit)
    x, z, phase = _tableau(identity(n))
    (_apply_sdg if dagger else _apply_s)(x, z, phase, qubit)
    return _to_op(x, z, phase & 3)


def gen_pauli(p: PauliString) -> SymplecticOp:
    """Conjugation by the Pauli ``p`` (its own phase is irrelevant)."""
    x, z, phase = _tableau(identity(p.n))
    # X^a Z^b and Z^b X^a conjugate identically
    _apply_pauli(x, z, phase, p.z, p.x)
    return _to_op(x, z, phase & 3)


def gen_cx_layer(m) -> SymplecticOp:
    """Linear reversible layer ``|v> -> |M v>``: ``S = diag(M, M^{-T})``."""
    m = f2.as_f2(m)
    minv_t = f2.transpose(f2.invert(m))
    n = m.shape[0]
    s = np.block([[m, f2.zeros(n)], [f2.zeros(n), minv_t]])
    return SymplecticOp(s, f2.zeros(1, 2 * n)[0])


def _product_phase(xs: np.ndarray, zs: np.ndarray, phases: np.ndarray):
    """Multiply ``i**p_k X**x_k Z**z_k`` in row order; return (x, z, phase)."""
    xs = xs.astype(np.int64)
    zs = zs.astype(np.int64)
    # moving X^{x_l} left past Z^{z_k} for every k < l costs (-1)^{z_k . x_l}
    swaps = np.triu(zs @ xs.T, k=1).sum()
    total = int(phases.sum()) + 2 * int(swaps)
    return xs.sum(axis=0) & 1, zs.sum(axis=0) & 1, total % 4


def conjugate_pauli(op: SymplecticOp, p: PauliString) -> PauliString:
    """Image ``U p U^dagger`` with its exact sign."""
    if p.n != op.n:
        raise ValueError("qubit count mismatch")
    v = p.vector.astype(bool)
    cols = op.S[:, v].T.astype(np.int64)
    n = op.n
    xs, zs = cols[:, :n], cols[:, n:]
    # generator images in XZ form: (-1)^r i^(x.z) X^x Z^z
    phases = 2 * op.r[v].astype(np.int64) + np.einsum("ij,ij->i", xs, zs)
    if cols.shape[0] == 0:
        x = z = np.zeros(n, dtype=np.int64)
        ph = 0
    else:
        x, z, ph = _product_phase(xs, zs, phases)
    # p = i^phase i^(a.b) X^a Z^b; X factors come first, then Z factors
    ph += p.phase + int(np.dot(p.x, p.z))
    return PauliString(x, z, ph - int(np.dot(x, z)))


def compose(f: SymplecticOp, g: SymplecticOp) -> SymplecticOp:
    """The operator that applies ``g`` first and then ``f``."""
    if f.n != g.n:
        raise ValueError("qubit count mismatch")
    n = f.n
    s = f2.mul(f.S, g.S)
    r = np.zeros(2 * n, dtype=np.uint8)
    for k in range(2 * n):
        img = PauliString(g.S[:n, k], g.S[n:, k], 2 * int(g.r[k]))
        out = conjugate_pauli(f, img)
        if out.phase & 1:
            raise AssertionError("non-Hermitian image in composition")
        r[k] = out.phase >> 1
    return SymplecticOp(s, r)


def equal_up_to_pauli(f: SymplecticOp, g: SymplecticOp) -> PauliString | None:
    """Pauli ``P`` with ``f = P g`` (``P`` applied after ``g``), or ``None``.

    Returns ``None`` when the symplectic matrices differ.
    """
    if f.n != g.n or not np.array_equal(f.S, g.S):
        return None
    d = (f.r ^ g.r).astype(np.int64)
    # P flips generator k iff pairing(p, S e_k) = d_k, i.e. p = S Omega d
    p = f2.mul(f.S, f2.mul(omega(f.n), d[:, None]))[:, 0]
    n = f.n
    return PauliString(p[:n], p[n:])
