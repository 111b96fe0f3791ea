"""Constant-count synthesis with global multiqubit gates.

Notation: ``Z(xi)`` / ``X(xi)`` are the symplectic matrices
``[[I, 0], [xi, I]]`` and ``[[I, xi], [0, I]]`` of the MQZ / MQX gates and
``D(A) = diag(A, A^{-T})`` is a linear reversible layer. For a layer with
``B = A^{-T} = L R`` (``L``, ``R`` symmetric) both of

    D(A) = X(L^-1) Z(L) X(L^-1 + R) Z(R^-1) X(R)          ("primary")
    D(A) = Z(L) X(L^-1) Z(L + R^-1) X(R) Z(R^-1)          ("alternate")

hold exactly over GF(2) (rightmost factor acts first). Gates whose matrix is
zero are dropped and gates with a purely diagonal matrix are single-qubit
layers, so a symmetric ``B`` (``L = I``) needs at most three entangling
gates.

A general Clifford is brought to ``H_J . D(A) . Z(xi1) . H . Z(xi2)``
(temporal order); the alternate construction for ``D(A)`` ends with an MQZ
gate that is absorbed into ``Z(xi1)``, for at most six entangling gates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import f2
from . import symplectic as sp
from .circuit import Circuit, CompiledResult, Gate, mqx, mqz, pauli_layer, to_symplectic
from .exceptions import SingularMatrixError, SymplecticMismatchError
from .symfactor import SymmetricPair, factor_symmetric_pair

__all__ = [
    "PauliCorrection",
    "CanonicalForm",
    "cx_factor_sequence",
    "mq_product",
    "emit_mq",
    "solve_pauli_correction",
    "synthesize_cx",
    "synthesize_cx_alt",
    "canonical_form",
    "canonical_circuit",
    "compile_clifford",
    "merge_cz",
]

VARIANTS = ("primary", "alternate")


@dataclass(frozen=True, eq=False)
class PauliCorrection:
    """The layer ``Z**mu X**eta``, applied before the synthesized gates."""

    mu: np.ndarray
    eta: np.ndarray

    @property
    def is_identity(self) -> bool:
        return not (self.mu.any() or self.eta.any())

    def gate(self) -> Gate:
        return pauli_layer(self.mu, self.eta)


@dataclass(frozen=True, eq=False)
class CanonicalForm:
    """Layers ``l1, CX(cx), CZ(cz1), l2, CZ(cz2), l3`` in temporal order."""

    n: int
    l1: tuple
    cx: np.ndarray
    cz1: np.ndarray
    l2: tuple
    cz2: np.ndarray
    l3: tuple


def _cx_pair(pair: SymmetricPair):
    pair = pair.as_s1s2()
    return pair.s1, pair.s2


def cx_factor_sequence(pair: SymmetricPair, variant: str = "primary"):
    """``(basis, xi)`` factors of ``D(A)`` for ``B = s1 s2``, in temporal order."""
    left, right = _cx_pair(pair)
    left_inv, right_inv = f2.invert(left), f2.invert(right)
    if variant == "primary":
        return [
            ("X", right),
            ("Z", right_inv),
            ("X", left_inv ^ right),
            ("Z", left),
            ("X", left_inv),
        ]
    if variant == "alternate":
        return [
            ("Z", right_inv),
            ("X", right),
            ("Z", left ^ right_inv),
            ("X", left_inv),
            ("Z", left),
        ]
    raise ValueError(f"unknown variant {variant!r}")


def mq_product(factors) -> np.ndarray:
    """Symplectic matrix of ``(basis, xi)`` factors given in temporal order."""
    n = factors[0][1].shape[0]
    total = f2.identity(2 * n)
    eye, zero = f2.identity(n), f2.zeros(n)
    for basis, xi in factors:
        if basis == "Z":
            m = np.block([[eye, zero], [xi, eye]])
        else:
            m = np.block([[eye, xi], [zero, eye]])
        total = f2.mul(m, total)
    return total


def emit_mq(basis: str, xi: np.ndarray) -> list[Gate]:
    """Gates for one factor: nothing for zero, single-qubit for diagonal."""
    if not xi.any():
        return []
    if f2.is_diagonal(xi):
        gates = []
        for q in np.flatnonzero(np.diag(xi)):
            q = int(q)
            if basis == "Z":
                gates.append(Gate("S", (q,)))
            else:
                gates += [Gate("H", (q,)), Gate("S", (q,)), Gate("H", (q,))]
        return gates
    return [mqz(xi) if basis == "Z" else mqx(xi)]


def solve_pauli_correction(target: sp.SymplecticOp, candidate: Circuit) -> PauliCorrection:
    """Pauli layer ``P`` with ``candidate`` applied after ``P`` equal to ``target``."""
    op = to_symplectic(candidate)
    if not np.array_equal(op.S, target.S):
        raise SymplecticMismatchError("candidate realizes a different symplectic matrix")
    n = target.n
    d = target.r ^ op.r
    # a prepended Pauli p flips generator k iff it anticommutes with it
    return PauliCorrection(mu=d[:n].copy(), eta=d[n:].copy())


def _with_correction(target: sp.SymplecticOp, gates) -> Circuit:
    candidate = Circuit(target.n, gates)
    corr = solve_pauli_correction(target, candidate)
    if corr.is_identity:
        return candidate
    return Circuit(target.n, [corr.gate(), *gates])


def _linear_target(m: np.ndarray) -> sp.SymplecticOp:
    return sp.gen_cx_layer(m)


def synthesize_cx(m, pair: SymmetricPair | None = None, variant: str = "primary") -> CompiledResult:
    """At most five MQ gates implementing ``|v> -> |M v>`` exactly.

    ``pair`` overrides the default factorization of ``B = M^{-T}``.
    """
    m = f2.as_f2(m)
    n = m.shape[0]
    if not f2.is_invertible(m):
        raise SingularMatrixError("M must be invertible")
    if np.array_equal(m, f2.identity(n)):
        eye = f2.identity(n)
        return CompiledResult(Circuit(n), eye, eye, None, variant)
    b = f2.transpose(f2.invert(m))
    if pair is None:
        pair = factor_symmetric_pair(b)
    elif not pair.is_valid_for(b):
        raise ValueError("pair does not factor M^{-T}")
    pair = pair.as_s1s2()
    gates = []
    for basis, xi in cx_factor_sequence(pair, variant):
        gates += emit_mq(basis, xi)
    circuit = _with_correction(_linear_target(m), gates)
    name = "symmetric-shortcut" if f2.is_symmetric(b) else variant
    return CompiledResult(circuit, pair.s1, pair.s2, None, name)


def synthesize_cx_alt(m, pair: SymmetricPair | None = None) -> CompiledResult:
    """Like :func:`synthesize_cx` but starting and ending with MQZ gates."""
    return synthesize_cx(m, pair, variant="alternate")


def _merge_hadamards(first, second) -> list[Gate]:
    """Concatenate two Hadamard layers, cancelling repeated qubits."""
    qubits = set()
    for g in (*first, *second):
        if g.kind != "H":
            raise ValueError("expected Hadamard-only layers")
        qubits ^= {g.qubits[0]}
    return [Gate("H", (q,)) for q in sorted(qubits)]


def canonical_form(op: sp.SymplecticOp) -> CanonicalForm:
    """Decompose ``op`` (up to a Pauli layer) into -L-CX-CZ-L-CZ-L-.

    The right Hadamard layer acts on the complement of a maximal independent
    set of columns of the upper-right block, which makes that block
    invertible; the remaining layers are then read off the blocks.
    """
    n = op.n
    s = op.S
    _, pivots = f2.rref(s[:n, n:])
    flip = [q for q in range(n) if q not in set(pivots)]
    sh = s.copy()
    for q in flip:
        sh[:, [q, n + q]] = sh[:, [n + q, q]]
    p_blk, q_blk, t_blk = sh[:n, :n], sh[:n, n:], sh[n:, n:]
    q_inv = f2.invert(q_blk)
    cx = f2.transpose(q_inv)
    cz1 = f2.mul(p_blk, f2.transpose(q_blk))
    cz2 = f2.mul(t_blk, q_inv)
    l1 = [Gate("H", (q,)) for q in flip]
    l2 = [Gate("H", (q,)) for q in range(n)]
    if np.array_equal(cx, f2.identity(n)) and not cz1.any():
        l1, l2 = [], _merge_hadamards(l1, l2)
    return CanonicalForm(n, tuple(l1), cx, cz1, tuple(l2), cz2, ())


def canonical_circuit(form: CanonicalForm) -> Circuit:
    """Recompose a canonical form using Gaussian-elimination CNOTs for CX."""
    gates = list(form.l1)
    gates += [Gate("CNOT", (s.control, s.target)) for s in f2.gauss_cnot_synthesis(form.cx)]
    gates += emit_mq("Z", form.cz1)
    gates += list(form.l2)
    gates += emit_mq("Z", form.cz2)
    gates += list(form.l3)
    return Circuit(form.n, gates)


def merge_cz(g1: Gate, g2: Gate):
    """Fuse two MQZ gates: ``(gate or None, mu)`` with ``g2 g1 = Z**mu . gate``.

    Diagonal terms present in both combine to ``S**2 = Z``; that Pauli
    residue is returned as the mask ``mu``.
    """
    if g1.kind != "MQZ" or g2.kind != "MQZ":
        raise ValueError("merge_cz expects two MQZ gates")
    if g1.xi.shape != g2.xi.shape:
        raise ValueError("qubit count mismatch")
    xi = g1.xi ^ g2.xi
    mu = np.diag(g1.xi) & np.diag(g2.xi)
    return (mqz(xi) if xi.any() else None), mu.astype(np.uint8)


def _is_block_diagonal(op: sp.SymplecticOp) -> bool:
    n = op.n
    return not (op.S[:n, n:].any() or op.S[n:, :n].any())


def compile_clifford(
    op: sp.SymplecticOp,
    pair_selector: Callable[[np.ndarray], SymmetricPair] | None = None,
) -> CompiledResult:
    """Exact circuit for ``op`` with at most six entangling MQ gates.

    ``pair_selector`` maps the ``B`` block of the linear layer to the
    symmetric factorization to use (default: :func:`factor_symmetric_pair`).
    """
    n = op.n
    select = pair_selector or factor_symmetric_pair
    if _is_block_diagonal(op):
        m = op.S[:n, :n]
        eye = f2.identity(n)
        if np.array_equal(m, eye):
            circuit = _with_correction(op, [])
            return CompiledResult(circuit, eye, eye, None, "alternate")
        pair = select(f2.transpose(f2.invert(m))).as_s1s2()
        gates = []
        for basis, xi in cx_factor_sequence(pair, "alternate"):
            gates += emit_mq(basis, xi)
        return CompiledResult(_with_correction(op, gates), pair.s1, pair.s2, None, "alternate")

    form = canonical_form(op)
    gates = list(form.l1)
    cz1 = form.cz1
    s1 = s2 = None
    if not np.array_equal(form.cx, f2.identity(n)):
        pair = select(f2.transpose(f2.invert(form.cx))).as_s1s2()
        s1, s2 = pair.s1, pair.s2
        factors = cx_factor_sequence(pair, "alternate")
        for basis, xi in factors[:-1]:
            gates += emit_mq(basis, xi)
        # last factor is Z(L); fold it into the following CZ layer
        cz1 = factors[-1][1] ^ form.cz1
    gates += emit_mq("Z", cz1)
    gates += list(form.l2)
    gates += emit_mq("Z", form.cz2)
    gates += list(form.l3)
    return CompiledResult(_with_correction(op, gates), s1, s2, None, "merged-6")
