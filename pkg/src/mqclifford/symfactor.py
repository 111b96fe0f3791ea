"""Factor an invertible GF(2) matrix into two symmetric invertible matrices.

Every square matrix is similar to its transpose through a symmetric
matrix. Given such a ``K`` (symmetric, invertible, ``K B = B^T K``) the
product ``K B`` is symmetric too, and ``B = K^{-1} (K B)``.

``K`` is built from a decomposition of GF(2)^n into B-invariant cyclic
subspaces. On a cyclic block with basis ``v, Bv, ..., B^{d-1} v`` the matrix
of ``B`` is a companion matrix ``C``, and the Hankel matrix of the sequence
``s_k = e_{d-1}^T C^k e_0`` is symmetric, anti-triangular with a unit
anti-diagonal, and satisfies ``H C = C^T H``. Gluing the blocks with the
change of basis ``P`` gives ``K = P^{-T} H P^{-1}``.

The set of all such ``K`` is a linear space (the symmetric intertwiners of
``B`` and ``B^T``); each invertible member is another factorization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import f2
from .exceptions import SingularMatrixError

__all__ = [
    "SymmetricPair",
    "IntertwinerBasis",
    "factor_symmetric_pair",
    "pair_from_intertwiner",
    "intertwiner_space",
    "perturb_factorization",
]


@dataclass(frozen=True, eq=False)
class SymmetricPair:
    """Symmetric factors with ``B = s1 @ s2`` (order ``"s1s2"``) or ``s2 @ s1``."""

    s1: np.ndarray
    s2: np.ndarray
    order: str = "s1s2"

    def __post_init__(self):
        if self.order not in ("s1s2", "s2s1"):
            raise ValueError(f"unknown order {self.order!r}")
        object.__setattr__(self, "s1", f2.as_f2(self.s1))
        object.__setattr__(self, "s2", f2.as_f2(self.s2))

    def product(self) -> np.ndarray:
        if self.order == "s1s2":
            return f2.mul(self.s1, self.s2)
        return f2.mul(self.s2, self.s1)

    def is_valid_for(self, b: np.ndarray) -> bool:
        return (
            f2.is_symmetric(self.s1)
            and f2.is_symmetric(self.s2)
            and f2.is_invertible(self.s1)
            and f2.is_invertible(self.s2)
            and np.array_equal(self.product(), f2.as_f2(b))
        )

    def as_s1s2(self) -> "SymmetricPair":
        """Same factorization relabeled so that ``B = s1 @ s2``."""
        if self.order == "s1s2":
            return self
        return SymmetricPair(self.s2, self.s1, "s1s2")

    def __eq__(self, other):
        if not isinstance(other, SymmetricPair):
            return NotImplemented
        a, b = self.as_s1s2(), other.as_s1s2()
        return np.array_equal(a.s1, b.s1) and np.array_equal(a.s2, b.s2)

    def __repr__(self):
        return f"SymmetricPair(n={self.s1.shape[0]}, order={self.order!r})"


@dataclass(frozen=True, eq=False)
class IntertwinerBasis:
    """Basis of ``{K = K^T : K B = B^T K}``."""

    b: np.ndarray
    basis: tuple

    def __len__(self):
        return len(self.basis)

    def combine(self, coeffs) -> np.ndarray:
        n = self.b.shape[0]
        out = f2.zeros(n)
        for c, k in zip(coeffs, self.basis):
            if c:
                out ^= k
        return out


def _krylov(b: np.ndarray, v: np.ndarray):
    """Dimension ``d`` of the cyclic space of ``v`` and the recurrence.

    Returns ``(V, coeffs)`` with ``V = [v, Bv, ..., B^{d-1} v]`` and
    ``B^d v = V @ coeffs``.
    """
    n = b.shape[0]
    cols = [v]
    for _ in range(n):
        cols.append(f2.mul(b, cols[-1][:, None])[:, 0])
    k = np.stack(cols, axis=1)
    r, pivots = f2.rref(k)
    d = len(pivots)
    # pivots are exactly 0..d-1; column d is B^d v in that basis
    coeffs = r[:d, d].copy()
    return k[:, :d], coeffs


def _companion_hankel(coeffs: np.ndarray) -> np.ndarray:
    d = coeffs.size
    seq = []
    u = np.zeros(d, dtype=np.uint8)
    u[0] = 1
    for _ in range(2 * d - 1):
        seq.append(u[d - 1])
        nxt = np.zeros(d, dtype=np.uint8)
        nxt[1:] = u[:-1]
        if u[d - 1]:
            nxt ^= coeffs
        u = nxt
    seq = np.array(seq, dtype=np.uint8)
    i = np.arange(d)
    return seq[i[:, None] + i[None, :]]


def _cyclic_decomposition(b: np.ndarray, rng, tries: int):
    """Change of basis ``P`` and per-block Hankel forms for ``B``."""
    n = b.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=np.uint8), []
    bt = f2.transpose(b)
    for _ in range(tries):
        v = rng.integers(0, 2, size=n, dtype=np.uint8)
        w = rng.integers(0, 2, size=n, dtype=np.uint8)
        if not v.any() or not w.any():
            continue
        vk, coeffs = _krylov(b, v)
        d = vk.shape[1]
        wk, _ = _krylov(bt, w)
        if wk.shape[1] != d:
            continue
        # Hankel pairing w^T B^{i+j} v must be nondegenerate
        if not f2.is_invertible(f2.mul(wk.T, vk)):
            continue
        if d == n:
            return vk, [_companion_hankel(coeffs)]
        # {x : w^T B^i x = 0, i < d} is B-invariant and complements span(vk)
        comp = f2.transpose(f2.nullspace(wk.T))
        frame = np.concatenate([vk, comp], axis=1)
        inner = f2.mul(f2.mul(f2.invert(frame), b), frame)
        if inner[:d, d:].any() or inner[d:, :d].any():
            continue
        sub_p, sub_h = _cyclic_decomposition(inner[d:, d:], rng, tries)
        if sub_p is None:
            return None, None
        p = np.concatenate([vk, f2.mul(comp, sub_p)], axis=1)
        return p, [_companion_hankel(coeffs)] + sub_h
    return None, None


def _block_diag(blocks) -> np.ndarray:
    n = sum(h.shape[0] for h in blocks)
    out = f2.zeros(n)
    at = 0
    for h in blocks:
        d = h.shape[0]
        out[at:at + d, at:at + d] = h
        at += d
    return out


def pair_from_intertwiner(b: np.ndarray, k: np.ndarray) -> SymmetricPair:
    """``B = K^{-1} (K B)``; raises :class:`SingularMatrixError` if ``K`` is."""
    return SymmetricPair(f2.invert(k), f2.mul(k, b), "s1s2")


def factor_symmetric_pair(b, seed: int = 0, tries: int = 256) -> SymmetricPair:
    """Symmetric invertible ``s1, s2`` with ``B = s1 @ s2``.

    Deterministic for a given ``seed`` (the cyclic vectors are drawn at
    random and every candidate is verified). Symmetric ``B`` gives ``(I, B)``.
    """
    b = f2.as_f2(b)
    n = b.shape[0]
    if not f2.is_invertible(b):
        raise SingularMatrixError("B must be invertible")
    if f2.is_symmetric(b):
        return SymmetricPair(f2.identity(n), b.copy(), "s1s2")
    rng = np.random.default_rng(seed)
    p, hankels = _cyclic_decomposition(b, rng, tries)
    if p is not None:
        h = _block_diag(hankels)
        s1 = f2.mul(f2.mul(p, f2.invert(h)), f2.transpose(p))
        pair = SymmetricPair(s1, f2.mul(f2.invert(s1), b), "s1s2")
        if pair.is_valid_for(b):
            return pair
    # fall back to sampling the intertwiner space
    space = intertwiner_space(b)
    for _ in range(tries * 4):
        k = space.combine(rng.integers(0, 2, size=len(space)))
        if f2.is_invertible(k):
            return pair_from_intertwiner(b, k)
    raise RuntimeError("no symmetric factorization found")  # pragma: no cover


def intertwiner_space(b) -> IntertwinerBasis:
    """Basis of the symmetric ``K`` with ``K B = B^T K``."""
    b = f2.as_f2(b)
    n = b.shape[0]
    if not f2.is_invertible(b):
        raise SingularMatrixError("B must be invertible")
    iu, ju = np.triu_indices(n)
    m = iu.size
    kb = np.zeros((m, n, n), dtype=np.uint8)
    idx = np.arange(m)
    kb[idx, iu, :] = b[ju]
    off = iu != ju
    kb[idx[off], ju[off], :] ^= b[iu[off]]
    # K B + B^T K = K B + (K B)^T; only its upper triangle is independent
    lin = kb ^ kb.transpose(0, 2, 1)
    system = lin[:, iu, ju].T
    kernel = f2.nullspace(system)
    basis = []
    for coeffs in kernel:
        k = f2.zeros(n)
        k[iu, ju] = coeffs
        basis.append(k | k.T)
    return IntertwinerBasis(b.copy(), tuple(basis))


def perturb_factorization(pair: SymmetricPair, space: IntertwinerBasis, move=None, rng=None):
    """Shift the intertwiner ``K = s1^{-1}`` by basis elements.

    ``move`` is a basis index or a sequence of indices (empty means no
    change); ``None`` draws a random nonempty subset with ``rng``. Returns
    the new pair, or ``None`` when the shifted ``K`` is singular.
    """
    pair = pair.as_s1s2()
    if move is None:
        rng = np.random.default_rng(rng)
        if len(space) == 0:
            return pair
        coeffs = rng.integers(0, 2, size=len(space))
        if not coeffs.any():
            coeffs[rng.integers(len(space))] = 1
        move = np.flatnonzero(coeffs)
    elif np.isscalar(move):
        move = [move]
    move = list(move)
    if not move:
        return pair
    k = f2.invert(pair.s1)
    for i in move:
        k = k ^ space.basis[i]
    try:
        return pair_from_intertwiner(space.b, k)
    except SingularMatrixError:
        return None
