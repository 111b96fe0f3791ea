"""Dense linear algebra over GF(2).

Matrices are plain ``numpy`` arrays of dtype ``uint8`` holding 0/1 entries.
Row reductions run on rows packed eight bits to a byte, so a row update is a
single vectorized XOR regardless of the column count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ParseError, SingularMatrixError

__all__ = [
    "CnotStep",
    "as_f2",
    "identity",
    "zeros",
    "elementary",
    "add",
    "mul",
    "transpose",
    "rank",
    "rref",
    "invert",
    "is_invertible",
    "nullspace",
    "is_symmetric",
    "is_diagonal",
    "permutation_matrix",
    "random_invertible",
    "random_symmetric",
    "gauss_cnot_synthesis",
    "cnot_steps_matrix",
    "format_matrix",
    "parse_matrix",
]


@dataclass(frozen=True)
class CnotStep:
    """One CNOT; as a row operation it adds row ``control`` into row ``target``."""

    control: int
    target: int

    def __post_init__(self):
        if self.control == self.target:
            raise ValueError("control and target must differ")
        if self.control < 0 or self.target < 0:
            raise IndexError("negative qubit index")


def as_f2(a) -> np.ndarray:
    """Copy ``a`` into a 0/1 ``uint8`` array (entries reduced mod 2)."""
    arr = np.asarray(a)
    if arr.dtype == bool:
        return arr.astype(np.uint8)
    return (arr.astype(np.int64) & 1).astype(np.uint8)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.uint8)


def zeros(n_rows: int, n_cols: int | None = None) -> np.ndarray:
    return np.zeros((n_rows, n_rows if n_cols is None else n_cols), dtype=np.uint8)


def elementary(n: int, i: int, j: int) -> np.ndarray:
    """The n x n matrix with a single one at ``(i, j)``."""
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"({i}, {j}) out of range for n={n}")
    e = zeros(n)
    e[i, j] = 1
    return e


def add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return np.bitwise_xor(a, b)


def mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product mod 2."""
    if a.shape[-1] != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    # float BLAS is exact here: partial sums stay far below 2**53
    prod = np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64)
    return (prod.astype(np.int64) & 1).astype(np.uint8)


def transpose(a: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(a.T)


def _reduce(packed: np.ndarray, n_cols: int, pivot_limit: int | None = None):
    """In-place Gauss-Jordan on bit-packed rows; returns the pivot columns."""
    m = packed.shape[0]
    limit = n_cols if pivot_limit is None else pivot_limit
    pivots = []
    row = 0
    for col in range(limit):
        if row == m:
            break
        word, shift = col >> 3, 7 - (col & 7)
        below = np.flatnonzero((packed[row:, word] >> shift) & 1)
        if below.size == 0:
            continue
        p = row + below[0]
        if p != row:
            packed[[row, p]] = packed[[p, row]]
        hits = np.flatnonzero((packed[:, word] >> shift) & 1)
        hits = hits[hits != row]
        if hits.size:
            packed[hits] ^= packed[row]
        pivots.append(col)
        row += 1
    return pivots


def rref(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = as_f2(a)
    if a.size == 0:
        return a.copy(), []
    packed = np.packbits(a, axis=1)
    pivots = _reduce(packed, a.shape[1])
    return np.unpackbits(packed, axis=1, count=a.shape[1]), pivots


def rank(a: np.ndarray) -> int:
    return len(rref(a)[1])


def invert(a: np.ndarray) -> np.ndarray:
    """Inverse over GF(2); raises :class:`SingularMatrixError` when rank < n."""
    a = as_f2(a)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    aug = np.packbits(np.concatenate([a, identity(n)], axis=1), axis=1)
    pivots = _reduce(aug, 2 * n, pivot_limit=n)
    if len(pivots) < n:
        raise SingularMatrixError(f"matrix has rank {len(pivots)} < {n}")
    return np.unpackbits(aug, axis=1, count=2 * n)[:, n:]


def is_invertible(a: np.ndarray) -> bool:
    return a.shape[0] == a.shape[1] and rank(a) == a.shape[0]


def nullspace(a: np.ndarray) -> np.ndarray:
    """Basis of ``{v : a v = 0}`` as the rows of the returned array."""
    r, pivots = rref(a)
    n_cols = r.shape[1]
    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = zeros(len(free), n_cols)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, p in enumerate(pivots):
            basis[k, p] = r[i, f]
    return basis


def is_symmetric(a: np.ndarray) -> bool:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return bool(np.array_equal(a, a.T))


def is_diagonal(a: np.ndarray) -> bool:
    return not np.any(a ^ np.diag(np.diag(a)))


def permutation_matrix(perm) -> np.ndarray:
    """Matrix P with ``P[perm[i], i] = 1``, so ``P e_i = e_{perm[i]}``."""
    perm = np.asarray(perm, dtype=np.int64)
    p = zeros(len(perm))
    p[perm, np.arange(len(perm))] = 1
    return p


def random_invertible(n: int, rng=None) -> np.ndarray:
    """Uniform sample from GL(n, 2) by rejection on full rank."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(rng)
    while True:
        m = rng.integers(0, 2, size=(n, n), dtype=np.uint8)
        if rank(m) == n:
            return m


def random_symmetric(n: int, rng=None) -> np.ndarray:
    rng = np.random.default_rng(rng)
    upper = np.triu(rng.integers(0, 2, size=(n, n), dtype=np.uint8))
    return upper | upper.T


def gauss_cnot_synthesis(m: np.ndarray) -> list[CnotStep]:
    """CNOT sequence (temporal order) implementing ``|v> -> |M v>``.

    Gauss-Jordan elimination without row swaps: a missing pivot is filled by
    adding the lowest row below it that has a one in the pivot column. Each
    row addition is one CNOT, so the result has at most ``n**2`` steps.
    """
    work = as_f2(m).copy()
    n = work.shape[0]
    if work.shape != (n, n):
        raise ValueError(f"expected a square matrix, got shape {work.shape}")
    ops: list[CnotStep] = []
    for col in range(n):
        if not work[col, col]:
            below = np.flatnonzero(work[col + 1:, col])
            if below.size == 0:
                raise SingularMatrixError("matrix is not invertible")
            src = col + 1 + int(below[0])
            work[col] ^= work[src]
            ops.append(CnotStep(src, col))
        for row in np.flatnonzero(work[:, col]):
            if row != col:
                work[row] ^= work[col]
                ops.append(CnotStep(col, int(row)))
    # E_k ... E_1 M = I, hence M = E_1 ... E_k and E_k acts first.
    return ops[::-1]


def cnot_steps_matrix(n: int, steps) -> np.ndarray:
    """Matrix of the computational-basis action of a CNOT sequence."""
    m = identity(n)
    for step in steps:
        m[step.target] ^= m[step.control]
    return m


def format_matrix(a: np.ndarray) -> str:
    """Text form: ``"rows cols"`` then one line of 0/1 characters per row."""
    a = as_f2(a)
    lines = [f"{a.shape[0]} {a.shape[1]}"]
    lines += ["".join("1" if b else "0" for b in row) for row in a]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty matrix text")
    try:
        n_rows, n_cols = (int(t) for t in lines[0].split())
    except ValueError:
        raise ParseError("bad header, expected 'n_rows n_cols'", 1) from None
    if len(lines) - 1 != n_rows:
        raise ParseError(f"expected {n_rows} rows, found {len(lines) - 1}")
    out = zeros(n_rows, n_cols)
    for i, row in enumerate(lines[1:]):
        if len(row) != n_cols or set(row) - {"0", "1"}:
            raise ParseError(f"bad matrix row {row!r}", i + 2)
        out[i] = [c == "1" for c in row]
    return out
