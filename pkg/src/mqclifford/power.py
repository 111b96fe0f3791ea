"""Drive-power accounting and reduction for compiled circuits.

The drive power of one MQ gate is modelled by the nuclear norm of its
interaction matrix read as a real symmetric 0/1 matrix. Reductions search
the symmetric factorizations of the linear layer (greedy local search with
restarts over the intertwiner space) and virtual qubit relabelings.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.stats import linregress

from . import f2
from .circuit import Circuit, Gate, mqz
from .exceptions import DegenerateFitError, NonSymmetricXiError, SingularMatrixError
from .symfactor import SymmetricPair, factor_symmetric_pair, intertwiner_space

__all__ = [
    "PowerReport",
    "FitResult",
    "nuclear_norm",
    "total_nuclear_norm",
    "cx_power",
    "walker_optimize",
    "permutation_reduce",
    "baseline_circuit",
    "baseline_gauss_power",
    "fit_power_law",
]


@dataclass
class PowerReport:
    per_gate_nuc: list
    total_nuc: float
    method: str
    n: int
    optimizer_trace: list = field(default_factory=list)
    permutation: tuple | None = None
    mq_count: int = 0


@dataclass(frozen=True)
class FitResult:
    """``omega ~ prefactor * n**beta`` from least squares in log-log space."""

    beta: float
    prefactor: float
    stderr_beta: float


def _nuc_many(xis, include_diagonal: bool = True) -> np.ndarray:
    if not len(xis):
        return np.zeros(0)
    stack = np.asarray(xis, dtype=np.float64)
    if not include_diagonal:
        stack = stack.copy()
        idx = np.arange(stack.shape[-1])
        stack[:, idx, idx] = 0.0
    return np.abs(np.linalg.eigvalsh(stack)).sum(axis=-1)


def nuclear_norm(xi, include_diagonal: bool = True) -> float:
    """Sum of absolute eigenvalues of ``xi`` as a real symmetric matrix."""
    xi = np.asarray(xi)
    if xi.ndim != 2 or xi.shape[0] != xi.shape[1] or not np.array_equal(xi, xi.T):
        raise NonSymmetricXiError("nuclear norm needs a symmetric matrix")
    return float(_nuc_many([xi], include_diagonal)[0])


def total_nuclear_norm(c: Circuit, include_diagonal: bool = True, method: str = "constant-cost") -> PowerReport:
    """Sum of nuclear norms over the MQX/MQZ gates of ``c``."""
    xis = [g.xi for g in c.gates if g.is_entangling]
    per_gate = [float(v) for v in _nuc_many(xis, include_diagonal)]
    return PowerReport(per_gate, float(sum(per_gate)), method, c.n, mq_count=len(xis))


def _entangling(xis):
    return [xi for xi in xis if xi.any() and not f2.is_diagonal(xi)]


def _factors_from_k(k, k_inv, b, b_inv, variant):
    """The five factor matrices for the pair ``(K^{-1}, K B)`` with one inversion."""
    left, left_inv = k_inv, k
    right = f2.mul(k, b)
    right_inv = f2.mul(b_inv, k_inv)
    if variant == "primary":
        return [right, right_inv, left_inv ^ right, left, left_inv]
    if variant == "alternate":
        return [right_inv, right, left ^ right_inv, left_inv, left]
    raise ValueError(f"unknown variant {variant!r}")


def cx_power(pair: SymmetricPair, variant: str = "primary", include_diagonal: bool = True) -> float:
    """Total nuclear norm of the linear-layer synthesis using ``pair``."""
    pair = pair.as_s1s2()
    b = pair.product()
    k = f2.invert(pair.s1)
    xis = _factors_from_k(k, pair.s1, b, f2.invert(b), variant)
    return float(_nuc_many(_entangling(xis), include_diagonal).sum())


def walker_optimize(
    b,
    budget: int | None = None,
    rng=None,
    variant: str = "primary",
    include_diagonal: bool = True,
    patience: int | None = None,
):
    """Greedy local search over symmetric factorizations of ``b``.

    A move adds one basis element of the intertwiner space to the current
    ``K`` (the pair is ``(K^{-1}, K B)``); singular results are rejected and
    improvements accepted. After ``patience`` steps without improvement the
    walk restarts from a random invertible element of the space. Returns the
    best pair and a report whose trace holds the best value after each step.
    """
    b = f2.as_f2(b)
    n = b.shape[0]
    if not f2.is_invertible(b):
        raise SingularMatrixError("B must be invertible")
    budget = 200 * n if budget is None else budget
    rng = np.random.default_rng(rng)
    b_inv = f2.invert(b)
    start = factor_symmetric_pair(b)

    def cost(k, k_inv):
        xis = _entangling(_factors_from_k(k, k_inv, b, b_inv, variant))
        return float(_nuc_many(xis, include_diagonal).sum())

    k_inv = start.s1
    k = f2.invert(k_inv)
    cur = best = cost(k, k_inv)
    best_k = k
    trace = [(0, best)]
    if budget > 0:
        space = intertwiner_space(b)
        dim = len(space)
        patience = patience or max(20, 2 * dim)
        stale = 0
        for step in range(1, budget + 1):
            if stale >= patience:
                cand = space.combine(rng.integers(0, 2, size=dim))
                stale = 0
                force = True
            else:
                cand = k ^ space.basis[rng.integers(dim)]
                force = False
            try:
                cand_inv = f2.invert(cand)
            except SingularMatrixError:
                stale += 1
                trace.append((step, best))
                continue
            value = cost(cand, cand_inv)
            if force or value < cur:
                k, k_inv, cur = cand, cand_inv, value
                if not force:
                    stale = 0
            else:
                stale += 1
            if value < best:
                best, best_k = value, cand
            trace.append((step, best))
    pair = SymmetricPair(f2.invert(best_k), f2.mul(best_k, b), "s1s2")
    xis = _entangling(_factors_from_k(best_k, pair.s1, b, b_inv, variant))
    per_gate = [float(v) for v in _nuc_many(xis, include_diagonal)]
    report = PowerReport(per_gate, float(sum(per_gate)), "constant-cost", n, trace, mq_count=len(xis))
    return pair, report


def _assignment_perm(m: np.ndarray) -> np.ndarray:
    """Permutation maximizing the ones on the diagonal of ``P M``."""
    _, cols = linear_sum_assignment(m.astype(np.float64), maximize=True)
    return cols


def permutation_reduce(
    m,
    candidates: int = 0,
    rng=None,
    budget: int = 0,
    variant: str = "primary",
    include_diagonal: bool = True,
):
    """Best virtual relabeling ``M' = P M`` by compiled total nuclear norm.

    Candidates are the identity, the permutation that best aligns ``M``
    with the identity, and ``candidates`` uniformly random permutations;
    each is scored after a walker run with ``budget`` steps. Returns
    ``(perm, M', pair, report)`` where ``P e_i = e_{perm[i]}``.
    """
    m = f2.as_f2(m)
    n = m.shape[0]
    rng = np.random.default_rng(rng)
    perms = [np.arange(n)]
    if candidates > 0:
        perms.append(_assignment_perm(m))
        perms += [rng.permutation(n) for _ in range(candidates)]
    best = None
    for perm in perms:
        mp = f2.mul(f2.permutation_matrix(perm), m)
        if np.array_equal(mp, f2.identity(n)):
            report = PowerReport([], 0.0, "constant-cost", n, [(0, 0.0)])
            eye = f2.identity(n)
            cand = (tuple(int(p) for p in perm), mp, SymmetricPair(eye, eye), report)
        else:
            b = f2.transpose(f2.invert(mp))
            pair, report = walker_optimize(b, budget, rng, variant, include_diagonal)
            cand = (tuple(int(p) for p in perm), mp, pair, report)
        if best is None or cand[3].total_nuc < best[3].total_nuc:
            best = cand
    perm, mp, pair, report = best
    report.permutation = perm
    return perm, mp, pair, report


def baseline_circuit(m) -> Circuit:
    """Gaussian-elimination CNOTs rewritten as ``H_t CZ H_t`` and merged.

    CZ terms are merged left to right into one MQZ layer while none of
    their qubits carries a single-qubit gate that arrived after the qubit
    joined the layer; other single-qubit gates commute out in front.
    """
    m = f2.as_f2(m)
    n = m.shape[0]
    steps = f2.gauss_cnot_synthesis(m)
    out: list[Gate] = []
    state = {"xi": None}

    def close():
        if state["xi"] is not None:
            out.extend(state["pre"])
            if state["xi"].any():
                out.append(mqz(state["xi"]))
            out.extend(state["post"])
        state.update(xi=None)

    def single(q):
        g = Gate("H", (q,))
        if state["xi"] is None:
            out.append(g)
        elif q in state["support"]:
            state["post"].append(g)
            state["blocked"].add(q)
        else:
            state["pre"].append(g)

    for step in steps:
        c, t = step.control, step.target
        single(t)
        if state["xi"] is None or {c, t} & state["blocked"]:
            close()
            state.update(xi=f2.zeros(n), support=set(), blocked=set(), pre=[], post=[])
        state["xi"][c, t] ^= 1
        state["xi"][t, c] ^= 1
        state["support"] |= {c, t}
        single(t)
    close()
    return Circuit(n, out)


def baseline_gauss_power(m, include_diagonal: bool = True) -> PowerReport:
    return total_nuclear_norm(baseline_circuit(m), include_diagonal, method="baseline")


def fit_power_law(points) -> FitResult:
    """Fit ``log omega = beta log n + c`` by least squares."""
    pts = np.asarray(list(points), dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] < 3 or len(np.unique(pts[:, 0])) < 3:
        raise DegenerateFitError("need at least three distinct n values")
    if np.any(pts <= 0):
        raise DegenerateFitError("n and omega must be positive")
    fit = linregress(np.log(pts[:, 0]), np.log(pts[:, 1]))
    return FitResult(float(fit.slope), float(np.exp(fit.intercept)), float(fit.stderr))
