"""Power sweep over random linear reversible layers.

For each qubit count and instance a random invertible ``M`` is drawn and
compiled two ways: the constant-count construction (with factorization
search and virtual permutations) and the merged Gaussian-elimination
baseline. Rows are written to CSV and a power law is fitted per method.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import f2
from .power import FitResult, baseline_gauss_power, fit_power_law, permutation_reduce

METHODS = ("constant-cost", "baseline")
CSV_COLUMNS = ("n", "method", "omega_nuc", "seed", "mq_count", "permutation_applied")


@dataclass
class BenchConfig:
    n_values: list = field(default_factory=lambda: list(range(3, 64, 4)))
    instances_per_n: int = 20
    seed: int = 0
    walker_budget: int | None = None
    permutation_candidates: int = 8
    methods: tuple = METHODS
    output_path: str | None = None
    include_diagonal: bool = True
    workers: int = 1

    def __post_init__(self):
        if len(self.n_values) < 2:
            raise ValueError("need at least two qubit counts")
        if min(self.n_values) < 2:
            raise ValueError("qubit counts must be at least 2")
        if self.instances_per_n < 1:
            raise ValueError("instances_per_n must be positive")
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown methods {sorted(unknown)}")


def instance_seed(seed: int, n: int, instance: int) -> int:
    return int(np.random.SeedSequence([seed, n, instance]).generate_state(1)[0])


def run_instance(args):
    n, instance, cfg = args
    seed = instance_seed(cfg.seed, n, instance)
    rng = np.random.default_rng(seed)
    m = f2.random_invertible(n, rng)
    rows = []
    for method in cfg.methods:
        if method == "baseline":
            rep = baseline_gauss_power(m, cfg.include_diagonal)
            permuted = False
        else:
            budget = 200 * n if cfg.walker_budget is None else cfg.walker_budget
            perm, _, _, rep = permutation_reduce(
                m, cfg.permutation_candidates, rng, budget, include_diagonal=cfg.include_diagonal
            )
            permuted = perm != tuple(range(n))
        rows.append((n, instance, method, rep.total_nuc, seed, rep.mq_count, int(permuted)))
    return rows


def run_bench(cfg: BenchConfig):
    """Return ``(rows, fits)``; rows are sorted by ``(n, instance, method)``."""
    jobs = [(n, i, cfg) for n in sorted(cfg.n_values) for i in range(cfg.instances_per_n)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            chunks = list(pool.map(run_instance, jobs))
    else:
        chunks = [run_instance(j) for j in jobs]
    rows = sorted((r for chunk in chunks for r in chunk), key=lambda r: (r[0], r[1], r[2]))
    fits = {method: fit_power_law(mean_points(rows, method)) for method in cfg.methods}
    return rows, fits


def mean_points(rows, method):
    by_n = {}
    for n, _, m, omega, *_ in rows:
        if m == method:
            by_n.setdefault(n, []).append(omega)
    return [(n, float(np.mean(v))) for n, v in sorted(by_n.items())]


def format_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for n, _, method, omega, seed, mq, permuted in rows:
        writer.writerow([n, method, f"{omega:.9f}", seed, mq, permuted])
    return buf.getvalue()


def format_summary(fits: dict[str, FitResult]) -> str:
    return "\n".join(
        f"{method}: beta={fit.beta:.4f} +/- {fit.stderr_beta:.4f} prefactor={fit.prefactor:.4f}"
        for method, fit in fits.items()
    )
