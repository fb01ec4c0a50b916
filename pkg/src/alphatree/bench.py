"""Probe-count benchmark for the tree construction."""

from __future__ import annotations

import math
import os
import random
import statistics
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .probability import neg_log2_ceil
from .treebuild import ProbeCounter, construct_tree

DEFAULT_SIZES = tuple(2**e for e in range(10, 17))
SEED_ENV = "ALPHATREE_SEED"


def seeded_rng(seed: Optional[int] = None) -> random.Random:
    """RNG seeded from ``seed``, else from ALPHATREE_SEED, else 0."""
    if seed is None:
        seed = int(os.environ.get(SEED_ENV, "0"))
    return random.Random(seed)


def random_feasible_lengths(m: int, rng: random.Random, max_weight: int = 1000) -> list[int]:
    """ceil(-log2 p) + 1 for a random strictly positive distribution; always feasible."""
    weights = [rng.randint(1, max_weight) for _ in range(m)]
    total = sum(weights)
    return [neg_log2_ceil(Fraction(w, total)) + 1 for w in weights]


@dataclass(frozen=True)
class BenchRow:
    m: int
    probes: int
    splits: int
    wall_ms: float


def run_bench(sizes: Sequence[int] = DEFAULT_SIZES, seed: Optional[int] = None) -> list[BenchRow]:
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("benchmark sizes must be strictly increasing")
    if any(m < 2 for m in sizes):
        raise ValueError("benchmark sizes must be at least 2")
    rng = seeded_rng(seed)
    rows = []
    for m in sizes:
        lengths = random_feasible_lengths(m, rng)
        counter = ProbeCounter()
        start = time.perf_counter()
        construct_tree(lengths, counter)
        elapsed = (time.perf_counter() - start) * 1000.0
        rows.append(BenchRow(m, counter.probes, counter.splits, elapsed))
    return rows


def fit_exponent(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float]:
    """Least-squares (beta, c) for y = c * x**beta on log-log axes."""
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    fit = statistics.linear_regression(lx, ly)
    return fit.slope, math.exp(fit.intercept)


def bench_csv(rows: Sequence[BenchRow]) -> str:
    lines = ["m,probes,splits,wall_ms"]
    lines += [f"{r.m},{r.probes},{r.splits},{r.wall_ms:.3f}" for r in rows]
    if len(rows) >= 2:
        beta, c = fit_exponent([r.m for r in rows], [r.probes for r in rows])
        wall_beta, _ = fit_exponent([r.m for r in rows], [max(r.wall_ms, 1e-6) for r in rows])
        lines.append(f"# probe slope {beta:.4f} (c={c:.4f}); wall-clock slope {wall_beta:.4f}")
    return "\n".join(lines) + "\n"
