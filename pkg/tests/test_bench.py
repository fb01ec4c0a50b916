import random

import pytest

from alphatree.bench import bench_csv, fit_exponent, random_feasible_lengths, run_bench, seeded_rng
from alphatree.feasibility import is_feasible


def test_fit_recovers_exponent():
    xs = [2**k for k in range(5, 12)]
    beta, c = fit_exponent(xs, [3 * x**1.5 for x in xs])
    assert beta == pytest.approx(1.5)
    assert c == pytest.approx(3)


def test_random_lengths_are_feasible():
    rng = random.Random(11)
    for m in (1, 2, 17, 500):
        assert is_feasible(random_feasible_lengths(m, rng))


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("ALPHATREE_SEED", "42")
    a = seeded_rng().random()
    assert a == random.Random(42).random()
    assert seeded_rng(5).random() == random.Random(5).random()


def test_probe_counts_are_reproducible():
    first = run_bench((100, 200), seed=1)
    second = run_bench((100, 200), seed=1)
    assert [(r.m, r.probes) for r in first] == [(r.m, r.probes) for r in second]
    assert bench_csv(first).count("\n") == 4


def test_sizes_validated():
    with pytest.raises(ValueError):
        run_bench((10, 10))
    with pytest.raises(ValueError):
        run_bench((1, 4))
