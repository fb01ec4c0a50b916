"""Hill-climb over integer weight vectors for a sigma whose optimal search cost
exceeds the H + 1 - p_0 - p_n + p_max value."""

import argparse
import random
from fractions import Fraction

from alphatree.bounds import bst_bounds
from alphatree.bst import SearchDist
from alphatree.oracle import optimal_bst_dp


def excess(weights):
    total = sum(weights)
    sigma = SearchDist(tuple(Fraction(w, total) for w in weights))
    return float(optimal_bst_dp(sigma)[0]) - bst_bounds(sigma)["de_prisco"].value


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--restarts", type=int, default=40)
    parser.add_argument("--steps", type=int, default=300)
    args = parser.parse_args()
    rng = random.Random(args.seed)
    best = (float("-inf"), None)
    for _ in range(args.restarts):
        n = rng.randint(2, 7)
        weights = [rng.choice([0, 0, 1, 2, 5, 10, 30]) for _ in range(2 * n + 1)]
        if sum(weights) == 0:
            continue
        score = excess(weights)
        for _ in range(args.steps):
            trial = list(weights)
            i = rng.randrange(len(trial))
            trial[i] = max(0, trial[i] + rng.choice([-3, -1, 1, 3, 10]))
            if sum(trial) == 0:
                continue
            s = excess(trial)
            if s >= score:
                weights, score = trial, s
        if score > best[0]:
            best = (score, weights)
            print(f"excess {score:+.6f} weights {weights}", flush=True)
    if best[0] > 0:
        total = sum(best[1])
        print("counterexample:", [str(Fraction(w, total)) for w in best[1]])


if __name__ == "__main__":
    main()
