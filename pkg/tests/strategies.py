"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from alphatree.bst import SearchDist
from alphatree.feasibility import is_feasible
from alphatree.probability import ProbDist, neg_log2_ceil


def dyadic_fractions(max_scale=40, max_int=0):
    return st.builds(
        lambda scale, num: Fraction(num, 2**scale),
        st.integers(0, max_scale),
        st.integers(0, 2**12),
    ).filter(lambda x: max_int == 0 or x <= max_int)


def length_lists(min_m=1, max_m=8, max_len=8):
    return st.lists(st.integers(1, max_len), min_size=min_m, max_size=max_m)


@st.composite
def feasible_lengths(draw, min_m=1, max_m=60, max_len=12):
    """Either a random list that happens to be feasible or one built from a distribution."""
    if draw(st.booleans()):
        lengths = draw(length_lists(min_m, min(max_m, 10), max_len))
        if is_feasible(lengths):
            return lengths
    weights = draw(st.lists(st.integers(1, 1000), min_size=min_m, max_size=max_m))
    total = sum(weights)
    return [neg_log2_ceil(Fraction(w, total)) + 1 for w in weights]


@st.composite
def weights_to_dist(draw, min_m, max_m, max_weight, allow_zero):
    lo = 0 if allow_zero else 1
    weights = draw(st.lists(st.integers(lo, max_weight), min_size=min_m, max_size=max_m))
    if sum(weights) == 0:
        weights[draw(st.integers(0, len(weights) - 1))] = 1
    total = sum(weights)
    return [Fraction(w, total) for w in weights]


def prob_dists(min_m=1, max_m=8, max_weight=30, allow_zero=False):
    return weights_to_dist(min_m, max_m, max_weight, allow_zero).map(lambda ps: ProbDist(tuple(ps)))


@st.composite
def dyadic_dists(draw, min_m=2, max_m=6, max_exp=5):
    """Split mass 1 repeatedly at random positions so every entry stays a power of 1/2."""
    target = draw(st.integers(min_m, max_m))
    probs = [Fraction(1)]
    while len(probs) < target:
        candidates = [i for i, p in enumerate(probs) if p > Fraction(1, 2**max_exp)]
        if not candidates:
            break
        i = draw(st.sampled_from(candidates))
        half = probs[i] / 2
        probs[i : i + 1] = [half, half]
    order = draw(st.permutations(range(len(probs))))
    return ProbDist(tuple(probs[i] for i in order))


@st.composite
def search_dists(draw, min_n=1, max_n=8, max_weight=20):
    n = draw(st.integers(min_n, max_n))
    return SearchDist(tuple(draw(weights_to_dist(2 * n + 1, 2 * n + 1, max_weight, True))))
