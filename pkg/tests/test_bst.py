import os
from fractions import Fraction

import pytest
from hypothesis import given

from alphatree import bst
from alphatree.bounds import sum_adjacent_min
from alphatree.bst import FoldCounter, Gap, KeyNode, SearchDist, bst_cost, build_bst, fold_to_bst
from alphatree.codegen import build_alphabetic, tree_cost
from alphatree.probability import ProbDist
from alphatree.trees import Leaf, Node, codewords, rebuild

from strategies import search_dists

F = Fraction

# leaves p0 q1 p1 q2 p2 q3 p3
SEVEN = Node(
    Node(Node(Leaf(0), Leaf(1)), Leaf(2)),
    Node(Node(Leaf(3), Node(Leaf(4), Leaf(5))), Leaf(6)),
)
SEVEN_FOLDED = KeyNode(2, KeyNode(1, Gap(0), Gap(1)), KeyNode(3, Gap(2), Gap(3)))


def fold_by_common_prefix(tree, n):
    """Contract away q leaves, then label the node at the common prefix of p_{i-1} and p_i with i."""
    gaps = rebuild(tree, lambda leaf: None if leaf.symbol % 2 else Leaf(leaf.symbol // 2))
    words = codewords(gaps)
    label = {}
    for i in range(1, n + 1):
        a, b = words[i - 1], words[i]
        k = 0
        while k < min(len(a), len(b)) and a[k] == b[k]:
            k += 1
        assert a[:k] not in label, "two keys on one node"
        label[a[:k]] = i

    def convert(node, path):
        if isinstance(node, Leaf):
            return Gap(node.symbol)
        return KeyNode(label[path], convert(node.left, path + "0"), convert(node.right, path + "1"))

    return convert(gaps, "")


def test_seven_leaf_fold():
    sigma = SearchDist((F(1, 7),) * 7)
    folded = fold_to_bst(SEVEN, sigma)
    assert folded == SEVEN_FOLDED
    assert bst_cost(folded, sigma) == F(13, 7)
    key_level, gap_level = bst.levels(folded)
    assert key_level == {1: 2, 2: 1, 3: 2}
    assert gap_level == {0: 2, 1: 2, 2: 2, 3: 2}


def test_single_fold():
    # cherry (p0, q1) next to p1: q1 becomes the root
    tree = Node(Node(Leaf(0), Leaf(1)), Leaf(2))
    sigma = SearchDist((F(1, 3),) * 3)
    assert fold_to_bst(tree, sigma) == KeyNode(1, Gap(0), Gap(1))


def test_one_key_costs():
    sigma = SearchDist((0, 1, 0))
    result = build_bst(sigma)
    assert result.tree == KeyNode(1, Gap(0), Gap(1))
    assert result.cost == 1
    # a point mass on a gap costs the level of that gap's parent
    assert bst_cost(SEVEN_FOLDED, SearchDist((1, 0, 0, 0, 0, 0, 0))) == 2


def test_uniform_seven_pipeline():
    result = build_bst(SearchDist((F(1, 7),) * 7))
    assert result.cost == F(13, 7)
    assert result.alphabetic.cost == F(20, 7)


def test_rejections():
    with pytest.raises(ValueError):
        fold_to_bst(SEVEN, SearchDist((F(1, 5),) * 5))
    with pytest.raises(ValueError):
        build_bst(SearchDist((1,)))
    with pytest.raises(ValueError):
        bst_cost(Gap(0), SearchDist((1,)))
    with pytest.raises(ValueError):
        SearchDist((F(1, 2), F(1, 2)))
    with pytest.raises(ValueError):
        bst.validate(KeyNode(1, Gap(1), Gap(0)), 1)


def test_from_pq_interleaves():
    sigma = SearchDist.from_pq([F(1, 4), F(1, 4)], [F(1, 2)])
    assert sigma.probs == (F(1, 4), F(1, 2), F(1, 4))
    assert sigma.p == (F(1, 4), F(1, 4)) and sigma.q == (F(1, 2),) and sigma.n == 1


@given(search_dists(max_n=40))
def test_fold_matches_common_prefix_labelling(sigma):
    alpha = build_alphabetic(ProbDist(sigma.probs))
    folded = fold_to_bst(alpha.tree, sigma)
    bst.validate(folded, sigma.n)
    assert folded == fold_by_common_prefix(alpha.tree, sigma.n)


@given(search_dists(max_n=100))
def test_fold_is_valid_and_saves_enough(sigma):
    counter = FoldCounter()
    alpha = build_alphabetic(ProbDist(sigma.probs))
    folded = fold_to_bst(alpha.tree, sigma, counter)
    bst.validate(folded, sigma.n)
    saving = tree_cost(alpha.tree, sigma.probs) - bst_cost(folded, sigma)
    assert saving >= sum(sigma.q) + sum_adjacent_min(sigma.p)
    assert counter.visits <= 3 * len(sigma.probs)


@given(search_dists(max_n=30))
def test_json_round_trip(sigma):
    tree = build_bst(sigma).tree
    assert bst.from_json(bst.to_json(tree)) == tree


def test_many_random_sigmas_are_valid():
    import random

    rng = random.Random(int(os.environ.get("ALPHATREE_SEED", "0")))
    for _ in range(300):
        n = rng.randint(1, 100)
        weights = [rng.choice([0, 0, 1, 2, 3, 10, 50]) for _ in range(2 * n + 1)]
        weights[rng.randrange(len(weights))] += 1
        total = sum(weights)
        sigma = SearchDist(tuple(F(w, total) for w in weights))
        bst.validate(build_bst(sigma).tree, n)
