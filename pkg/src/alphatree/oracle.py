"""Brute-force ground truth for the fast constructions.

Interval dynamic programs for optimal alphabetic codes and optimal search
trees, exhaustive enumeration of tree shapes, and the exhaustive filler
search over fully extended dyadic length lists.  All exact; cubic or worse,
meant for small inputs only.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .bst import Gap, KeyNode, SearchDist, SearchTree
from .dyadic import ONE
from .feasibility import check_lengths, sum_sequence
from .probability import ProbDist, is_power_of_half, neg_log2_ceil
from .trees import CodeTree, Leaf, Node

ENUMERATION_LIMIT = 10


def _integer_weights(probs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = math.lcm(*(Fraction(p).denominator for p in probs))
    return [int(p * den) for p in probs], den


def optimal_alphabetic_dp(phi: ProbDist) -> tuple[Fraction, CodeTree]:
    """Minimum average length over all alphabetic codes, with one optimal tree.

    cost[i][j] = W(i..j) + min_k cost[i][k] + cost[k+1][j]; ties pick the smallest k.
    """
    w, den = _integer_weights(phi.probs)
    m = len(w)
    prefix = list(itertools.accumulate(w, initial=0))
    cost = [[0] * m for _ in range(m)]
    split = [[0] * m for _ in range(m)]
    for size in range(2, m + 1):
        for i in range(m - size + 1):
            j = i + size - 1
            best, best_k = None, i
            for k in range(i, j):
                c = cost[i][k] + cost[k + 1][j]
                if best is None or c < best:
                    best, best_k = c, k
            cost[i][j] = best + prefix[j + 1] - prefix[i]
            split[i][j] = best_k
    return Fraction(cost[0][m - 1], den), _rebuild_alphabetic(split, 0, m - 1)


def _rebuild_alphabetic(split, first: int, last: int) -> CodeTree:
    out: list[CodeTree] = []
    stack: list[object] = [(first, last)]
    while stack:
        item = stack.pop()
        if item is None:
            right = out.pop()
            left = out.pop()
            out.append(Node(left, right))
        elif item[0] == item[1]:
            out.append(Leaf(item[0]))
        else:
            i, j = item
            k = split[i][j]
            stack += [None, (k + 1, j), (i, k)]
    return out[0]


def optimal_bst_dp(sigma: SearchDist, fast: bool = False) -> tuple[Fraction, SearchTree]:
    """Optimal search-tree cost with the root at level 1 and gaps charged their parent's level.

    ``fast`` restricts roots to the monotone window
    root[i][j-1] <= root[i][j] <= root[i+1][j] (quadratic time).
    """
    n = sigma.n
    if n < 1:
        raise ValueError("optimal_bst_dp needs n >= 1")
    w, den = _integer_weights(sigma.probs)
    p, q = w[0::2], w[1::2]
    # keys 1..n; e[i][j] covers keys i..j with e[i][i-1] = 0
    e = [[0] * (n + 2) for _ in range(n + 2)]
    weight = [[0] * (n + 2) for _ in range(n + 2)]
    root = [[0] * (n + 2) for _ in range(n + 2)]
    for i in range(1, n + 2):
        weight[i][i - 1] = p[i - 1]
    for size in range(1, n + 1):
        for i in range(1, n - size + 2):
            j = i + size - 1
            weight[i][j] = weight[i][j - 1] + q[j - 1] + p[j]
            if fast and size > 1:
                candidates = range(root[i][j - 1], root[i + 1][j] + 1)
            else:
                candidates = range(i, j + 1)
            best, best_r = None, i
            for r in candidates:
                c = e[i][r - 1] + e[r + 1][j]
                if best is None or c < best:
                    best, best_r = c, r
            e[i][j] = best + weight[i][j]
            root[i][j] = best_r
    return Fraction(e[1][n], den), _rebuild_bst(root, n)


def _rebuild_bst(root, n: int) -> SearchTree:
    out: list[SearchTree] = []
    stack: list[object] = [(1, n)]
    while stack:
        item = stack.pop()
        if isinstance(item, int):
            right = out.pop()
            left = out.pop()
            out.append(KeyNode(item, left, right))
            continue
        i, j = item
        if i > j:
            out.append(Gap(j))
        else:
            r = root[i][j]
            stack += [r, (r + 1, j), (i, r - 1)]
    return out[0]


@lru_cache(maxsize=None)
def full_trees(m: int) -> tuple[CodeTree, ...]:
    """Every full binary tree with m leaves labelled 0..m-1 in order (Catalan(m-1) shapes)."""
    if m < 1:
        raise ValueError("need m >= 1")
    return tuple(_shapes(0, m))


@lru_cache(maxsize=None)
def _shapes_cached(first: int, m: int) -> tuple[CodeTree, ...]:
    return tuple(_shapes(first, m))


def _shapes(first: int, m: int) -> Iterator[CodeTree]:
    if m == 1:
        yield Leaf(first)
        return
    for k in range(1, m):
        for left in _shapes_cached(first, k):
            for right in _shapes_cached(first + k, m - k):
                yield Node(left, right)


@lru_cache(maxsize=None)
def full_tree_depth_vectors(m: int) -> tuple[tuple[int, ...], ...]:
    """Leaf depth vectors of all full binary trees with m leaves."""
    if m == 1:
        return ((0,),)
    out = []
    for k in range(1, m):
        for a in full_tree_depth_vectors(k):
            for b in full_tree_depth_vectors(m - k):
                out.append(tuple(d + 1 for d in a) + tuple(d + 1 for d in b))
    return tuple(out)


def feasible_by_enumeration(lengths: Sequence[int]) -> bool:
    """True iff some binary tree has its m in-order leaves at exactly these depths.

    Such a tree collapses (by contracting one-child nodes) to a full tree
    whose depths are no larger, and any full tree can be stretched back by
    appending bits, so it suffices to look for a dominated full tree.
    """
    lengths = check_lengths(lengths)
    if len(lengths) > ENUMERATION_LIMIT:
        raise ValueError(f"enumeration is limited to m <= {ENUMERATION_LIMIT}")
    return any(
        all(d <= ell for d, ell in zip(vec, lengths))
        for vec in full_tree_depth_vectors(len(lengths))
    )


def optimal_alphabetic_by_enumeration(phi: ProbDist) -> Fraction:
    if len(phi) > ENUMERATION_LIMIT:
        raise ValueError(f"enumeration is limited to m <= {ENUMERATION_LIMIT}")
    return min(
        sum((p * d for p, d in zip(phi, vec)), Fraction(0))
        for vec in full_tree_depth_vectors(len(phi))
    )


def fully_extended_lengths(phi: Sequence[Fraction], fillers: Sequence[int]) -> list[int]:
    """(x_1, c_1 + 1, x_2, ..., c_m + 1, x_{m+1}) with c_i = ceil(-log2 phi_i)."""
    out = [fillers[0]]
    for p, x in zip(phi, fillers[1:]):
        out += [neg_log2_ceil(p) + 1, x]
    return out


def appendix_b_check(phi: ProbDist, x_max: int) -> bool:
    """True iff no filler choice in {1..x_max}^(m+1) makes the fully extended list feasible."""
    probs = list(phi)
    if any(p == 0 or not is_power_of_half(p) for p in probs):
        raise ValueError("appendix_b_check needs a strictly positive dyadic distribution")
    if any(a < b for a, b in zip(probs, probs[1:])):
        raise ValueError("appendix_b_check needs a non-increasing distribution")
    if x_max < 1:
        raise ValueError("x_max must be positive")
    for fillers in itertools.product(range(1, x_max + 1), repeat=len(probs) + 1):
        if sum_sequence(fully_extended_lengths(probs, fillers)).last < ONE:
            return False
    return True


def default_filler_cap(phi: ProbDist) -> int:
    """Largest non-filler length plus one; longer fillers cannot change any alpha."""
    return max(neg_log2_ceil(p) + 1 for p in phi) + 1


def enumerate_bsts(n: int) -> Iterator[SearchTree]:
    """All search trees on keys 1..n (every key node has two children, gaps as leaves)."""
    for tree in full_trees(n + 1):
        yield _as_search_tree(tree)


def _as_search_tree(tree: CodeTree) -> SearchTree:
    out: list[tuple[SearchTree, int]] = []
    stack: list[object] = [tree]
    while stack:
        item = stack.pop()
        if item is None:
            right, right_max = out.pop()
            left, left_max = out.pop()
            out.append((KeyNode(left_max + 1, left, right), right_max))
        elif isinstance(item, Leaf):
            out.append((Gap(item.symbol), item.symbol))
        else:
            stack += [None, item.right, item.left]
    return out[0][0]
