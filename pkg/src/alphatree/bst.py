"""Folding an alphabetic tree on (p_0, q_1, p_1, ..., q_n, p_n) into a search tree.

Every q leaf is deleted (its parent contracted) and its key is placed on the
lowest common ancestor of p_{i-1} and p_i.  In a full tree whose leaves are
p_0..p_n, the internal nodes met by an in-order walk are exactly those
ancestors, in key order, so one walk assigns every key.

Levels: the root is level 1; a gap leaf is charged the level of its parent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Union

from .codegen import Construction, build_alphabetic
from .probability import ProbDist, Rational, as_fraction
from .trees import CodeTree, Leaf, Node, leaf_depths, rebuild


@dataclass(frozen=True)
class SearchDist:
    """(p_0, q_1, p_1, ..., q_n, p_n); p are gap (miss) weights, q key (hit) weights."""

    probs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        probs = tuple(as_fraction(x) for x in self.probs)
        object.__setattr__(self, "probs", probs)
        if len(probs) % 2 == 0:
            raise ValueError("a search distribution has odd length 2n+1")
        if any(x < 0 for x in probs):
            raise ValueError("probabilities must be nonnegative")
        if sum(probs, Fraction(0)) != 1:
            raise ValueError(f"probabilities sum to {sum(probs)}, not 1")

    @classmethod
    def from_pq(cls, p: Iterable[Rational], q: Iterable[Rational]) -> SearchDist:
        p, q = [as_fraction(x) for x in p], [as_fraction(x) for x in q]
        if len(p) != len(q) + 1:
            raise ValueError(f"need len(p) == len(q) + 1, got {len(p)} and {len(q)}")
        out = [p[0]]
        for qi, pi in zip(q, p[1:]):
            out += [qi, pi]
        return cls(tuple(out))

    @property
    def n(self) -> int:
        return len(self.probs) // 2

    @property
    def p(self) -> tuple[Fraction, ...]:
        return self.probs[0::2]

    @property
    def q(self) -> tuple[Fraction, ...]:
        """q[0] is q_1."""
        return self.probs[1::2]


@dataclass(frozen=True, slots=True)
class Gap:
    index: int  # i for p_i


@dataclass(frozen=True, slots=True)
class KeyNode:
    key: int  # i for q_i, 1-based
    left: "SearchTree"
    right: "SearchTree"


SearchTree = Union[Gap, KeyNode]


def inorder_labels(tree: SearchTree) -> list[str]:
    out = []
    stack: list[object] = [tree]
    while stack:
        item = stack.pop()
        if isinstance(item, Gap):
            out.append(f"p{item.index}")
        elif isinstance(item, KeyNode):
            stack.append(item.right)
            stack.append(f"q{item.key}")
            stack.append(item.left)
        else:
            out.append(item)
    return out


def validate(tree: SearchTree, n: int) -> None:
    expected = ["p0"]
    for i in range(1, n + 1):
        expected += [f"q{i}", f"p{i}"]
    got = inorder_labels(tree)
    if got != expected:
        raise ValueError(f"not a valid search tree for n={n}: in-order {got}")


def levels(tree: SearchTree) -> tuple[dict[int, int], dict[int, int]]:
    """(key -> level, gap -> level of its parent), root at level 1."""
    key_level: dict[int, int] = {}
    gap_level: dict[int, int] = {}
    stack: list[tuple[SearchTree, int]] = [(tree, 1)]
    while stack:
        node, level = stack.pop()
        if isinstance(node, Gap):
            gap_level[node.index] = level - 1
        else:
            key_level[node.key] = level
            stack.append((node.right, level + 1))
            stack.append((node.left, level + 1))
    return key_level, gap_level


def bst_cost(tree: SearchTree, sigma: SearchDist) -> Fraction:
    if sigma.n == 0:
        raise ValueError("the search cost is undefined without keys (n = 0)")
    validate(tree, sigma.n)
    key_level, gap_level = levels(tree)
    cost = sum((qi * key_level[i + 1] for i, qi in enumerate(sigma.q)), Fraction(0))
    return cost + sum((pi * gap_level[i] for i, pi in enumerate(sigma.p)), Fraction(0))


@dataclass
class FoldCounter:
    visits: int = 0


def fold_to_bst(tree: CodeTree, sigma: SearchDist, counter: Optional[FoldCounter] = None) -> SearchTree:
    depths = leaf_depths(tree)
    if len(depths) != len(sigma.probs):
        raise ValueError(f"tree has {len(depths)} leaves, sigma has {len(sigma.probs)} positions")
    if sigma.n == 0:
        raise ValueError("nothing to fold without keys (n = 0)")
    gaps_only = rebuild(tree, lambda leaf: None if leaf.symbol % 2 else Leaf(leaf.symbol // 2))
    visits = 0
    # post-order build; each result carries the index of its rightmost gap
    out: list[tuple[SearchTree, int]] = []
    stack: list[object] = [gaps_only]
    while stack:
        item = stack.pop()
        visits += 1
        if item is None:
            right, right_max = out.pop()
            left, left_max = out.pop()
            out.append((KeyNode(left_max + 1, left, right), right_max))
        elif isinstance(item, Leaf):
            out.append((Gap(item.symbol), item.symbol))
        else:
            stack.append(None)
            stack.append(item.right)
            stack.append(item.left)
    if counter is not None:
        counter.visits += visits
    return out[0][0]


class BstResult(NamedTuple):
    tree: SearchTree
    cost: Fraction
    alphabetic: Construction


def build_bst(sigma: SearchDist, counter=None) -> BstResult:
    if sigma.n == 0:
        raise ValueError("build_bst needs n >= 1")
    alpha = build_alphabetic(ProbDist(sigma.probs), counter)
    tree = fold_to_bst(alpha.tree, sigma)
    return BstResult(tree, bst_cost(tree, sigma), alpha)


def to_json(tree: SearchTree) -> dict:
    out: list[dict] = []
    stack: list[object] = [tree]
    while stack:
        item = stack.pop()
        if isinstance(item, Gap):
            out.append({"gap": item.index})
        elif isinstance(item, KeyNode):
            stack.append(item.key)
            stack.append(item.right)
            stack.append(item.left)
        else:
            right = out.pop()
            left = out.pop()
            out.append({"key": item, "left": left, "right": right})
    return out[0]


def from_json(obj: dict) -> SearchTree:
    out: list[SearchTree] = []
    stack: list[object] = [obj]
    while stack:
        item = stack.pop()
        if isinstance(item, int):
            right = out.pop()
            left = out.pop()
            out.append(KeyNode(item, left, right))
        elif "gap" in item:
            out.append(Gap(int(item["gap"])))
        elif {"key", "left", "right"} <= item.keys():
            stack.append(int(item["key"]))
            stack.append(item["right"])
            stack.append(item["left"])
        else:
            raise ValueError(f"malformed search tree node: {item!r}")
    return out[0]
