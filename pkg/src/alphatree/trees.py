"""Full binary code trees with in-order symbol leaves.

Edges to the left child read 0 and to the right child read 1.  All walks are
iterative because construction can produce trees deeper than the recursion
limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Union


@dataclass(frozen=True, slots=True)
class Leaf:
    symbol: int


@dataclass(frozen=True, slots=True)
class Node:
    left: "CodeTree"
    right: "CodeTree"


CodeTree = Union[Leaf, Node]


def walk_leaves(tree: CodeTree) -> Iterator[tuple[Leaf, str]]:
    """Yield (leaf, codeword) in in-order."""
    stack: list[tuple[CodeTree, str]] = [(tree, "")]
    while stack:
        node, path = stack.pop()
        if isinstance(node, Leaf):
            yield node, path
        else:
            stack.append((node.right, path + "1"))
            stack.append((node.left, path + "0"))


def walk_depths(tree: CodeTree) -> Iterator[tuple[Leaf, int]]:
    stack: list[tuple[CodeTree, int]] = [(tree, 0)]
    while stack:
        node, depth = stack.pop()
        if isinstance(node, Leaf):
            yield node, depth
        else:
            stack.append((node.right, depth + 1))
            stack.append((node.left, depth + 1))


def leaf_symbols(tree: CodeTree) -> list[int]:
    return [leaf.symbol for leaf, _ in walk_depths(tree)]


def leaf_depths(tree: CodeTree) -> list[int]:
    return [d for _, d in walk_depths(tree)]


def codewords(tree: CodeTree) -> list[str]:
    return [w for _, w in walk_leaves(tree)]


def count_internal(tree: CodeTree) -> int:
    count = 0
    stack = [tree]
    while stack:
        node = stack.pop()
        if isinstance(node, Node):
            count += 1
            stack.append(node.left)
            stack.append(node.right)
    return count


def rebuild(tree: CodeTree, on_leaf: Callable[[Leaf], Optional[CodeTree]]) -> Optional[CodeTree]:
    """Post-order rebuild: replace each leaf by ``on_leaf(leaf)``.

    A leaf mapped to ``None`` is deleted and its parent contracted, so the
    sibling subtree takes the parent's place.  Returns ``None`` if every leaf
    was deleted.
    """
    out: list[Optional[CodeTree]] = []
    stack: list[object] = [tree]
    while stack:
        item = stack.pop()
        if item is None:
            right = out.pop()
            left = out.pop()
            if left is None:
                out.append(right)
            elif right is None:
                out.append(left)
            else:
                out.append(Node(left, right))
        elif isinstance(item, Leaf):
            out.append(on_leaf(item))
        else:
            stack.append(None)
            stack.append(item.right)
            stack.append(item.left)
    return out[0]


def relabel(tree: CodeTree, offset: int) -> CodeTree:
    return rebuild(tree, lambda leaf: Leaf(leaf.symbol + offset))


def comb(symbols: list[int], lean: str = "left") -> CodeTree:
    """A caterpillar holding ``symbols`` in order; depth grows linearly."""
    if not symbols:
        raise ValueError("comb needs at least one symbol")
    if lean == "left":
        tree: CodeTree = Leaf(symbols[0])
        for s in symbols[1:]:
            tree = Node(tree, Leaf(s))
    else:
        tree = Leaf(symbols[-1])
        for s in reversed(symbols[:-1]):
            tree = Node(Leaf(s), tree)
    return tree


def to_json(tree: CodeTree) -> dict:
    """Nested ``{"leaf": i}`` / ``{"left": ..., "right": ...}`` objects."""
    out: list[dict] = []
    stack: list[object] = [tree]
    while stack:
        item = stack.pop()
        if item is None:
            right = out.pop()
            left = out.pop()
            out.append({"left": left, "right": right})
        elif isinstance(item, Leaf):
            out.append({"leaf": item.symbol})
        else:
            stack.append(None)
            stack.append(item.right)
            stack.append(item.left)
    return out[0]


def from_json(obj: dict) -> CodeTree:
    out: list[CodeTree] = []
    stack: list[object] = [obj]
    while stack:
        item = stack.pop()
        if item is None:
            right = out.pop()
            left = out.pop()
            out.append(Node(left, right))
        elif "leaf" in item:
            out.append(Leaf(int(item["leaf"])))
        elif "left" in item and "right" in item:
            stack.append(None)
            stack.append(item["right"])
            stack.append(item["left"])
        else:
            raise ValueError(f"malformed tree node: {item!r}")
    return out[0]
