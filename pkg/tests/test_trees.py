import pytest
from hypothesis import given

from alphatree import trees
from alphatree.treebuild import construct_tree
from alphatree.trees import Leaf, Node, comb, count_internal, leaf_depths, rebuild, relabel

from strategies import feasible_lengths


def test_codewords_follow_edges():
    tree = Node(Leaf(0), Node(Leaf(1), Leaf(2)))
    assert trees.codewords(tree) == ["0", "10", "11"]
    assert leaf_depths(tree) == [1, 2, 2]
    assert count_internal(tree) == 2


def test_rebuild_contracts_parent_of_deleted_leaf():
    tree = Node(Leaf(0), Node(Leaf(1), Leaf(2)))
    assert rebuild(tree, lambda leaf: None if leaf.symbol == 1 else leaf) == Node(Leaf(0), Leaf(2))
    assert rebuild(Leaf(0), lambda leaf: None) is None


def test_combs():
    assert comb([0, 1, 2], "left") == Node(Node(Leaf(0), Leaf(1)), Leaf(2))
    assert comb([0, 1, 2], "right") == Node(Leaf(0), Node(Leaf(1), Leaf(2)))
    assert comb([4]) == Leaf(4)
    assert relabel(Node(Leaf(0), Leaf(1)), 3) == Node(Leaf(3), Leaf(4))


def test_from_json_rejects_garbage():
    with pytest.raises((ValueError, KeyError, TypeError)):
        trees.from_json({"nope": 1})


@given(feasible_lengths(max_m=100))
def test_json_round_trip(lengths):
    tree = construct_tree(lengths)
    assert trees.from_json(trees.to_json(tree)) == tree
