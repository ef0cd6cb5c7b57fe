import pytest
from hypothesis import given, strategies as st

from treeshift.tree import DirectedTree, TreeError


def test_single_vertex():
    t = DirectedTree("o")
    assert t.vertices == ("o",)
    assert t.children("o") == []
    assert t.parent("o") is None
    assert t.height == 0


def test_children_keep_insertion_order():
    t = DirectedTree("o", [("o", "b"), ("o", "a"), ("b", "c")])
    assert t.children("o") == ["b", "a"]
    assert t.vertices == ("o", "b", "a", "c")
    assert t.depth("c") == 2
    assert t.ancestors("c") == ["c", "b", "o"]
    assert t.descendants("b") == {"b", "c"}


@pytest.mark.parametrize(
    "edges",
    [
        [("o", "a"), ("a", "o")],  # edge into the root
        [("o", "a"), ("o", "b"), ("a", "b")],  # two parents
        [("o", "o")],
        [("o", "a"), ("x", "y")],  # unreachable
    ],
)
def test_invalid_trees_rejected(edges):
    with pytest.raises(TreeError):
        DirectedTree("o", edges)


def test_unknown_vertex():
    with pytest.raises((KeyError, TreeError)):
        DirectedTree("o").children("nope")


@st.composite
def parent_maps(draw):
    n = draw(st.integers(1, 30))
    return {i: draw(st.integers(0, i - 1)) for i in range(1, n)}


@given(parent_maps())
def test_random_trees_partition_children(parents):
    t = DirectedTree.from_parent_map(0, parents)
    assert len(t) == len(parents) + 1
    assert t.children_partition_check()
    for v, p in parents.items():
        assert t.parent(v) == p
        assert t.depth(v) == t.depth(p) + 1
    assert t == DirectedTree.from_parent_map(0, dict(parents))
