import json

import pytest

from cyclic_ainfty.graded import GradedError
from cyclic_ainfty.trees import (
    LEAF,
    PlanarTree,
    enumerate_trees,
    schroeder_number,
    tree_from_nested,
    tree_plan,
)


def brute_force_trees(n):
    """Independent generator: grow trees leaf by leaf, deduplicate by shape.

    Every tree with n leaves arises from one with n - 1 by re-attaching its
    rightmost leaf, so inserting a leaf in every possible way and
    canonical-form deduplicating is exhaustive.
    """
    def insertions(t):
        out = [PlanarTree((t, LEAF)), PlanarTree((LEAF, t))]
        if not t.is_leaf:
            kids = t.children
            for pos in range(len(kids) + 1):
                out.append(PlanarTree(kids[:pos] + (LEAF,) + kids[pos:]))
            for i, child in enumerate(kids):
                for grown in insertions(child):
                    out.append(PlanarTree(kids[:i] + (grown,) + kids[i + 1:]))
        return out

    level = {LEAF}
    for _ in range(n - 1):
        level = {grown for t in level for grown in insertions(t)}
    return level


def test_counts_match_schroeder_numbers():
    assert [len(enumerate_trees(n)) for n in range(2, 8)] == [1, 3, 11, 45, 197, 903]
    assert [schroeder_number(n) for n in range(2, 8)] == [1, 3, 11, 45, 197, 903]


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_enumeration_matches_brute_force_tree_for_tree(n):
    listed = enumerate_trees(n)
    assert len(set(listed)) == len(listed)          # duplicate-free
    assert set(listed) == brute_force_trees(n)      # same trees exactly


def test_enumeration_is_deterministic_and_ordered():
    first = [t.to_nested() for t in enumerate_trees(4)]
    second = [t.to_nested() for t in enumerate_trees(4)]
    assert first == second
    # two-child root first, leftmost composition (1, 3) first
    assert first[0] == ["L", ["L", ["L", "L"]]]
    assert first[-1] == ["L", "L", "L", "L"]  # the corolla closes the list


def test_leaf_counts_and_valence():
    for n in (2, 3, 4, 5):
        for t in enumerate_trees(n):
            assert t.leaf_count == n
            stack = [t]
            while stack:
                node = stack.pop()
                if not node.is_leaf:
                    assert len(node.children) >= 2
                    stack.extend(node.children)


def test_single_child_rejected():
    with pytest.raises(GradedError):
        PlanarTree((LEAF,))


def test_small_leaf_count_rejected():
    with pytest.raises(GradedError):
        enumerate_trees(1)


def test_nested_round_trip():
    for t in enumerate_trees(5)[:20]:
        assert tree_from_nested(json.loads(json.dumps(t.to_nested()))) == t


def test_corolla_plan():
    corolla = PlanarTree((LEAF, LEAF))
    assert tree_plan(corolla) == (("t", "t"), ("m2",), ("t",))


def figure_tree():
    """Root m4 over [m2(L,L), m2(L, m3(L,L,L)), L, L]: eight leaves."""
    left = PlanarTree((LEAF, LEAF))
    inner = PlanarTree((LEAF, LEAF, LEAF))
    middle = PlanarTree((LEAF, inner))
    return PlanarTree((left, middle, LEAF, LEAF))


def test_figure_tree_plan_matches_displayed_composition():
    expected = (
        ("t",) * 8,
        ("s*m2", "id", "s*m3", "id", "id"),
        ("id", "s*m2", "id", "id"),
        ("m4",),
        ("t",),
    )
    assert tree_plan(figure_tree()) == expected
