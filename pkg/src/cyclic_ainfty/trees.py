"""Planar rooted trees indexing the transfer summands.

Every internal vertex has at least two (ordered) children; the trees with n
leaves are counted by the little Schroeder numbers 1, 1, 3, 11, 45, 197, ...
Enumeration is recursive-lexicographic: by child count, then by leaf-count
composition, then recursively per child, so the order is deterministic and
the list duplicate-free by construction.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .graded import GradedError

__all__ = ["PlanarTree", "LEAF", "enumerate_trees", "tree_plan", "tree_from_nested", "schroeder_number"]


@dataclass(frozen=True)
class PlanarTree:
    """Leaf when ``children`` is empty, otherwise an internal vertex."""

    children: tuple["PlanarTree", ...] = ()

    def __post_init__(self) -> None:
        if len(self.children) == 1:
            raise GradedError("internal vertices need at least two children")

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def leaf_count(self) -> int:
        if self.is_leaf:
            return 1
        return sum(c.leaf_count for c in self.children)

    @property
    def height(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + max(c.height for c in self.children)

    def internal_vertices(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + sum(c.internal_vertices() for c in self.children)

    def to_nested(self):
        """Serializable shape: "L" for a leaf, list of child shapes otherwise."""
        if self.is_leaf:
            return "L"
        return [c.to_nested() for c in self.children]

    def __repr__(self) -> str:
        return f"PlanarTree({self.to_nested()!r})"


LEAF = PlanarTree()


def tree_from_nested(shape) -> PlanarTree:
    if shape == "L":
        return LEAF
    if isinstance(shape, (list, tuple)):
        return PlanarTree(tuple(tree_from_nested(c) for c in shape))
    raise GradedError(f"bad tree shape {shape!r}")


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered compositions of ``total`` into ``parts`` positive parts, lex order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@functools.lru_cache(maxsize=None)
def enumerate_trees(n: int) -> tuple[PlanarTree, ...]:
    """All planar rooted trees with n leaves, deterministic order."""
    if n < 2:
        raise GradedError("trees in the transfer sum have at least 2 leaves")
    return tuple(_trees_allowing_leaf(n))


@functools.lru_cache(maxsize=None)
def _trees_allowing_leaf(n: int) -> tuple[PlanarTree, ...]:
    if n == 1:
        return (LEAF,)
    out: list[PlanarTree] = []
    for k in range(2, n + 1):
        for comp in _compositions(n, k):
            for kids in itertools.product(*(_trees_allowing_leaf(m) for m in comp)):
                out.append(PlanarTree(kids))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def schroeder_number(n: int) -> int:
    """Little Schroeder number: tree count for n leaves (independent recurrence)."""
    if n in (1, 2):
        return 1
    # n * S(n) = 3(2n-3) S(n-1) - (n-3) S(n-2)
    num = 3 * (2 * n - 3) * schroeder_number(n - 1) - (n - 3) * schroeder_number(n - 2)
    if num % n:
        raise ArithmeticError("Schroeder recurrence did not divide evenly")
    return num // n


def tree_plan(tree: PlanarTree) -> tuple[tuple[str, ...], ...]:
    """Normalized stage-by-stage composition plan, canopy to trunk.

    Stage 0 applies ``t`` to every leaf.  Stage h collapses every vertex of
    height h into ``s*m_k`` (plain ``m_k`` at the root), padding untouched
    slots with ``id``.  The final stage applies the root edge ``t``.
    """
    if tree.is_leaf:
        raise GradedError("a bare leaf has no composition plan")
    n = tree.leaf_count
    root_height = tree.height
    stages: list[tuple[str, ...]] = [("t",) * n]

    def stage_ops(node: PlanarTree, h: int) -> list[str]:
        if node.height < h:
            return ["id"]
        if node.height == h:
            label = f"m{len(node.children)}"
            if h != root_height:
                label = "s*" + label
            return [label]
        ops: list[str] = []
        for child in node.children:
            ops.extend(stage_ops(child, h))
        return ops

    for h in range(1, root_height + 1):
        stages.append(tuple(stage_ops(tree, h)))
    stages.append(("t",))
    return tuple(stages)
