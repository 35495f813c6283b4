"""Planar binary trees: enumeration, ranking, grafting and serialization.

A tree is either the leaf or an internal node with two subtrees.  The size of
a tree is its number of internal nodes; Y(n) denotes the set of trees of size
n, of cardinality the n-th Catalan number.

The canonical order on Y(n) puts the left comb first: trees are sorted by
size of the left subtree descending, then rank of the left subtree, then rank
of the right subtree.  Ranks refer to positions in this order.

Strings use the grammar  T ::= "." | "(" T T ")"  and round-trip exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache


class TreeError(ValueError):
    pass


class ParseError(TreeError):
    """Malformed tree string; ``offset`` is the failing position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class BinaryTree:
    """Immutable planar binary tree; equal trees are structurally equal."""

    left: BinaryTree | None = None
    right: BinaryTree | None = None
    size: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if (self.left is None) != (self.right is None):
            raise TreeError("a node needs both subtrees, a leaf has none")
        n = 0 if self.left is None else 1 + self.left.size + self.right.size
        object.__setattr__(self, "size", n)

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def __repr__(self) -> str:
        return f"BinaryTree({serialize(self)!r})"


LEAF = BinaryTree()


def node(left: BinaryTree, right: BinaryTree) -> BinaryTree:
    return BinaryTree(left, right)


def serialize(t: BinaryTree) -> str:
    if t.is_leaf:
        return "."
    return "(" + serialize(t.left) + serialize(t.right) + ")"


def parse(s: str) -> BinaryTree:
    """Parse the "."/"(TT)" grammar; raises ParseError with the bad offset."""

    def term(i: int) -> tuple[BinaryTree, int]:
        if i >= len(s):
            raise ParseError("unexpected end of input", i)
        if s[i] == ".":
            return LEAF, i + 1
        if s[i] == "(":
            left, j = term(i + 1)
            right, k = term(j)
            if k >= len(s) or s[k] != ")":
                raise ParseError("expected ')'", k)
            return node(left, right), k + 1
        raise ParseError(f"unexpected character {s[i]!r}", i)

    t, end = term(0)
    if end != len(s):
        raise ParseError("trailing input", end)
    return t


@lru_cache(maxsize=None)
def enumerate_trees(n: int) -> tuple[BinaryTree, ...]:
    """All trees of size n in canonical order (left comb first, right comb last)."""
    if n < 0:
        raise TreeError("size must be nonnegative")
    if n == 0:
        return (LEAF,)
    out = []
    for k in range(n - 1, -1, -1):
        for left in enumerate_trees(k):
            for right in enumerate_trees(n - 1 - k):
                out.append(node(left, right))
    return tuple(out)


@lru_cache(maxsize=None)
def _rank_table(n: int) -> dict[BinaryTree, int]:
    return {t: i for i, t in enumerate(enumerate_trees(n))}


def rank(t: BinaryTree) -> int:
    """Position of t in enumerate_trees(t.size)."""
    return _rank_table(t.size)[t]


def unrank(n: int, r: int) -> BinaryTree:
    return enumerate_trees(n)[r]


def graft_over(x: BinaryTree, y: BinaryTree) -> BinaryTree:
    """Attach x at the leftmost leaf of y (the product written x/y)."""
    if y.is_leaf:
        return x
    return node(graft_over(x, y.left), y.right)


def graft_under(x: BinaryTree, y: BinaryTree) -> BinaryTree:
    """Attach y at the rightmost leaf of x (the product written x\\y)."""
    if x.is_leaf:
        return y
    return node(x.left, graft_under(x.right, y))


def decompose(z: BinaryTree) -> tuple[BinaryTree, BinaryTree] | None:
    """Subtrees of the root, or None for the leaf."""
    if z.is_leaf:
        return None
    return z.left, z.right


def mirror(t: BinaryTree) -> BinaryTree:
    """Swap left and right children everywhere."""
    if t.is_leaf:
        return t
    return node(mirror(t.right), mirror(t.left))


def left_comb(n: int) -> BinaryTree:
    t = LEAF
    for _ in range(n):
        t = node(t, LEAF)
    return t


def right_comb(n: int) -> BinaryTree:
    t = LEAF
    for _ in range(n):
        t = node(LEAF, t)
    return t
