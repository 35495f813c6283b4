"""Exact arithmetic for planar binary trees, Tamari lattices, a ternary graded
operad with a rewriting system, and the Coxeter transformation of Tamari posets.

Everything is computed over the integers or the rationals; no floating point
enters any result.
"""

from tamcox.trees import BinaryTree, LEAF, node, enumerate_trees, parse, serialize

__all__ = [
    "BinaryTree",
    "LEAF",
    "node",
    "enumerate_trees",
    "parse",
    "serialize",
]
