"""The Tamari order on planar binary trees.

A tree y covers x when x is obtained from y by one right rotation
Node(A, Node(B, C)) -> Node(Node(A, B), C) at some internal node.  Rotations
go strictly down, so the left comb is the minimum and the right comb the
maximum of Y(n).

``TamariPoset`` holds the full order data for one size: the canonical element
list, the Hasse diagram (lower covers), the boolean order matrix, the zeta
matrix zeta[x][y] = 1 iff y <= x, and its exact integer inverse, the Moebius
matrix.  Posets are immutable after construction.

Disk cache format (version 1): {"version": 1, "n": ..., "elements": [tree
strings in canonical order], "covers": [[i, j], ...]} with i the upper and j
the lower end of a Hasse edge.  Order, zeta and Moebius matrices are derived
data and are always recomputed on load.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

import numpy as np

from tamcox.trees import BinaryTree, TreeError, enumerate_trees, node, rank, serialize

CACHE_ENV_VAR = "TAMCOX_CACHE_DIR"
CACHE_VERSION = 1

# Enumerating Y(n) and its order matrix is quadratic in Catalan(n); sizes
# beyond this are refused rather than left to thrash.
PRACTICAL_BOUND = 10


class ResourceLimitError(RuntimeError):
    pass


def lower_covers(t: BinaryTree) -> list[BinaryTree]:
    """Trees covered by t, one per internal node whose right child is internal."""
    if t.is_leaf:
        return []
    out = []
    left, right = t.left, t.right
    if not right.is_leaf:
        out.append(node(node(left, right.left), right.right))
    out.extend(node(sub, right) for sub in lower_covers(left))
    out.extend(node(left, sub) for sub in lower_covers(right))
    seen: set[BinaryTree] = set()
    unique = []
    for s in out:
        if s not in seen:
            seen.add(s)
            unique.append(s)
    return unique


class TamariPoset:
    """Order data for Y(n); all attributes are read-only by convention."""

    def __init__(self, n: int, covers: list[tuple[int, ...]]):
        self.n = n
        self.elements: tuple[BinaryTree, ...] = enumerate_trees(n)
        c = len(self.elements)
        self.covers: tuple[tuple[int, ...], ...] = tuple(tuple(cv) for cv in covers)

        # Downsets as bitmasks: down[x] = reflexive-transitive closure of covers.
        down = [0] * c
        done = [False] * c
        for start in range(c):
            stack = [start]
            while stack:
                x = stack[-1]
                if done[x]:
                    stack.pop()
                    continue
                pending = [y for y in self.covers[x] if not done[y]]
                if pending:
                    stack.extend(pending)
                    continue
                mask = 1 << x
                for y in self.covers[x]:
                    mask |= down[y]
                down[x] = mask
                done[x] = True
                stack.pop()
        self._down = down

        # leq[i, j] iff element i <= element j, decoded column-wise from masks.
        nbytes = (c + 7) // 8
        cols = np.empty((c, c), dtype=bool)
        for j in range(c):
            raw = np.frombuffer(down[j].to_bytes(nbytes, "little"), dtype=np.uint8)
            cols[j] = np.unpackbits(raw, bitorder="little", count=c).astype(bool)
        self.leq: np.ndarray = cols.T
        self.leq.setflags(write=False)

        self.zeta: np.ndarray = self.leq.T.astype(np.int64)
        self.zeta.setflags(write=False)
        self.mobius: np.ndarray = self._invert_zeta()
        self.mobius.setflags(write=False)

    def _invert_zeta(self) -> np.ndarray:
        """Exact integer inverse of zeta, certified by an exact product check."""
        c = len(self.elements)
        sizes = [bin(m).count("1") for m in self._down]
        order = sorted(range(c), key=lambda x: (sizes[x], x))
        pos = {x: i for i, x in enumerate(order)}
        lower = self.zeta[np.ix_(order, order)]  # unit lower triangular
        inv = np.zeros((c, c), dtype=np.int64)
        for i in range(c):
            row = np.zeros(c, dtype=np.int64)
            row[i] = 1
            if i:
                support = np.flatnonzero(lower[i, :i])
                if support.size:
                    row[:i] -= lower[i, support] @ inv[support, :i]
            inv[i] = row
        mobius = np.zeros((c, c), dtype=np.int64)
        mobius[np.ix_(order, order)] = inv
        m = int(np.abs(mobius).max()) if c else 0
        if m >= 1 << 26:
            raise ArithmeticError("Moebius entries too large to certify")
        # Entries fit well below 2**26, so the float64 product is exact.
        prod = self.zeta.astype(np.float64) @ mobius.astype(np.float64)
        if not np.array_equal(prod, np.eye(c)):
            raise ArithmeticError("zeta inversion failed certification")
        return mobius

    def rank_of(self, t: BinaryTree) -> int:
        if t.size != self.n:
            raise TreeError(f"tree of size {t.size} not in Y({self.n})")
        return rank(t)

    def leq_trees(self, x: BinaryTree, y: BinaryTree) -> bool:
        return bool(self.leq[self.rank_of(x), self.rank_of(y)])

    def to_cache_json(self) -> dict:
        edges = [[i, j] for i, cv in enumerate(self.covers) for j in cv]
        return {
            "version": CACHE_VERSION,
            "n": self.n,
            "elements": [serialize(t) for t in self.elements],
            "covers": edges,
        }


def _compute_covers(n: int) -> list[tuple[int, ...]]:
    elements = enumerate_trees(n)
    return [tuple(rank(c) for c in lower_covers(t)) for t in elements]


def build_poset(n: int, cache_dir: str | Path | None = None) -> TamariPoset:
    """Construct Y(n) with full order data, optionally via a disk cache."""
    if n < 0:
        raise TreeError("size must be nonnegative")
    if n > PRACTICAL_BOUND:
        raise ResourceLimitError(
            f"Y({n}) exceeds the practical bound n <= {PRACTICAL_BOUND}"
        )
    if cache_dir is None:
        return TamariPoset(n, _compute_covers(n))
    path = Path(cache_dir) / f"tamari_v{CACHE_VERSION}_n{n}.json"
    if path.exists():
        loaded = load_poset(path)
        if loaded.n == n:
            return loaded
    poset = TamariPoset(n, _compute_covers(n))
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(poset.to_cache_json()))
    tmp.replace(path)
    return poset


def load_poset(path: str | Path) -> TamariPoset:
    data = json.loads(Path(path).read_text())
    if data.get("version") != CACHE_VERSION:
        raise ValueError(f"unsupported cache version {data.get('version')!r}")
    n = data["n"]
    expected = [serialize(t) for t in enumerate_trees(n)]
    if data["elements"] != expected:
        raise ValueError("cache elements disagree with canonical enumeration")
    covers: list[list[int]] = [[] for _ in expected]
    for i, j in data["covers"]:
        covers[i].append(j)
    return TamariPoset(n, [tuple(cv) for cv in covers])


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return Path(env)
    xdg = os.environ.get("XDG_CACHE_HOME")
    base = Path(xdg) if xdg else Path.home() / ".cache"
    return base / "tamcox"


class PosetStore:
    """Memoizing source of Tamari posets, optionally backed by the disk cache."""

    def __init__(self, cache_dir: str | Path | None = None, use_disk: bool = False):
        self._dir = Path(cache_dir) if cache_dir else (default_cache_dir() if use_disk else None)
        self._posets: dict[int, TamariPoset] = {}

    def get(self, n: int) -> TamariPoset:
        if n not in self._posets:
            self._posets[n] = build_poset(n, self._dir)
        return self._posets[n]


_DEFAULT_STORE = PosetStore()


def leq(x: BinaryTree, y: BinaryTree) -> bool:
    """The Tamari order; x and y must have equal size."""
    if x.size != y.size:
        raise TreeError("cannot compare trees of different sizes")
    return _DEFAULT_STORE.get(x.size).leq_trees(x, y)
