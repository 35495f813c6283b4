from collections import deque

import numpy as np
import pytest

from tamcox.tamari import (
    PosetStore,
    ResourceLimitError,
    TamariPoset,
    build_poset,
    leq,
    load_poset,
    lower_covers,
)
from tamcox.trees import (
    LEAF,
    TreeError,
    enumerate_trees,
    graft_over,
    graft_under,
    left_comb,
    mirror,
    node,
    parse,
    rank,
    right_comb,
    serialize,
)


def rotation_closure_leq(x, y):
    """Independent oracle: BFS over right rotations starting from y."""

    def rotations(t):
        if t.is_leaf:
            return []
        out = []
        if not t.right.is_leaf:
            out.append(node(node(t.left, t.right.left), t.right.right))
        out += [node(s, t.right) for s in rotations(t.left)]
        out += [node(t.left, s) for s in rotations(t.right)]
        return out

    seen = {y}
    queue = deque([y])
    while queue:
        t = queue.popleft()
        if t == x:
            return True
        for s in rotations(t):
            if s not in seen:
                seen.add(s)
                queue.append(s)
    return False


def test_lower_covers_examples():
    assert lower_covers(LEAF) == []
    assert [serialize(t) for t in lower_covers(parse("(.(..))"))] == ["((..).)"]
    assert [serialize(t) for t in lower_covers(parse("(.(.(..)))"))] == [
        "((..)(..))",
        "(.((..).))",
    ]


def test_lower_covers_strictly_below():
    for n in range(1, 6):
        for t in enumerate_trees(n):
            for c in lower_covers(t):
                assert c.size == n
                assert c != t


def test_leq_reflexive_and_size_check():
    t = parse("((..)(..))")
    assert leq(t, t)
    with pytest.raises(TreeError):
        leq(LEAF, t)


def test_pentagon_incomparable_pair():
    a, b = parse("((..)(..))"), parse("((.(..)).)")
    assert not leq(a, b)
    assert not leq(b, a)


def test_left_comb_is_minimum():
    for n in range(6):
        lc = left_comb(n)
        for t in enumerate_trees(n):
            assert leq(lc, t)


def test_leq_matches_rotation_closure_oracle():
    for n in range(5):
        for x in enumerate_trees(n):
            for y in enumerate_trees(n):
                assert leq(x, y) == rotation_closure_leq(x, y)


def test_build_poset_two_chain():
    p = build_poset(2)
    assert [serialize(t) for t in p.elements] == ["((..).)", "(.(..))"]
    assert p.covers == ((), (0,))
    assert p.zeta.tolist() == [[1, 0], [1, 1]]
    assert p.mobius.tolist() == [[1, 0], [-1, 1]]


def test_build_poset_trivial():
    p = build_poset(0)
    assert p.zeta.tolist() == [[1]]


def test_build_poset_pentagon():
    p = build_poset(3)
    assert len(p.elements) == 5
    assert sum(len(cv) for cv in p.covers) == 5
    top, bottom = rank(right_comb(3)), rank(left_comb(3))
    # Maximal chains from max to min have lengths 2 and 3.
    lengths = set()

    def walk(x, depth):
        if x == bottom:
            lengths.add(depth)
            return
        for y in p.covers[x]:
            walk(y, depth + 1)

    walk(top, 0)
    assert lengths == {2, 3}


def test_order_matrix_properties():
    for n in range(6):
        p = build_poset(n)
        c = len(p.elements)
        m = p.leq
        assert m.diagonal().all()
        assert not (m & m.T & ~np.eye(c, dtype=bool)).any()
        closure = m @ m
        assert np.array_equal(closure.astype(bool) & ~m, np.zeros_like(m))


def test_zeta_mobius_inverse_up_to_8():
    for n in range(9):
        p = build_poset(n)
        c = len(p.elements)
        prod = p.zeta.astype(np.float64) @ p.mobius.astype(np.float64)
        assert np.array_equal(prod, np.eye(c))


def test_unique_min_max_up_to_8():
    for n in range(9):
        p = build_poset(n)
        below = p.leq.sum(axis=1)
        above = p.leq.sum(axis=0)
        assert (below == len(p.elements)).sum() == 1
        assert (above == len(p.elements)).sum() == 1
        assert below[rank(left_comb(n))] == len(p.elements)
        assert above[rank(right_comb(n))] == len(p.elements)


def test_hasse_connected():
    for n in range(1, 7):
        p = build_poset(n)
        c = len(p.elements)
        adj = [set() for _ in range(c)]
        for i, cv in enumerate(p.covers):
            for j in cv:
                adj[i].add(j)
                adj[j].add(i)
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        assert len(seen) == c


def test_graft_over_below_graft_under():
    pool = [t for n in range(5) for t in enumerate_trees(n)]
    for x in pool:
        for y in pool:
            if 0 < x.size + y.size <= 6:
                assert leq(graft_over(x, y), graft_under(x, y))


def test_mirror_antiautomorphism():
    for n in range(6):
        for x in enumerate_trees(n):
            for y in enumerate_trees(n):
                assert leq(x, y) == leq(mirror(y), mirror(x))


def test_resource_limit():
    with pytest.raises(ResourceLimitError):
        build_poset(11)


def test_cache_roundtrip(tmp_path):
    p = build_poset(4, cache_dir=tmp_path)
    path = tmp_path / "tamari_v1_n4.json"
    assert path.exists()
    q = load_poset(path)
    assert q.covers == p.covers
    assert np.array_equal(q.mobius, p.mobius)
    # Second build comes from disk and agrees.
    r = build_poset(4, cache_dir=tmp_path)
    assert r.covers == p.covers


def test_cache_rejects_bad_version(tmp_path):
    p = build_poset(2, cache_dir=tmp_path)
    path = tmp_path / "tamari_v1_n2.json"
    text = path.read_text().replace('"version": 1', '"version": 99')
    path.write_text(text)
    with pytest.raises(ValueError):
        load_poset(path)


def test_poset_store_memoizes():
    store = PosetStore()
    assert store.get(3) is store.get(3)
    assert isinstance(store.get(3), TamariPoset)
