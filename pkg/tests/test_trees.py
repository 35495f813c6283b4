import math

import pytest
from hypothesis import given

from conftest import trees
from tamcox.trees import (
    LEAF,
    ParseError,
    TreeError,
    decompose,
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
    unrank,
)


def catalan(n):
    return math.comb(2 * n, n) // (n + 1)


def test_enumerate_zero():
    assert enumerate_trees(0) == (LEAF,)


def test_enumerate_counts_match_catalan():
    for n in range(13):
        assert len(enumerate_trees(n)) == catalan(n)


def test_enumerate_two_is_ordered_left_comb_first():
    assert [serialize(t) for t in enumerate_trees(2)] == ["((..).)", "(.(..))"]


def test_enumerate_no_duplicates():
    for n in range(9):
        seq = enumerate_trees(n)
        assert len(set(seq)) == len(seq)
        assert all(t.size == n for t in seq)


def test_rank_unrank_roundtrip():
    for n in range(9):
        for r, t in enumerate(enumerate_trees(n)):
            assert rank(t) == r
            assert unrank(n, r) == t


def test_left_right_combs_are_extremes_of_order():
    for n in range(1, 8):
        assert enumerate_trees(n)[0] == left_comb(n)
        assert enumerate_trees(n)[-1] == right_comb(n)


def test_serialize_leaf():
    assert serialize(LEAF) == "."


def test_parse_examples():
    assert parse("((..).)") == node(node(LEAF, LEAF), LEAF)
    assert parse(".") == LEAF


def test_parse_error_offset():
    with pytest.raises(ParseError) as exc:
        parse("((.)")
    assert exc.value.offset == 3


def test_parse_error_trailing():
    with pytest.raises(ParseError) as exc:
        parse("(..).")
    assert exc.value.offset == 4


def test_parse_error_bad_char():
    with pytest.raises(ParseError) as exc:
        parse("(.x)")
    assert exc.value.offset == 2


@given(trees(6))
def test_parse_serialize_roundtrip(t):
    assert parse(serialize(t)) == t


def test_graft_over_examples():
    one = parse("(..)")
    assert graft_over(LEAF, one) == one
    assert serialize(graft_over(one, one)) == "((..).)"
    for t in enumerate_trees(3):
        assert graft_over(t, one) == node(t, LEAF)


def test_graft_under_examples():
    one = parse("(..)")
    assert graft_under(one, LEAF) == one
    assert serialize(graft_under(one, one)) == "(.(..))"


def test_graft_compatibility_exhaustive():
    # (x/y)\z = x/(y\z) needs y nontrivial: for y the leaf both sides graft
    # onto the same leaf of x resp. z and the results genuinely differ.
    pool = [t for n in range(5) for t in enumerate_trees(n)]
    for x in pool:
        for y in pool:
            if y.is_leaf:
                continue
            for z in pool:
                if x.size + y.size + z.size > 6:
                    continue
                assert graft_under(graft_over(x, y), z) == graft_over(
                    x, graft_under(y, z)
                )


@given(trees(4), trees(4))
def test_graft_sizes_additive(x, y):
    assert graft_over(x, y).size == x.size + y.size
    assert graft_under(x, y).size == x.size + y.size


def test_decompose():
    assert decompose(LEAF) is None
    assert decompose(parse("((..).)")) == (parse("(..)"), LEAF)
    assert decompose(parse("(.(..))")) == (LEAF, parse("(..)"))
    for t in enumerate_trees(4):
        left, right = decompose(t)
        assert node(left, right) == t


@given(trees(5))
def test_mirror_involution(t):
    assert mirror(mirror(t)) == t


def test_node_validation():
    with pytest.raises(TreeError):
        from tamcox.trees import BinaryTree

        BinaryTree(LEAF, None)
