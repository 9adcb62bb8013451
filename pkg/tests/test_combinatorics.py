# tests/test_combinatorics.py
import pytest

from lsl.combinatorics import (
    DepthPartition,
    OrderStrategy,
    SubsetIndex,
    all_subsets,
    cell_codim,
    cell_dim,
    codim1_related,
    codim2_related,
    dual_subset,
    epsilon_sign,
    nu_sequence,
    order_leq,
    parse_subset,
    partition_dual,
    partition_of,
    subset_of_partition,
    weight,
)


def S(n, *members):
    return SubsetIndex.of(n, members)


def test_weight_examples():
    assert weight(S(3)) == 0
    assert weight(S(4, 1, 2, 3, 4)) == 16
    assert weight(S(4, 1, 3)) == 6


@pytest.mark.parametrize("n", range(1, 9))
def test_weight_of_complement(n):
    assert all(weight(I) + weight(dual_subset(I)) == n * n for I in all_subsets(n))


def test_subset_rejects_out_of_range_members():
    with pytest.raises(ValueError):
        SubsetIndex.of(3, [4])
    with pytest.raises(ValueError):
        SubsetIndex.of(3, [0])


def test_nu_sequence():
    assert nu_sequence(S(7, 2, 5, 7)) == [7, 5, 2]
    assert nu_sequence(S(3, 3)) == [3]
    assert nu_sequence(S(3, 1, 2, 3)) == [3, 2, 1]
    with pytest.raises(ValueError, match="nu undefined for empty set"):
        nu_sequence(S(3))


def test_order_examples():
    assert order_leq(S(2, 2), S(2))
    assert order_leq(S(2), S(2))
    assert order_leq(S(2, 2), S(2, 1))
    assert not order_leq(S(2, 1), S(2, 2))
    with pytest.raises(ValueError):
        order_leq(S(2, 1), S(3, 1))


@pytest.mark.parametrize("n", range(1, 7))
def test_order_strategies_agree(n):
    subsets = all_subsets(n)
    for J in subsets:
        for K in subsets:
            answers = {order_leq(J, K, strategy) for strategy in OrderStrategy}
            assert len(answers) == 1, (J, K)


@pytest.mark.parametrize("n", range(1, 5))
def test_order_is_partial_order(n):
    subsets = all_subsets(n)
    leq = {(J, K): order_leq(J, K) for J in subsets for K in subsets}
    for J in subsets:
        assert leq[(J, J)]
        for K in subsets:
            if leq[(J, K)] and leq[(K, J)]:
                assert J == K
            for L in subsets:
                if leq[(J, K)] and leq[(K, L)]:
                    assert leq[(J, L)]


@pytest.mark.parametrize("n", range(1, 7))
def test_order_lowers_weight(n):
    subsets = all_subsets(n)
    for J in subsets:
        for K in subsets:
            if J != K and order_leq(J, K):
                assert weight(J) > weight(K)


def test_codim_examples():
    assert codim1_related(S(3, 1, 3), S(3, 3))
    assert not codim1_related(S(2, 2), S(2, 1))
    assert codim1_related(S(1, 1), S(1))
    assert codim2_related(S(2, 2), S(2, 1))
    assert codim2_related(S(3, 1, 3), S(3, 1, 2))
    assert not codim2_related(S(1, 1), S(1))


@pytest.mark.parametrize("n", range(1, 7))
def test_codim_relations_match_order(n):
    subsets = all_subsets(n)
    for K in subsets:
        for M in subsets:
            related = order_leq(K, M)
            assert codim1_related(K, M) == (related and weight(K) == weight(M) + 1)
            assert codim2_related(K, M) == (related and weight(K) == weight(M) + 2)


def test_partition_examples():
    assert partition_of(S(5, 4)) == DepthPartition(n=5, m=1, mu=(3,))
    assert partition_of(S(4, 1, 2, 4)) == DepthPartition(n=4, m=3, mu=(1,))
    assert partition_of(S(4)) == DepthPartition(n=4, m=0, mu=())
    assert subset_of_partition(DepthPartition(n=3, m=2, mu=(1, 1))) == S(3, 2, 3)
    assert subset_of_partition(DepthPartition(n=3, m=0, mu=())) == S(3)


def test_partition_box_violation():
    with pytest.raises(ValueError):
        DepthPartition(n=3, m=1, mu=(3,))
    with pytest.raises(ValueError):
        DepthPartition(n=3, m=1, mu=(1, 1))


@pytest.mark.parametrize("n", range(1, 8))
def test_partition_roundtrip_and_duality(n):
    for I in all_subsets(n):
        p = partition_of(I)
        assert subset_of_partition(p) == I
        assert partition_of(dual_subset(I)) == partition_dual(p)
        assert cell_codim(I) == weight(I)
        assert cell_dim(I) == weight(dual_subset(I))


def test_dual_examples():
    assert dual_subset(S(3)) == S(3, 1, 2, 3)
    assert dual_subset(S(2, 1)) == S(2, 2)


def test_epsilon_examples():
    assert epsilon_sign(S(3, 1), S(3, 2)) == 1
    assert epsilon_sign(S(3, 2), S(3, 1)) == -1
    assert epsilon_sign(S(3, 1, 3), S(3, 2)) == -1
    with pytest.raises(ValueError, match="epsilon undefined on overlapping subsets"):
        epsilon_sign(S(3, 1, 2), S(3, 2))


@pytest.mark.parametrize("n", range(1, 6))
def test_epsilon_antisymmetry(n):
    subsets = all_subsets(n)
    for I in subsets:
        for J in subsets:
            if I.mask & J.mask:
                continue
            expected = -1 if (I.size * J.size) % 2 else 1
            assert epsilon_sign(I, J) * epsilon_sign(J, I) == expected


def test_parse_subset():
    assert parse_subset("1,3", 3) == S(3, 1, 3)
    assert parse_subset("{2}", 3) == S(3, 2)
    assert parse_subset("", 3) == S(3)
    assert parse_subset("∅", 2) == S(2)
    with pytest.raises(ValueError):
        parse_subset("1,x", 3)
    with pytest.raises(ValueError):
        parse_subset("5", 3)
