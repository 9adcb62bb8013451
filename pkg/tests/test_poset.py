# tests/test_poset.py
import time

import networkx as nx
import numpy as np
import pytest

from lsl.combinatorics import SubsetIndex, all_subsets, order_leq, weight
from lsl.exports import hasse_dot
from lsl.poset import (
    hasse_covers,
    hasse_graph,
    mobius_matrix,
    mobius_rows,
    mobius_table,
    order_graph,
)


def S(n, *members):
    return SubsetIndex.of(n, members)


def test_single_cover_for_n1():
    assert hasse_covers(1) == [(S(1, 1), S(1))]


def test_covers_for_n2():
    assert set(hasse_covers(2)) == {
        (S(2, 1), S(2)),
        (S(2, 2), S(2, 1)),
        (S(2, 1, 2), S(2, 2)),
    }


@pytest.mark.parametrize("n", range(1, 6))
def test_covers_are_transitive_reduction(n):
    covers = hasse_covers(n)
    assert all(order_leq(K, M) for K, M in covers)
    reduced = nx.transitive_reduction(order_graph(n))
    assert set(reduced.edges) == set(covers)


def test_covers_step_weight_by_one_or_two():
    for K, M in hasse_covers(5):
        assert weight(K) - weight(M) in (1, 2)


def test_range_checks():
    with pytest.raises(ValueError):
        hasse_graph(0)
    with pytest.raises(ValueError):
        mobius_table(13)


def test_mobius_basics():
    table = mobius_table(3)
    for K in all_subsets(3):
        assert table[(K, K)] == 1
    for K, M in hasse_covers(3):
        assert table[(K, M)] == -1


@pytest.mark.parametrize("n", [2, 3])
def test_mobius_matches_zeta_inverse(n):
    subsets = all_subsets(n)
    index = {s: k for k, s in enumerate(subsets)}
    zeta = np.zeros((len(subsets), len(subsets)))
    for J in subsets:
        for K in subsets:
            if order_leq(J, K):
                zeta[index[J], index[K]] = 1
    inverse = np.rint(np.linalg.inv(zeta)).astype(int)
    table = mobius_table(n)
    for J in subsets:
        for K in subsets:
            assert inverse[index[J], index[K]] == table.get((J, K), 0)


def test_mobius_sums_vanish():
    table = mobius_table(3)
    subsets = all_subsets(3)
    for (J, K) in table:
        if J == K:
            continue
        total = sum(table[(L, K)] for L in subsets if (J, L) in table and (L, K) in table)
        assert total == 0


def test_hasse_dot_ranks_by_weight():
    dot = hasse_dot(hasse_graph(2))
    assert dot.startswith("digraph hasse {")
    assert dot.count("rank=same") == 4
    assert 's1 [label="{1}"];' in dot
    assert "s1 -> s0;" in dot
    assert dot == hasse_dot(hasse_graph(2))


def mobius_by_recursion(n):
    """μ(J, K) = -Σ_{J ⊴ L ⊲ K} μ(J, L), memoised over intervals."""
    graph = hasse_graph(n)
    upsets = {J: nx.descendants(graph, J) | {J} for J in graph.nodes}
    memo = {}

    def mu(J, K):
        if (J, K) not in memo:
            if J == K:
                memo[(J, K)] = 1
            else:
                memo[(J, K)] = -sum(mu(J, L) for L in upsets[J] if L != K and K in upsets[L])
        return memo[(J, K)]

    return {(J, K): mu(J, K) for J in upsets for K in upsets[J]}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_mobius_matches_recursion(n):
    assert mobius_table(n) == mobius_by_recursion(n)


def test_mobius_rows_cover_comparable_pairs():
    rows = list(mobius_rows(3))
    pairs = {(J, K) for J, K, _ in rows}
    assert len(pairs) == len(rows)
    assert pairs == {(J, K) for J in all_subsets(3) for K in all_subsets(3) if order_leq(J, K)}


def test_zeta_matrix_is_unitriangular():
    nodes, zeta, mu = mobius_matrix(4)
    assert nodes[-1] == S(4)
    assert np.all(np.diag(zeta))
    assert not np.any(np.tril(zeta, -1))
    assert np.array_equal(mu @ zeta.astype(np.int64), np.eye(len(nodes), dtype=np.int64))


def test_mobius_n10_is_fast():
    start = time.perf_counter()
    nodes, zeta, mu = mobius_matrix(10)
    elapsed = time.perf_counter() - start
    assert len(nodes) == 1024
    assert np.array_equal(mu @ zeta.astype(np.int64), np.eye(1024, dtype=np.int64))
    assert set(np.unique(mu[zeta])) <= {-1, 0, 1}
    assert elapsed < 30.0
