# lsl/poset.py
"""
Hasse diagram and Möbius function of ({subsets of 1..n}, ⊴).

Covers are the unit steps of the tail-count vector c_I(ℓ) = #(I ∩ [ℓ, n]): adding 1
(weight + 1) or shifting a member i to a free slot i + 1 (weight + 2).
"""
import logging
from typing import Dict, Iterator, List, Tuple

import networkx as nx
import numpy as np
import scipy.linalg

from lsl.combinatorics import (
    MAX_EXHAUSTIVE_N,
    SubsetIndex,
    all_subsets,
    order_leq,
    partition_of,
    weight,
)

logger = logging.getLogger(__name__)

MAX_MOBIUS_N = 12

Pair = Tuple[SubsetIndex, SubsetIndex]


def _check_n(n: int, limit: int) -> None:
    if not 1 <= n <= limit:
        raise ValueError(f"n must lie in 1..{limit}, got {n}")


def _lower_covers(M: SubsetIndex) -> List[SubsetIndex]:
    """All K ⊴ M that M covers."""
    out = []
    if 1 not in M:
        out.append(SubsetIndex(n=M.n, mask=M.mask | 1))
    for i in range(1, M.n):
        if i in M and (i + 1) not in M:
            out.append(SubsetIndex(n=M.n, mask=(M.mask & ~(1 << (i - 1))) | (1 << i)))
    return out


def hasse_graph(n: int) -> nx.DiGraph:
    """Directed graph with an edge K -> M for every cover K ⊴ M."""
    _check_n(n, MAX_EXHAUSTIVE_N)
    graph = nx.DiGraph()
    for M in all_subsets(n):
        p = partition_of(M)
        graph.add_node(M, weight=weight(M), depth=p.m, mu=p.mu)
    for M in list(graph.nodes):
        for K in _lower_covers(M):
            graph.add_edge(K, M)
    return graph


def hasse_covers(n: int) -> List[Pair]:
    """Covering pairs (K, M): K ⊴ M, K ≠ M, nothing strictly between."""
    graph = hasse_graph(n)
    edges = sorted(graph.edges, key=lambda e: (-weight(e[0]), e[0].members, e[1].members))
    logger.debug(f"n={n}: {len(edges)} covers")
    return edges


def order_graph(n: int) -> nx.DiGraph:
    """Full comparability graph K -> M for K ⊴ M, K ≠ M. Exhaustive; small n only."""
    _check_n(n, 10)
    graph = nx.DiGraph()
    subsets = all_subsets(n)
    graph.add_nodes_from(subsets)
    for K in subsets:
        for M in subsets:
            if K != M and order_leq(K, M):
                graph.add_edge(K, M)
    return graph


def zeta_matrix(n: int) -> Tuple[List[SubsetIndex], np.ndarray]:
    """
    Subsets in a linear extension of ⊴ (weight descending) and the boolean zeta matrix
    Z[a, b] = [nodes[a] ⊴ nodes[b]], which is upper unitriangular in that order.
    """
    _check_n(n, MAX_MOBIUS_N)
    graph = hasse_graph(n)
    nodes = sorted(graph.nodes, key=lambda s: (-weight(s), s.members))
    index = {s: k for k, s in enumerate(nodes)}
    size = len(nodes)
    # up-sets as bitmasks, closed from the top down along upper covers
    up = [0] * size
    for a in reversed(range(size)):
        mask = 1 << a
        for M in graph.successors(nodes[a]):
            mask |= up[index[M]]
        up[a] = mask
    nbytes = (size + 7) // 8
    zeta = np.zeros((size, size), dtype=bool)
    for a, mask in enumerate(up):
        bits = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
        zeta[a] = np.unpackbits(bits, bitorder="little")[:size].astype(bool)
    return nodes, zeta


def mobius_matrix(n: int) -> Tuple[List[SubsetIndex], np.ndarray, np.ndarray]:
    """
    Nodes, zeta matrix and Möbius matrix μ = Z⁻¹ of the cell poset.

    Z is unit upper triangular in the node order, so a single triangular solve inverts it.
    The entries of μ are small integers and the float solve is exact on them.
    """
    nodes, zeta = zeta_matrix(n)
    size = len(nodes)
    inverse = scipy.linalg.solve_triangular(
        zeta.astype(float), np.eye(size), unit_diagonal=True, overwrite_b=True
    )
    mu = np.rint(inverse).astype(np.int64)
    logger.debug(f"n={n}: {int(zeta.sum())} comparable pairs")
    return nodes, zeta, mu


def mobius_rows(n: int) -> Iterator[Tuple[SubsetIndex, SubsetIndex, int]]:
    """(J, K, μ(J, K)) for every pair J ⊴ K, rows in node order."""
    nodes, zeta, mu = mobius_matrix(n)
    for a in range(len(nodes)):
        for b in np.flatnonzero(zeta[a]):
            yield nodes[a], nodes[b], int(mu[a, b])


def mobius_table(n: int) -> Dict[Pair, int]:
    """Möbius function μ(J, K) on all pairs J ⊴ K."""
    return {(J, K): mu for J, K, mu in mobius_rows(n)}
