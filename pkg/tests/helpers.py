"""Shared test utilities: brute-force signature enumerators and graph makers.

The enumerators here are the independent oracles for the DP table semantics:
they enumerate partial (b-)colorings of G_t directly from the definitions,
never touching the solver's merge machinery.
"""

from __future__ import annotations

import itertools
import random

from bcoloring import Graph
from bcoloring.bcol_dp import Signature, is_valid_class, type_of_class
from bcoloring.fall_dp import fall_class_is_valid, fall_type_of_class


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return Graph(n, edges)


def relabeled(g: Graph, perm: list[int]) -> Graph:
    """g with vertex v renamed to perm[v]."""
    return Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


def enumerate_bcol_signatures(g, d, t, k) -> set[Signature]:
    """All signatures of valid partial b-colorings of G_t, by brute force."""
    vt = sorted(d.vertex_set(t))
    out: set[Signature] = set()
    for assignment in itertools.product(range(1, k + 1), repeat=len(vt)):
        coloring = dict(zip(vt, assignment))
        if _improper(g, vt, coloring):
            continue
        classes = [
            frozenset(v for v in vt if coloring[v] == i) for i in range(1, k + 1)
        ]
        for picks in itertools.product(*[[None] + sorted(cls) for cls in classes]):
            bset = frozenset(p for p in picks if p is not None)
            if not all(is_valid_class(g, d, t, cls, bset) for cls in classes):
                continue
            counts: dict = {}
            for cls in classes:
                tau = type_of_class(g, d, t, cls, bset)
                counts[tau] = counts.get(tau, 0) + 1
            out.add(Signature.from_counts(counts, k))
    return out


def enumerate_fall_signatures(g, d, t, k) -> set[Signature]:
    """All signatures of valid partial colorings of G_t, fall style."""
    vt = sorted(d.vertex_set(t))
    out: set[Signature] = set()
    for assignment in itertools.product(range(1, k + 1), repeat=len(vt)):
        coloring = dict(zip(vt, assignment))
        if _improper(g, vt, coloring):
            continue
        classes = [
            frozenset(v for v in vt if coloring[v] == i) for i in range(1, k + 1)
        ]
        if not all(fall_class_is_valid(g, d, t, cls) for cls in classes):
            continue
        counts: dict = {}
        for cls in classes:
            tau = fall_type_of_class(g, d, t, cls, coloring)
            counts[tau] = counts.get(tau, 0) + 1
        out.add(Signature.from_counts(counts, k))
    return out


def _improper(g, vt, coloring) -> bool:
    return any(
        coloring[u] == coloring[w]
        for u in vt
        for w in g.neighbors(u)
        if w in coloring and u < w
    )


def atlas_connected_corpus(max_n: int = 6) -> list[Graph]:
    """All connected graphs with 1 <= n <= max_n, up to isomorphism."""
    import networkx as nx

    corpus = []
    for G in nx.graph_atlas_g():
        n = G.number_of_nodes()
        if 1 <= n <= max_n and nx.is_connected(G):
            corpus.append(Graph(n, list(G.edges())))
    return corpus
