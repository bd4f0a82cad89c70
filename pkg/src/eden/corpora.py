"""Exhaustive small-graph corpora.

``all_graphs(n)`` lists every graph on ``n`` nodes up to isomorphism by
extending each graph on ``n - 1`` nodes with a new node joined to every
possible neighbour subset, then removing duplicates. Candidates are bucketed
by invariants and duplicates inside a bucket are found with
:func:`eden.isotest.exact_isomorphic`. Practical up to ``n = 8``.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache

import numpy as np

from .distances import apsp
from .graph import Graph
from .isotest import exact_isomorphic, wl1_colors

# graphs on n nodes (OEIS A000088) and connected ones (A001349)
KNOWN_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346}
KNOWN_CONNECTED = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}


def _invariant(g: Graph) -> tuple:
    a = g.adjacency.astype(float)
    spec = np.round(np.linalg.eigvalsh(a), 6) + 0.0
    lap = np.round(np.linalg.eigvalsh(np.diag(a.sum(1)) - a), 6) + 0.0
    d = apsp(g)
    rows = sorted(
        (c, tuple(sorted(np.where(d.reachable[v], d.hops[v], -1).tolist())))
        for v, c in enumerate(wl1_colors(g))
    )
    return (len(g.edges), tuple(spec.tolist()), tuple(lap.tolist()), tuple(rows))


def is_connected(g: Graph) -> bool:
    return bool(apsp(g).reachable[0].all())


@lru_cache(maxsize=None)
def all_graphs(n: int) -> tuple:
    """Every graph on ``n`` nodes, one per isomorphism class, in a fixed order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return (Graph(1),)
    buckets: dict[tuple, list[Graph]] = {}
    out = []
    for base in all_graphs(n - 1):
        for mask in range(1 << (n - 1)):
            new_edges = {(u, n - 1) for u in range(n - 1) if mask >> u & 1}
            g = Graph(n, base.edges | new_edges)
            key = _invariant(g)
            reps = buckets.setdefault(key, [])
            if any(exact_isomorphic(g, h, max_n=n) for h in reps):
                continue
            reps.append(g)
            out.append(g)
    return tuple(out)


def connected_graphs(n: int) -> list[Graph]:
    return [g for g in all_graphs(n) if is_connected(g)]


def degree_profile(graphs) -> Counter:
    return Counter(tuple(sorted(g.degrees.tolist())) for g in graphs)
