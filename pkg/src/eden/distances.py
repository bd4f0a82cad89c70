"""All-pairs hop distances by per-source BFS, and per-node diameters."""
from __future__ import annotations

from collections import deque

import numpy as np

from .graph import Graph


class _Unreachable:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNREACHABLE"

    def __reduce__(self):
        return (_Unreachable, ())


UNREACHABLE = _Unreachable()


class DistanceMatrix:
    """Hop counts plus a reachability mask.

    Unreachable cells hold 0 in ``hops`` but are never read as numbers; use
    ``reachable`` or indexing (which yields :data:`UNREACHABLE`).
    """

    __slots__ = ("hops", "reachable")

    def __init__(self, hops: np.ndarray, reachable: np.ndarray):
        hops = np.where(reachable, hops, 0).astype(np.int64)
        reachable = np.asarray(reachable, dtype=bool)
        if hops.shape != reachable.shape or hops.ndim != 2 or hops.shape[0] != hops.shape[1]:
            raise ValueError("distance matrix must be square")
        hops.flags.writeable = False
        reachable.flags.writeable = False
        self.hops = hops
        self.reachable = reachable

    @property
    def n(self) -> int:
        return self.hops.shape[0]

    def __getitem__(self, ij):
        i, j = ij
        return int(self.hops[i, j]) if self.reachable[i, j] else UNREACHABLE

    def __eq__(self, other):
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return np.array_equal(self.reachable, other.reachable) and np.array_equal(self.hops, other.hops)

    def tolist(self):
        return [[self[i, j] for j in range(self.n)] for i in range(self.n)]

    def as_float(self) -> np.ndarray:
        """Float copy with ``inf`` in unreachable cells."""
        return np.where(self.reachable, self.hops.astype(float), np.inf)

    def permuted(self, mapping) -> "DistanceMatrix":
        """``P.T D P`` for the permutation sending node u to ``mapping[u]``."""
        inv = np.empty(self.n, dtype=np.int64)
        inv[np.asarray(mapping)] = np.arange(self.n)
        ix = np.ix_(inv, inv)
        return DistanceMatrix(self.hops[ix], self.reachable[ix])

    def __repr__(self):
        return f"DistanceMatrix(n={self.n})"


def apsp(g: Graph) -> DistanceMatrix:
    n = g.n
    nbrs = g.neighbors
    hops = np.zeros((n, n), dtype=np.int64)
    reach = np.zeros((n, n), dtype=bool)
    for s in range(n):
        dist = [-1] * n
        dist[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            du = dist[u] + 1
            for v in nbrs[u]:
                if dist[v] < 0:
                    dist[v] = du
                    q.append(v)
        row = np.array(dist)
        reach[s] = row >= 0
        hops[s] = np.maximum(row, 0)
    return DistanceMatrix(hops, reach)


def diameter_vector(d: DistanceMatrix) -> np.ndarray:
    """Largest finite distance in each row (0 for a node that reaches nothing)."""
    return np.where(d.reachable, d.hops, 0).max(axis=1)


def components(d: DistanceMatrix) -> list[list[int]]:
    """Connected components read off the reachability mask, ordered by min node."""
    seen = np.zeros(d.n, dtype=bool)
    out = []
    for i in range(d.n):
        if not seen[i]:
            members = np.nonzero(d.reachable[i])[0]
            seen[members] = True
            out.append(members.tolist())
    return out
