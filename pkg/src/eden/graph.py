"""Graph data model, permutations, parsers and random generators.

Nodes are positional (``0..n-1``); a permutation relabels positions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

GRAPH6_PREFIX = b">>graph6<<"


class GraphParseError(ValueError):
    """Malformed graph input. ``offset`` is the byte (or line) position."""

    def __init__(self, message: str, offset: int | None = None, line: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte {offset}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.offset = offset
        self.line = line


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on nodes ``0..n-1``.

    ``edges`` is normalized to a frozenset of ``(u, v)`` pairs with ``u < v``.
    """

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"graph needs at least one node, got n={self.n}")
        norm = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            norm.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_adjacency(cls, a) -> "Graph":
        a = np.asarray(a)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency matrix is not symmetric")
        if np.any(np.diag(a) != 0):
            raise ValueError("adjacency matrix has a non-zero diagonal")
        if not np.isin(a, (0, 1)).all():
            raise ValueError("adjacency entries must be 0 or 1")
        us, vs = np.nonzero(np.triu(a, 1))
        return cls(a.shape[0], frozenset(zip(us.tolist(), vs.tolist())))

    @cached_property
    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        if self.edges:
            idx = np.array(sorted(self.edges))
            a[idx[:, 0], idx[:, 1]] = 1
            a[idx[:, 1], idx[:, 0]] = 1
        a.flags.writeable = False
        return a

    @cached_property
    def neighbors(self) -> tuple:
        adj = [[] for _ in range(self.n)]
        for u, v in sorted(self.edges):
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(x)) for x in adj)

    @property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``0..n-1``; node ``u`` of the source becomes node ``mapping[u]``."""

    mapping: tuple

    def __post_init__(self):
        m = tuple(int(x) for x in self.mapping)
        if sorted(m) != list(range(len(m))):
            raise ValueError("mapping is not a permutation of 0..n-1")
        object.__setattr__(self, "mapping", m)

    def __len__(self):
        return len(self.mapping)

    def __getitem__(self, i):
        return self.mapping[i]

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.mapping)
        for u, pu in enumerate(self.mapping):
            inv[pu] = u
        return Permutation(tuple(inv))

    def then(self, other: "Permutation") -> "Permutation":
        """``other ∘ self``: apply ``self`` first."""
        if len(other) != len(self):
            raise ValueError("permutation length mismatch")
        return Permutation(tuple(other.mapping[x] for x in self.mapping))

    def matrix(self) -> np.ndarray:
        """P with ``P[u, mapping[u]] = 1``, so that ``A' = P.T @ A @ P``."""
        n = len(self.mapping)
        p = np.zeros((n, n), dtype=np.int64)
        p[np.arange(n), self.mapping] = 1
        return p

    def apply_rows(self, x: np.ndarray) -> np.ndarray:
        """Return ``P.T @ x`` without forming P: row u of x moves to row mapping[u]."""
        x = np.asarray(x)
        out = np.empty_like(x)
        out[list(self.mapping)] = x
        return out


def _as_permutation(p) -> Permutation:
    return p if isinstance(p, Permutation) else Permutation(tuple(p))


def apply_permutation(g: Graph, p: Permutation | Sequence[int]) -> Graph:
    p = _as_permutation(p)
    if len(p) != g.n:
        raise ValueError(f"permutation length {len(p)} does not match n={g.n}")
    m = p.mapping
    return Graph(g.n, frozenset((m[u], m[v]) for u, v in g.edges))


def random_permutation(n: int, seed: int) -> Permutation:
    if n < 1:
        raise ValueError("random_permutation needs n >= 1")
    rng = np.random.default_rng(seed)
    return Permutation(tuple(rng.permutation(n).tolist()))


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    if n < 1:
        raise ValueError("erdos_renyi needs n >= 1")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < p
    return Graph(n, frozenset(zip(iu[keep].tolist(), ju[keep].tolist())))


# -- graph6 -----------------------------------------------------------------


def _upper_pairs(n: int):
    """Upper-triangle pairs in graph6 order: x01, x02, x12, x03, ..."""
    j, i = np.triu_indices(n, 1)[::-1]
    order = np.lexsort((i, j))
    return i[order], j[order]


def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n <= 258047:
        return b"~" + bytes(((n >> s) & 63) + 63 for s in (12, 6, 0))
    if n <= 68719476735:
        return b"~~" + bytes(((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0))
    raise ValueError(f"n={n} too large for graph6")


def _decode_n(data: bytes, base: int) -> tuple[int, int]:
    """Return (n, header_length)."""

    def groups(start, count):
        if len(data) < start + count:
            raise GraphParseError("truncated graph6 header", offset=base + len(data))
        val = 0
        for k in range(count):
            val = (val << 6) | (data[start + k] - 63)
        return val

    if not data:
        raise GraphParseError("empty graph6 string", offset=base)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) > 1 and data[1] == 126:
        return groups(2, 6), 8
    return groups(1, 3), 4


def parse_graph6(data: bytes | str, *, line: int | None = None) -> Graph:
    """Decode one graph6 record (an optional ``>>graph6<<`` prefix and
    trailing newline are accepted)."""
    if isinstance(data, str):
        try:
            data = data.encode("ascii")
        except UnicodeEncodeError as exc:
            raise GraphParseError("non-ASCII character", offset=exc.start, line=line) from None
    data = data.rstrip(b"\r\n")
    base = 0
    if data.startswith(GRAPH6_PREFIX):
        base = len(GRAPH6_PREFIX)
        data = data[base:]
    for k, b in enumerate(data):
        if not 63 <= b <= 126:
            raise GraphParseError(f"byte {b!r} outside graph6 range 63..126", offset=base + k, line=line)
    try:
        n, hlen = _decode_n(data, base)
    except GraphParseError as exc:
        exc.line = line
        raise
    if n < 1:
        raise GraphParseError("graph6 header declares zero nodes", offset=base, line=line)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[hlen:]
    if len(body) < nbytes:
        raise GraphParseError(
            f"truncated bit stream: need {nbytes} body bytes for n={n}, got {len(body)}",
            offset=base + len(data), line=line,
        )
    if len(body) > nbytes:
        raise GraphParseError(
            f"body longer than header implies ({len(body)} > {nbytes} bytes)",
            offset=base + hlen + nbytes, line=line,
        )
    if nbits == 0:
        return Graph(n)
    vals = np.frombuffer(body, dtype=np.uint8) - 63
    bits = np.unpackbits(vals[:, None], axis=1)[:, 2:].ravel()
    if bits[nbits:].any():
        raise GraphParseError("non-zero padding bits", offset=base + len(data) - 1, line=line)
    i, j = _upper_pairs(n)
    on = bits[:nbits].astype(bool)
    return Graph(n, frozenset(zip(i[on].tolist(), j[on].tolist())))


def serialize_graph6(g: Graph) -> bytes:
    header = _encode_n(g.n)
    nbits = g.n * (g.n - 1) // 2
    if nbits == 0:
        return header
    i, j = _upper_pairs(g.n)
    bits = g.adjacency[i, j].astype(np.uint8)
    pad = (-nbits) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)]).reshape(-1, 6)
    groups = bits @ (1 << np.arange(5, -1, -1))
    return header + (groups + 63).astype(np.uint8).tobytes()


def read_graph6_file(path) -> list[Graph]:
    graphs = []
    with open(path, "rb") as fh:
        for lineno, raw in enumerate(fh, 1):
            raw = raw.strip()
            if not raw:
                continue
            graphs.append(parse_graph6(raw, line=lineno))
    return graphs


def write_graph6_file(path, graphs: Iterable[Graph]) -> None:
    with open(path, "wb") as fh:
        for g in graphs:
            fh.write(serialize_graph6(g) + b"\n")


# -- edge lists ---------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse ``u v`` lines; an optional first line ``n <count>`` fixes the node
    count. Blank lines and ``#`` comments are ignored."""
    declared = None
    edges = set()
    max_idx = -1
    seen_content = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if not seen_content and tokens[0] == "n":
            if len(tokens) != 2:
                raise GraphParseError("node-count line must be 'n <count>'", line=lineno)
            declared = _parse_int(tokens[1], lineno)
            if declared < 1:
                raise GraphParseError(f"declared node count must be >= 1, got {declared}", line=lineno)
            seen_content = True
            continue
        seen_content = True
        if len(tokens) != 2:
            raise GraphParseError(f"expected two node indices, got {len(tokens)} tokens", line=lineno)
        u, v = (_parse_int(t, lineno) for t in tokens)
        if u < 0 or v < 0:
            raise GraphParseError(f"negative node index in '{line}'", line=lineno)
        if declared is not None and max(u, v) >= declared:
            raise GraphParseError(f"node index {max(u, v)} >= declared n={declared}", line=lineno)
        if u == v:
            raise GraphParseError(f"self-loop at node {u}", line=lineno)
        edges.add((min(u, v), max(u, v)))
        max_idx = max(max_idx, u, v)
    n = declared if declared is not None else max_idx + 1
    if n < 1:
        raise GraphParseError("edge list declares no nodes")
    return Graph(n, frozenset(edges))


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphParseError(f"unparseable token {token!r}", line=lineno) from None


def format_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"{u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


# -- small named graphs used throughout the tests ---------------------------


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))
