"""Isomorphism verdicts built on EDEN signatures, plus exact and 1-WL oracles."""
from __future__ import annotations

import enum
import hashlib
import json
import math
import time
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import product

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .encoders import (
    EncoderConfig,
    MAX_AMBIGUOUS_COLUMNS,
    canonicalize_signs,
    eden_encode,
    sign_patterns,
    sort_rows,
)
from .graph import Graph, apply_permutation, random_permutation

SV_DECIMALS = 6
THRESHOLD_FLOOR = 1e-8
EXACT_MAX_N = 12


class VerdictKind(str, enum.Enum):
    NON_ISOMORPHIC = "NON_ISOMORPHIC"
    POSSIBLY_ISOMORPHIC = "POSSIBLY_ISOMORPHIC"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    reason: str
    sv_gap: float = 0.0
    row_gap: float | None = None

    def to_dict(self):
        return {"verdict": self.kind.value, "reason": self.reason, "sv_gap": self.sv_gap, "row_gap": self.row_gap}


@dataclass(frozen=True)
class Thresholds:
    tau_sv: float = 1e-6
    tau_row: float = 1e-6
    safety: float = 10.0

    def __post_init__(self):
        if self.tau_sv <= 0 or self.tau_row <= 0:
            raise ValueError("thresholds must be positive")
        if self.safety < 1:
            raise ValueError("safety factor must be >= 1")

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class Signature:
    """Permutation-invariant summary of a graph's EDEN.

    ``sorted_rows`` comes from the sign-canonicalized encoding.
    ``degenerate`` marks a repeated retained spectrum, where the encoding is
    only defined up to a rotation and rows cannot be compared. Sign-only
    ambiguity (``ambiguous``) is handled by enumerating sign choices.
    """

    n: int
    sorted_singular_values: np.ndarray
    sorted_rows: np.ndarray
    degenerate: bool
    ambiguous: tuple = ()


def graph_signature(g: Graph, cfg: EncoderConfig = EncoderConfig()) -> Signature:
    enc = canonicalize_signs(eden_encode(g, cfg))
    svs = np.sort(enc.singular_values)[::-1]
    return Signature(g.n, svs, sort_rows(enc.values), enc.repeated, enc.ambiguous)


def _sorted_distance(ra: np.ndarray, rb: np.ndarray) -> float:
    return float(np.max(np.abs(ra - rb))) if ra.size else 0.0


def _matchable(ra: np.ndarray, rb: np.ndarray, tau: float) -> bool:
    """True if some bijection pairs every row of ``ra`` with a row of ``rb``
    within ``tau`` in max-abs norm."""
    close = np.max(np.abs(ra[:, None, :] - rb[None, :, :]), axis=2) <= tau
    match = maximum_bipartite_matching(csr_matrix(close), perm_type="column")
    return bool(np.all(match >= 0))


def row_distance(sa: Signature, sb: Signature, tau: float | None = None) -> float:
    """Max-abs gap between the sorted row lists, minimized over sign choices on
    the columns either side flags as ambiguous.

    With ``tau`` given, a gap above ``tau`` is double-checked by bipartite
    matching and reported as ``tau`` when the row multisets do match, so an
    unlucky sort order never separates matching rows.
    """
    cols = tuple(sorted(set(sa.ambiguous) | set(sb.ambiguous)))
    if len(cols) > MAX_AMBIGUOUS_COLUMNS:
        cols = ()
    m = sa.sorted_rows.shape[1]
    best = math.inf
    for s in sign_patterns(cols, m):
        rb = sort_rows(sb.sorted_rows * s) if cols else sb.sorted_rows
        best = min(best, _sorted_distance(sa.sorted_rows, rb))
        if tau is not None and best <= tau:
            return best
    if tau is not None:
        for s in sign_patterns(cols, m):
            if _matchable(sa.sorted_rows, sb.sorted_rows * s, tau):
                return tau
    return best


def compare_signatures(sa: Signature, sb: Signature, t: Thresholds) -> Verdict:
    if sa.n != sb.n:
        return Verdict(VerdictKind.NON_ISOMORPHIC, "node counts differ", math.inf)
    if sa.sorted_singular_values.shape != sb.sorted_singular_values.shape:
        return Verdict(VerdictKind.NON_ISOMORPHIC, "signature dimensions differ", math.inf)
    sv_gap = float(np.max(np.abs(sa.sorted_singular_values - sb.sorted_singular_values)))
    if sv_gap > t.tau_sv:
        return Verdict(VerdictKind.NON_ISOMORPHIC, "singular values differ", sv_gap)
    if sa.degenerate or sb.degenerate:
        return Verdict(VerdictKind.INCONCLUSIVE, "repeated singular values (degenerate spectrum)", sv_gap)
    row_gap = row_distance(sa, sb, t.tau_row)
    if row_gap > t.tau_row:
        return Verdict(VerdictKind.NON_ISOMORPHIC, "encoding rows differ", sv_gap, row_gap)
    return Verdict(VerdictKind.POSSIBLY_ISOMORPHIC, "signatures agree", sv_gap, row_gap)


def compare_pair(ga: Graph, gb: Graph, t: Thresholds = Thresholds(), cfg: EncoderConfig = EncoderConfig()) -> Verdict:
    if ga.n != gb.n:
        return Verdict(VerdictKind.NON_ISOMORPHIC, "node counts differ", math.inf)
    return compare_signatures(graph_signature(ga, cfg), graph_signature(gb, cfg), t)


def _discrepancies(g: Graph, perm_seed, cfg: EncoderConfig, base: Signature):
    h = apply_permutation(g, random_permutation(g.n, perm_seed))
    sh = graph_signature(h, cfg)
    sv = float(np.max(np.abs(base.sorted_singular_values - sh.sorted_singular_values)))
    row = None
    if not (base.degenerate or sh.degenerate):
        row = row_distance(base, sh)
    return sv, row


def calibrate_thresholds(
    corpus,
    trials: int = 5,
    seed: int = 0,
    cfg: EncoderConfig = EncoderConfig(),
    safety: float = 10.0,
) -> Thresholds:
    """Thresholds from the worst discrepancy seen between each corpus graph and
    ``trials`` randomly relabelled copies, times ``safety``, floored at 1e-8."""
    corpus = list(corpus)
    if not corpus:
        raise ValueError("calibration corpus is empty")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    worst_sv = worst_row = 0.0
    for i, g in enumerate(corpus):
        base = graph_signature(g, cfg)
        for t in range(trials):
            sv, row = _discrepancies(g, [seed, i, t], cfg, base)
            worst_sv = max(worst_sv, sv)
            if row is not None:
                worst_row = max(worst_row, row)
    return Thresholds(
        max(worst_sv * safety, THRESHOLD_FLOOR),
        max(worst_row * safety, THRESHOLD_FLOOR),
        safety,
    )


# -- 1-WL colour refinement ---------------------------------------------------


def _color(*parts) -> int:
    digest = hashlib.blake2b(repr(parts).encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def wl1_colors(g: Graph) -> list[int]:
    """Stable 1-WL colours per node; colours are comparable across graphs."""
    colors = [_color(0)] * g.n
    classes = 1
    for _ in range(g.n):
        new = [_color(colors[v], tuple(sorted(colors[u] for u in g.neighbors[v]))) for v in range(g.n)]
        new_classes = len(set(new))
        colors = new
        if new_classes == classes:
            break
        classes = new_classes
    return colors


def wl1_refine(g: Graph) -> Counter:
    return Counter(wl1_colors(g))


# -- exact isomorphism by backtracking ---------------------------------------


def exact_isomorphic(ga: Graph, gb: Graph, max_n: int = EXACT_MAX_N) -> bool:
    """Decide isomorphism by backtracking over WL-colour-compatible maps."""
    if max(ga.n, gb.n) > max_n:
        raise ValueError(f"exact_isomorphic limited to n <= {max_n}, got {max(ga.n, gb.n)}")
    if ga.n != gb.n or len(ga.edges) != len(gb.edges):
        return False
    ca, cb = wl1_colors(ga), wl1_colors(gb)
    if Counter(ca) != Counter(cb):
        return False
    n = ga.n
    aa, ab = ga.adjacency, gb.adjacency
    by_color = defaultdict(list)
    for v, c in enumerate(cb):
        by_color[c].append(v)
    # rarest colour class first, then neighbours of already-placed nodes
    order = []
    placed = set()
    freq = Counter(ca)
    while len(order) < n:
        frontier = [v for v in range(n) if v not in placed and any(u in placed for u in ga.neighbors[v])]
        pool = frontier or [v for v in range(n) if v not in placed]
        v = min(pool, key=lambda x: (freq[ca[x]], x))
        order.append(v)
        placed.add(v)
    mapping = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        for w in by_color[ca[v]]:
            if used[w]:
                continue
            if all(aa[v, order[j]] == ab[w, mapping[order[j]]] for j in range(k)):
                mapping[v] = w
                used[w] = True
                if extend(k + 1):
                    return True
                used[w] = False
        mapping[v] = -1
        return False

    return extend(0)


# -- corpus scanning ---------------------------------------------------------


@dataclass
class MisjudgeReport:
    corpus_size: int
    pairs_total: int
    non_isomorphic: int
    possibly_isomorphic: int
    inconclusive: int
    misjudged: int
    wall_ms: float
    # (i, j, kind) for every pair not declared NON_ISOMORPHIC, sorted
    flagged: list = field(default_factory=list, repr=False)

    def to_dict(self):
        d = asdict(self)
        d.pop("flagged")
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _signature_batch(args):
    graphs, cfg = args
    return [graph_signature(g, cfg) for g in graphs]


def signatures(corpus, cfg: EncoderConfig = EncoderConfig(), workers: int = 1) -> list[Signature]:
    corpus = list(corpus)
    if workers <= 1 or len(corpus) < 2 * workers:
        return _signature_batch((corpus, cfg))
    size = math.ceil(len(corpus) / (workers * 4))
    chunks = [(corpus[i : i + size], cfg) for i in range(0, len(corpus), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return [s for batch in pool.map(_signature_batch, chunks) for s in batch]


def _sv_key(sig: Signature, quantum: float) -> tuple:
    return (sig.n,) + tuple(np.round(sig.sorted_singular_values / quantum).astype(np.int64).tolist())


def dataset_scan(
    corpus,
    t: Thresholds = Thresholds(),
    cfg: EncoderConfig = EncoderConfig(),
    workers: int = 1,
) -> MisjudgeReport:
    """Count corpus pairs that are not separated.

    The corpus is assumed pairwise non-isomorphic, so every pair that is not
    declared NON_ISOMORPHIC is misjudged. Signatures are bucketed by their
    singular values rounded to 6 decimals (or to ``tau_sv`` if that is
    coarser); each bucket is compared with itself and its adjacent buckets,
    so a pair within ``tau_sv`` is never split.
    """
    start = time.perf_counter()
    corpus = list(corpus)
    sigs = signatures(corpus, cfg, workers)
    quantum = max(10.0**-SV_DECIMALS, t.tau_sv)
    buckets = defaultdict(list)
    for i, s in enumerate(sigs):
        buckets[_sv_key(s, quantum)].append(i)
    offsets = list(product((-1, 0, 1), repeat=cfg.m))
    candidates = set()
    for key, members in buckets.items():
        for off in offsets:
            other = buckets.get((key[0],) + tuple(k + o for k, o in zip(key[1:], off)))
            if other is None:
                continue
            for i in members:
                for j in other:
                    if i < j:
                        candidates.add((i, j))
    counts = Counter()
    flagged = []
    for i, j in sorted(candidates):
        v = compare_signatures(sigs[i], sigs[j], t)
        counts[v.kind] += 1
        if v.kind is not VerdictKind.NON_ISOMORPHIC:
            flagged.append((i, j, v.kind.value))
    total = len(corpus) * (len(corpus) - 1) // 2
    possibly = counts[VerdictKind.POSSIBLY_ISOMORPHIC]
    inconclusive = counts[VerdictKind.INCONCLUSIVE]
    return MisjudgeReport(
        corpus_size=len(corpus),
        pairs_total=total,
        non_isomorphic=total - possibly - inconclusive,
        possibly_isomorphic=possibly,
        inconclusive=inconclusive,
        misjudged=possibly + inconclusive,
        wall_ms=round((time.perf_counter() - start) * 1000, 3),
        flagged=flagged,
    )
