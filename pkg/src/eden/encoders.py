"""Node encoders: EDEN, the distance ablations S1-S3, and Laplacian PE."""
from __future__ import annotations

import enum
import itertools
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .distances import DistanceMatrix, apsp, diameter_vector
from .graph import Graph
from .spectral import (
    DEFAULT_GAP_TOL,
    DEFAULT_TIE_TOL,
    Centering,
    Encoding,
    _has_repeat,
    fix_signs,
    pca_project,
    sym_eigendecomp,
)

UNREACHABLE_PHASE = -1.5
ROW_QUANTUM = 1e-6
# 2**12 joint sign patterns is the most we are willing to enumerate
MAX_AMBIGUOUS_COLUMNS = 12


class DegenerateRangeWarning(UserWarning):
    pass


class BaselineMode(str, enum.Enum):
    S1 = "s1"  # raw hop counts
    S2 = "s2"  # min-max normalized
    S3 = "s3"  # reversed min-max normalized


class LaplacianSelection(str, enum.Enum):
    SMALLEST_NONTRIVIAL = "min"
    LARGEST = "max"


@dataclass(frozen=True)
class EncoderConfig:
    m: int = 3
    centering: Centering = Centering.COLUMN_MEAN
    gap_tol: float = DEFAULT_GAP_TOL
    tie_tol: float = DEFAULT_TIE_TOL
    unreachable_value: float = UNREACHABLE_PHASE

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if not self.unreachable_value < -1:
            raise ValueError("unreachable_value must be below -1 to stay outside the cosine range")
        if self.gap_tol <= 0 or self.tie_tol <= 0:
            raise ValueError("tolerances must be positive")
        object.__setattr__(self, "centering", Centering(self.centering))


def _check_dims(g: Graph, m: int):
    if m > g.n:
        raise ValueError(f"cannot project {g.n} nodes onto m={m} dimensions")


def phase_propagation(d: DistanceMatrix, unreachable_value: float = UNREACHABLE_PHASE) -> np.ndarray:
    """Map row i of the distance matrix onto ``cos(pi * D[i, j] / d_i)``.

    The diagonal becomes 1 and the farthest reachable node -1; unreachable
    cells take ``unreachable_value``. Rows with ``d_i = 0`` reach only
    themselves, so their single finite cell maps to 1.
    """
    diam = diameter_vector(d).astype(float)
    scale = np.where(diam > 0, diam, 1.0)[:, None]
    phase = np.cos(np.pi * d.hops / scale)
    return np.where(d.reachable, phase, unreachable_value)


def eden_encode(g: Graph, cfg: EncoderConfig = EncoderConfig()) -> Encoding:
    _check_dims(g, cfg.m)
    phase = phase_propagation(apsp(g), cfg.unreachable_value)
    return pca_project(phase, cfg.m, cfg.centering, cfg.gap_tol, cfg.tie_tol)


def baseline_matrix(d: DistanceMatrix, mode: BaselineMode) -> np.ndarray:
    """Intermediate matrix for the S1/S2/S3 ablations; unreachable cells are -1."""
    mode = BaselineMode(mode)
    hops = d.hops.astype(float)
    if mode is BaselineMode.S1:
        out = hops
    else:
        finite = hops[d.reachable]
        lo, hi = finite.min(), finite.max()
        if hi > lo:
            out = (hops - lo) / (hi - lo)
        else:
            warnings.warn(
                "all finite distances are equal; min-max normalization is undefined",
                DegenerateRangeWarning,
                stacklevel=3,
            )
            out = np.zeros_like(hops)
        if mode is BaselineMode.S3:
            out = 1.0 - out
    return np.where(d.reachable, out, -1.0)


def encode_baseline(g: Graph, mode: BaselineMode, cfg: EncoderConfig = EncoderConfig()) -> Encoding:
    _check_dims(g, cfg.m)
    x = baseline_matrix(apsp(g), mode)
    return pca_project(x, cfg.m, cfg.centering, cfg.gap_tol, cfg.tie_tol)


def laplacian(g: Graph) -> np.ndarray:
    a = g.adjacency.astype(float)
    return np.diag(a.sum(axis=1)) - a


def laplacian_pe(
    g: Graph,
    m: int,
    which: LaplacianSelection = LaplacianSelection.SMALLEST_NONTRIVIAL,
    gap_tol: float = DEFAULT_GAP_TOL,
    tie_tol: float = DEFAULT_TIE_TOL,
) -> Encoding:
    """Eigenvectors of ``L = Deg - A`` as node features.

    ``SMALLEST_NONTRIVIAL`` skips the smallest eigenvalue and returns the next
    ``m`` columns in ascending order, so ``singular_values`` holds those
    eigenvalues ascending. ``LARGEST`` returns the top ``m`` descending.
    """
    which = LaplacianSelection(which)
    limit = g.n - 1 if which is LaplacianSelection.SMALLEST_NONTRIVIAL else g.n
    if not 1 <= m <= limit:
        raise ValueError(f"m={m} outside [1, {limit}] for {which.name} on n={g.n}")
    dec = fix_signs(sym_eigendecomp(laplacian(g)), tie_tol)
    lam = dec.eigenvalues
    if which is LaplacianSelection.SMALLEST_NONTRIVIAL:
        cols = np.arange(g.n - 2, g.n - 2 - m, -1)
        # the skipped trivial eigenvalue and the first one left out bound the selection
        window = lam[max(cols[-1] - 1, 0) : g.n][::-1]
    else:
        cols = np.arange(m)
        window = lam[: min(m + 1, g.n)]
    repeated = _has_repeat(window, gap_tol)
    ambiguous = tuple(int(j) for j, c in enumerate(cols) if dec.sign_ambiguous[c])
    return Encoding(dec.eigenvectors[:, cols], lam[cols].copy(), repeated, ambiguous, dec.eigenvectors[:, cols])


def normalize_unit(e: Encoding, per_row: bool = False) -> Encoding:
    """Min-max scale the feature values into [0, 1].

    Scaling uses the global min and max of the matrix by default, keeping
    colors comparable across nodes; ``per_row`` scales each row separately.
    Constant input (per matrix or per row) maps to 0.5 with a warning.
    """
    v = e.values
    axis = 1 if per_row else None
    lo = v.min(axis=axis, keepdims=True)
    hi = v.max(axis=axis, keepdims=True)
    span = hi - lo
    flat = span <= 0
    if np.any(flat):
        warnings.warn("constant feature values; mapping them to 0.5", DegenerateRangeWarning, stacklevel=2)
    out = np.where(flat, 0.5, (v - lo) / np.where(flat, 1.0, span))
    return replace(e, values=out)


# -- row-multiset helpers -----------------------------------------------------


def sort_rows(values: np.ndarray, quantum: float = ROW_QUANTUM) -> np.ndarray:
    """Rows in lexicographic order of their values rounded to ``quantum``.

    Rounding keeps rows whose leading coordinates differ only by solver noise
    in a stable relative order; exact values break remaining ties.
    """
    values = np.asarray(values, dtype=float)
    if values.shape[0] == 0:
        return values.copy()
    q = np.round(values / quantum)
    keys = [values[:, j] for j in range(values.shape[1] - 1, -1, -1)]
    keys += [q[:, j] for j in range(values.shape[1] - 1, -1, -1)]
    return values[np.lexsort(keys)]


def sign_patterns(columns, m: int):
    """Yield ±1 column-scaling vectors covering every sign choice on ``columns``."""
    columns = tuple(columns)
    for flips in itertools.product((1.0, -1.0), repeat=len(columns)):
        s = np.ones(m)
        s[list(columns)] = flips
        yield s


def canonicalize_signs(e: Encoding, quantum: float = ROW_QUANTUM) -> Encoding:
    """Resolve sign-ambiguous columns jointly.

    Among all sign choices on ``e.ambiguous`` pick the one whose sorted,
    rounded row list is lexicographically largest. The criterion reads only
    the row multiset, so isomorphic inputs land on the same choice.
    """
    if not e.ambiguous or len(e.ambiguous) > MAX_AMBIGUOUS_COLUMNS:
        return e
    best_key, best_s = None, None
    for s in sign_patterns(e.ambiguous, e.m):
        rows = np.round(sort_rows(e.values * s, quantum) / quantum)
        key = tuple(map(tuple, rows.tolist()))
        if best_key is None or key > best_key:
            best_key, best_s = key, s
    comps = None if e.components is None else e.components * best_s
    return replace(e, values=e.values * best_s, components=comps)
