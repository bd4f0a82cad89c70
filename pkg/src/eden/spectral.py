"""Deterministic symmetric eigendecomposition and sign-fixed PCA."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

SYMMETRY_TOL = 1e-10
DEFAULT_GAP_TOL = 1e-6
DEFAULT_TIE_TOL = 1e-9


class SpectralError(ArithmeticError):
    pass


class Centering(str, enum.Enum):
    COLUMN_MEAN = "mean"
    NONE = "none"


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenpairs sorted by non-increasing eigenvalue; eigenvectors are columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sign_ambiguous: np.ndarray

    def __len__(self):
        return self.eigenvalues.size


@dataclass(frozen=True)
class Encoding:
    """Per-node feature matrix together with the spectrum it was projected on.

    ``degenerate`` is true when the projection is not unique up to node
    order: either the retained spectrum has a repeated value (``repeated``,
    any rotation of the eigenspace is valid) or some retained column has an
    unresolved sign (listed in ``ambiguous``).
    """

    values: np.ndarray
    singular_values: np.ndarray
    repeated: bool = False
    ambiguous: tuple = ()
    components: np.ndarray | None = None

    @property
    def degenerate(self) -> bool:
        return self.repeated or bool(self.ambiguous)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def m(self) -> int:
        return self.values.shape[1]


def sym_eigendecomp(m, sym_tol: float = SYMMETRY_TOL) -> SpectralDecomposition:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise SpectralError(f"expected a square matrix, got shape {m.shape}")
    asym = np.max(np.abs(m - m.T)) if m.size else 0.0
    if asym > sym_tol:
        raise SpectralError(f"matrix is not symmetric (max |M - M.T| = {asym:.3g})")
    if not np.isfinite(m).all():
        raise SpectralError("matrix has non-finite entries")
    # LAPACK syevd reads one triangle; symmetrizing keeps both triangles consistent
    m = 0.5 * (m + m.T)
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise SpectralError(f"eigendecomposition did not converge: {exc}") from exc
    w = w[::-1].copy()
    v = v[:, ::-1].copy()
    return SpectralDecomposition(w, v, np.zeros(w.size, dtype=bool))


def fix_signs(d: SpectralDecomposition, tie_tol: float = DEFAULT_TIE_TOL) -> SpectralDecomposition:
    """Flip each eigenvector so its largest-magnitude entry is positive.

    The choice only depends on the multiset of entries, so it is unchanged by
    permuting the vector. When the largest magnitude is attained (within
    ``tie_tol``) by entries of both signs the choice is not determined by the
    multiset; the lowest such index decides and the column is flagged.
    """
    vecs = d.eigenvectors.copy()
    ambiguous = np.zeros(vecs.shape[1], dtype=bool)
    for k in range(vecs.shape[1]):
        col = vecs[:, k]
        mag = np.abs(col)
        top = np.nonzero(mag >= mag.max() - tie_tol)[0]
        signs = np.sign(col[top])
        ambiguous[k] = bool((signs > 0).any() and (signs < 0).any())
        if col[top[0]] < 0:
            vecs[:, k] = -col
    return SpectralDecomposition(d.eigenvalues, vecs, ambiguous)


def _has_repeat(values: np.ndarray, gap_tol: float) -> bool:
    return values.size > 1 and bool(np.any(np.abs(np.diff(values)) < gap_tol))


def center(x: np.ndarray, centering: Centering) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if Centering(centering) is Centering.COLUMN_MEAN:
        return x - x.mean(axis=0, keepdims=True)
    return x.copy()


def pca_project(
    x,
    m: int,
    centering: Centering = Centering.COLUMN_MEAN,
    gap_tol: float = DEFAULT_GAP_TOL,
    tie_tol: float = DEFAULT_TIE_TOL,
) -> Encoding:
    """Project the rows of ``x`` onto its ``m`` leading principal axes.

    Axes are eigenvectors of ``Xc.T @ Xc`` with signs fixed by
    :func:`fix_signs`; the returned singular values are ``sqrt`` of the
    retained eigenvalues. ``repeated`` is set when any two of the first
    ``m + 1`` eigenvalues are closer than ``gap_tol``.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got {x.ndim}-D")
    n, k = x.shape
    if not 1 <= m <= min(n, k):
        raise ValueError(f"target dimension m={m} outside [1, {min(n, k)}]")
    xc = center(x, centering)
    gram = xc.T @ xc
    dec = fix_signs(sym_eigendecomp(0.5 * (gram + gram.T)), tie_tol)
    lam = np.clip(dec.eigenvalues, 0.0, None)
    # below the solver's resolution an eigenvalue is zero; sqrt would
    # otherwise turn 1e-16 roundoff into 1e-8 singular values
    lam[lam < 10 * k * np.finfo(float).eps * lam[0]] = 0.0
    axes = dec.eigenvectors[:, :m]
    scores = xc @ axes
    repeated = _has_repeat(lam[: min(m + 1, k)], gap_tol)
    ambiguous = tuple(int(j) for j in np.nonzero(dec.sign_ambiguous[:m])[0])
    return Encoding(scores, np.sqrt(lam[:m]), repeated, ambiguous, axes)
