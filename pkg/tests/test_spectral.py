import numpy as np
import pytest

from eden.spectral import (
    Centering,
    SpectralDecomposition,
    SpectralError,
    center,
    fix_signs,
    pca_project,
    sym_eigendecomp,
)


def _random_sym(rng, n):
    a = rng.normal(size=(n, n))
    return a + a.T


def test_identity():
    d = sym_eigendecomp(np.eye(4))
    assert np.allclose(d.eigenvalues, 1)
    assert np.allclose(d.eigenvectors.T @ d.eigenvectors, np.eye(4))


def test_diagonal_sorted_descending():
    d = fix_signs(sym_eigendecomp(np.diag([3.0, 1.0, 2.0])))
    assert np.allclose(d.eigenvalues, [3, 2, 1])
    assert np.allclose(np.abs(d.eigenvectors), [[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    assert np.allclose(d.eigenvectors, np.abs(d.eigenvectors))


@pytest.mark.parametrize("seed", range(10))
def test_reconstruction(seed):
    rng = np.random.default_rng(seed)
    a = _random_sym(rng, int(rng.integers(1, 25)))
    d = sym_eigendecomp(a)
    v, w = d.eigenvectors, d.eigenvalues
    assert np.linalg.norm(v @ np.diag(w) @ v.T - a) < 1e-8
    assert np.all(np.diff(w) <= 0)


def test_rejects_bad_input():
    with pytest.raises(SpectralError):
        sym_eigendecomp(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(SpectralError):
        sym_eigendecomp(np.ones((2, 3)))
    with pytest.raises(SpectralError):
        sym_eigendecomp(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_fix_signs_largest_entry_positive():
    v = np.array([[0.6, -0.8], [-0.8, -0.6]])
    d = fix_signs(SpectralDecomposition(np.array([2.0, 1.0]), v, np.zeros(2, bool)))
    assert np.allclose(d.eigenvectors, [[-0.6, 0.8], [0.8, 0.6]])
    assert not d.sign_ambiguous.any()


def test_fix_signs_flags_opposite_tie():
    s = np.sqrt(0.5)
    v = np.array([[s, s], [-s, s]])
    d = fix_signs(SpectralDecomposition(np.array([2.0, 1.0]), v, np.zeros(2, bool)))
    assert d.sign_ambiguous.tolist() == [True, False]
    # lowest tied index decides
    assert d.eigenvectors[0, 0] > 0


def test_fix_signs_is_permutation_stable():
    rng = np.random.default_rng(4)
    a = _random_sym(rng, 8)
    perm = rng.permutation(8)
    p = np.eye(8)[perm]
    d1 = fix_signs(sym_eigendecomp(a))
    d2 = fix_signs(sym_eigendecomp(p @ a @ p.T))
    assert np.allclose(p @ d1.eigenvectors, d2.eigenvectors, atol=1e-10)


def test_pca_small_example():
    e = pca_project(np.array([[1.0, 0.0], [-1.0, 0.0], [3.0, 0.0]]), 1)
    assert np.allclose(e.values[:, 0], [0, -2, 2])
    assert np.allclose(e.singular_values, [np.sqrt(8)])
    assert not e.repeated


def test_pca_uncentered():
    e = pca_project(np.array([[1.0, 0.0], [-1.0, 0.0], [3.0, 0.0]]), 1, Centering.NONE)
    assert np.allclose(e.values[:, 0], [1, -1, 3])
    assert np.allclose(e.singular_values, [np.sqrt(11)])


def test_pca_zero_matrix_is_degenerate():
    e = pca_project(np.zeros((4, 4)), 2)
    assert e.repeated and e.degenerate
    assert np.allclose(e.values, 0)


def test_pca_repeated_boundary():
    # eigenvalues 4, 1, 1: retaining m=1 is safe but m=2 splits a pair
    x = np.diag([2.0, 1.0, 1.0])
    assert not pca_project(x, 1, Centering.NONE).repeated
    assert pca_project(x, 2, Centering.NONE).repeated
    assert not pca_project(np.diag([3.0, 2.0, 1.0]), 2, Centering.NONE).repeated


def test_pca_dimension_errors():
    with pytest.raises(ValueError):
        pca_project(np.eye(3), 4)
    with pytest.raises(ValueError):
        pca_project(np.eye(3), 0)


def test_center_commutes_with_row_permutation():
    rng = np.random.default_rng(0)
    x = rng.normal(size=(7, 7))
    perm = rng.permutation(7)
    assert np.allclose(center(x[perm], Centering.COLUMN_MEAN), center(x, Centering.COLUMN_MEAN)[perm])
    assert np.allclose(center(x, Centering.COLUMN_MEAN).mean(axis=0), 0)


@pytest.mark.parametrize("seed", range(5))
def test_singular_values_match_svd(seed):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(12, 12))
    e = pca_project(x, 4)
    ref = np.linalg.svd(x - x.mean(axis=0), compute_uv=False)[:4]
    assert np.allclose(e.singular_values, ref, atol=1e-9)


@pytest.mark.parametrize("seed", range(5))
def test_singular_values_invariant_under_conjugation(seed):
    rng = np.random.default_rng(seed)
    x = _random_sym(rng, 9)
    p = np.eye(9)[rng.permutation(9)]
    a = pca_project(x, 3).singular_values
    b = pca_project(p.T @ x @ p, 3).singular_values
    assert np.allclose(a, b, atol=1e-10)


@pytest.mark.parametrize("seed", range(5))
def test_rank_deficient_singular_values_are_exact_zeros(seed):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(8, 2)) @ rng.normal(size=(2, 8))
    e = pca_project(x, 4)
    assert np.all(e.singular_values[2:] == 0.0)
