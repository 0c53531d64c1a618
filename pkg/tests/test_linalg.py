from __future__ import annotations

import dataclasses
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sumspec.errors import AmbiguousBoundary, ConvergenceFailure, NotAProjection
from sumspec.linalg import (DEFAULT_TOLERANCES, HermitianMatrix, QComplex, Subspace,
                            check_projection, eigh, gram_embedding, lambda_min,
                            principal_angles, projection_range, spectral_gap_above_zero,
                            spectral_projection, subspace_intersection, svd)

F = Fraction


def proj(*vectors):
    v = np.array(vectors, dtype=complex).T
    q, _ = np.linalg.qr(v)
    return HermitianMatrix(q @ q.conj().T)


def line(angle):
    return proj([np.cos(angle), np.sin(angle)])


# -- construction -----------------------------------------------------------------
def test_hermitian_mirrors_upper_triangle():
    m = HermitianMatrix(np.array([[1, 2 + 1j], [99, 3]]))
    assert m.array[1, 0] == 2 - 1j


def test_exact_entries_and_text():
    m = HermitianMatrix([[F(1, 2), QComplex(1, -3)], [QComplex(1, 3), 2]])
    assert m.is_exact and m.rows_text() == [["1/2", "1-3i"], ["1+3i", "2"]]
    assert str(QComplex(0, 1)) == "i" and str(QComplex(0, F(-1, 2))) == "-1/2i"


# -- eigh ------------------------------------------------------------------------------
@pytest.mark.parametrize("a, want", [
    (np.eye(3), [1, 1, 1]),
    (np.diag([3.0, 1.0, 2.0]), [1, 2, 3]),
    (np.array([[0.0, 1.0], [1.0, 0.0]]), [-1, 1]),
])
def test_eigh_examples(a, want):
    d = eigh(HermitianMatrix(a))
    assert np.allclose(d.eigenvalues, want, atol=1e-14)


hermitians = st.integers(1, 24).flatmap(lambda n: st.integers(0, 2**32 - 1).map(
    lambda seed: _random_hermitian(n, seed)))


def _random_hermitian(n, seed):
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    kind = seed % 3
    if kind == 1:  # repeated eigenvalues
        q, _ = np.linalg.qr(g)
        w = rng.integers(-2, 3, size=n).astype(float)
        return HermitianMatrix((q * w) @ q.conj().T)
    if kind == 2:  # wide dynamic range
        q, _ = np.linalg.qr(g)
        w = 10.0 ** rng.uniform(-8, 3, size=n) * rng.choice([-1, 1], size=n)
        return HermitianMatrix((q * w) @ q.conj().T)
    return HermitianMatrix(g + g.conj().T)


@settings(max_examples=60, deadline=None)
@given(hermitians)
def test_eigh_against_lapack(a):
    d = eigh(a)
    norm = max(np.linalg.norm(a.array, 2), 1e-300)
    assert np.allclose(d.eigenvalues, np.linalg.eigvalsh(a.array), atol=1e-12 * norm)
    v = d.eigenvectors
    n = a.n
    assert np.linalg.norm(v.conj().T @ v - np.eye(n)) <= 1e-12 * np.sqrt(n) * 10
    resid = np.linalg.norm(a.array @ v - v * d.eigenvalues, axis=0)
    assert np.all(resid <= 1e-10 * norm)


def test_eigh_values_only_matches():
    a = _random_hermitian(30, 4)
    assert np.array_equal(eigh(a).eigenvalues, eigh(a, vectors=False).eigenvalues)


def test_eigh_sweep_budget():
    tol = dataclasses.replace(DEFAULT_TOLERANCES, sweeps=1)
    with pytest.raises(ConvergenceFailure):
        eigh(_random_hermitian(20, 3), tol)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_svd_against_lapack(m, n, seed):
    rng = np.random.default_rng(seed)
    r = int(rng.integers(0, min(m, n) + 1))
    a = (rng.normal(size=(m, r)) + 1j * rng.normal(size=(m, r))) @ rng.normal(size=(r, n))
    d = svd(a)
    s = np.linalg.svd(a, compute_uv=False) if a.size else np.zeros(0)
    k = len(s)
    top = max(s[0] if k else 0.0, 1.0)
    assert np.allclose(d.singular_values[:k], s, atol=1e-12 * top)
    assert np.all(d.singular_values[k:] <= 1e-12 * top)


# -- spectral projections and subspaces -----------------------------------------------------
def test_spectral_projection_examples():
    a = HermitianMatrix.diagonal([1, F(1, 2), F(1, 3)])
    s = spectral_projection(a, (0, F(2, 5)))
    assert s.dim == 1 and np.allclose(np.abs(s.frame[:, 0]), [0, 0, 1])
    assert spectral_projection(a, (-5, 5)).dim == 3
    s = spectral_projection(HermitianMatrix(np.array([[0.0, 1.0], [1.0, 0.0]])), (0.5, 2))
    assert s.dim == 1 and np.allclose(np.abs(s.frame[:, 0]), [2 ** -0.5, 2 ** -0.5])


def test_spectral_projection_ambiguous_boundary():
    a = HermitianMatrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
    with pytest.raises(AmbiguousBoundary):
        spectral_projection(a, (1.0, 2.0))


def test_exact_diagonal_boundary_is_decided():
    a = HermitianMatrix.diagonal([F(1, 2), 1])
    assert spectral_projection(a, (0, F(1, 2))).dim == 1


def test_intersection_examples():
    u = Subspace(np.eye(3)[:, :2])
    assert np.allclose(subspace_intersection([u, u]).projector(), u.projector(), atol=1e-10)
    assert subspace_intersection([Subspace(np.array([[1.0], [0.0]])),
                                  Subspace(np.array([[0.0], [1.0]]))]).dim == 0
    v = Subspace(np.eye(3)[:, 1:])
    w = subspace_intersection([u, v])
    assert w.dim == 1 and np.allclose(np.abs(w.frame[:, 0]), [0, 1, 0])


def test_intersection_of_tilted_planes():
    rng = np.random.default_rng(0)
    q, _ = np.linalg.qr(rng.normal(size=(6, 6)))
    u, v = Subspace(q[:, :3]), Subspace(q[:, [0, 3, 4]])
    w = subspace_intersection([u, v])
    assert w.dim == 1 and abs(abs(np.vdot(w.frame[:, 0], q[:, 0])) - 1) < 1e-10


def test_principal_angles_examples():
    u = Subspace(np.eye(4)[:, :2])
    assert np.allclose(principal_angles(u, u), [1, 1])
    a, b = Subspace(np.array([[1.0], [0.0]])), Subspace(np.array([[0.0], [1.0]]))
    assert np.allclose(principal_angles(a, b), [0])
    c = Subspace(np.array([[0.5], [np.sqrt(3) / 2]]))
    assert np.isclose(principal_angles(a, c)[0], 0.5)


def test_gram_embedding_examples():
    p = proj([1, 0, 0], [0, 1, 0])
    assert np.allclose(gram_embedding([p]).array, np.eye(2))
    q = proj([0, 0, 1])
    assert np.allclose(gram_embedding([p, q]).array, np.eye(3))
    theta = np.arccos(3 / 5)
    g = gram_embedding([line(0), line(theta)])
    assert np.allclose(np.abs(g.array), [[1, 0.6], [0.6, 1]])
    assert np.allclose(eigh(g).eigenvalues, [0.4, 1.6])


def test_lambda_min_and_gap_examples():
    assert lambda_min(HermitianMatrix.diagonal([1, 1, 1])) == 1
    assert lambda_min(HermitianMatrix.diagonal([1, 4])) == 1
    assert np.isclose(lambda_min(HermitianMatrix(np.array([[2.0, 1.0], [1.0, 2.0]]))), 1)
    assert np.isclose(spectral_gap_above_zero(proj([1, 1, 0])), 1)
    assert spectral_gap_above_zero(HermitianMatrix.zeros(3)) is None
    theta = np.arccos(3 / 5)
    s = HermitianMatrix(line(0).array + line(theta).array)
    assert np.isclose(spectral_gap_above_zero(s), 0.4)


def test_projection_checks():
    with pytest.raises(NotAProjection) as exc:
        check_projection(HermitianMatrix.diagonal([2, 0]), index=3)
    assert exc.value.index == 3
    r = projection_range(proj([1, 1j, 0], [0, 0, 1]))
    assert r.dim == 2
