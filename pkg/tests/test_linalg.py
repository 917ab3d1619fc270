"""Dense-matrix helper checks.

The exponential gets an independent oracle: a plain scaled Taylor series
written here, sharing no code with the implementation.
"""

import numpy as np
import pytest

from sp4r.errors import DimensionError, HermiticityError
from sp4r.linalg import (
    adjoint,
    anticommutator,
    as_complex_matrix,
    commutator,
    eigvals_general,
    expm,
    frob_norm,
    greedy_match,
    hermitian_eigensolve,
    is_hermitian,
    kron,
    least_squares_expand,
    max_abs,
    snap_coefficient,
)


def taylor_expm(m, terms=40):
    """Scaling-and-squaring Taylor exponential, independent of the package."""
    m = np.asarray(m, dtype=np.complex128)
    norm = np.max(np.abs(m))
    squarings = 0
    while norm > 0.5:
        norm /= 2.0
        squarings += 1
    scaled = m / (2.0 ** squarings)
    out = np.eye(m.shape[0], dtype=np.complex128)
    term = np.eye(m.shape[0], dtype=np.complex128)
    for k in range(1, terms):
        term = term @ scaled / k
        out = out + term
    for _ in range(squarings):
        out = out @ out
    return out


def test_expm_matches_taylor_oracle():
    rng = np.random.default_rng(20260301)
    for _ in range(25):
        m = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        m *= rng.uniform(0.1, 3.0) / np.max(np.abs(m))
        got = expm(m)
        want = taylor_expm(m)
        assert np.max(np.abs(got - want)) < 1e-12


def test_expm_inverse_is_negated_argument():
    rng = np.random.default_rng(7)
    m = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    prod = expm(m) @ expm(-m)
    assert np.max(np.abs(prod - np.eye(5))) < 1e-12


def test_adjoint_and_bracket_identities():
    rng = np.random.default_rng(11)
    x = rng.normal(size=(7, 7)) + 1j * rng.normal(size=(7, 7))
    y = rng.normal(size=(7, 7)) + 1j * rng.normal(size=(7, 7))
    assert np.allclose(adjoint(adjoint(x)), x)
    # [x, y]^dag = [y^dag, x^dag], {x, y} symmetric.
    assert np.allclose(adjoint(commutator(x, y)),
                       commutator(adjoint(y), adjoint(x)))
    assert np.allclose(anticommutator(x, y), anticommutator(y, x))
    assert np.allclose(commutator(x, y) + commutator(y, x),
                       np.zeros((7, 7)))


def test_kron_block_layout():
    a = np.array([[0.0, 1.0], [2.0, 3.0]])
    b = np.eye(3)
    k = kron(a, b)
    assert k.shape == (6, 6)
    assert np.allclose(k[:3, 3:], 1.0 * b)
    assert np.allclose(k[3:, :3], 2.0 * b)


def test_norms():
    m = np.array([[3.0, 0.0], [0.0, 4.0j]])
    assert abs(frob_norm(m) - 5.0) < 1e-15
    assert abs(max_abs(m) - 4.0) < 1e-15


def test_as_complex_matrix_rejects_non_square():
    with pytest.raises(DimensionError):
        as_complex_matrix(np.zeros((2, 3)))


def test_is_hermitian_tolerance():
    rng = np.random.default_rng(3)
    h = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    h = h + h.conj().T
    assert is_hermitian(h)
    assert not is_hermitian(h + 1e-3 * 1j * np.eye(6))
    # A perturbation below the relative gate is still accepted.
    assert is_hermitian(h + 1e-14 * 1j * np.eye(6))


def test_hermitian_eigensolve_reconstructs():
    rng = np.random.default_rng(5)
    h = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    h = h + h.conj().T
    vals, vecs = hermitian_eigensolve(h)
    assert np.all(np.diff(vals) >= 0)
    recon = (vecs * vals) @ vecs.conj().T
    assert np.max(np.abs(recon - h)) < 1e-12
    with pytest.raises(HermiticityError):
        hermitian_eigensolve(h + 0.1j * np.eye(8))


def test_eigvals_general_on_normal_matrix():
    # Diagonalizable non-Hermitian case with known eigenvalues.
    m = np.diag([1.0 + 2.0j, -3.0, 0.5j]).astype(np.complex128)
    got = sorted(eigvals_general(m), key=lambda z: (z.real, z.imag))
    want = sorted([1.0 + 2.0j, -3.0 + 0j, 0.5j], key=lambda z: (z.real, z.imag))
    assert max(abs(g - w) for g, w in zip(got, want)) < 1e-12


def test_snap_coefficient():
    assert snap_coefficient(3e-13) == 0.0
    assert snap_coefficient(0.5 + 4e-10) == 0.5
    assert snap_coefficient(-1.0 - 8e-10 + 1e-13j) == -1.0
    # Outside both gates the value passes through untouched.
    messy = 0.5003 + 0.02j
    assert snap_coefficient(messy) == messy


def test_least_squares_expand_is_exact_on_span_members():
    rng = np.random.default_rng(17)
    span = [rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
            for _ in range(4)]
    target = 2.0 * span[0] - 0.5 * span[2] + (1.0 + 1e-10) * span[3]
    coeffs, residual = least_squares_expand(target, span)
    assert coeffs[0] == 2.0
    assert coeffs[1] == 0.0
    assert coeffs[2] == -0.5
    assert coeffs[3] == 1.0          # half-integer snap absorbs the 1e-10
    assert residual < 1e-8


def test_least_squares_expand_shape_guard():
    with pytest.raises(DimensionError):
        least_squares_expand(np.eye(3), [np.eye(4)])


def test_greedy_match_ties_and_reuse():
    # Two closed values compete for the same oracle copy; the first in
    # table order wins it and ties go to the smaller oracle index.
    matches, unused = greedy_match([1.0, 1.0], [1.0, 1.0, 5.0], 1e-6)
    assert matches[0] == (0, 0.0)
    assert matches[1] == (1, 0.0)
    assert unused == [2]


def test_greedy_match_unmatched_entry():
    # The reported residual is the distance to the nearest *unused* copy,
    # infinite once every oracle value has been claimed.
    matches, unused = greedy_match([0.0, 10.0], [0.0, 3.0], 1e-6)
    assert matches[0] == (0, 0.0)
    idx, residual = matches[1]
    assert idx is None
    assert residual == pytest.approx(7.0)
    assert unused == [1]

    matches, _ = greedy_match([0.0, 10.0], [0.0], 1e-6)
    assert matches[1] == (None, np.inf)
