"""Truncated two-mode Fock space: layout, ladders, interiors, sectors.

Cutoffs are inclusive throughout: a cutoff of 8 keeps occupations 0..8,
nine states per axis.  Several tests below pin that convention because
getting it silently wrong shifts every dense comparison in the package.
"""

import numpy as np
import pytest

from sp4r.errors import DimensionError, InvalidArgumentError
from sp4r.fock import (
    OperatorMatrix,
    basis_vector,
    boson_operators,
    build_basis,
    interior_indices,
    interior_projector,
    su11_sector_indices,
    su2_sector_indices,
)
from sp4r.linalg import commutator


def test_inclusive_cutoffs():
    basis = build_basis(8, 2)
    assert basis.dim == 9 * 3
    occupations_a, occupations_b = basis.occupations()
    assert occupations_a.max() == 8
    assert occupations_b.max() == 2


def test_state_index_round_trip():
    basis = build_basis(5, 3)
    for i in range(basis.dim):
        n_a, n_b = basis.state(i)
        assert 0 <= n_a <= 5 and 0 <= n_b <= 3
        assert basis.index(n_a, n_b) == i


def test_index_bounds():
    basis = build_basis(4, 4)
    with pytest.raises(InvalidArgumentError):
        basis.index(5, 0)
    with pytest.raises(InvalidArgumentError):
        basis.index(0, -1)


def test_invalid_cutoffs_rejected():
    with pytest.raises(InvalidArgumentError):
        build_basis(0, 4)
    with pytest.raises(InvalidArgumentError):
        build_basis(4, -2)


def test_ladder_matrix_elements():
    basis = build_basis(6, 6)
    ops = boson_operators(basis)
    # <n-1| a |n> = sqrt(n) on mode a, mode b untouched.
    for n in range(1, 7):
        row = basis.index(n - 1, 2)
        col = basis.index(n, 2)
        assert ops.a[row, col] == pytest.approx(np.sqrt(n))
    assert np.allclose(ops.a_dag, ops.a.conj().T)
    assert np.allclose(ops.b_dag, ops.b.conj().T)
    # Number operators are diagonal with the occupation on the diagonal.
    occupations_a, _ = basis.occupations()
    assert np.allclose(np.diag(ops.a_dag @ ops.a).real, occupations_a)


def test_ccr_holds_on_the_interior():
    basis = build_basis(9, 9)
    ops = boson_operators(basis)
    idx = interior_indices(basis, 2)
    for pair in (commutator(ops.a, ops.a_dag), commutator(ops.b, ops.b_dag)):
        sub = (pair - np.eye(basis.dim))[np.ix_(idx, idx)]
        assert np.max(np.abs(sub)) < 1e-12
    # Cross-mode commutators vanish on the whole space.
    assert np.max(np.abs(commutator(ops.a, ops.b_dag))) == 0.0


def test_interior_margins():
    basis = build_basis(6, 4)
    assert len(interior_indices(basis, 0)) == basis.dim
    idx = interior_indices(basis, 2)
    for i in idx:
        n_a, n_b = basis.state(i)
        assert n_a <= 4 and n_b <= 2
    assert len(idx) == 5 * 3
    with pytest.raises(InvalidArgumentError):
        interior_indices(basis, 4)   # >= min cutoff
    with pytest.raises(InvalidArgumentError):
        interior_indices(basis, -1)


def test_interior_projector_is_idempotent():
    basis = build_basis(5, 5)
    proj = interior_projector(basis, 2)
    assert np.allclose(proj.matrix @ proj.matrix, proj.matrix)
    doubled = interior_projector(basis, 2, spin_factor=True)
    assert doubled.matrix.shape == (2 * basis.dim, 2 * basis.dim)
    assert np.trace(doubled.matrix).real == 2 * np.trace(proj.matrix).real


def test_su11_sector_ordering():
    basis = build_basis(7, 4)
    idx = su11_sector_indices(basis, 3)
    states = [basis.state(i) for i in idx]
    assert states == [(3, 0), (4, 1), (5, 2), (6, 3), (7, 4)]
    # Negative differences mirror onto mode b.
    idx = su11_sector_indices(basis, -2)
    assert [basis.state(i) for i in idx][:2] == [(0, 2), (1, 3)]


def test_su2_sector_ordering():
    basis = build_basis(6, 6)
    idx = su2_sector_indices(basis, 4)
    states = [basis.state(i) for i in idx]
    assert states == [(0, 4), (1, 3), (2, 2), (3, 1), (4, 0)]


def test_basis_vector():
    basis = build_basis(3, 3)
    v = basis_vector(basis, 2, 1)
    assert v[basis.index(2, 1)] == 1.0
    assert np.sum(np.abs(v)) == 1.0


def test_operator_matrix_guards():
    basis = build_basis(3, 3)
    with pytest.raises(DimensionError):
        OperatorMatrix(np.eye(5), basis)
    ok = OperatorMatrix(np.eye(basis.dim), basis)
    other = OperatorMatrix(np.eye(2 * basis.dim), basis, spin_factor=True)
    with pytest.raises(DimensionError):
        ok @ other
    assert (2.0 * ok).matrix[0, 0] == 2.0
    assert ok.adjoint().matrix[0, 0] == 1.0
