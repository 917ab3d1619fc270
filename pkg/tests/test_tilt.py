"""Displacement transforms: scalars, closed-form columns, reductions,
coherent states.

The heavyweight grid comparison of every closed-form column against the
exact displaced-column oracle lives in the acceptance suite; here the
same machinery runs at one small parameter point per family so a broken
formula fails fast.
"""

import cmath
import math

import numpy as np
import pytest

from sp4r.algebra import su2_rep_matrices, su11_rep_matrices
from sp4r.errors import (
    DegenerateReductionError,
    DomainError,
    HyperbolicDomainError,
    InvalidArgumentError,
)
from sp4r.linalg import expm
from sp4r.tilt import (
    KINDS,
    TiltParameters,
    combination,
    conjugate_closed_form,
    conjugate_numeric,
    displacement,
    hyperbolic_scalars,
    legacy_column_deviations,
    normal_form,
    perelomov_state,
    polar_angles,
    reduce_su11_form,
    reduce_su2_form,
    rotation_normal_form,
    transform_matrix,
    trigonometric_scalars,
)
from sp4r.fock import interior_indices


def test_scalar_helpers():
    # (sinh 2|z|, (cosh 2|z| - 1)/2) and its trigonometric mirror; both
    # depend on the magnitude only.
    xi = 0.4 * cmath.exp(0.7j)
    alpha, beta = hyperbolic_scalars(xi)
    assert alpha == pytest.approx(math.sinh(0.8), rel=1e-15)
    assert beta == pytest.approx((math.cosh(0.8) - 1) / 2, rel=1e-15)
    delta, eps = trigonometric_scalars(xi)
    assert delta == pytest.approx(math.sin(0.8), rel=1e-15)
    assert eps == pytest.approx((math.cos(0.8) - 1) / 2, rel=1e-15)
    assert hyperbolic_scalars(-xi) == hyperbolic_scalars(xi)


def test_polar_angles_round_trip():
    for z in (0.3 + 0.2j, -0.5j, 1.2, -0.7 + 0.1j):
        theta, phi = polar_angles(z)
        assert theta >= 0.0
        back = -(theta / 2.0) * cmath.exp(-1j * phi)
        assert abs(back - z) < 1e-14
    assert polar_angles(0j) == (0.0, 0.0)


def test_tilt_parameters_reject_inactive_values():
    TiltParameters(kind="su2", chi=0.3j)
    with pytest.raises(InvalidArgumentError):
        TiltParameters(kind="su2", xi=0.3)
    with pytest.raises(InvalidArgumentError):
        TiltParameters(kind="nope")


def test_normal_forms():
    nf = normal_form(0.5 * cmath.exp(1.1j))
    assert abs(nf.zeta) == pytest.approx(math.tanh(0.5), rel=1e-15)
    assert nf.eta == pytest.approx(math.log(1 - math.tanh(0.5) ** 2), rel=1e-12)
    rf = rotation_normal_form(0.5 * cmath.exp(1.1j))
    assert abs(rf.zeta) == pytest.approx(math.tan(0.5), rel=1e-14)
    with pytest.raises(InvalidArgumentError):
        rotation_normal_form(complex(math.pi / 2, 0))


def test_transform_matrix_is_identity_at_zero():
    for kind in KINDS:
        m = transform_matrix(TiltParameters(kind=kind))
        assert np.max(np.abs(m - np.eye(11))) < 1e-14


def test_legacy_deviations_touch_only_the_documented_columns():
    # Single-mode squeezes never needed correction; the two-mode squeeze
    # and the rotation each deviate on a fixed column set.
    params = TiltParameters(kind="su11_mode_a", xi_a=0.4 * cmath.exp(0.3j))
    assert max(legacy_column_deviations(params).values()) == 0.0

    params = TiltParameters(kind="su11_two_mode", xi=0.4 * cmath.exp(0.3j))
    devs = legacy_column_deviations(params)
    touched = {g for g, d in devs.items() if d > 1e-12}
    assert touched == {"K+a", "K-a", "K+b", "K-b", "J+", "J-"}

    params = TiltParameters(kind="su2", chi=0.4 * cmath.exp(0.3j))
    devs = legacy_column_deviations(params)
    touched = {g for g, d in devs.items() if d > 1e-12}
    assert touched == {"K+a", "K-a", "K+b", "K-b", "K+ab", "K-ab"}


def test_closed_form_matches_numeric_conjugation(gens10):
    # One modest parameter point per kind; interior comparison at margin
    # wide enough for the squeeze spill at |z| = 0.2.
    z = 0.2 * cmath.exp(0.9j)
    cases = [
        TiltParameters(kind="su11_mode_a", xi_a=z),
        TiltParameters(kind="su11_two_mode", xi=z),
        TiltParameters(kind="su2", chi=z),
        TiltParameters(kind="product_ab", xi_a=z, xi_b=0.6 * z),
    ]
    idx = interior_indices(gens10.basis, 4)
    for params in cases:
        d = displacement(params, gens10)
        for g in ("K+a", "K-ab", "J+", "K0ab"):
            want = conjugate_numeric(d, combination({g: 1.0}, gens10))
            have = combination(conjugate_closed_form(g, params), gens10)
            diff = (want.matrix - have.matrix)[np.ix_(idx, idx)]
            scale = max(1.0, np.max(np.abs(want.matrix[np.ix_(idx, idx)])))
            assert np.max(np.abs(diff)) / scale < 1e-10, (params.kind, g)


def test_displacement_is_unitary_on_the_truncation(gens10):
    # The truncated exponent stays exactly anti-Hermitian, so the matrix
    # exponential is unitary to roundoff even though its action near the
    # cutoff edge is corrupted.
    params = TiltParameters(kind="su11_two_mode", xi=0.3 * cmath.exp(0.4j))
    d = displacement(params, gens10).matrix
    assert np.max(np.abs(d.conj().T @ d - np.eye(d.shape[0]))) < 1e-12


def test_su11_reduction_worked_values():
    red = reduce_su11_form(5.0, 2.0, 2.0)
    assert red.eigen_slope == 3.0
    assert abs(red.k0_coefficient) == pytest.approx(3.0, abs=1e-10)
    assert red.tilt.kind == "su11_two_mode"
    assert max(abs(red.transformed[1]), abs(red.transformed[2])) < 1e-8
    # theta/phi reproduce xi under the polar convention.
    theta, phi = polar_angles(red.xi)
    assert (theta, phi) == (red.theta, red.phi)


def test_su11_reduction_matches_dense_spectrum():
    # Edge states of the truncated hyperbolic form dive deep into the
    # bulk (size 80 already corrupts the spacing by index 40), so the
    # dense ladder must be generously oversized for the window checked.
    red = reduce_su11_form(5.0, 2.0, 2.0, kind="su11_mode_a")
    k_plus, k_minus, k_zero = su11_rep_matrices(0.25, 200)
    h = 5.0 * k_zero + 2.0 * k_plus + 2.0 * k_minus
    vals = np.linalg.eigvalsh(h)
    spacings = np.diff(np.sort(vals))[5:40]
    assert np.max(np.abs(spacings - red.eigen_slope)) < 1e-8


def test_su11_reduction_domain_errors():
    with pytest.raises(HyperbolicDomainError):
        reduce_su11_form(1.0, 2.0, 2.0)          # tanh argument 4
    with pytest.raises(HyperbolicDomainError):
        reduce_su11_form(0.0, 1.0, 1.0)          # vanishing diagonal
    with pytest.raises(DegenerateReductionError):
        reduce_su11_form(4.0, 2.0, 2.0)          # a0^2 = 4 a1 a2
    with pytest.raises(InvalidArgumentError):
        reduce_su11_form(5.0, 2.0, 0.0)          # one-sided ladder
    with pytest.raises(InvalidArgumentError):
        reduce_su11_form(5.0, 2.0, 1.0)          # unbalanced moduli
    with pytest.raises(InvalidArgumentError):
        reduce_su11_form(5.0, 2.0, 2.0, kind="su2")


def test_su11_domain_error_iff_ratio_reaches_one():
    rng = np.random.default_rng(20260823)
    for _ in range(120):
        a0 = rng.uniform(0.1, 2.0) * rng.choice([-1.0, 1.0])
        magnitude = rng.uniform(0.0, 1.6)
        phase = rng.uniform(0, 2 * math.pi)
        a1 = magnitude * cmath.exp(1j * phase)
        a2 = a1.conjugate()
        ratio = 2.0 * magnitude / abs(a0)
        if abs(ratio - 1.0) < 1e-3:
            continue                      # float knife edge, not a verdict
        if ratio >= 1.0:
            with pytest.raises(DomainError):
                reduce_su11_form(a0, a1, a2)
        else:
            red = reduce_su11_form(a0, a1, a2)
            want = math.sqrt(a0 * a0 - 4.0 * magnitude ** 2) * \
                (1.0 if a0 > 0 else 1.0)
            assert abs(abs(red.eigen_slope) - want) < 1e-9


def test_su2_reduction_worked_values():
    red = reduce_su2_form(3.0, 2.0, 2.0)
    assert red.eigen_slope == 5.0
    assert abs(red.j0_coefficient) == pytest.approx(5.0, abs=1e-10)
    j_plus, j_minus, j_zero = su2_rep_matrices(2.0)
    h = 3.0 * j_zero + 2.0 * j_plus + 2.0 * j_minus
    vals = np.sort(np.linalg.eigvalsh(h))
    assert np.max(np.abs(np.diff(vals) - 5.0)) < 1e-12


def test_su2_reduction_never_leaves_the_domain():
    # The rotation family has no hyperbolic wall; even a vanishing
    # diagonal reduces (quarter-turn branch), and the all-zero form is
    # trivially diagonal rather than an error.
    red = reduce_su2_form(0.0, 1.5, 1.5)
    assert abs(red.eigen_slope) == pytest.approx(3.0, abs=1e-10)
    trivial = reduce_su2_form(0.0, 0.0, 0.0)
    assert trivial.chi == 0j
    assert trivial.eigen_slope == 0.0


def test_perelomov_su11_norm_and_expm():
    k_values = (0.25, 0.5, 0.75, 1.0)
    xi = 0.3 * cmath.exp(1.9j)
    for k in k_values:
        coeffs = perelomov_state("su11", k, 2, xi, length=60)
        assert abs(np.vdot(coeffs, coeffs).real - 1.0) < 1e-10
        k_plus, k_minus, _ = su11_rep_matrices(k, 90)
        column = expm(xi * k_plus - xi.conjugate() * k_minus)[:60, 2]
        assert np.max(np.abs(coeffs - column)) < 1e-8


def test_perelomov_su2_norm_and_expm():
    chi = 0.45 * cmath.exp(-0.8j)
    for j in (0.5, 1.0, 1.5):
        dim = round(2 * j) + 1
        for offset in range(dim):
            coeffs = perelomov_state("su2", j, offset, chi)
            assert abs(np.vdot(coeffs, coeffs).real - 1.0) < 1e-12
            j_plus, j_minus, _ = su2_rep_matrices(j)
            column = expm(chi * j_plus - chi.conjugate() * j_minus)[:, offset]
            assert np.max(np.abs(coeffs - column)) < 1e-12


def test_perelomov_argument_guards():
    with pytest.raises(InvalidArgumentError):
        perelomov_state("su11", 0.1, 0, 0.2j)     # weight below 1/4
    with pytest.raises(InvalidArgumentError):
        perelomov_state("su2", 1.0, 3, 0.2j)      # offset outside multiplet
    with pytest.raises(InvalidArgumentError):
        perelomov_state("heis", 1.0, 0, 0.2j)
    # Zero displacement returns the undisturbed basis state.
    coeffs = perelomov_state("su11", 0.5, 3, 0j, length=6)
    assert coeffs[3] == 1.0
    assert np.sum(np.abs(coeffs)) == 1.0
