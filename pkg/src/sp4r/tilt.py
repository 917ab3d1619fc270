"""Tilting (displacement) transformations for the two-mode boson algebra.

This module supplies the unitary displacement operators attached to each
realization of the algebra -- per-mode squeezes, the two-mode pair squeeze,
the beam-splitter rotation, and their ordered products -- together with the
closed-form similarity transformation of every generator under each of them.

Every closed form ships in two modes:

``verified``
    the default coefficient set, validated against direct numeric
    conjugation (``expm`` sandwich) on interior truncations;
``legacy``
    an earlier uncorrected coefficient tabulation, preserved verbatim so
    the deviations can be rendered in a discrepancy report.  The legacy
    tables differ from the verified ones in a handful of signs and
    factors of two; see ``legacy_column_deviations``.

The module also hosts the two generic eigenvalue reductions used by the
diagonalization pipeline (``reduce_su11_form`` / ``reduce_su2_form``), the
normal-form parameters of the displacement, and the group coherent /
number-coherent state series.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import GENERATOR_ORDER, GeneratorSet
from .errors import (
    DegenerateReductionError,
    HyperbolicDomainError,
    InvalidArgumentError,
)
from .fock import OperatorMatrix
from .linalg import expm

#: Labels of the coefficient basis used by every closed-form transform:
#: the ten generators followed by the identity.
COEFF_BASIS = GENERATOR_ORDER + ("I",)

_COEFF_INDEX = {label: i for i, label in enumerate(COEFF_BASIS)}

#: The supported displacement kinds.
KINDS = (
    "su11_two_mode",
    "su11_mode_a",
    "su11_mode_b",
    "su2",
    "product_ab",
    "sp4r_product",
)

#: Which complex parameters each kind reads.
_ACTIVE = {
    "su11_two_mode": ("xi",),
    "su11_mode_a": ("xi_a",),
    "su11_mode_b": ("xi_b",),
    "su2": ("chi",),
    "product_ab": ("xi_a", "xi_b"),
    "sp4r_product": ("xi_a", "xi_b", "xi", "chi"),
}


def _phase(z: complex) -> complex:
    """Unit-modulus phase of ``z``; defined as 1 at the origin.

    Every place the phase enters a closed form it is multiplied by a factor
    that vanishes with |z|, so the origin convention never leaks.
    """
    a = abs(z)
    if a == 0.0:
        return 1.0 + 0.0j
    return z / a


def hyperbolic_scalars(xi: complex) -> tuple[float, float]:
    """Return ``(alpha, beta) = (sinh 2|xi|, (cosh 2|xi| - 1)/2)``."""
    r = abs(xi)
    return math.sinh(2.0 * r), (math.cosh(2.0 * r) - 1.0) / 2.0


def trigonometric_scalars(chi: complex) -> tuple[float, float]:
    """Return ``(delta, epsilon) = (sin 2|chi|, (cos 2|chi| - 1)/2)``."""
    r = abs(chi)
    return math.sin(2.0 * r), (math.cos(2.0 * r) - 1.0) / 2.0


def polar_angles(z: complex) -> tuple[float, float]:
    """Return ``(theta, phi)`` such that ``z = -(theta/2) e^{-i phi}``.

    ``theta = 2|z| >= 0``; ``phi`` uses the principal branch and is 0 when
    ``z`` vanishes.
    """
    r = abs(z)
    if r == 0.0:
        return 0.0, 0.0
    return 2.0 * r, -cmath.phase(-z / r)


@dataclass(frozen=True)
class TiltParameters:
    """Displacement parameters for one transformation kind.

    ``kind`` selects the realization; only the parameters listed for that
    kind may be nonzero (``xi`` for the two-mode pair squeeze, ``chi`` for
    the rotation, ``xi_a``/``xi_b`` for the per-mode squeezes and their
    products).
    """

    kind: str
    xi: complex = 0j
    chi: complex = 0j
    xi_a: complex = 0j
    xi_b: complex = 0j

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise InvalidArgumentError(
                f"unknown displacement kind {self.kind!r}; expected one of {KINDS}"
            )
        active = _ACTIVE[self.kind]
        for name in ("xi", "chi", "xi_a", "xi_b"):
            if name not in active and getattr(self, name) != 0:
                raise InvalidArgumentError(
                    f"parameter {name!r} is not read by kind {self.kind!r} "
                    "and must stay zero"
                )

    def active_parameters(self) -> dict[str, complex]:
        """The parameters this kind actually reads, by name."""
        return {name: getattr(self, name) for name in _ACTIVE[self.kind]}

    def polar(self, name: str) -> tuple[float, float]:
        """``(theta, phi)`` of one named parameter (see ``polar_angles``)."""
        if name not in ("xi", "chi", "xi_a", "xi_b"):
            raise InvalidArgumentError(f"unknown parameter name {name!r}")
        return polar_angles(getattr(self, name))


@dataclass(frozen=True)
class NormalForm:
    """Parameters of the factorized (normal-ordered) squeeze.

    ``zeta`` is the disc coordinate of the squeeze (``|zeta| < 1``) and
    ``eta = ln(1 - |zeta|^2) <= 0`` the accompanying weight exponent.
    """

    zeta: complex
    eta: float


@dataclass(frozen=True)
class RotationNormalForm:
    """Factorized form of the rotation: ``zeta = tan``-type coordinate,
    ``eta = ln(1 + |zeta|^2) >= 0``."""

    zeta: complex
    eta: float


def normal_form(xi: complex) -> NormalForm:
    """Normal-form parameters of ``exp(xi K+ - xi* K-)`` (hyperbolic family).

    ``zeta = (xi/|xi|) tanh|xi|`` and ``eta = ln(1 - |zeta|^2)``.
    """
    r = abs(xi)
    if r == 0.0:
        return NormalForm(zeta=0j, eta=0.0)
    zeta = (xi / r) * math.tanh(r)
    return NormalForm(zeta=zeta, eta=math.log(1.0 - abs(zeta) ** 2))


def rotation_normal_form(chi: complex) -> RotationNormalForm:
    """Normal-form parameters of ``exp(chi J+ - chi* J-)`` (rotation family).

    ``zeta = (chi/|chi|) tan|chi|`` with ``eta = ln(1 + |zeta|^2)``;
    requires ``|chi| < pi/2``.
    """
    r = abs(chi)
    if r >= math.pi / 2.0:
        raise InvalidArgumentError(
            f"rotation normal form needs |chi| < pi/2, got {r:.6g}"
        )
    if r == 0.0:
        return RotationNormalForm(zeta=0j, eta=0.0)
    zeta = (chi / r) * math.tan(r)
    return RotationNormalForm(zeta=zeta, eta=math.log(1.0 + abs(zeta) ** 2))


# ---------------------------------------------------------------------------
# Closed-form coefficient tables.
#
# Each builder returns {column_label: {row_label: coefficient}} where the
# column is the conjugated generator X and the rows expand D^dag X D over
# COEFF_BASIS.  Omitted rows are zero.
# ---------------------------------------------------------------------------


def _columns_identity() -> dict[str, dict[str, complex]]:
    return {g: {g: 1.0} for g in GENERATOR_ORDER}


def _columns_su11_mode(xi: complex, mode: str) -> dict[str, dict[str, complex]]:
    """Single-mode squeeze columns (same in verified and legacy modes)."""
    if xi == 0:
        return _columns_identity()
    e = _phase(xi)
    eb = e.conjugate()
    r = abs(xi)
    c, s = math.cosh(r), math.sinh(r)
    big_c, big_s = math.cosh(2.0 * r), math.sinh(2.0 * r)
    ch2, sh2 = c * c, s * s
    if mode == "a":
        return {
            "K+a": {"K+a": ch2, "K-a": eb * eb * sh2,
                    "K0ab": eb * big_s / 2.0, "J0": eb * big_s / 2.0},
            "K-a": {"K-a": ch2, "K+a": e * e * sh2,
                    "K0ab": e * big_s / 2.0, "J0": e * big_s / 2.0},
            "K+b": {"K+b": 1.0},
            "K-b": {"K-b": 1.0},
            "K0ab": {"K0ab": (big_c + 1.0) / 2.0, "J0": (big_c - 1.0) / 2.0,
                     "K+a": e * big_s / 2.0, "K-a": eb * big_s / 2.0},
            "J0": {"K0ab": (big_c - 1.0) / 2.0, "J0": (big_c + 1.0) / 2.0,
                   "K+a": e * big_s / 2.0, "K-a": eb * big_s / 2.0},
            "J+": {"J+": c, "K-ab": eb * s},
            "J-": {"J-": c, "K+ab": e * s},
            "K+ab": {"K+ab": c, "J-": eb * s},
            "K-ab": {"K-ab": c, "J+": e * s},
        }
    if mode == "b":
        return {
            "K+b": {"K+b": ch2, "K-b": eb * eb * sh2,
                    "K0ab": eb * big_s / 2.0, "J0": -eb * big_s / 2.0},
            "K-b": {"K-b": ch2, "K+b": e * e * sh2,
                    "K0ab": e * big_s / 2.0, "J0": -e * big_s / 2.0},
            "K+a": {"K+a": 1.0},
            "K-a": {"K-a": 1.0},
            "K0ab": {"K0ab": (big_c + 1.0) / 2.0, "J0": (1.0 - big_c) / 2.0,
                     "K+b": e * big_s / 2.0, "K-b": eb * big_s / 2.0},
            "J0": {"K0ab": (1.0 - big_c) / 2.0, "J0": (1.0 + big_c) / 2.0,
                   "K+b": -e * big_s / 2.0, "K-b": -eb * big_s / 2.0},
            "J+": {"J+": c, "K+ab": e * s},
            "J-": {"J-": c, "K-ab": eb * s},
            "K+ab": {"K+ab": c, "J+": eb * s},
            "K-ab": {"K-ab": c, "J-": e * s},
        }
    raise InvalidArgumentError(f"unknown mode {mode!r}")


def _columns_su11_two_mode(xi: complex, legacy: bool) -> dict[str, dict[str, complex]]:
    """Two-mode pair-squeeze columns.

    The legacy table flips the sign of every term carrying a single power
    of sinh in the K+-/J+- columns; the diagonal blocks agree.
    """
    if xi == 0:
        return _columns_identity()
    e = _phase(xi)
    eb = e.conjugate()
    r = abs(xi)
    big_c, big_s = math.cosh(2.0 * r), math.sinh(2.0 * r)
    alpha, beta = big_s, (big_c - 1.0) / 2.0
    sgn = -1.0 if legacy else 1.0
    half_p = (big_c + 1.0) / 2.0
    half_m = (big_c - 1.0) / 2.0
    return {
        "K-a": {"K-a": half_p, "K+b": e * e * half_m, "J-": sgn * e * big_s / 2.0},
        "K+a": {"K+a": half_p, "K-b": eb * eb * half_m, "J+": sgn * eb * big_s / 2.0},
        "K-b": {"K-b": half_p, "K+a": e * e * half_m, "J+": sgn * e * big_s / 2.0},
        "K+b": {"K+b": half_p, "K-a": eb * eb * half_m, "J-": sgn * eb * big_s / 2.0},
        "J+": {"J+": big_c, "K+a": sgn * e * big_s, "K-b": sgn * eb * big_s},
        "J-": {"J-": big_c, "K+b": sgn * e * big_s, "K-a": sgn * eb * big_s},
        "J0": {"J0": 1.0},
        "K0ab": {"K0ab": 2.0 * beta + 1.0,
                 "K+ab": e * alpha / 2.0, "K-ab": eb * alpha / 2.0},
        "K+ab": {"K+ab": 1.0 + beta, "K0ab": eb * alpha, "K-ab": eb * eb * beta},
        "K-ab": {"K-ab": 1.0 + beta, "K0ab": e * alpha, "K+ab": e * e * beta},
    }


def _columns_su2(chi: complex, legacy: bool) -> dict[str, dict[str, complex]]:
    """Rotation columns.

    The legacy table flips the sign of every single-sine cross term in the
    K columns; the J columns agree.
    """
    if chi == 0:
        return _columns_identity()
    u = _phase(chi)
    ub = u.conjugate()
    r = abs(chi)
    c2, s2 = math.cos(2.0 * r), math.sin(2.0 * r)
    delta, eps = s2, (c2 - 1.0) / 2.0
    sgn = -1.0 if legacy else 1.0
    half_p = (c2 + 1.0) / 2.0
    half_m = (c2 - 1.0) / 2.0
    return {
        "K-a": {"K-a": half_p, "K-b": -u * u * half_m, "K-ab": sgn * u * s2 / 2.0},
        "K+a": {"K+a": half_p, "K+b": -ub * ub * half_m, "K+ab": sgn * ub * s2 / 2.0},
        "K-b": {"K-b": half_p, "K-a": -ub * ub * half_m, "K-ab": -sgn * ub * s2 / 2.0},
        "K+b": {"K+b": half_p, "K+a": -u * u * half_m, "K+ab": -sgn * u * s2 / 2.0},
        "K+ab": {"K+ab": c2, "K+a": -sgn * u * s2, "K+b": sgn * ub * s2},
        "K-ab": {"K-ab": c2, "K-a": -sgn * ub * s2, "K-b": sgn * u * s2},
        "K0ab": {"K0ab": 1.0},
        "J0": {"J0": 2.0 * eps + 1.0, "J+": delta * u / 2.0, "J-": delta * ub / 2.0},
        "J+": {"J+": 1.0 + eps, "J0": -ub * delta, "J-": ub * ub * eps},
        "J-": {"J-": 1.0 + eps, "J0": -u * delta, "J+": u * u * eps},
    }


def _columns_product_ab_legacy(xi_a: complex, xi_b: complex) -> dict[str, dict[str, complex]]:
    """Legacy table for the product of per-mode squeezes.

    Reproduced verbatim: the J0/K0ab columns carry doubled diagonal
    coefficients, sign-flipped sinh terms and a spurious identity shift on
    K0ab; the J/K-pair columns flip the single-sinh cross terms.  The
    per-mode K columns reuse the (correct) single-mode tables.
    """
    ea, eab = _phase(xi_a), _phase(xi_a).conjugate()
    e_b, e_bb = _phase(xi_b), _phase(xi_b).conjugate()
    ra, rb = abs(xi_a), abs(xi_b)
    ca_2, sa_2 = math.cosh(2.0 * ra), math.sinh(2.0 * ra)
    cb_2, sb_2 = math.cosh(2.0 * rb), math.sinh(2.0 * rb)
    ca, sa = math.cosh(ra), math.sinh(ra)
    cb, sb = math.cosh(rb), math.sinh(rb)
    cols = _matrix_to_columns(
        _columns_to_matrix(_columns_su11_mode(xi_b, "b"))
        @ _columns_to_matrix(_columns_su11_mode(xi_a, "a"))
    )
    cols["J0"] = {
        "J0": ca_2 + cb_2, "K0ab": ca_2 - cb_2,
        "K+a": -sa_2 * ea, "K-a": -sa_2 * eab,
        "K+b": sb_2 * e_b, "K-b": sb_2 * e_bb,
    }
    cols["K0ab"] = {
        "J0": ca_2 - cb_2, "K0ab": ca_2 + cb_2,
        "K+a": -sa_2 * ea, "K-a": -sa_2 * eab,
        "K+b": -sb_2 * e_b, "K-b": -sb_2 * e_bb,
        "I": -1.0,
    }
    cols["J+"] = {"J+": ca * cb, "K-ab": -eab * cb * sa,
                  "K+ab": -e_b * ca * sb, "J-": eab * e_b * sa * sb}
    cols["J-"] = {"J-": ca * cb, "K+ab": -ea * cb * sa,
                  "K-ab": -e_bb * ca * sb, "J+": ea * e_bb * sa * sb}
    cols["K-ab"] = {"K-ab": ca * cb, "J+": -ea * cb * sa,
                    "J-": -e_b * ca * sb, "K+ab": ea * e_b * sa * sb}
    cols["K+ab"] = {"K+ab": ca * cb, "J-": -eab * cb * sa,
                    "J+": -e_bb * ca * sb, "K-ab": eab * e_bb * sa * sb}
    return cols


def _columns_to_matrix(cols: dict[str, dict[str, complex]]) -> np.ndarray:
    m = np.zeros((len(COEFF_BASIS), len(COEFF_BASIS)), dtype=np.complex128)
    m[_COEFF_INDEX["I"], _COEFF_INDEX["I"]] = 1.0
    for col, rows in cols.items():
        j = _COEFF_INDEX[col]
        for row, coeff in rows.items():
            m[_COEFF_INDEX[row], j] = coeff
    return m


def _matrix_to_columns(m: np.ndarray, tol: float = 1e-15) -> dict[str, dict[str, complex]]:
    cols: dict[str, dict[str, complex]] = {}
    for col in GENERATOR_ORDER:
        j = _COEFF_INDEX[col]
        entries = {}
        for row in COEFF_BASIS:
            v = m[_COEFF_INDEX[row], j]
            if abs(v) > tol:
                entries[row] = complex(v)
        cols[col] = entries
    return cols


def transform_matrix(params: TiltParameters, mode: str = "verified") -> np.ndarray:
    """The 11x11 coefficient matrix of the similarity transformation.

    Column ``j`` holds the expansion of ``D^dag G_j D`` over ``COEFF_BASIS``
    (ten generators plus identity), so a coefficient vector ``c`` of an
    operator ``sum_j c_j G_j`` transforms as ``c' = M @ c``.

    ``mode`` selects the verified coefficient set (default) or the legacy
    uncorrected tabulation kept for comparison.
    """
    if mode not in ("verified", "legacy"):
        raise InvalidArgumentError(f"unknown mode {mode!r}")
    legacy = mode == "legacy"
    kind = params.kind
    if kind == "su11_mode_a":
        return _columns_to_matrix(_columns_su11_mode(params.xi_a, "a"))
    if kind == "su11_mode_b":
        return _columns_to_matrix(_columns_su11_mode(params.xi_b, "b"))
    if kind == "su11_two_mode":
        return _columns_to_matrix(_columns_su11_two_mode(params.xi, legacy))
    if kind == "su2":
        return _columns_to_matrix(_columns_su2(params.chi, legacy))
    if kind == "product_ab":
        if legacy:
            return _columns_to_matrix(_columns_product_ab_legacy(params.xi_a, params.xi_b))
        return (_columns_to_matrix(_columns_su11_mode(params.xi_b, "b"))
                @ _columns_to_matrix(_columns_su11_mode(params.xi_a, "a")))
    # sp4r_product: conjugation by the ordered product applies the factor
    # maps innermost-first.
    m = (_columns_to_matrix(_columns_su11_mode(params.xi_b, "b"))
         @ _columns_to_matrix(_columns_su11_mode(params.xi_a, "a")))
    m = _columns_to_matrix(_columns_su11_two_mode(params.xi, legacy)) @ m
    return _columns_to_matrix(_columns_su2(params.chi, legacy)) @ m


def conjugate_closed_form(
    generator_id: str, params: TiltParameters, mode: str = "verified"
) -> dict[str, complex]:
    """Closed-form expansion of ``D^dag X D`` for one generator.

    Returns the coefficient map over the ten generators and the identity
    (zero entries omitted).
    """
    if generator_id == "I":
        return {"I": 1.0 + 0.0j}
    if generator_id not in GENERATOR_ORDER:
        raise InvalidArgumentError(f"unknown generator {generator_id!r}")
    m = transform_matrix(params, mode=mode)
    j = _COEFF_INDEX[generator_id]
    out: dict[str, complex] = {}
    for row in COEFF_BASIS:
        v = m[_COEFF_INDEX[row], j]
        if abs(v) > 1e-15:
            out[row] = complex(v)
    return out


def coefficient_vector(mapping: dict[str, complex]) -> np.ndarray:
    """Dense length-11 vector over ``COEFF_BASIS`` from a coefficient map."""
    v = np.zeros(len(COEFF_BASIS), dtype=np.complex128)
    for label, coeff in mapping.items():
        if label not in _COEFF_INDEX:
            raise InvalidArgumentError(f"unknown coefficient label {label!r}")
        v[_COEFF_INDEX[label]] = coeff
    return v


def combination(mapping: dict[str, complex], gens: GeneratorSet) -> OperatorMatrix:
    """Assemble ``sum_label coeff * G_label`` (identity allowed) as a matrix."""
    total = np.zeros((gens.basis.dim, gens.basis.dim), dtype=np.complex128)
    for label, coeff in mapping.items():
        if label == "I":
            total += coeff * np.eye(gens.basis.dim)
        else:
            total += coeff * gens.op(label)
    return OperatorMatrix(matrix=total, basis=gens.basis,
                          label="combination")


def legacy_column_deviations(params: TiltParameters) -> dict[str, float]:
    """Max-abs difference between legacy and verified columns, per generator.

    Columns that agree report 0.0; the discrepancy report lists the rest.
    """
    mv = transform_matrix(params, mode="verified")
    ml = transform_matrix(params, mode="legacy")
    out = {}
    for g in GENERATOR_ORDER:
        j = _COEFF_INDEX[g]
        out[g] = float(np.max(np.abs(mv[:, j] - ml[:, j])))
    return out


# ---------------------------------------------------------------------------
# Displacement operators and numeric conjugation.
# ---------------------------------------------------------------------------


def _expm_factor(gens: GeneratorSet, plus: str, minus: str, z: complex) -> np.ndarray:
    if z == 0:
        return np.eye(gens.basis.dim, dtype=np.complex128)
    exponent = z * gens.op(plus) - np.conj(z) * gens.op(minus)
    return expm(exponent)


def displacement(params: TiltParameters, gens: GeneratorSet) -> OperatorMatrix:
    """The unitary displacement operator of the requested kind.

    Product kinds return the ordered matrix product of the single-parameter
    factors: mode-a squeeze, then mode-b, then the two-mode pair squeeze,
    then the rotation (reading left to right).
    """
    kind = params.kind
    if kind == "su11_two_mode":
        m = _expm_factor(gens, "K+ab", "K-ab", params.xi)
    elif kind == "su11_mode_a":
        m = _expm_factor(gens, "K+a", "K-a", params.xi_a)
    elif kind == "su11_mode_b":
        m = _expm_factor(gens, "K+b", "K-b", params.xi_b)
    elif kind == "su2":
        m = _expm_factor(gens, "J+", "J-", params.chi)
    elif kind == "product_ab":
        m = (_expm_factor(gens, "K+a", "K-a", params.xi_a)
             @ _expm_factor(gens, "K+b", "K-b", params.xi_b))
    else:
        m = (_expm_factor(gens, "K+a", "K-a", params.xi_a)
             @ _expm_factor(gens, "K+b", "K-b", params.xi_b)
             @ _expm_factor(gens, "K+ab", "K-ab", params.xi)
             @ _expm_factor(gens, "J+", "J-", params.chi))
    return OperatorMatrix(matrix=m, basis=gens.basis, label=f"D[{kind}]")


def conjugate_numeric(
    disp: OperatorMatrix, x: OperatorMatrix, projector: OperatorMatrix | None = None
) -> OperatorMatrix:
    """``P (D^dag X D) P`` evaluated directly with matrices.

    ``projector`` defaults to the identity (no interior restriction).  This
    is the oracle every closed-form table is validated against.
    """
    inner = disp.adjoint() @ x @ disp
    if projector is None:
        return inner
    return projector @ inner @ projector


# ---------------------------------------------------------------------------
# Generic eigenvalue reductions.
# ---------------------------------------------------------------------------


def _su11_3x3(xi: complex) -> np.ndarray:
    """Coefficient map of the abstract hyperbolic triple (K0, K+, K-)."""
    e = _phase(xi)
    eb = e.conjugate()
    alpha, beta = hyperbolic_scalars(xi)
    return np.array([
        [2.0 * beta + 1.0, eb * alpha, e * alpha],
        [e * alpha / 2.0, 1.0 + beta, e * e * beta],
        [eb * alpha / 2.0, eb * eb * beta, 1.0 + beta],
    ], dtype=np.complex128)


def _su2_3x3(chi: complex) -> np.ndarray:
    """Coefficient map of the abstract rotation triple (J0, J+, J-)."""
    u = _phase(chi)
    ub = u.conjugate()
    delta, eps = trigonometric_scalars(chi)
    return np.array([
        [2.0 * eps + 1.0, -ub * delta, -u * delta],
        [delta * u / 2.0, 1.0 + eps, u * u * eps],
        [delta * ub / 2.0, ub * ub * eps, 1.0 + eps],
    ], dtype=np.complex128)


def _snap_real(z: complex, scale: float, tol: float = 1e-10) -> complex:
    if abs(z.imag) <= tol * max(1.0, scale):
        return complex(z.real, 0.0)
    return z


@dataclass(frozen=True)
class Su11Reduction:
    """Result of reducing ``a0 K0 + a1 K+ + a2 K-`` to a pure K0 term."""

    theta: float
    phi: float
    xi: complex
    eigen_slope: complex
    k0_coefficient: complex
    tilt: TiltParameters
    transformed: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class Su2Reduction:
    """Result of reducing ``a0 J0 + a1 J+ + a2 J-`` to a pure J0 term."""

    theta: float
    phi: float
    chi: complex
    eigen_slope: complex
    j0_coefficient: complex
    tilt: TiltParameters
    transformed: np.ndarray = field(repr=False)


def _balanced_phase(a1: complex, a2: complex, scale: float) -> complex:
    """Unit phase ``e`` with ``e^2 = a1/a2``; requires ``|a1| = |a2|``."""
    if abs(abs(a1) - abs(a2)) > 1e-9 * scale:
        raise InvalidArgumentError(
            "ladder coefficients with unequal moduli admit no unitary "
            f"reduction (|a1|={abs(a1):.6g}, |a2|={abs(a2):.6g})"
        )
    e = cmath.sqrt(a1 / a2)
    return e / abs(e)


def reduce_su11_form(
    a0: complex,
    a1: complex,
    a2: complex,
    *,
    kind: str = "su11_two_mode",
    tol: float = 1e-12,
) -> Su11Reduction:
    """Choose a squeeze that cancels the ladder terms of a hyperbolic form.

    Given ``a0 K0 + a1 K+ + a2 K-``, returns the displacement parameter
    ``xi`` (with its ``theta``/``phi`` angles) whose conjugation leaves a
    pure ``K0`` term with coefficient ``k0_coefficient``; ``eigen_slope``
    is the closed-form value ``sqrt(a0^2 - 4 a1 a2)``.

    Raises ``HyperbolicDomainError`` when the required ``tanh`` argument
    has modulus >= 1 (continuous-spectrum regime) and
    ``DegenerateReductionError`` exactly on the boundary ``a0^2 = 4 a1 a2``.
    """
    if kind not in ("su11_two_mode", "su11_mode_a", "su11_mode_b"):
        raise InvalidArgumentError(f"kind {kind!r} is not a hyperbolic squeeze")
    a0, a1, a2 = complex(a0), complex(a1), complex(a2)
    scale = max(abs(a0), abs(a1), abs(a2))

    def _wrap(xi: complex, transformed: np.ndarray) -> Su11Reduction:
        theta, phi = polar_angles(xi)
        slope = _snap_real(cmath.sqrt(a0 * a0 - 4.0 * a1 * a2), scale)
        k0c = _snap_real(complex(transformed[0]), scale)
        if kind == "su11_two_mode":
            tilt = TiltParameters(kind=kind, xi=xi)
        elif kind == "su11_mode_a":
            tilt = TiltParameters(kind=kind, xi_a=xi)
        else:
            tilt = TiltParameters(kind=kind, xi_b=xi)
        return Su11Reduction(theta=theta, phi=phi, xi=xi, eigen_slope=slope,
                             k0_coefficient=k0c, tilt=tilt,
                             transformed=transformed)

    if scale == 0.0:
        return _wrap(0j, np.zeros(3, dtype=np.complex128))
    lo, hi = sorted((abs(a1), abs(a2)))
    if lo <= tol * scale:
        if hi <= tol * scale:
            return _wrap(0j, np.array([a0, 0, 0], dtype=np.complex128))
        raise InvalidArgumentError(
            "one-sided ladder form (only one of a1, a2 nonzero) is not "
            "reducible by this family"
        )
    disc = a0 * a0 - 4.0 * a1 * a2
    if abs(disc) <= tol * scale * scale:
        raise DegenerateReductionError(
            "degenerate-reduction: a0^2 = 4 a1 a2 leaves no discrete slope"
        )
    if abs(a0) <= tol * scale:
        raise HyperbolicDomainError(
            "hyperbolic-out-of-domain: vanishing a0 needs an infinite tanh argument"
        )
    e0 = _balanced_phase(a1, a2, scale)
    vec = np.array([a0, a1, a2], dtype=np.complex128)
    last_error: Exception | None = None
    for e in (-e0, e0):
        t = -2.0 * e * a2 / a0
        if abs(t.imag) > 1e-9 * (1.0 + abs(t)):
            last_error = InvalidArgumentError(
                "no real squeeze angle cancels these ladder coefficients"
            )
            continue
        t_real = t.real
        if t_real < 0.0:
            continue
        if t_real >= 1.0:
            raise HyperbolicDomainError(
                f"hyperbolic-out-of-domain: |tanh argument| = {t_real:.6g} >= 1"
            )
        xi = (math.atanh(t_real) / 2.0) * e
        transformed = _su11_3x3(xi) @ vec
        if max(abs(transformed[1]), abs(transformed[2])) <= 1e-8 * scale:
            return _wrap(xi, transformed)
        last_error = InvalidArgumentError(
            "branch validation failed for the hyperbolic reduction"
        )
    raise last_error if last_error is not None else InvalidArgumentError(
        "no valid squeeze branch found"
    )


def reduce_su2_form(
    a0: complex,
    a1: complex,
    a2: complex,
    *,
    tol: float = 1e-12,
) -> Su2Reduction:
    """Choose a rotation that cancels the ladder terms of a rotation form.

    Given ``a0 J0 + a1 J+ + a2 J-``, returns the rotation parameter ``chi``
    whose conjugation leaves a pure ``J0`` term; ``eigen_slope`` is the
    closed-form ``sqrt(a0^2 + 4 a1 a2)``.  Degenerate only when ``a0`` and
    ``a1 a2`` both vanish (no direction to rotate onto).
    """
    a0, a1, a2 = complex(a0), complex(a1), complex(a2)
    scale = max(abs(a0), abs(a1), abs(a2))

    def _wrap(chi: complex, transformed: np.ndarray) -> Su2Reduction:
        theta, phi = polar_angles(chi)
        slope = _snap_real(cmath.sqrt(a0 * a0 + 4.0 * a1 * a2), scale)
        j0c = _snap_real(complex(transformed[0]), scale)
        return Su2Reduction(theta=theta, phi=phi, chi=chi, eigen_slope=slope,
                            j0_coefficient=j0c,
                            tilt=TiltParameters(kind="su2", chi=chi),
                            transformed=transformed)

    if scale == 0.0:
        return _wrap(0j, np.zeros(3, dtype=np.complex128))
    lo, hi = sorted((abs(a1), abs(a2)))
    if lo <= tol * scale:
        if hi <= tol * scale:
            if abs(a0) <= tol * scale:
                raise DegenerateReductionError(
                    "degenerate-reduction: a0 and a1 a2 both vanish"
                )
            return _wrap(0j, np.array([a0, 0, 0], dtype=np.complex128))
        raise InvalidArgumentError(
            "one-sided ladder form (only one of a1, a2 nonzero) is not "
            "reducible by this family"
        )
    e0 = _balanced_phase(a1, a2, scale)
    vec = np.array([a0, a1, a2], dtype=np.complex128)
    last_error: Exception | None = None
    for e in (-e0, e0):
        if abs(a0) <= tol * scale:
            half_angle = math.pi / 4.0
        else:
            t = -2.0 * e * a2 / a0
            if abs(t.imag) > 1e-9 * (1.0 + abs(t)):
                last_error = InvalidArgumentError(
                    "no real rotation angle cancels these ladder coefficients"
                )
                continue
            if t.real < 0.0:
                continue
            half_angle = math.atan(t.real) / 2.0
        chi = half_angle * e
        transformed = _su2_3x3(chi) @ vec
        if max(abs(transformed[1]), abs(transformed[2])) <= 1e-8 * scale:
            return _wrap(chi, transformed)
        last_error = InvalidArgumentError(
            "branch validation failed for the rotation reduction"
        )
    raise last_error if last_error is not None else InvalidArgumentError(
        "no valid rotation branch found"
    )


# ---------------------------------------------------------------------------
# Group coherent states.
# ---------------------------------------------------------------------------


def perelomov_state(
    kind: str,
    k_or_j: float,
    offset: int,
    xi: complex,
    length: int | None = None,
) -> np.ndarray:
    """Expansion coefficients of a displaced basis state.

    ``kind="su11"``: the squeeze ``exp(xi K+ - xi* K-)`` applied to the
    weight-``k`` state ``|k, offset>``; returns the first ``length``
    coefficients over ``|k, 0>, |k, 1>, ...``.

    ``kind="su2"``: the rotation applied to ``|j, offset - j>`` in a
    spin-``j`` multiplet; returns all ``2j + 1`` coefficients (a larger
    ``length`` zero-pads).

    Coefficients come from the closed normal-form series; they are not
    renormalized here, so unit norm is a checkable property rather than an
    enforced one.
    """
    if kind == "su11":
        return _perelomov_su11(float(k_or_j), offset, xi, length)
    if kind == "su2":
        return _perelomov_su2(float(k_or_j), offset, xi, length)
    raise InvalidArgumentError(f"unknown coherent-state kind {kind!r}")


def _perelomov_su11(k: float, n: int, xi: complex, length: int | None) -> np.ndarray:
    if k < 0.25 - 1e-12:
        raise InvalidArgumentError(f"weight k must be >= 1/4, got {k}")
    if n < 0 or int(n) != n:
        raise InvalidArgumentError(f"offset must be a nonnegative integer, got {n}")
    n = int(n)
    if length is None:
        length = n + 1
    if length < 1:
        raise InvalidArgumentError("length must be positive")
    nf = normal_form(xi)
    zeta, eta = nf.zeta, nf.eta
    out = np.zeros(length, dtype=np.complex128)
    if zeta == 0:
        if n < length:
            out[n] = 1.0
        return out
    lg = math.lgamma
    for t in range(length):
        acc = 0.0 + 0.0j
        for i in range(n + 1):
            s = t - n + i
            if s < 0:
                continue
            log_mag = (
                eta * (k + n - i)
                + 0.5 * lg(2.0 * k + n) + 0.5 * lg(2.0 * k + t)
                - lg(2.0 * k + n - i)
                + 0.5 * lg(n + 1.0) + 0.5 * lg(t + 1.0)
                - lg(n - i + 1.0)
                - lg(s + 1.0) - lg(i + 1.0)
            )
            acc += (zeta ** s) * ((-zeta.conjugate()) ** i) * math.exp(log_mag)
        out[t] = acc
    return out


def _perelomov_su2(j: float, offset: int, xi: complex, length: int | None) -> np.ndarray:
    two_j = 2.0 * j
    if two_j < 0 or abs(two_j - round(two_j)) > 1e-9:
        raise InvalidArgumentError(f"j must be a nonnegative half-integer, got {j}")
    two_j = int(round(two_j))
    if offset < 0 or offset > two_j or int(offset) != offset:
        raise InvalidArgumentError(
            f"offset must lie in [0, {two_j}] for j={j}, got {offset}"
        )
    offset = int(offset)
    dim = two_j + 1
    if length is None:
        length = dim
    if length < dim:
        raise InvalidArgumentError(
            f"length {length} cannot hold a spin-{j} multiplet of size {dim}"
        )
    nf = rotation_normal_form(xi)
    zeta, eta = nf.zeta, nf.eta
    mu0 = offset - j
    out = np.zeros(length, dtype=np.complex128)
    if zeta == 0:
        out[offset] = 1.0
        return out
    lg = math.lgamma
    for t in range(dim):
        acc = 0.0 + 0.0j
        for i in range(offset + 1):
            s = t - offset + i
            if s < 0 or s > two_j - offset + i:
                continue
            log_mag = (
                eta * (mu0 - i)
                + lg(two_j - offset + i + 1.0) - lg(offset - i + 1.0)
                + 0.5 * (lg(offset + 1.0) + lg(t + 1.0)
                         - lg(two_j - offset + 1.0) - lg(two_j - t + 1.0))
                - lg(s + 1.0) - lg(i + 1.0)
            )
            acc += (zeta ** s) * ((-zeta.conjugate()) ** i) * math.exp(log_mag)
        out[t] = acc
    return out
