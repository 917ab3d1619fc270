"""General two-level Hamiltonian assembly and its exact diagonalization.

This module covers the journey from coupling constants to spectrum:
building the block Hamiltonian on the doubled Fock space, forming the
uncoupled quadratic operator of one spinor component, expanding that
operator over the ten-generator basis, running the staged displacement
pipeline that removes every ladder term, and finally evaluating the
closed-form level bracket and the radial wavefunctions.

The pipeline applies up to three displacement stages, in order: a
two-mode pair squeeze (removes the rotation ladders J+/J-), a rotation
(removes the pair ladders K+(ab)/K-(ab)), and one squeeze per mode
(removes the remaining single-mode ladders).  Parameter sets whose
ladder content fits a single stage are routed straight to the matching
reduction instead.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConditionViolatedError,
    HermiticityError,
    HyperbolicDomainError,
    InvalidArgumentError,
    PipelineIndeterminateError,
)
from .fock import FockBasis, OperatorMatrix, boson_operators
from .linalg import is_hermitian
from .tilt import (
    COEFF_BASIS,
    TiltParameters,
    coefficient_vector,
    reduce_su11_form,
    reduce_su2_form,
    transform_matrix,
)

_IDX = {label: i for i, label in enumerate(COEFF_BASIS)}

#: Coefficient slots that must be empty once the pipeline has finished.
_LADDER_SLOTS = ("K+a", "K-a", "K+b", "K-b", "K+ab", "K-ab", "J+", "J-")


# ---------------------------------------------------------------------------
# Parameters and derived coefficient sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModelParams:
    """Frequencies and the eight complex couplings of the block Hamiltonian.

    ``detuning`` normally derives from the frequencies as
    ``(omega0 - omega1 - omega2) / 2``; models whose conserved free part
    weights the two-level splitting differently may override it, and the
    free Hamiltonian built by :func:`build_hamiltonian` compensates so
    the total operator is unchanged.
    """

    omega0: float = 0.0
    omega1: float = 0.0
    omega2: float = 0.0
    kappa1: complex = 0j
    kappa2: complex = 0j
    kappa3: complex = 0j
    kappa4: complex = 0j
    gamma1: complex = 0j
    gamma2: complex = 0j
    gamma3: complex = 0j
    gamma4: complex = 0j
    hbar: float = 1.0
    detuning: float | None = None

    def __post_init__(self):
        for name in ("omega0", "omega1", "omega2"):
            value = getattr(self, name)
            if isinstance(value, complex):
                raise InvalidArgumentError(f"frequency {name} must be real")
            object.__setattr__(self, name, float(value))
        if self.hbar <= 0:
            raise InvalidArgumentError("hbar must be positive")
        for name in ("kappa1", "kappa2", "kappa3", "kappa4",
                     "gamma1", "gamma2", "gamma3", "gamma4"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if self.detuning is not None and isinstance(self.detuning, complex):
            raise InvalidArgumentError("detuning override must be real")

    @classmethod
    def with_hermitian_couplings(cls, *, omega0=0.0, omega1=0.0, omega2=0.0,
                                 kappa1=0j, kappa2=0j, kappa3=0j, kappa4=0j,
                                 hbar=1.0, detuning=None):
        """Build params whose lower coupling row is the adjoint of the upper."""
        return cls(
            omega0=omega0, omega1=omega1, omega2=omega2,
            kappa1=kappa1, kappa2=kappa2, kappa3=kappa3, kappa4=kappa4,
            gamma1=np.conj(complex(kappa2)), gamma2=np.conj(complex(kappa1)),
            gamma3=np.conj(complex(kappa4)), gamma4=np.conj(complex(kappa3)),
            hbar=hbar, detuning=detuning,
        )

    @property
    def kappa_vector(self):
        return (self.kappa1, self.kappa2, self.kappa3, self.kappa4)

    @property
    def gamma_vector(self):
        return (self.gamma1, self.gamma2, self.gamma3, self.gamma4)

    @property
    def delta_omega(self):
        """Half the two-level/field frequency mismatch (or the override)."""
        if self.detuning is not None:
            return float(self.detuning)
        return (self.omega0 - self.omega1 - self.omega2) / 2.0

    @property
    def energy_gap(self):
        """The diagonal energy offset of the interaction block."""
        return self.hbar * self.delta_omega

    @property
    def is_hermitian(self):
        """True when the coupling rows are mutually adjoint."""
        pairs = (
            (self.gamma1, self.kappa2), (self.gamma2, self.kappa1),
            (self.gamma3, self.kappa4), (self.gamma4, self.kappa3),
        )
        scale = max(abs(z) for z in self.kappa_vector + self.gamma_vector)
        tol = 1e-12 * max(scale, 1.0)
        return all(abs(g - np.conj(k)) <= tol for g, k in pairs)


@dataclass(frozen=True)
class AlphaCoefficients:
    """The eleven quadratic coupling combinations plus the detuning.

    These are the expansion coefficients of the uncoupled operator over
    the generator basis; every downstream quantity (squeeze parameters,
    slopes, the closed-form bracket) derives from them.
    """

    alpha1: complex
    alpha2: complex
    alpha3: complex
    alpha4: complex
    alpha5: complex
    alpha6: complex
    alpha7: complex
    alpha8: complex
    alpha9: complex
    alpha10: complex
    alpha11: complex
    delta_omega: float
    hbar: float = 1.0

    @property
    def energy_gap(self):
        return self.hbar * self.delta_omega

    @property
    def scale(self):
        return max(abs(getattr(self, f"alpha{i}")) for i in range(1, 12))

    def generator_combination(self):
        """Expansion of the uncoupled operator over generators + identity."""
        a = self
        return {
            "K-a": 2.0 * a.alpha1,
            "K+a": 2.0 * a.alpha2,
            "K-b": 2.0 * a.alpha3,
            "K+b": 2.0 * a.alpha4,
            "K0ab": a.alpha5 + a.alpha6,
            "K-ab": a.alpha7,
            "K+ab": a.alpha10,
            "J0": a.alpha5 - a.alpha6,
            "J-": a.alpha8,
            "J+": a.alpha9,
            "I": a.alpha11 - (a.alpha5 + a.alpha6) / 2.0,
        }

    def coefficient_vector(self):
        return coefficient_vector(self.generator_combination())


def alpha_coefficients(params: ModelParams) -> AlphaCoefficients:
    """Evaluate the eleven coupling bilinears of the uncoupled operator."""
    k1, k2, k3, k4 = params.kappa_vector
    g1, g2, g3, g4 = params.gamma_vector
    return AlphaCoefficients(
        alpha1=k1 * g1,
        alpha2=k2 * g2,
        alpha3=k3 * g3,
        alpha4=k4 * g4,
        alpha5=k1 * g2 + k2 * g1,
        alpha6=k4 * g3 + k3 * g4,
        alpha7=k1 * g3 + k3 * g1,
        alpha8=k1 * g4 + k4 * g1,
        alpha9=k2 * g3 + k3 * g2,
        alpha10=k2 * g4 + k4 * g2,
        alpha11=k1 * g2 + k3 * g4,
        delta_omega=params.delta_omega,
        hbar=params.hbar,
    )


@dataclass(frozen=True)
class BetaCoefficients:
    """Generator coefficients after the two-mode pair squeeze.

    ``plus_j`` / ``minus_j`` are the rotation-ladder coefficients the
    squeeze is chosen to cancel; the rest feed the later stages.
    """

    plus_a: complex
    minus_a: complex
    plus_b: complex
    minus_b: complex
    zero_ab: complex
    plus_ab: complex
    minus_ab: complex
    plus_j: complex
    minus_j: complex

    @classmethod
    def from_vector(cls, vec):
        return cls(
            plus_a=complex(vec[_IDX["K+a"]]),
            minus_a=complex(vec[_IDX["K-a"]]),
            plus_b=complex(vec[_IDX["K+b"]]),
            minus_b=complex(vec[_IDX["K-b"]]),
            zero_ab=complex(vec[_IDX["K0ab"]]),
            plus_ab=complex(vec[_IDX["K+ab"]]),
            minus_ab=complex(vec[_IDX["K-ab"]]),
            plus_j=complex(vec[_IDX["J+"]]),
            minus_j=complex(vec[_IDX["J-"]]),
        )


@dataclass(frozen=True)
class TiltedCoefficients:
    """Generator coefficients after the rotation stage.

    ``zero_ab`` and ``j_zero`` ride along unchanged in the diagonal
    slots; the single-mode ladders are what the per-mode squeezes must
    still remove.
    """

    plus_a: complex
    minus_a: complex
    plus_b: complex
    minus_b: complex
    plus_ab: complex
    minus_ab: complex
    zero_ab: complex
    j_zero: complex

    @classmethod
    def from_vector(cls, vec):
        return cls(
            plus_a=complex(vec[_IDX["K+a"]]),
            minus_a=complex(vec[_IDX["K-a"]]),
            plus_b=complex(vec[_IDX["K+b"]]),
            minus_b=complex(vec[_IDX["K-b"]]),
            plus_ab=complex(vec[_IDX["K+ab"]]),
            minus_ab=complex(vec[_IDX["K-ab"]]),
            zero_ab=complex(vec[_IDX["K0ab"]]),
            j_zero=complex(vec[_IDX["J0"]]),
        )


# ---------------------------------------------------------------------------
# Operator assembly
# ---------------------------------------------------------------------------


def _coupling_rows(params: ModelParams, basis: FockBasis):
    ops = boson_operators(basis)
    k1, k2, k3, k4 = params.kappa_vector
    g1, g2, g3, g4 = params.gamma_vector
    upper = k1 * ops.a + k2 * ops.a_dag + k3 * ops.b + k4 * ops.b_dag
    lower = g1 * ops.a + g2 * ops.a_dag + g3 * ops.b + g4 * ops.b_dag
    return ops, upper, lower


def build_hamiltonian(params: ModelParams, basis: FockBasis):
    """The full, free, and interaction operators on the doubled space.

    Returns ``(H, H0, H_I)`` in spin-major layout: the first block of
    rows acts on the upper spinor component.  ``H = H0 + H_I`` exactly;
    the free part carries whatever share of the two-level splitting the
    detuning convention leaves over, so overriding the detuning moves
    weight between ``H0`` and ``H_I`` without changing ``H``.
    """
    ops, upper, lower = _coupling_rows(params, basis)
    dim = basis.dim
    eye = np.eye(dim, dtype=np.complex128)
    gap = params.energy_gap
    h_int = np.block([[gap * eye, upper], [lower, -gap * eye]])

    free = params.hbar * params.omega1 * ops.number_a() \
        + params.hbar * params.omega2 * ops.number_b()
    split = params.hbar * params.omega0 / 2.0 - gap
    h_free = np.block([
        [free + split * eye, np.zeros((dim, dim))],
        [np.zeros((dim, dim)), free - split * eye],
    ])

    total = h_free + h_int
    if is_hermitian(h_int) != params.is_hermitian:
        raise HermiticityError(
            "interaction block hermiticity disagrees with the coupling pattern"
        )
    wrap = lambda m, label: OperatorMatrix(m, basis, spin_factor=True, label=label)
    return wrap(total, "H"), wrap(h_free, "H0"), wrap(h_int, "H_I")


def uncoupled_operator(params: ModelParams, basis: FockBasis, component: int = 1):
    """The quadratic coupling product acting on one spinor component.

    Component 1 gets the upper-times-lower coupling row product, component
    2 the reverse; both act on the Fock factor alone and their spectra
    sit at ``E^2 - (energy gap)^2``.
    """
    if component not in (1, 2):
        raise InvalidArgumentError("component must be 1 or 2")
    _, upper, lower = _coupling_rows(params, basis)
    product = upper @ lower if component == 1 else lower @ upper
    return OperatorMatrix(product, basis, label=f"uncoupled[{component}]")


# ---------------------------------------------------------------------------
# Stage parameter solvers
# ---------------------------------------------------------------------------


def _stage_matrix(kind: str, value: complex) -> np.ndarray:
    if kind == "su11_two_mode":
        return transform_matrix(TiltParameters(kind=kind, xi=value))
    if kind == "su2":
        return transform_matrix(TiltParameters(kind=kind, chi=value))
    if kind == "su11_mode_a":
        return transform_matrix(TiltParameters(kind=kind, xi_a=value))
    return transform_matrix(TiltParameters(kind=kind, xi_b=value))


def _phase_candidates(num: complex, den: complex, aligned, scale: float):
    """Candidate unit phases for a ladder-cancelling stage.

    The primary candidates solve ``e^2 = num/den`` (the cross-multiplied
    pair of cancellation equations).  Balanced coupling slices can make
    both cross-products vanish identically, leaving the phase free up to
    a reality condition, so the ``aligned`` candidates (and the axis
    phases) are always appended; every candidate is validated against
    the full transform before acceptance.
    """
    floor = 1e-12 * scale * scale
    candidates = []
    if abs(num) > floor and abs(den) > floor:
        if abs(abs(num) - abs(den)) > 1e-6 * max(abs(num), abs(den)):
            raise PipelineIndeterminateError(
                "pipeline-indeterminate: the ladder phase equation has no "
                "unit-modulus solution (non-unitary coupling regime)"
            )
        e0 = cmath.sqrt(num / den)
        e0 /= abs(e0)
        candidates += [e0, -e0]
    candidates += list(aligned) + [1.0 + 0j, 1j]
    seen, unique = [], []
    for e in candidates:
        if all(abs(e - s) > 1e-12 for s in seen):
            seen.append(e)
            unique.append(e)
    return unique


def _aligned_phase_candidates(x: complex, y: complex):
    """Phases ``e^{i psi}`` solving ``Im(x e^{-i psi} - y e^{+i psi}) = 0``.

    This is the reality condition left over when the quotient equation
    degenerates to 0/0 and no longer pins the phase.
    """
    a = (x - y).imag
    b = (x + y).real
    if a == 0.0 and b == 0.0:
        return (1.0 + 0j, 1j)
    psi = math.atan2(a, b)
    return (cmath.exp(1j * psi), cmath.exp(1j * (psi + math.pi)))


def _solve_pair_squeeze(c0: np.ndarray, scale: float) -> complex:
    """Squeeze parameter cancelling the rotation-ladder coefficients."""
    a1 = complex(c0[_IDX["K-a"]]) / 2.0
    a2 = complex(c0[_IDX["K+a"]]) / 2.0
    a3 = complex(c0[_IDX["K-b"]]) / 2.0
    a4 = complex(c0[_IDX["K+b"]]) / 2.0
    a8 = complex(c0[_IDX["J-"]])
    a9 = complex(c0[_IDX["J+"]])
    tiny = 1e-12 * scale
    if min(abs(a8), abs(a9)) <= tiny < max(abs(a8), abs(a9)):
        raise PipelineIndeterminateError(
            "pipeline-indeterminate: one-sided rotation ladder cannot be "
            "cancelled by a unitary pair squeeze"
        )

    num = a2 * a8 - a4 * a9
    den = a1 * a9 - a3 * a8
    # Reality conditions on each tanh argument, used when the quotient
    # equation degenerates: Im[(a2/e + a3 e) conj(a9)] = 0 for one
    # ladder and Im[(a1 e + a4/e) conj(a8)] = 0 for the other.
    aligned = (_aligned_phase_candidates(a2 * np.conj(a9), -a3 * np.conj(a9))
               + _aligned_phase_candidates(np.conj(a1) * a8, -np.conj(a4) * a8))
    candidates = _phase_candidates(num, den, aligned, scale)
    failure = "no squeeze branch cancels the rotation ladders"
    hyperbolic = None
    for e in candidates:
        denom1 = a2 * np.conj(e) + a3 * e
        denom2 = a1 * e + a4 * np.conj(e)
        ts = []
        for target, denom in ((a9, denom1), (a8, denom2)):
            if abs(denom) > tiny:
                ts.append(-target / denom)
        if not ts:
            failure = "vanishing squeeze denominators with live rotation ladders"
            continue
        t = sum(ts) / len(ts)
        if max(abs(t - tv) for tv in ts) > 1e-8 * (1.0 + abs(t)):
            failure = "inconsistent tanh arguments between the two ladder equations"
            continue
        if abs(t.imag) > 1e-8 * (1.0 + abs(t)):
            continue
        t_real = t.real
        if t_real < 0.0:
            continue
        if t_real >= 1.0:
            hyperbolic = t_real
            continue
        xi = (math.atanh(t_real) / 2.0) * e
        trial = _stage_matrix("su11_two_mode", xi) @ c0
        if max(abs(trial[_IDX["J+"]]), abs(trial[_IDX["J-"]])) <= 1e-8 * scale:
            return xi
        failure = "squeeze branch validation left rotation-ladder residue"
    if hyperbolic is not None:
        raise HyperbolicDomainError(
            f"hyperbolic-out-of-domain: pair-squeeze tanh argument "
            f"{hyperbolic:.6g} >= 1"
        )
    raise PipelineIndeterminateError(f"pipeline-indeterminate: {failure}")


def _solve_rotation(c1: np.ndarray, scale: float) -> complex:
    """Rotation parameter cancelling the pair-ladder coefficients."""
    bpa = complex(c1[_IDX["K+a"]])
    bma = complex(c1[_IDX["K-a"]])
    bpb = complex(c1[_IDX["K+b"]])
    bmb = complex(c1[_IDX["K-b"]])
    bp_ab = complex(c1[_IDX["K+ab"]])
    bm_ab = complex(c1[_IDX["K-ab"]])
    tiny = 1e-12 * scale

    num = bmb * bp_ab + bpa * bm_ab
    den = bma * bp_ab + bpb * bm_ab
    aligned = _aligned_phase_candidates(bpa * np.conj(bp_ab),
                                        bpb * np.conj(bp_ab))
    candidates = _phase_candidates(num, den, aligned, scale)
    failure = "no rotation branch cancels the pair ladders"
    for u in candidates:
        denom = bpa * np.conj(u) - bpb * u
        if abs(denom) <= tiny:
            half = math.pi / 4.0
        else:
            tan = -2.0 * bp_ab / denom
            if abs(tan.imag) > 1e-8 * (1.0 + abs(tan)):
                continue
            if tan.real < 0.0:
                continue
            half = math.atan(tan.real) / 2.0
        chi = half * u
        trial = _stage_matrix("su2", chi) @ c1
        if max(abs(trial[_IDX["K+ab"]]), abs(trial[_IDX["K-ab"]])) <= 1e-8 * scale:
            return chi
        failure = "rotation branch validation left pair-ladder residue"
    raise PipelineIndeterminateError(f"pipeline-indeterminate: {failure}")


# ---------------------------------------------------------------------------
# The pipeline
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PipelineResult:
    """Everything the staged diagonalization produced.

    ``slope_a`` / ``slope_b`` are the final per-mode number-operator
    coefficients (each multiplies ``(n + 1/2)/2`` in the level bracket)
    and ``constant`` the accumulated scalar term.  The ``path`` records
    which route was taken; special-case routes leave the unused stage
    parameters at zero.
    """

    path: str
    xi: complex
    chi: complex
    xi_a: complex
    xi_b: complex
    alphas: AlphaCoefficients
    betas: BetaCoefficients
    tilted: TiltedCoefficients
    slope_a: complex
    slope_b: complex
    constant: complex
    energy_gap: float
    initial_vector: np.ndarray = field(repr=False, default=None)
    final_vector: np.ndarray = field(repr=False, default=None)

    def displacements(self):
        """Nonzero stage parameters, in conjugation order."""
        stages = []
        if self.xi != 0:
            stages.append(TiltParameters(kind="su11_two_mode", xi=self.xi))
        if self.chi != 0:
            stages.append(TiltParameters(kind="su2", chi=self.chi))
        if self.xi_a != 0:
            stages.append(TiltParameters(kind="su11_mode_a", xi_a=self.xi_a))
        if self.xi_b != 0:
            stages.append(TiltParameters(kind="su11_mode_b", xi_b=self.xi_b))
        return stages


def _snap(z: complex, scale: float) -> complex:
    if abs(z.imag) <= 1e-10 * max(scale, abs(z), 1e-300):
        return complex(z.real, 0.0)
    return z


def tilt_pipeline(alphas: AlphaCoefficients, *, tol: float = 1e-12) -> PipelineResult:
    """Choose displacement parameters that empty every ladder slot.

    Routes: parameter sets with no ladder content at all stay diagonal;
    pure rotation-ladder sets go straight to the rotation reduction;
    pure pair-ladder sets to the two-mode squeeze reduction; pure
    single-mode sets to one squeeze per mode.  Everything else runs the
    full three-stage sequence, which demands the balance condition on
    the two diagonal combinations whenever the rotation stage fires.
    """
    c0 = alphas.coefficient_vector()
    scale = max(alphas.scale, 1e-300)
    skip = tol * max(scale, 1.0)

    single = max(abs(alphas.alpha1), abs(alphas.alpha2),
                 abs(alphas.alpha3), abs(alphas.alpha4))
    rotation = max(abs(alphas.alpha8), abs(alphas.alpha9))
    pair = max(abs(alphas.alpha7), abs(alphas.alpha10))
    diff = alphas.alpha5 - alphas.alpha6

    xi = chi = xi_a = xi_b = 0j

    def _reduce(kind, a0, a1, a2, stage):
        try:
            return reduce_su11_form(a0, a1, a2, kind=kind)
        except InvalidArgumentError as exc:
            raise PipelineIndeterminateError(
                f"pipeline-indeterminate ({stage}): {exc}") from exc

    if single <= skip and rotation <= skip and pair <= skip:
        path = "diagonal"
    elif rotation > skip and single <= skip and pair <= skip:
        path = "rotation"
        try:
            chi = reduce_su2_form(diff, alphas.alpha9, alphas.alpha8).chi
        except InvalidArgumentError as exc:
            raise PipelineIndeterminateError(
                f"pipeline-indeterminate (rotation route): {exc}") from exc
    elif pair > skip and single <= skip and rotation <= skip:
        path = "pair"
        xi = _reduce("su11_two_mode", alphas.alpha5 + alphas.alpha6,
                     alphas.alpha10, alphas.alpha7, "pair route").xi
    elif single > skip and rotation <= skip and pair <= skip:
        path = "per_mode"
        if max(abs(alphas.alpha1), abs(alphas.alpha2)) > skip:
            xi_a = _reduce("su11_mode_a", 2.0 * alphas.alpha5,
                           2.0 * alphas.alpha2, 2.0 * alphas.alpha1,
                           "mode-a route").xi
        if max(abs(alphas.alpha3), abs(alphas.alpha4)) > skip:
            xi_b = _reduce("su11_mode_b", 2.0 * alphas.alpha6,
                           2.0 * alphas.alpha4, 2.0 * alphas.alpha3,
                           "mode-b route").xi
    else:
        path = "three_stage"
        if rotation > skip:
            xi = _solve_pair_squeeze(c0, scale)
        c1 = _stage_matrix("su11_two_mode", xi) @ c0
        if max(abs(c1[_IDX["K+ab"]]), abs(c1[_IDX["K-ab"]])) > skip:
            gate = 1e-10 * max(abs(alphas.alpha5), abs(alphas.alpha6), 1e-300)
            if abs(diff) > gate:
                raise ConditionViolatedError(
                    "condition-violated: the rotation stage requires the two "
                    f"diagonal combinations to balance (difference "
                    f"{abs(diff):.6g} exceeds {gate:.6g})"
                )
            chi = _solve_rotation(c1, scale)
        c2 = _stage_matrix("su2", chi) @ c1
        k0 = complex(c2[_IDX["K0ab"]])
        j0 = complex(c2[_IDX["J0"]])
        if max(abs(c2[_IDX["K+a"]]), abs(c2[_IDX["K-a"]])) > skip:
            xi_a = _reduce("su11_mode_a", k0 + j0, complex(c2[_IDX["K+a"]]),
                           complex(c2[_IDX["K-a"]]), "stage-3 mode a").xi
        if max(abs(c2[_IDX["K+b"]]), abs(c2[_IDX["K-b"]])) > skip:
            xi_b = _reduce("su11_mode_b", k0 - j0, complex(c2[_IDX["K+b"]]),
                           complex(c2[_IDX["K-b"]]), "stage-3 mode b").xi

    # Uniform bookkeeping: apply the stage maps in conjugation order and
    # read the surviving coefficients off the final vector, whatever the
    # route.  This keeps slope signs exact (no naive square roots).
    c1 = _stage_matrix("su11_two_mode", xi) @ c0
    c2 = _stage_matrix("su2", chi) @ c1
    c3 = _stage_matrix("su11_mode_a", xi_a) @ c2
    c4 = _stage_matrix("su11_mode_b", xi_b) @ c3

    residual = max(abs(c4[_IDX[slot]]) for slot in _LADDER_SLOTS)
    if residual > 1e-8 * max(scale, 1.0):
        raise PipelineIndeterminateError(
            f"pipeline-indeterminate: ladder residue {residual:.3e} survives "
            f"the {path} route"
        )

    k0 = complex(c4[_IDX["K0ab"]])
    j0 = complex(c4[_IDX["J0"]])
    return PipelineResult(
        path=path, xi=xi, chi=chi, xi_a=xi_a, xi_b=xi_b,
        alphas=alphas,
        betas=BetaCoefficients.from_vector(c1),
        tilted=TiltedCoefficients.from_vector(c2),
        slope_a=_snap(k0 + j0, scale),
        slope_b=_snap(k0 - j0, scale),
        constant=_snap(complex(c4[_IDX["I"]]), scale),
        energy_gap=alphas.energy_gap,
        initial_vector=c0, final_vector=c4,
    )


# ---------------------------------------------------------------------------
# Spectrum
# ---------------------------------------------------------------------------


@dataclass
class SpectrumEntry:
    """One closed-form level pair at total quantum number ``n``, label ``m_n``."""

    n: int
    m_n: int
    e_plus: complex
    e_minus: complex
    flag: str = ""
    oracle_value: float | None = None
    abs_err: float | None = None

    @property
    def n_a(self):
        return (self.n + self.m_n) // 2

    @property
    def n_b(self):
        return (self.n - self.m_n) // 2


@dataclass
class SpectrumTable:
    """Closed-form levels plus (optional) oracle-comparison bookkeeping."""

    entries: list
    params: ModelParams
    n_max: int
    pipeline: PipelineResult
    oracle_eigenvalues: list | None = None
    oracle_cutoffs: tuple | None = None

    @property
    def residuals(self):
        return [entry.abs_err for entry in self.entries]


def level_bracket(pipeline: PipelineResult, n_a: int, n_b: int) -> complex:
    """The squared-energy bracket at per-mode occupations ``(n_a, n_b)``."""
    gap = pipeline.energy_gap
    value = (gap * gap
             + pipeline.slope_a * (n_a + 0.5) / 2.0
             + pipeline.slope_b * (n_b + 0.5) / 2.0
             + pipeline.constant)
    return _snap(complex(value), max(abs(value), pipeline.alphas.scale, 1.0))


def closed_form_spectrum(params: ModelParams, n_max: int) -> SpectrumTable:
    """Evaluate the closed-form interaction levels over the index diamond.

    Each entry carries ``E+`` and ``E- = -E+``; entries whose bracket is
    negative or complex are flagged ``non-real`` (their value is the
    principal square root) and are skipped by oracle matching.
    """
    if n_max < 0:
        raise InvalidArgumentError("n_max must be non-negative")
    pipeline = tilt_pipeline(alpha_coefficients(params))
    entries = []
    for n in range(n_max + 1):
        for m in range(-n, n + 1, 2):
            bracket = level_bracket(pipeline, (n + m) // 2, (n - m) // 2)
            if bracket.imag == 0.0 and bracket.real >= 0.0:
                e_plus = complex(math.sqrt(bracket.real))
                flag = ""
            else:
                e_plus = cmath.sqrt(bracket)
                flag = "non-real"
            entries.append(SpectrumEntry(n=n, m_n=m, e_plus=e_plus,
                                         e_minus=-e_plus, flag=flag))
    return SpectrumTable(entries=entries, params=params, n_max=n_max,
                         pipeline=pipeline)


# ---------------------------------------------------------------------------
# Radial wavefunctions
# ---------------------------------------------------------------------------


def associated_laguerre(n: int, m: int, x):
    """Associated Laguerre polynomial by the three-term recurrence.

    Accepts a scalar or array argument; exact for integer orders and
    numerically stable over the quadrature ranges used here.
    """
    if n < 0 or m < 0:
        raise InvalidArgumentError("polynomial indices must be non-negative")
    prev = np.ones_like(np.asarray(x, dtype=np.float64))
    if n == 0:
        return prev if np.ndim(x) else float(prev)
    current = 1.0 + m - np.asarray(x, dtype=np.float64)
    for k in range(1, n):
        prev, current = current, (
            ((2.0 * k + 1.0 + m - x) * current - (k + m) * prev) / (k + 1.0)
        )
    return current if np.ndim(x) else float(current)


def laguerre_series(n: int, m: int, x):
    """The same polynomial from its explicit finite sum (reference form)."""
    if n < 0 or m < 0:
        raise InvalidArgumentError("polynomial indices must be non-negative")
    xs = np.asarray(x, dtype=np.float64)
    total = np.zeros_like(xs)
    for i in range(n + 1):
        coeff = ((-1.0) ** i) * math.comb(n + m, n - i) / math.factorial(i)
        total = total + coeff * xs ** i
    return total if np.ndim(x) else float(total)


@dataclass(frozen=True)
class WavefunctionSample:
    """One evaluation of the radial-angular eigenfunction.

    ``value`` uses the unit-norm radial weight; ``legacy_value`` keeps
    the extra sqrt(2) of the published prefactor (whose square integrates
    to 2, not 1, under the cylindrical measure).
    """

    n_l: int
    m_n: int
    rho: float
    phi: float
    value: complex
    legacy_value: complex


def wavefunction(n_l: int, m_n: int, rho: float, phi: float) -> WavefunctionSample:
    """Evaluate the two-dimensional oscillator eigenfunction at one point."""
    if n_l < 0 or m_n < 0:
        raise InvalidArgumentError("quantum numbers must be non-negative")
    if rho < 0:
        raise InvalidArgumentError("the radius must be non-negative")
    log_ratio = 0.5 * (math.lgamma(n_l + 1) - math.lgamma(n_l + m_n + 1))
    radial = (((-1.0) ** n_l) * math.exp(log_ratio)
              * rho ** m_n
              * associated_laguerre(n_l, m_n, rho * rho)
              * math.exp(-rho * rho / 2.0))
    angular = cmath.exp(1j * m_n * phi)
    value = radial * angular / math.sqrt(math.pi)
    return WavefunctionSample(n_l=n_l, m_n=m_n, rho=float(rho), phi=float(phi),
                              value=value, legacy_value=math.sqrt(2.0) * value)
