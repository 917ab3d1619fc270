"""Named presets for the standard two-level/two-mode interaction models.

Each preset maps a small set of physical inputs (frequencies, coupling
strengths) onto the general parameter record, and carries the textbook
closed-form spectrum for that model so the general pipeline can be
cross-checked against it.  Five presets ship:

``jc``
    single-mode Jaynes-Cummings exchange coupling.
``dirac``
    the Dirac-Moshinsky oscillator in its boson/spin mapping; the
    coupling is purely imaginary, so the parameter record is
    deliberately non-Hermitian.
``generalized_jc``
    Jaynes-Cummings with independent co- and counter-rotating
    strengths on one mode.
``mjc``
    two modes sharing one exchange-type coupling ("modified" JC).
``jc_ajc``
    one mode coupled in the rotating sense, the second in the
    anti-rotating sense.

The spectrum formulas here are evaluated exactly as printed in the
standard treatments, free-Hamiltonian contribution included where the
model convention includes it.  Oracle comparisons elsewhere in the
package diagonalize the interaction operator directly, so disagreements
between the two are detectable rather than silently absorbed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .errors import InvalidArgumentError
from .hamiltonian import ModelParams

PRESET_NAMES = ("jc", "dirac", "generalized_jc", "mjc", "jc_ajc")

#: Models whose (n, m) index runs over the two-mode diamond; the rest
#: ignore m.
TWO_MODE_PRESETS = frozenset({"mjc", "jc_ajc"})


@dataclass(frozen=True)
class ModelPreset:
    """A named model: its parameter record plus its printed spectrum.

    ``includes_free_part`` records whether the stored spectrum formula
    carries the free-oscillator contribution on top of the interaction
    bracket; comparisons against a numerical oracle must pick the
    matching operator.
    """

    name: str
    params: ModelParams
    free: dict = field(repr=False)
    includes_free_part: bool
    description: str

    @property
    def is_two_mode(self) -> bool:
        return self.name in TWO_MODE_PRESETS

    def _check_index(self, n: int, m: int) -> None:
        if n < 0 or int(n) != n:
            raise InvalidArgumentError(f"level index n must be a count, got {n}")
        if self.is_two_mode:
            if int(m) != m or abs(m) > n or (n - m) % 2 != 0:
                raise InvalidArgumentError(
                    f"index m={m} invalid for n={n}: need |m| <= n with n-m even"
                )

    def free_level(self, n: int, m: int = 0) -> float:
        """The free-oscillator energy the printed formula adds, if any."""
        self._check_index(n, m)
        f = self.free
        hbar = f.get("hbar", 1.0)
        if self.name == "jc":
            return hbar * f["omega1"] * (n + 0.5)
        if self.name == "mjc":
            return (hbar * (f["omega1"] + f["omega2"]) / 2.0 * (n + 1)
                    + hbar * (f["omega1"] - f["omega2"]) / 2.0 * m)
        if self.name == "jc_ajc":
            return (hbar * (f["omega1"] + f["omega2"]) / 2.0 * n
                    + hbar * (f["omega1"] - f["omega2"]) / 2.0 * (m + 1))
        return 0.0

    def interaction_bracket(self, n: int, m: int = 0) -> complex:
        """The squared half-splitting under the root, model by model."""
        self._check_index(n, m)
        f = self.free
        hbar = f.get("hbar", 1.0)
        if self.name == "jc":
            delta = hbar * (f["omega0"] - f["omega1"])
            return delta * delta + 4.0 * f["kappa"] ** 2 * (n + 1)
        if self.name == "dirac":
            mc2 = f["m"] * f["c"] ** 2
            return 4.0 * (mc2 * mc2 - 4.0 * hbar * f["omega"] * mc2 * (n + 1))
        if self.name == "generalized_jc":
            mc2 = f["mc2"]
            slope = hbar * hbar * (abs(f["g"]) ** 2 - abs(f["f"]) ** 2)
            return 4.0 * (slope * n + mc2 * mc2)
        if self.name == "mjc":
            delta = hbar * (f["omega0"] - f["omega1"] - f["omega2"])
            strength = f["lambda1"] ** 2 + f["lambda2"] ** 2
            return delta * delta + 4.0 * strength * (n / 2.0 + m / 2.0 + 1.0)
        # jc_ajc: detuning convention of its own free-part split
        delta = hbar * (f["omega0"] + f["omega2"] - f["omega1"])
        strength = f["lambda1"] ** 2 - f["lambda2"] ** 2
        return delta * delta + 4.0 * strength * (n / 2.0 + m / 2.0 + 1.0)

    def interaction_spectrum(self, n: int, m: int = 0) -> tuple:
        """(E+, E-) of the interaction part alone: +-(1/2)sqrt(bracket)."""
        root = 0.5 * cmath.sqrt(self.interaction_bracket(n, m))
        if abs(root.imag) < 1e-14 * max(1.0, abs(root)):
            root = root.real
        return (root, -root)

    def spectrum(self, n: int, m: int = 0) -> tuple:
        """(E+, E-) of the printed closed form, free part included."""
        base = self.free_level(n, m)
        plus, minus = self.interaction_spectrum(n, m)
        return (base + plus, base + minus)


def _require(free: dict, name: str, keys: tuple, defaults: dict) -> dict:
    unknown = set(free) - set(keys)
    if unknown:
        raise InvalidArgumentError(
            f"unknown parameter(s) for preset '{name}': {sorted(unknown)}"
        )
    out = dict(defaults)
    out.update(free)
    missing = [k for k in keys if k not in out]
    if missing:
        raise InvalidArgumentError(
            f"preset '{name}' missing required parameter(s): {missing}"
        )
    return out


def preset(name: str, **free) -> ModelPreset:
    """Build a named preset from its free physical parameters.

    Frequencies default to zero and hbar to one; coupling strengths are
    required.  Unknown names or parameter keys raise invalid-argument.
    """
    if name == "jc":
        f = _require(free, name, ("omega0", "omega1", "omega2", "kappa", "hbar"),
                     {"omega0": 0.0, "omega1": 0.0, "omega2": 0.0, "hbar": 1.0})
        kappa = f["kappa"]
        params = ModelParams.with_hermitian_couplings(
            omega0=f["omega0"], omega1=f["omega1"], omega2=f["omega2"],
            kappa1=complex(kappa), hbar=f["hbar"])
        return ModelPreset(
            name=name, params=params, free=f, includes_free_part=True,
            description="single-mode exchange coupling (Jaynes-Cummings)")
    if name == "dirac":
        f = _require(free, name, ("m", "c", "omega", "hbar"), {"hbar": 1.0})
        hbar = f["hbar"]
        coupling = 2j * f["c"] * math.sqrt(f["m"] * f["omega"] * hbar)
        params = ModelParams(
            omega0=2.0 * f["m"] * f["c"] ** 2 / hbar,
            kappa1=coupling, gamma2=coupling, hbar=hbar)
        return ModelPreset(
            name=name, params=params, free=f, includes_free_part=False,
            description="Dirac-Moshinsky oscillator (imaginary coupling; "
                        "non-Hermitian parameter record)")
    if name == "generalized_jc":
        f = _require(free, name, ("f", "g", "mc2", "hbar"), {"hbar": 1.0})
        hbar = f["hbar"]
        params = ModelParams.with_hermitian_couplings(
            omega0=2.0 * f["mc2"] / hbar,
            kappa1=hbar * complex(f["f"]).conjugate(),
            kappa2=hbar * complex(f["g"]), hbar=hbar)
        return ModelPreset(
            name=name, params=params, free=f, includes_free_part=False,
            description="one mode with independent co- and counter-rotating "
                        "strengths")
    if name == "mjc":
        f = _require(free, name,
                     ("omega0", "omega1", "omega2", "lambda1", "lambda2", "hbar"),
                     {"omega0": 0.0, "omega1": 0.0, "omega2": 0.0, "hbar": 1.0})
        params = ModelParams.with_hermitian_couplings(
            omega0=f["omega0"], omega1=f["omega1"], omega2=f["omega2"],
            kappa1=complex(f["lambda1"]), kappa3=complex(f["lambda2"]),
            hbar=f["hbar"])
        return ModelPreset(
            name=name, params=params, free=f, includes_free_part=True,
            description="two modes sharing the exchange coupling")
    if name == "jc_ajc":
        f = _require(free, name,
                     ("omega0", "omega1", "omega2", "lambda1", "lambda2", "hbar"),
                     {"omega0": 0.0, "omega1": 0.0, "omega2": 0.0, "hbar": 1.0})
        # This model's free-part split carries the second mode with the
        # opposite spin sign, so its detuning is (omega0+omega2-omega1)/2
        # rather than the default (omega0-omega1-omega2)/2.
        params = ModelParams.with_hermitian_couplings(
            omega0=f["omega0"], omega1=f["omega1"], omega2=f["omega2"],
            kappa1=complex(f["lambda1"]), kappa4=complex(f["lambda2"]),
            hbar=f["hbar"],
            detuning=(f["omega0"] + f["omega2"] - f["omega1"]) / 2.0)
        return ModelPreset(
            name=name, params=params, free=f, includes_free_part=True,
            description="rotating coupling on mode a, anti-rotating on mode b")
    raise InvalidArgumentError(
        f"unknown preset '{name}'; expected one of {', '.join(PRESET_NAMES)}"
    )


def model_spectrum(model: ModelPreset, n: int, m: int = 0) -> tuple:
    """(E+, E-) of the preset's printed closed-form spectrum."""
    return model.spectrum(n, m)
