"""Reflection-coefficient algebra and the per-state power metrics.

A tag encodes symbols by switching its load impedance, which moves the
complex reflection coefficient seen at the antenna port.  Everything the
optimizers care about -- harvested power, backscattered power, received
power, symbol separation -- is a function of that coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateCircuitError, OpenCircuitError
from .linkbudget import LinkConfig, _path_gain, available_power

#: Slack on the passivity invariant |Gamma| <= 1, absorbing round-trip rounding.
MAGNITUDE_TOL = 1e-12


@dataclass(frozen=True)
class ComplexImpedance:
    """Series impedance R + jX in ohms.  Passive parts only (R >= 0)."""

    resistance: float
    reactance: float

    def __post_init__(self) -> None:
        if self.resistance < 0.0:
            raise ValueError("resistance must be non-negative")

    @property
    def as_complex(self) -> complex:
        return complex(self.resistance, self.reactance)


@dataclass(frozen=True)
class ReflectionCoefficient:
    """Complex reflection coefficient Gamma = Gamma_a + j*Gamma_b.

    Construction enforces passivity: the magnitude may not exceed one
    (beyond a 1e-12 rounding allowance).
    """

    real_part: float
    imag_part: float = 0.0

    def __post_init__(self) -> None:
        if self.real_part ** 2 + self.imag_part ** 2 > 1.0 + MAGNITUDE_TOL:
            raise ValueError(
                f"reflection magnitude {self.magnitude:.12g} exceeds 1")

    @property
    def magnitude(self) -> float:
        return math.hypot(self.real_part, self.imag_part)

    @property
    def as_complex(self) -> complex:
        return complex(self.real_part, self.imag_part)


def from_impedance(load: ComplexImpedance,
                   antenna: ComplexImpedance) -> ReflectionCoefficient:
    """Reflection coefficient of a load terminating the given antenna.

    Gamma = (Z_L - conj(Z_A)) / (Z_L + Z_A), expanded into real/imaginary
    parts over the shared denominator D = (R_L + R_A)^2 + (X_L + X_A)^2:

        Gamma_a = (R_L^2 - R_A^2 + (X_L + X_A)^2) / D
        Gamma_b = 2 R_A (X_L + X_A) / D

    For passive loads (R_L >= 0) the magnitude never exceeds one.

    Raises:
        DegenerateCircuitError: if the denominator vanishes.
    """
    x_sum = load.reactance + antenna.reactance
    denom = (load.resistance + antenna.resistance) ** 2 + x_sum ** 2
    if denom == 0.0:
        raise DegenerateCircuitError(
            "load and antenna impedances sum to zero; reflection undefined")
    real = (load.resistance ** 2 - antenna.resistance ** 2 + x_sum ** 2) / denom
    imag = 2.0 * antenna.resistance * x_sum / denom
    return ReflectionCoefficient(real, imag)


def to_impedance(gamma: ReflectionCoefficient,
                 antenna: ComplexImpedance) -> ComplexImpedance:
    """Load impedance that realizes ``gamma`` against ``antenna``.

    Inverts the reflection map: Z_L = (conj(Z_A) + Gamma * Z_A) / (1 - Gamma).
    Round-tripping through :func:`from_impedance` reproduces the coefficient
    to 1e-9 per component.

    Raises:
        OpenCircuitError: for Gamma = 1 exactly (open circuit, no finite load).
    """
    if gamma.real_part == 1.0 and gamma.imag_part == 0.0:
        raise OpenCircuitError(
            "Gamma = 1 corresponds to an open circuit; no finite load exists")
    z_a = antenna.as_complex
    z_l = (z_a.conjugate() + gamma.as_complex * z_a) / (1.0 - gamma.as_complex)
    # Rounding can leave a tiny negative real part for |Gamma| ~ 1.
    return ComplexImpedance(max(z_l.real, 0.0), z_l.imag)


def harvested_power(gamma: ReflectionCoefficient, cfg: LinkConfig) -> float:
    """Power delivered to the tag's rectifier for one reflection state.

    P_L = E_h * P_a * (1 - Gamma_a^2 - Gamma_b^2): whatever is not
    reflected is harvested, scaled by the conversion efficiency.
    """
    absorbed = 1.0 - gamma.real_part ** 2 - gamma.imag_part ** 2
    return cfg.harvest_efficiency * available_power(cfg) * absorbed


def backscattered_power(gamma: ReflectionCoefficient, cfg: LinkConfig) -> float:
    """Power re-radiated by the tag for one reflection state.

    P_b = E_b * P_a * G_t * |1 - Gamma|^2.
    """
    bracket = (1.0 - gamma.real_part) ** 2 + gamma.imag_part ** 2
    return (cfg.backscatter_efficiency * available_power(cfg)
            * cfg.tag_gain * bracket)


def received_power(gamma: ReflectionCoefficient, cfg: LinkConfig) -> float:
    """Backscattered power as seen back at the reader.

    Applies the reader gain and one more traversal of the path factor to
    :func:`backscattered_power`.
    """
    return backscattered_power(gamma, cfg) * cfg.reader_gain * _path_gain(cfg)


def modulation_index(g1: ReflectionCoefficient,
                     g2: ReflectionCoefficient) -> float:
    """Half the distance between two reflection states: m = |G1 - G2| / 2.

    This is the separation statistic the error-rate model runs on; two valid
    coefficients always yield a value in [0, 1].
    """
    return 0.5 * math.hypot(g1.real_part - g2.real_part,
                            g1.imag_part - g2.imag_part)
