"""Link-budget accounting for a monostatic reader/tag pair.

Propagation follows the close-in reference-distance model: free-space loss up
to ``reference_distance`` and a power-law roll-off with the configured
exponent beyond it.  With ``path_loss_exponent = 2`` the chain collapses to
the familiar Friis free-space expression.

All quantities are SI base units (watts, hertz, metres, ohms, volts).  dBm or
MHz style inputs are converted at the CLI boundary, never here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import SustainabilityError

FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class LinkConfig:
    """Radio constants shared by every computation in the package.

    Defaults describe a 915 MHz reader at 1 W feeding a tag 7 m away through
    a cubic path-loss roll-off, the configuration used throughout the test
    suite.  ``speed_of_light`` is deliberately the rounded 3e8 m/s so that
    wavelength-derived figures match the frozen regression values; override
    it if exactness to CODATA matters more than reproducibility.
    """

    transmit_power: float = 1.0
    frequency: float = 915e6
    speed_of_light: float = 3e8
    tag_gain: float = 4.0
    reader_gain: float = 1.5
    reference_distance: float = 1.0
    distance: float = 7.0
    path_loss_exponent: float = 3.0
    harvest_efficiency: float = 0.8
    backscatter_efficiency: float = 0.8
    noise_power: float = 1e-12
    reader_resistance: float = 50.0

    def __post_init__(self) -> None:
        for name in ("transmit_power", "frequency", "speed_of_light",
                     "tag_gain", "reader_gain", "reference_distance",
                     "distance", "noise_power", "reader_resistance"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be strictly positive")
        for name in ("harvest_efficiency", "backscatter_efficiency"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.path_loss_exponent < 1.0:
            raise ValueError("path_loss_exponent must be >= 1")
        if self.distance < self.reference_distance:
            raise ValueError("distance must not be below reference_distance")

    @property
    def wavelength(self) -> float:
        """Carrier wavelength in metres."""
        return self.speed_of_light / self.frequency


def _path_gain(cfg: LinkConfig) -> float:
    """One-way aperture/path factor (lambda / (4 pi d_o))^2 * (d_o / d)^n."""
    aperture = (cfg.wavelength / (FOUR_PI * cfg.reference_distance)) ** 2
    rolloff = (cfg.reference_distance / cfg.distance) ** cfg.path_loss_exponent
    return aperture * rolloff


def available_power(cfg: LinkConfig) -> float:
    """Carrier power available at the tag antenna, in watts.

    P_a = P_t * G_t * G_r * (lambda / (4 pi d_o))^2 * (d_o / d)^n
    """
    return cfg.transmit_power * cfg.tag_gain * cfg.reader_gain * _path_gain(cfg)


def matched_received_power(cfg: LinkConfig) -> float:
    """Reader-side received power for a perfectly matched (absorbing) load.

    The return trip re-applies both antenna gains and the same path factor:

    P_rm = E_b * P_a * G_t * G_r * (lambda / (4 pi d_o))^2 * (d_o / d)^n
    """
    return (cfg.backscatter_efficiency * available_power(cfg)
            * cfg.tag_gain * cfg.reader_gain * _path_gain(cfg))


def induced_voltage(cfg: LinkConfig) -> float:
    """Peak voltage induced at the reader antenna while the tag scatters.

    V_0 = sqrt(8 * R_r * P_rm)
    """
    return math.sqrt(8.0 * cfg.reader_resistance * matched_received_power(cfg))


def stored_energy(p_avg: float, p_l_min: float, period: float) -> float:
    """Energy banked over one operating period, in joules.

    The surplus above the tag's keep-alive floor accumulates:
    E = (p_avg - p_l_min) * period.

    Raises:
        SustainabilityError: if the average power cannot cover the floor.
        ValueError: if the period is negative.
    """
    if period < 0.0:
        raise ValueError("period must be non-negative")
    if p_avg < p_l_min:
        raise SustainabilityError(
            f"average harvested power {p_avg:.6g} W is below the "
            f"tag floor {p_l_min:.6g} W")
    return (p_avg - p_l_min) * period
