"""Symbol-error probability: analytic tail formula and a Monte-Carlo oracle.

The reader sees symbol i as the real amplitude v_i = V_0 * Gamma_ai / 2, so
two states separated by modulation index m sit V_0 * m apart.  With additive
zero-mean Gaussian noise of RMS sigma and a midpoint threshold, the pairwise
error probability is

    P_e = erfc(V_0 * m / (2 * sqrt(2) * sigma)) / 2.

The simulator replays exactly that channel -- draw a symbol, add noise,
detect by nearest constellation point -- and is the independent check that
the formula, the voltage chain, and the separation bookkeeping agree.

Unit note: the link config carries noise as a power in watts; this module
converts it to a voltage RMS through a declared 1-ohm convention,
sigma = sqrt(noise_power * 1 ohm).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linkbudget import LinkConfig, induced_voltage
from .symbols import SymbolSet

#: Trials per simulation batch; each batch is seeded independently so the
#: aggregate is identical however batches are scheduled.
BATCH_SIZE = 65536


def noise_sigma(cfg: LinkConfig) -> float:
    """Noise RMS in volts under the 1-ohm power-to-voltage convention."""
    return math.sqrt(cfg.noise_power * 1.0)


@dataclass(frozen=True)
class NoiseModel:
    """Reader-side AWGN description: voltage RMS plus a simulation seed."""

    sigma: float
    seed: int = 0

    def __post_init__(self) -> None:
        if self.sigma <= 0.0:
            raise ValueError("sigma must be strictly positive")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")

    @classmethod
    def from_config(cls, cfg: LinkConfig, seed: int = 0) -> "NoiseModel":
        return cls(sigma=noise_sigma(cfg), seed=seed)


@dataclass(frozen=True)
class SimulatedSer:
    """Outcome of a Monte-Carlo run.

    ``confusion[i, k]`` counts transmitted-symbol-i detected-as-k events;
    the diagonal holds the correct decisions.
    """

    ser: float
    errors: int
    trials: int
    confusion: np.ndarray


def pairwise_ser(m: float, cfg: LinkConfig) -> float:
    """Probability of confusing two states at modulation index ``m``.

    Uses the induced voltage from the link budget and the 1-ohm noise
    convention; m = 0 gives exactly one half (coin-flip threshold).
    """
    if not 0.0 <= m <= 1.0:
        raise ValueError("modulation index must lie in [0, 1]")
    nu = induced_voltage(cfg) * m / (2.0 * math.sqrt(2.0) * noise_sigma(cfg))
    return 0.5 * math.erfc(nu)


def simulate_ser(coefficients, symbols: SymbolSet, cfg: LinkConfig,
                 noise: NoiseModel, trials: int) -> SimulatedSer:
    """Monte-Carlo symbol-error estimate for a real-coefficient placement.

    Draws symbols by their probabilities, maps them to amplitudes
    V_0 * Gamma_a / 2, adds Gaussian noise, and detects by the nearest
    constellation point (midpoint thresholds; priors deliberately unused so
    the estimate targets the analytic threshold model, not MAP detection).

    Work proceeds in fixed batches of ``BATCH_SIZE`` trials; batch b draws
    from a generator seeded with SeedSequence((noise.seed, b)), making the
    aggregate bit-for-bit reproducible and independent of batch scheduling.

    Raises:
        ValueError: for zero trials or a length mismatch.
    """
    levels = np.asarray([float(g) for g in coefficients], dtype=float)
    if levels.size != symbols.order:
        raise ValueError("coefficient count must equal the symbol order")
    if trials < 1:
        raise ValueError("trials must be >= 1")

    amplitudes = 0.5 * induced_voltage(cfg) * levels
    probs = np.asarray(symbols.probabilities, dtype=float)
    probs = probs / probs.sum()  # guard against 1e-16 drift in the draw
    order = symbols.order

    confusion = np.zeros((order, order), dtype=np.int64)
    done = 0
    batch_index = 0
    while done < trials:
        batch = min(BATCH_SIZE, trials - done)
        rng = np.random.default_rng(np.random.SeedSequence((noise.seed, batch_index)))
        sent = rng.choice(order, size=batch, p=probs)
        received = amplitudes[sent] + rng.normal(0.0, noise.sigma, size=batch)
        detected = np.abs(received[:, None] - amplitudes[None, :]).argmin(axis=1)
        np.add.at(confusion, (sent, detected), 1)
        done += batch
        batch_index += 1

    errors = int(confusion.sum() - np.trace(confusion))
    return SimulatedSer(ser=errors / trials, errors=errors, trials=trials,
                        confusion=confusion)
