"""Reference coefficient placements used as comparison benchmarks.

Two fixed placements from the load-modulation literature:

* a zero-centred symmetric ladder assigning the most probable symbols the
  smallest magnitudes, and
* the classic binary matched/mismatched pair (0, -2 m_th).

Benchmarks are evaluated even where they violate the power floors -- the
point of the comparison is to show where the fixed placements stop being
usable -- so violations surface as flags, never as errors.  For the same
reason the weighted power here runs on the raw quadratic formula: at large
separations a fixed placement can leave the passive disc entirely, and the
formula extension (harvest going negative) keeps the comparison curve
defined instead of crashing it.
"""

from __future__ import annotations

from .feasibility import DesignConstraints, reader_backscatter_power
from .linkbudget import LinkConfig, available_power
from .symbols import SymbolSet


def symmetric_benchmark(order: int, m_th: float) -> tuple[float, ...]:
    """Zero-centred ladder (m_th, -m_th, 3*m_th, -3*m_th, ...).

    Index i (1-based) gets m_th * (1 - (-1)^i * (i + ((-1)^i - 1)/2)), which
    alternates sides with growing magnitude; same-side neighbours sit
    exactly 2*m_th apart.
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    out = []
    for i in range(1, order + 1):
        sign = -1.0 if i % 2 else 1.0  # (-1)^i
        out.append(m_th * (1.0 - sign * (i + (sign - 1.0) / 2.0)))
    return tuple(out)


def bask_benchmark(m_th: float) -> tuple[float, float]:
    """Binary pair with one load matched, the other mismatched by 2*m_th."""
    return (0.0, -2.0 * m_th)


def _state_harvest(gamma_a: float, cfg: LinkConfig) -> float:
    """Formula-extended per-state harvest E_h * P_a * (1 - g^2)."""
    return (cfg.harvest_efficiency * available_power(cfg)
            * (1.0 - gamma_a * gamma_a))


def average_power(coefficients, symbols: SymbolSet, cfg: LinkConfig) -> float:
    """Probability-weighted harvested power of an arbitrary real placement.

    Raises:
        ValueError: when the placement length disagrees with the symbol set.
    """
    coeffs = tuple(float(g) for g in coefficients)
    if len(coeffs) != symbols.order:
        raise ValueError("coefficient count must equal the symbol order")
    return sum(p * _state_harvest(g, cfg)
               for p, g in zip(symbols.probabilities, coeffs))


def floor_violations(coefficients, constraints: DesignConstraints,
                     cfg: LinkConfig) -> tuple[bool, bool]:
    """Flags (tag floor violated, reader floor violated) for a placement.

    The reader flag stays False when the reader floor is relaxed.
    """
    coeffs = tuple(float(g) for g in coefficients)
    tag_bad = any(_state_harvest(g, cfg) < constraints.p_l_min for g in coeffs)
    reader_bad = False
    if constraints.p_b_min is not None:
        reader_bad = any(reader_backscatter_power(g, cfg) < constraints.p_b_min
                         for g in coeffs)
    return tag_bad, reader_bad
