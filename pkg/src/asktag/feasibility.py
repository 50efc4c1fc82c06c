"""Coefficient bounds from the sensitivity constraints, and the feasibility test.

Two floors box in every usable reflection state:

* the tag floor ``p_l_min`` -- each state must leave the rectifier at least
  this much power, which caps the coefficient magnitude;
* the reader floor ``p_b_min`` -- each state must scatter enough power back
  for the reader to decode, which caps the coefficient from above only (its
  second algebraic branch, coefficients >= 1 + sqrt(...), is discarded as
  incompatible with passivity).

An M-level ladder with half-separation ``m_th`` fits between the resulting
bounds iff  M <= 1 + (upper - lower) / (2 m_th),  equality included.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InfeasibleError, TagStarvedError
from .linkbudget import LinkConfig, available_power


@dataclass(frozen=True)
class DesignConstraints:
    """Operational requirements: symbol separation and the two power floors.

    ``p_b_min = None`` drops the reader floor entirely (the relaxed
    binary-modulation special case).
    """

    m_th: float
    p_l_min: float = 0.0
    p_b_min: float | None = None

    def __post_init__(self) -> None:
        if not 0.0 < self.m_th <= 1.0:
            raise ValueError("m_th must lie in (0, 1]")
        if self.p_l_min < 0.0:
            raise ValueError("p_l_min must be non-negative")
        if self.p_b_min is not None and self.p_b_min < 0.0:
            raise ValueError("p_b_min must be non-negative")


@dataclass(frozen=True)
class CoefficientBounds:
    """Closed interval of admissible real reflection coefficients."""

    lower: float
    upper: float

    @property
    def span(self) -> float:
        return self.upper - self.lower


def harvest_limit(cfg: LinkConfig, p_l_min: float) -> float:
    """Largest coefficient magnitude that still feeds the tag ``p_l_min``.

    sqrt(1 - p_l_min / (E_h * P_a)).  Raises TagStarvedError when the floor
    exceeds the fully-absorbed harvest, i.e. the radicand is negative.
    """
    budget = cfg.harvest_efficiency * available_power(cfg)
    if p_l_min > budget:
        raise TagStarvedError(
            f"tag floor {p_l_min:.6g} W exceeds the matched-load harvest "
            f"{budget:.6g} W")
    if budget == 0.0:  # zero-efficiency edge with a zero floor
        return 1.0
    return math.sqrt(1.0 - p_l_min / budget)


def reader_backscatter_power(gamma_a: float, cfg: LinkConfig) -> float:
    """Reader-floor comparison power E_b * P_a * G_r * (1 - gamma_a)^2.

    Note this bookkeeping applies the reader gain, not the tag gain, so it
    is intentionally not ``backscattered_power`` -- the two surface in
    different roles and are kept verbatim rather than reconciled.
    """
    return (cfg.backscatter_efficiency * available_power(cfg)
            * cfg.reader_gain * (1.0 - gamma_a) ** 2)


def bounds(cfg: LinkConfig, constraints: DesignConstraints) -> CoefficientBounds:
    """Admissible coefficient interval under both sensitivity floors.

    lower = -sqrt(1 - p_l_min / (E_h P_a))
    upper = min(+sqrt(1 - p_l_min / (E_h P_a)),
                1 - sqrt(p_b_min / (E_b P_a G_r)))      [reader term only
                                                         when p_b_min is set]

    Raises:
        TagStarvedError: tag floor unreachable at any reflection state.
        InfeasibleError: the two floors leave an empty interval.
    """
    limit = harvest_limit(cfg, constraints.p_l_min)
    upper = limit
    if constraints.p_b_min is not None and constraints.p_b_min > 0.0:
        scatter_budget = (cfg.backscatter_efficiency * available_power(cfg)
                          * cfg.reader_gain)
        if scatter_budget == 0.0:
            raise InfeasibleError(
                "reader floor is positive but the scatter budget is zero")
        upper = min(upper, 1.0 - math.sqrt(constraints.p_b_min / scatter_budget))
    if upper < -limit:
        raise InfeasibleError(
            f"reader floor pushes the upper bound {upper:.6g} below the "
            f"lower bound {-limit:.6g}")
    return CoefficientBounds(lower=-limit, upper=upper)


def is_feasible(order: int, b: CoefficientBounds, m_th: float) -> bool:
    """Whether M coefficients at half-separation m_th fit inside the bounds.

    True iff order <= 1 + span / (2 m_th), equality included, evaluated in
    the algebraically identical form m_th <= span / (2 (order - 1)) so the
    value returned by :func:`max_modulation_threshold` always tests
    feasible regardless of rounding.  This single comparison is shared by
    every solver, so "solver succeeded" and "caller predicted feasible"
    cannot disagree on borderline arithmetic.
    """
    if order <= 1:
        return True
    return m_th <= b.span / (2.0 * (order - 1))


def max_modulation_threshold(order: int, b: CoefficientBounds) -> float:
    """Largest half-separation for which ``order`` levels remain feasible."""
    if order < 2:
        raise ValueError("order must be >= 2")
    return b.span / (2.0 * (order - 1))
