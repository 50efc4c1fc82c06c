"""Closed-form globally optimal coefficients for binary ASK.

The binary problem drops the reader floor, leaving a concave quadratic
objective over the box cut by the tag floor and the separation requirement.
Its stationarity system has three candidate solutions -- an interior point
and one per pinned bound -- and a single max/min clamp selects among them:

    candidate_interior = 2 (1 - p1) m_th
    candidate_upper    = +sqrt(1 - p_l_min / (E_h P_a))
    candidate_lower    = -sqrt(1 - p_l_min / (E_h P_a)) + 2 m_th

    gamma_high = max(candidate_lower, min(candidate_interior, candidate_upper))
    gamma_low  = gamma_high - 2 m_th

The clamp is total: the corner where both bounds pin simultaneously needs no
special path because the upper and lower candidates coincide there.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InfeasibleError
from .feasibility import CoefficientBounds, DesignConstraints, harvest_limit, is_feasible
from .linkbudget import LinkConfig, available_power

INTERIOR = "interior"
UPPER_BOUND = "upper_bound"
LOWER_BOUND = "lower_bound"


@dataclass(frozen=True)
class BaskDesign:
    """Optimal binary design: two real coefficients 2*m_th apart.

    ``active_case`` records which stationarity branch produced the answer.
    ``swapped`` is set when the caller's first symbol was the minority one,
    in which case ``gamma_high`` belongs to the second symbol.
    """

    gamma_high: float
    gamma_low: float
    average_power: float
    active_case: str
    swapped: bool = False


def solve_bask(p_one_symbol: float, constraints: DesignConstraints,
               cfg: LinkConfig) -> BaskDesign:
    """Globally optimal binary-ASK coefficients for the given symbol skew.

    ``p_one_symbol`` is the occurrence probability of the first symbol.
    Inputs below one half are normalized by swapping symbol roles (the
    solution is symmetric in the relabeling); the returned design notes
    the swap.  The reader floor is intentionally not enforced here.

    Raises:
        InfeasibleError: when 2*m_th exceeds the admissible interval.
        TagStarvedError: propagated when the tag floor is unreachable.
    """
    if not 0.0 <= p_one_symbol <= 1.0:
        raise ValueError("p_one_symbol must lie in [0, 1]")
    swapped = p_one_symbol < 0.5
    p1 = 1.0 - p_one_symbol if swapped else p_one_symbol

    limit = harvest_limit(cfg, constraints.p_l_min)
    box = CoefficientBounds(lower=-limit, upper=limit)
    if not is_feasible(2, box, constraints.m_th):
        raise InfeasibleError(
            f"m_th {constraints.m_th:.6g} exceeds the feasible maximum "
            f"{box.span / 2.0:.6g} for two levels")

    m2 = 2.0 * constraints.m_th
    candidate_interior = (1.0 - p1) * m2
    candidate_upper = limit
    candidate_lower = -limit + m2
    gamma_high = max(candidate_lower, min(candidate_interior, candidate_upper))
    gamma_low = gamma_high - m2

    if gamma_high == candidate_interior:
        case = INTERIOR
    elif gamma_high == candidate_upper:
        case = UPPER_BOUND
    else:
        case = LOWER_BOUND

    scale = cfg.harvest_efficiency * available_power(cfg)
    power = scale * (p1 * (1.0 - gamma_high ** 2)
                     + (1.0 - p1) * (1.0 - gamma_low ** 2))
    return BaskDesign(gamma_high=gamma_high, gamma_low=gamma_low,
                      average_power=power, active_case=case, swapped=swapped)
