"""Globally optimal coefficients for M-ary ASK via candidate-row enumeration.

The optimal design places the M coefficients on an equally spaced descending
ladder (steps of 2*m_th) and assigns symbol probabilities to ladder rungs.
Instead of trying all M! assignments, only 2(M-1) candidate arrangements can
win: the most probable symbol anchors at each ladder position with the
remaining symbols fanned out alternately to its right and left (two starting
sides per interior anchor, one for each end).  Each arrangement has a closed
form; the best row is kept and its rungs are mapped back to symbols.

An exhaustive-permutation oracle certifying this reduction per instance
lives in :mod:`asktag.oracle`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bask import INTERIOR, LOWER_BOUND, UPPER_BOUND
from .errors import InfeasibleError
from .feasibility import (CoefficientBounds, DesignConstraints, bounds,
                          is_feasible, reader_backscatter_power)
from .linkbudget import LinkConfig, available_power
from .reflection import ReflectionCoefficient, backscattered_power, harvested_power
from .symbols import SymbolSet


@dataclass(frozen=True)
class SequenceMatrix:
    """The 2(M-1) candidate probability arrangements.

    ``rows[i]`` is the probability vector permuted into ladder order: entry
    k belongs to rung k, the k-th largest coefficient.  ``assignments[i]``
    carries the same row as symbol indices, which is what the final
    rung-to-symbol mapping needs.
    """

    order: int
    rows: tuple[tuple[float, ...], ...]
    assignments: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class PlacedSolution:
    """Closed-form optimum for one fixed probability-to-rung arrangement."""

    leading: float
    coefficients: tuple[float, ...]
    average_power: float
    active_case: str


@dataclass(frozen=True)
class StatePowers:
    """Per-symbol power diagnostic attached to a finished design."""

    harvested: float
    backscattered: float


@dataclass(frozen=True)
class MaskDesign:
    """Optimal M-ASK design, coefficients aligned to the symbol order."""

    coefficients_by_symbol: tuple[float, ...]
    average_power: float
    winning_row: int
    active_case: str
    per_state: tuple[StatePowers, ...]


def _fan_out(anchor: int, right_first: bool, order: int) -> tuple[int, ...]:
    """Place symbol 0 at ``anchor`` and fan 1..M-1 out on alternating sides.

    Sides fill adjacent-first; when the preferred side is full the symbol
    spills to the open side.  Returns the row as symbol indices per position.
    """
    row = [-1] * order
    row[anchor] = 0
    left = anchor - 1
    right = anchor + 1
    go_right = right_first
    for sym in range(1, order):
        if go_right and right < order:
            row[right] = sym
            right += 1
        elif not go_right and left >= 0:
            row[left] = sym
            left -= 1
        elif right < order:
            row[right] = sym
            right += 1
        else:
            row[left] = sym
            left -= 1
        go_right = not go_right
    return tuple(row)


def sequence_matrix(probabilities) -> SequenceMatrix:
    """Enumerate the 2(M-1) candidate arrangements of a descending vector.

    Anchors ascend; interior anchors contribute a right-first row then a
    left-first row, the two end anchors one row each (both starts coincide
    there).

    Raises:
        ValueError: if the input is not sorted descending or is too short.
    """
    probs = tuple(float(p) for p in probabilities)
    order = len(probs)
    if order < 2:
        raise ValueError("need at least two probabilities")
    for a, b in zip(probs, probs[1:]):
        if a < b:
            raise ValueError("probabilities must be sorted descending")

    assignments: list[tuple[int, ...]] = []
    for anchor in range(order):
        if anchor == 0 or anchor == order - 1:
            assignments.append(_fan_out(anchor, right_first=True, order=order))
        else:
            assignments.append(_fan_out(anchor, right_first=True, order=order))
            assignments.append(_fan_out(anchor, right_first=False, order=order))
    rows = tuple(tuple(probs[s] for s in row) for row in assignments)
    return SequenceMatrix(order=order, rows=rows, assignments=tuple(assignments))


def solve_placed(row, constraints: DesignConstraints, b: CoefficientBounds,
                 cfg: LinkConfig) -> PlacedSolution:
    """Optimal ladder for one fixed probability arrangement.

    The top rung's stationary point is the probability-weighted centroid
    offset  2 m_th * sum_k row[k] * k,  clamped into
    [lower + 2 m_th (M-1), upper]; the remaining rungs follow at spacing
    2 m_th and the average harvested power is the weighted quadratic sum.

    Raises:
        InfeasibleError: when the ladder cannot fit between the bounds.
    """
    probs = tuple(float(p) for p in row)
    order = len(probs)
    if not is_feasible(order, b, constraints.m_th):
        raise InfeasibleError(
            f"{order} levels at half-separation {constraints.m_th:.6g} do not "
            f"fit in [{b.lower:.6g}, {b.upper:.6g}]")

    m2 = 2.0 * constraints.m_th
    stationary = m2 * sum(p * k for k, p in enumerate(probs))
    floor = b.lower + m2 * (order - 1)
    leading = max(floor, min(stationary, b.upper))
    if leading == stationary:
        case = INTERIOR
    elif leading == b.upper:
        case = UPPER_BOUND
    else:
        case = LOWER_BOUND

    coeffs = tuple(leading - m2 * k for k in range(order))
    scale = cfg.harvest_efficiency * available_power(cfg)
    power = scale * sum(p * (1.0 - g * g) for p, g in zip(probs, coeffs))
    return PlacedSolution(leading=leading, coefficients=coeffs,
                          average_power=power, active_case=case)


def solve_mask(symbols: SymbolSet, constraints: DesignConstraints,
               cfg: LinkConfig) -> MaskDesign:
    """Globally optimal M-ASK design for the given symbol set.

    Solves every sequence-matrix row in order, keeps the strictly best
    average power (the earliest row wins ties), and maps the winning
    ladder's rungs back to symbols.

    Raises:
        InfeasibleError: when the level count exceeds the feasibility cap.
        TagStarvedError: propagated from the bounds computation.
    """
    b = bounds(cfg, constraints)
    if not is_feasible(symbols.order, b, constraints.m_th):
        cap = 1.0 + b.span / (2.0 * constraints.m_th)
        raise InfeasibleError(
            f"order {symbols.order} exceeds the feasibility cap {cap:.4f} "
            f"(bounds [{b.lower:.6g}, {b.upper:.6g}], m_th "
            f"{constraints.m_th:.6g})")

    matrix = sequence_matrix(symbols.probabilities)
    best: PlacedSolution | None = None
    best_index = -1
    for index, row in enumerate(matrix.rows):
        placed = solve_placed(row, constraints, b, cfg)
        if best is None or placed.average_power > best.average_power:
            best = placed
            best_index = index

    assignment = matrix.assignments[best_index]
    by_symbol = [0.0] * symbols.order
    for rung, sym in enumerate(assignment):
        by_symbol[sym] = best.coefficients[rung]

    per_state = tuple(
        StatePowers(
            harvested=harvested_power(ReflectionCoefficient(g), cfg),
            backscattered=backscattered_power(ReflectionCoefficient(g), cfg))
        for g in by_symbol)
    return MaskDesign(coefficients_by_symbol=tuple(by_symbol),
                      average_power=best.average_power,
                      winning_row=best_index,
                      active_case=best.active_case,
                      per_state=per_state)


def constraint_margins(design: MaskDesign, constraints: DesignConstraints,
                       cfg: LinkConfig) -> tuple[float, float]:
    """Worst-case slack of a finished design against the two power floors.

    Returns (min harvested - p_l_min, min reader-floor power - p_b_min);
    the second entry is +inf when the reader floor is relaxed.
    """
    harvest_slack = min(s.harvested for s in design.per_state) - constraints.p_l_min
    if constraints.p_b_min is None:
        return harvest_slack, float("inf")
    reader_slack = min(reader_backscatter_power(g, cfg)
                       for g in design.coefficients_by_symbol) - constraints.p_b_min
    return harvest_slack, reader_slack
