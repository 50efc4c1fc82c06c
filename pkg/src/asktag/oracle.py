"""Independent brute-force verifiers for the closed-form solvers.

Nothing here shares logic with the optimizers beyond the raw power formulas:
the binary check is a dense grid scan, the M-ary check tries every single
probability-to-rung assignment.  These run in the test suite and behind the
``verify`` CLI command -- never inside the production solve path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleError
from .feasibility import DesignConstraints, bounds, is_feasible
from .linkbudget import LinkConfig, available_power
from .mask import solve_placed
from .reflection import ReflectionCoefficient
from .symbols import SymbolSet

#: Absolute slack admitting grid points that sit exactly on a constraint
#: boundary but land a rounding error on the wrong side.
EDGE_TOL = 1e-12


@dataclass(frozen=True)
class BaskGridResult:
    """Best feasible cell of the binary grid scan."""

    gamma_high: float
    gamma_low: float
    power: float


@dataclass(frozen=True)
class ComplexPairResult:
    """Best feasible cell of the complex two-state scan."""

    state_high: ReflectionCoefficient
    state_low: ReflectionCoefficient
    power: float


@dataclass(frozen=True)
class PermutationResult:
    """Best assignment found by exhaustive permutation."""

    coefficients_by_symbol: tuple[float, ...]
    average_power: float
    assignment: tuple[int, ...]


def _axis(step: float) -> np.ndarray:
    """Symmetric scan axis over [-1, 1] hitting 0 and both ends exactly."""
    return np.linspace(-1.0, 1.0, int(round(2.0 / step)) + 1)


def grid_search_bask(p1: float, constraints: DesignConstraints,
                     cfg: LinkConfig, step: float) -> BaskGridResult:
    """Dense scan of ordered real pairs for the binary problem.

    Scans (gamma_high, gamma_low) over [-1, 1]^2 at ``step``, keeping cells
    whose separation and per-state harvest satisfy the constraints, then
    refines twice (step/100, then step/10000) over two-step windows around
    the running best cell.  Two steps, not one, because coarse quantization
    of a constraint wall and of the separation can each push the coarse
    winner one cell away; two passes because the optimum rides the
    separation equality, where the power loss is first order in the lattice
    spacing.  Ties resolve to the first cell in row-major scan order.

    Raises:
        InfeasibleError: when no grid cell satisfies the constraints.
    """
    if not 0.0 < step <= 0.01:
        raise ValueError("step must lie in (0, 0.01]")
    scale = cfg.harvest_efficiency * available_power(cfg)
    floor = constraints.p_l_min - EDGE_TOL * max(scale, 1.0e-30)
    sep = 2.0 * constraints.m_th - EDGE_TOL

    def best_cell(ax_hi: np.ndarray, ax_lo: np.ndarray):
        harvest_hi = scale * (1.0 - ax_hi ** 2)
        harvest_lo = scale * (1.0 - ax_lo ** 2)
        ok = ((harvest_hi >= floor)[:, None]
              & (harvest_lo >= floor)[None, :]
              & (ax_hi[:, None] - ax_lo[None, :] >= sep))
        if not ok.any():
            return None
        obj = np.where(ok,
                       p1 * (1.0 - ax_hi[:, None] ** 2)
                       + (1.0 - p1) * (1.0 - ax_lo[None, :] ** 2),
                       -np.inf)
        flat = int(np.argmax(obj))
        i, j = divmod(flat, ax_lo.size)
        return float(ax_hi[i]), float(ax_lo[j]), scale * float(obj[i, j])

    coarse = best_cell(_axis(step), _axis(step))
    if coarse is None:
        raise InfeasibleError("no feasible cell on the scan grid")
    g_hi, g_lo, power = coarse

    window = step
    for _ in range(2):
        fine = best_cell(
            np.linspace(max(-1.0, g_hi - 2.0 * window),
                        min(1.0, g_hi + 2.0 * window), 401),
            np.linspace(max(-1.0, g_lo - 2.0 * window),
                        min(1.0, g_lo + 2.0 * window), 401))
        if fine is not None and fine[2] > power:
            g_hi, g_lo, power = fine
        window /= 100.0
    return BaskGridResult(gamma_high=g_hi, gamma_low=g_lo, power=power)


def grid_search_complex_bask(p1: float, constraints: DesignConstraints,
                             cfg: LinkConfig, step: float) -> ComplexPairResult:
    """Coarse scan of complex two-state pairs, imaginary parts included.

    Enumerates every in-disc grid point meeting the per-state floors (the
    reader floor only when the constraints carry one), then maximizes the
    weighted harvest over all pairs separated by at least 2*m_th.  Exact
    objective ties -- the harvest only sees magnitudes, so every rotation of
    a maximizer ties with it -- resolve toward the representative with the
    smallest combined |imaginary part|, then scan order.

    Raises:
        InfeasibleError: when no pair on the grid is feasible.
    """
    if step < 0.02:
        raise ValueError("step below 0.02 is past desk scale for a 4-D scan")
    ax = _axis(step)
    re, im = np.meshgrid(ax, ax, indexing="ij")
    re, im = re.ravel(), im.ravel()
    scale = cfg.harvest_efficiency * available_power(cfg)
    mag2 = re ** 2 + im ** 2
    keep = mag2 <= 1.0 + EDGE_TOL
    harvest = scale * (1.0 - mag2)
    keep &= harvest >= constraints.p_l_min - EDGE_TOL * max(scale, 1.0e-30)
    if constraints.p_b_min is not None:
        scatter = (cfg.backscatter_efficiency * available_power(cfg)
                   * cfg.reader_gain * ((1.0 - re) ** 2 + im ** 2))
        keep &= scatter >= constraints.p_b_min - EDGE_TOL * max(scale, 1.0e-30)
    re, im, mag2 = re[keep], im[keep], mag2[keep]
    if re.size == 0:
        raise InfeasibleError("no grid point satisfies the per-state floors")

    gain = 1.0 - mag2  # normalized per-state harvest
    sep2 = (2.0 * constraints.m_th) ** 2 - EDGE_TOL
    best_val = -np.inf
    best_tie = np.inf
    best_pair = (0, 0)
    chunk = 512
    for lo in range(0, re.size, chunk):
        hi = min(lo + chunk, re.size)
        d2 = ((re[lo:hi, None] - re[None, :]) ** 2
              + (im[lo:hi, None] - im[None, :]) ** 2)
        obj = np.where(d2 >= sep2,
                       p1 * gain[lo:hi, None] + (1.0 - p1) * gain[None, :],
                       -np.inf)
        vmax = float(obj.max(initial=-np.inf))
        if vmax == -np.inf or vmax < best_val:
            continue
        rows, cols = np.nonzero(obj == vmax)
        ties = np.abs(im[lo + rows]) + np.abs(im[cols])
        k = int(np.argmin(ties))  # first minimum = earliest in scan order
        if vmax > best_val or ties[k] < best_tie:
            best_val = vmax
            best_tie = float(ties[k])
            best_pair = (lo + int(rows[k]), int(cols[k]))
    if best_val == -np.inf:
        raise InfeasibleError("no grid pair satisfies the separation floor")

    i, j = best_pair
    return ComplexPairResult(
        state_high=ReflectionCoefficient(float(re[i]), float(im[i])),
        state_low=ReflectionCoefficient(float(re[j]), float(im[j])),
        power=scale * best_val)


def permutation_search(symbols: SymbolSet, constraints: DesignConstraints,
                       cfg: LinkConfig) -> PermutationResult:
    """Try every probability-to-rung assignment and keep the best ladder.

    The reference the sequence-matrix shortcut is certified against: all
    M! assignments are solved with the same placed closed form, earliest
    strict maximum wins.  Refuses orders beyond 8 (40320 assignments).

    Raises:
        ValueError: order above 8.
        InfeasibleError: when the ladder cannot fit at all.
    """
    if symbols.order > 8:
        raise ValueError("permutation search is capped at order 8")
    b = bounds(cfg, constraints)
    if not is_feasible(symbols.order, b, constraints.m_th):
        raise InfeasibleError(
            f"order {symbols.order} at half-separation "
            f"{constraints.m_th:.6g} does not fit the bounds")

    probs = symbols.probabilities
    best_power = -np.inf
    best_perm: tuple[int, ...] | None = None
    best_coeffs: tuple[float, ...] = ()
    for perm in itertools.permutations(range(symbols.order)):
        row = tuple(probs[s] for s in perm)
        placed = solve_placed(row, constraints, b, cfg)
        if placed.average_power > best_power:
            best_power = placed.average_power
            best_perm = perm
            best_coeffs = placed.coefficients

    by_symbol = [0.0] * symbols.order
    for rung, sym in enumerate(best_perm):
        by_symbol[sym] = best_coeffs[rung]
    return PermutationResult(coefficients_by_symbol=tuple(by_symbol),
                             average_power=float(best_power),
                             assignment=best_perm)
