"""Candidate-row enumeration and the placed-ladder optimum for M-ary ASK."""

import itertools

import numpy as np
import pytest

from asktag import (DesignConstraints, InfeasibleError, LinkConfig, SymbolSet,
                    TagStarvedError, available_power, bounds,
                    constraint_margins, from_bit_probability, harvest_limit,
                    max_modulation_threshold, permutation_search,
                    reader_backscatter_power, sequence_matrix, solve_bask,
                    solve_mask, solve_placed)

# from_bit_probability(0.7, 4) under m_th 0.15 and 5/3 uW floors.
WORKED_COEFFS = (0.054, -0.246, 0.354, -0.546)
WORKED_POWER_W = 8.885403148513796e-06


def harvest_scale(cfg):
    return cfg.harvest_efficiency * available_power(cfg)


# --------------------------------------------------------------- matrix shape

def test_matrix_binary():
    matrix = sequence_matrix((0.7, 0.3))
    assert matrix.rows == ((0.7, 0.3), (0.3, 0.7))
    assert matrix.assignments == ((0, 1), (1, 0))


def test_matrix_order_four_distinct():
    p1, p2, p3, p4 = 0.4, 0.3, 0.2, 0.1
    matrix = sequence_matrix((p1, p2, p3, p4))
    assert matrix.rows == (
        (p1, p2, p3, p4),
        (p3, p1, p2, p4),
        (p2, p1, p3, p4),
        (p4, p3, p1, p2),
        (p4, p2, p1, p3),
        (p4, p3, p2, p1),
    )
    assert matrix.assignments == (
        (0, 1, 2, 3),
        (2, 0, 1, 3),
        (1, 0, 2, 3),
        (3, 2, 0, 1),
        (3, 1, 0, 2),
        (3, 2, 1, 0),
    )


def test_matrix_worked_probabilities():
    matrix = sequence_matrix((0.49, 0.21, 0.21, 0.09))
    assert matrix.rows == (
        (0.49, 0.21, 0.21, 0.09),
        (0.21, 0.49, 0.21, 0.09),
        (0.21, 0.49, 0.21, 0.09),
        (0.09, 0.21, 0.49, 0.21),
        (0.09, 0.21, 0.49, 0.21),
        (0.09, 0.21, 0.21, 0.49),
    )


@pytest.mark.parametrize("order", [2, 4, 8, 16])
def test_matrix_row_count(order):
    matrix = sequence_matrix(from_bit_probability(0.6, order).probabilities)
    assert len(matrix.rows) == 2 * (order - 1)
    assert len(matrix.assignments) == 2 * (order - 1)
    for assignment in matrix.assignments:
        assert sorted(assignment) == list(range(order))
    assert len(set(matrix.assignments)) == len(matrix.assignments)


def test_matrix_prefix_contiguity():
    # The j most probable symbols always occupy adjacent rungs.
    matrix = sequence_matrix(from_bit_probability(0.8, 8).probabilities)
    for assignment in matrix.assignments:
        position = {sym: rung for rung, sym in enumerate(assignment)}
        for j in range(8):
            block = [position[s] for s in range(j + 1)]
            assert max(block) - min(block) == j


def _is_alternating_fanout(assignment):
    """Declarative membership test for the anchored fan-out family.

    The top symbol sits anywhere; each next symbol extends the occupied
    block by one rung, alternating sides, except that a move lands on the
    other side only when the preferred side has hit the ladder edge.
    """
    order = len(assignment)
    position = [0] * order
    for rung, sym in enumerate(assignment):
        position[sym] = rung
    lo = hi = position[0]
    moves = []
    for sym in range(1, order):
        rung = position[sym]
        if rung == lo - 1:
            moves.append("L")
            lo = rung
        elif rung == hi + 1:
            moves.append("R")
            hi = rung
        else:
            return False
    for first in ("L", "R"):
        lo = hi = position[0]
        consistent = True
        for k, side in enumerate(moves):
            expected = first if k % 2 == 0 else ("R" if first == "L" else "L")
            if side != expected:
                room = lo > 0 if expected == "L" else hi < order - 1
                if room:
                    consistent = False
                    break
            if side == "L":
                lo -= 1
            else:
                hi += 1
        if consistent:
            return True
    return False


def test_matrix_is_exactly_the_fanout_family():
    # Filter all 8! arrangements with an independent membership test and
    # demand set equality with the enumerated matrix.
    matrix = sequence_matrix(from_bit_probability(0.7, 8).probabilities)
    reachable = {perm for perm in itertools.permutations(range(8))
                 if _is_alternating_fanout(perm)}
    assert len(reachable) == 14
    assert set(matrix.assignments) == reachable


def test_matrix_rejects_bad_input():
    with pytest.raises(ValueError):
        sequence_matrix((0.3, 0.7))
    with pytest.raises(ValueError):
        sequence_matrix((1.0,))


# ------------------------------------------------------------- placed ladders

def test_placed_equiprobable_ladder(cfg):
    cons = DesignConstraints(m_th=0.1, p_l_min=5e-6, p_b_min=3e-6)
    placed = solve_placed((0.25,) * 4, cons, bounds(cfg, cons), cfg)
    assert placed.leading == pytest.approx(0.3, abs=1e-12)
    assert placed.coefficients == pytest.approx((0.3, 0.1, -0.1, -0.3), abs=1e-12)
    assert placed.active_case == "interior"


def test_placed_worked_row(cfg, worked_constraints):
    b = bounds(cfg, worked_constraints)
    placed = solve_placed((0.21, 0.49, 0.21, 0.09), worked_constraints, b, cfg)
    assert placed.leading == pytest.approx(0.354, abs=1e-12)
    assert placed.average_power == pytest.approx(WORKED_POWER_W, rel=1e-12)
    assert placed.active_case == "interior"


def test_placed_against_dense_scan(cfg, worked_constraints):
    # Slide the whole ladder through its admissible range and make sure the
    # closed form sits on the scan's maximum.
    row = (0.21, 0.49, 0.21, 0.09)
    b = bounds(cfg, worked_constraints)
    placed = solve_placed(row, worked_constraints, b, cfg)
    m2 = 2.0 * worked_constraints.m_th
    leads = np.linspace(b.lower + 3.0 * m2, b.upper, 200001)
    scale = harvest_scale(cfg)
    powers = np.zeros_like(leads)
    for k, p in enumerate(row):
        powers += p * (1.0 - (leads - m2 * k) ** 2)
    powers *= scale
    best = int(np.argmax(powers))
    assert abs(leads[best] - placed.leading) <= 2.0 * (leads[1] - leads[0])
    assert placed.average_power >= powers[best] - 1e-18
    assert placed.average_power == pytest.approx(powers[best], rel=1e-9)


def test_placed_pins_both_ends_at_max_threshold(cfg, worked_constraints):
    b = bounds(cfg, worked_constraints)
    cap = max_modulation_threshold(4, b)
    cons = DesignConstraints(m_th=cap, p_l_min=worked_constraints.p_l_min,
                             p_b_min=worked_constraints.p_b_min)
    placed = solve_placed((0.49, 0.21, 0.21, 0.09), cons, b, cfg)
    assert placed.leading == pytest.approx(b.upper, abs=1e-12)
    assert placed.coefficients[-1] == pytest.approx(b.lower, abs=1e-12)


def test_placed_infeasible(cfg, worked_constraints):
    b = bounds(cfg, worked_constraints)
    with pytest.raises(InfeasibleError):
        solve_placed((0.25,) * 4, DesignConstraints(m_th=0.4, p_l_min=5e-6,
                                                    p_b_min=3e-6), b, cfg)


# ------------------------------------------------------------- full solutions

def test_worked_instance(cfg, worked_constraints):
    design = solve_mask(from_bit_probability(0.7, 4), worked_constraints, cfg)
    assert design.coefficients_by_symbol == pytest.approx(WORKED_COEFFS, abs=1e-12)
    assert design.average_power == pytest.approx(WORKED_POWER_W, rel=1e-12)
    assert design.winning_row == 1
    assert design.active_case == "interior"


def test_worked_instance_respects_both_floors(cfg, worked_constraints):
    design = solve_mask(from_bit_probability(0.7, 4), worked_constraints, cfg)
    for state in design.per_state:
        assert state.harvested >= worked_constraints.p_l_min - 1e-15
    for g in design.coefficients_by_symbol:
        assert (reader_backscatter_power(g, cfg)
                >= worked_constraints.p_b_min - 1e-15)


def test_constraint_margins_worked(cfg, worked_constraints):
    design = solve_mask(from_bit_probability(0.7, 4), worked_constraints, cfg)
    harvest_slack, reader_slack = constraint_margins(design, worked_constraints, cfg)
    assert harvest_slack > 0.0
    assert reader_slack > 0.0
    expected = min(s.harvested for s in design.per_state) - 5e-6
    assert harvest_slack == pytest.approx(expected, rel=1e-12)


def test_constraint_margins_relaxed(cfg):
    cons = DesignConstraints(m_th=0.15, p_l_min=5e-6, p_b_min=None)
    design = solve_mask(from_bit_probability(0.7, 4), cons, cfg)
    _, reader_slack = constraint_margins(design, cons, cfg)
    assert reader_slack == float("inf")


def test_binary_case_matches_dedicated_solver(cfg):
    cons = DesignConstraints(m_th=0.2, p_l_min=5e-6, p_b_min=0.0)
    design = solve_mask(from_bit_probability(0.7, 2), cons, cfg)
    direct = solve_bask(0.7, DesignConstraints(m_th=0.2, p_l_min=5e-6), cfg)
    assert design.coefficients_by_symbol == (direct.gamma_high, direct.gamma_low)
    assert design.average_power == direct.average_power


def test_equiprobable_closed_form(cfg):
    # With uniform symbols and loose bounds the ladder centers on zero and
    # the average collapses to E_h P_a (1 - m_th^2 (M^2 - 1) / 3).
    cons = DesignConstraints(m_th=0.1, p_l_min=5e-6, p_b_min=3e-6)
    design = solve_mask(from_bit_probability(0.5, 4), cons, cfg)
    expected = harvest_scale(cfg) * (1.0 - 0.1 ** 2 * (16 - 1) / 3.0)
    assert design.average_power == pytest.approx(expected, rel=1e-12)
    assert design.winning_row == 0


def test_rarer_symbols_reflect_more(cfg):
    rng = np.random.default_rng(29)
    b = bounds(cfg, DesignConstraints(m_th=0.1, p_l_min=5e-6, p_b_min=3e-6))
    for _ in range(25):
        order = int(rng.choice([2, 4, 8]))
        raw = np.sort(rng.dirichlet(np.ones(order)))[::-1]
        sy = SymbolSet.from_probabilities(tuple(raw))
        cap = max_modulation_threshold(order, b)
        cons = DesignConstraints(m_th=float(rng.uniform(0.2, 0.9)) * cap,
                                 p_l_min=5e-6, p_b_min=3e-6)
        design = solve_mask(sy, cons, cfg)
        for i in range(order):
            for k in range(order):
                if sy.probabilities[i] > sy.probabilities[k]:
                    assert (abs(design.coefficients_by_symbol[i])
                            <= abs(design.coefficients_by_symbol[k]) + 1e-12)


def test_never_beaten_by_exhaustive_permutations(cfg):
    rng = np.random.default_rng(31)
    for _ in range(15):
        raw = np.sort(rng.dirichlet(np.ones(4)))[::-1]
        sy = SymbolSet.from_probabilities(tuple(raw))
        cons = DesignConstraints(m_th=float(rng.uniform(0.05, 0.18)),
                                 p_l_min=5e-6, p_b_min=3e-6)
        design = solve_mask(sy, cons, cfg)
        oracle = permutation_search(sy, cons, cfg)
        assert abs(design.average_power - oracle.average_power) <= 1e-9


def test_power_non_increasing_in_separation(cfg):
    sy = from_bit_probability(0.7, 4)
    powers = [solve_mask(sy, DesignConstraints(m_th=m, p_l_min=5e-6,
                                               p_b_min=3e-6), cfg).average_power
              for m in np.linspace(0.02, 0.2, 10)]
    assert all(a >= b for a, b in zip(powers, powers[1:]))


def test_power_non_decreasing_in_bias(cfg, worked_constraints):
    powers = [solve_mask(from_bit_probability(p, 4), worked_constraints,
                         cfg).average_power
              for p in np.linspace(0.5, 0.95, 10)]
    assert all(b >= a - 1e-18 for a, b in zip(powers, powers[1:]))


def test_interior_coefficients_ignore_distance():
    # The stationary ladder depends only on probabilities and m_th, so while
    # the bounds stay slack the coefficients must not move with range.
    sy = SymbolSet.from_probabilities((0.30, 0.20, 0.15, 0.12, 0.09, 0.07,
                                       0.04, 0.03))
    cons = DesignConstraints(m_th=0.05, p_l_min=5e-6, p_b_min=5e-6)
    designs = [solve_mask(sy, cons, LinkConfig(distance=d))
               for d in np.linspace(5.0, 7.5, 11)]
    assert all(d.active_case == "interior" for d in designs)
    first = designs[0].coefficients_by_symbol
    for d in designs[1:]:
        assert d.coefficients_by_symbol == pytest.approx(first, abs=1e-9)


def test_infeasible_order(cfg, worked_constraints):
    with pytest.raises(InfeasibleError):
        solve_mask(from_bit_probability(0.7, 8), worked_constraints, cfg)


def test_starved_tag_propagates():
    cfg = LinkConfig(distance=8.8)
    assert cfg.harvest_efficiency * available_power(cfg) < 5e-6
    with pytest.raises(TagStarvedError):
        solve_mask(from_bit_probability(0.7, 4),
                   DesignConstraints(m_th=0.05, p_l_min=5e-6, p_b_min=3e-6), cfg)


def test_uniform_probabilities_keep_first_row(cfg):
    # All rows tie exactly for uniform symbols; the solver must keep the
    # earliest rather than whichever floats happen to favour.
    cons = DesignConstraints(m_th=0.05, p_l_min=5e-6, p_b_min=3e-6)
    for order in (2, 4, 8):
        design = solve_mask(from_bit_probability(0.5, order), cons, cfg)
        assert design.winning_row == 0
