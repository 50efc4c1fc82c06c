"""Sensitivity-floor bounds and the ladder-fits-in-the-box test."""

import numpy as np
import pytest

from asktag import (CoefficientBounds, DesignConstraints, InfeasibleError,
                    LinkConfig, TagStarvedError, available_power, bounds,
                    harvest_limit, is_feasible, max_modulation_threshold,
                    reader_backscatter_power)

# Default link with 5 uW tag floor and 3 uW reader floor, frozen once.
EXPECTED_LOWER = -0.6893050332906702
EXPECTED_UPPER = 0.5418041593029688


def test_default_bounds(cfg, worked_constraints):
    b = bounds(cfg, worked_constraints)
    assert b.lower == pytest.approx(EXPECTED_LOWER, abs=1e-12)
    assert b.upper == pytest.approx(EXPECTED_UPPER, abs=1e-12)
    assert b.span == pytest.approx(EXPECTED_UPPER - EXPECTED_LOWER, abs=1e-12)


def test_relaxed_floors_cover_everything(cfg):
    b = bounds(cfg, DesignConstraints(m_th=0.1, p_l_min=0.0, p_b_min=None))
    assert (b.lower, b.upper) == (-1.0, 1.0)
    # p_b_min = 0 must behave identically to dropping the floor.
    b0 = bounds(cfg, DesignConstraints(m_th=0.1, p_l_min=0.0, p_b_min=0.0))
    assert (b0.lower, b0.upper) == (-1.0, 1.0)


def test_floor_at_full_budget_collapses_bounds(cfg):
    budget = cfg.harvest_efficiency * available_power(cfg)
    b = bounds(cfg, DesignConstraints(m_th=0.1, p_l_min=budget, p_b_min=None))
    assert (b.lower, b.upper) == (0.0, 0.0)


def test_harvest_limit_matches_bounds(cfg, worked_constraints):
    limit = harvest_limit(cfg, worked_constraints.p_l_min)
    b = bounds(cfg, worked_constraints)
    assert b.lower == -limit
    assert limit == pytest.approx(-EXPECTED_LOWER, abs=1e-12)


def test_tag_floor_beyond_budget(cfg):
    budget = cfg.harvest_efficiency * available_power(cfg)
    with pytest.raises(TagStarvedError):
        harvest_limit(cfg, 2.0 * budget)
    with pytest.raises(TagStarvedError):
        bounds(cfg, DesignConstraints(m_th=0.1, p_l_min=2.0 * budget))


def test_reader_floor_can_close_the_interval(cfg):
    # A floor above the full scatter budget pushes the cap below -limit.
    with pytest.raises(InfeasibleError):
        bounds(cfg, DesignConstraints(m_th=0.1, p_l_min=5e-6, p_b_min=5e-5))


def test_reader_floor_tightens_only_the_upper_bound(cfg):
    open_b = bounds(cfg, DesignConstraints(m_th=0.1, p_l_min=5e-6, p_b_min=None))
    tight = bounds(cfg, DesignConstraints(m_th=0.1, p_l_min=5e-6, p_b_min=3e-6))
    assert tight.lower == open_b.lower
    assert tight.upper < open_b.upper


def test_reader_backscatter_power_form(cfg):
    base = cfg.backscatter_efficiency * available_power(cfg) * cfg.reader_gain
    assert reader_backscatter_power(0.0, cfg) == pytest.approx(base, rel=1e-12)
    assert reader_backscatter_power(1.0, cfg) == 0.0
    assert reader_backscatter_power(-1.0, cfg) == pytest.approx(4.0 * base, rel=1e-12)


def test_upper_bound_is_where_reader_floor_bites(cfg, worked_constraints):
    b = bounds(cfg, worked_constraints)
    at_cap = reader_backscatter_power(b.upper, cfg)
    assert at_cap == pytest.approx(worked_constraints.p_b_min, rel=1e-9)
    assert reader_backscatter_power(b.upper + 1e-3, cfg) < worked_constraints.p_b_min


def test_bounds_shrink_with_distance():
    spans = []
    for d in (5.0, 6.0, 7.0, 8.0):
        b = bounds(LinkConfig(distance=d),
                   DesignConstraints(m_th=0.1, p_l_min=5e-6, p_b_min=3e-6))
        spans.append(b.span)
    assert all(a > b for a, b in zip(spans, spans[1:]))


@pytest.mark.parametrize("order,lo,hi,m_th,expected", [
    (2, -1.0, 1.0, 0.5, True),
    (3, -0.5, 0.5, 0.25, True),     # exact equality counts as feasible
    (4, -0.5, 0.5, 0.5, False),
    (4, EXPECTED_LOWER, EXPECTED_UPPER, 0.15, True),
    (8, EXPECTED_LOWER, EXPECTED_UPPER, 0.15, False),
])
def test_is_feasible_examples(order, lo, hi, m_th, expected):
    assert is_feasible(order, CoefficientBounds(lo, hi), m_th) is expected


def test_max_threshold_examples():
    assert max_modulation_threshold(2, CoefficientBounds(-1.0, 1.0)) == 1.0
    assert max_modulation_threshold(3, CoefficientBounds(-0.5, 0.5)) == 0.25
    worked = max_modulation_threshold(4, CoefficientBounds(EXPECTED_LOWER,
                                                           EXPECTED_UPPER))
    assert worked == pytest.approx(0.2051848654322732, abs=1e-9)


def test_max_threshold_is_always_feasible():
    # The returned cap must itself pass the feasibility test, bit-for-bit.
    rng = np.random.default_rng(5)
    for _ in range(2000):
        b = CoefficientBounds(float(rng.uniform(-1.0, 0.0)),
                              float(rng.uniform(0.0, 1.0)))
        for order in (2, 4, 8, 16):
            cap = max_modulation_threshold(order, b)
            if cap > 0.0:
                assert is_feasible(order, b, cap)
                assert not is_feasible(order, b, cap * (1.0 + 1e-9))


def test_infeasibility_is_monotone_in_order(cfg, worked_constraints):
    b = bounds(cfg, worked_constraints)
    verdicts = [is_feasible(order, b, worked_constraints.m_th)
                for order in (2, 4, 8, 16)]
    # Once an order fails, every larger order fails too.
    assert verdicts == sorted(verdicts, reverse=True)
    assert verdicts[0] and not verdicts[-1]
