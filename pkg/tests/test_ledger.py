import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kuragenus.ledger import BoundLedger, f_tree, tree_threshold


def test_bigchain_value():
    assert BoundLedger(1, 1).bigchain() == 300
    assert BoundLedger(2, 3, K=2).bigchain() == 300 * 2 * 4 * 81


def test_twist_value():
    assert BoundLedger(1, 2).twist() == 262


def test_f_tree_values():
    assert f_tree(2, 0) == 2
    assert f_tree(5, 0) == 5
    assert f_tree(2, 1) == 24
    assert f_tree(3, 1) == 155
    assert len(str(f_tree(2, 3))) == 53


def test_tree_threshold_values():
    assert tree_threshold(3, 1, 2) == 27
    assert tree_threshold(2, 0, 7) == 3
    assert tree_threshold(3, 2, 1) == 27
    with pytest.raises(ValueError):
        tree_threshold(1, 1, 1)


def test_tau2_value():
    assert BoundLedger(1, 1).tau2() == 108_360_000


def test_tau_chain_is_monotone():
    led = BoundLedger(1, 1)
    assert led.tau1() >= led.tau2()
    assert led.tau0() == led.tau1()


def test_oversized_bounds_are_refused():
    with pytest.raises(OverflowError):
        BoundLedger(2, 2).tau2()


def test_m3_forms():
    led = BoundLedger(2, 4)
    assert led.m3_binomial() == 2 * 2 * math.comb(4, 3)
    assert led.m3_cubic() == 2 * 2 * 64
    assert led.m3_binomial() <= led.m3_cubic()


def test_cost_of_zero_weighting():
    led = BoundLedger(3, 2)
    assert led.cost(0, 0) == led.cost_max() == 27 * 64


@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 4))
def test_bigchain_covers_its_sum(k, xi, K):
    led = BoundLedger(k, xi, K=K)
    assert led.bigchain_sum() <= led.bigchain()


@given(st.integers(1, 8), st.integers(0, 8))
def test_hitting_set_total_bound(k, xi):
    led = BoundLedger(k, xi)
    assert led.m_total() <= led.m1() + led.m2() + led.m3_cubic()
    if xi >= 2:
        assert led.m_total() <= led.m_total_bound()


@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 20), st.integers(0, 20))
def test_cost_drops_with_each_unit(k, xi, alpha, beta):
    led = BoundLedger(k, xi)
    assert led.cost(alpha + 1, beta) < led.cost(alpha, beta)
    assert led.cost(alpha, beta + 1) == led.cost(alpha, beta) - 1
    assert led.beta_cap() * xi == led.alpha_cap()


def test_cost_can_fall_below_one_for_two_apices():
    # the axioms allow alpha up to k xi^3 - 1, which outweighs k^3 xi^6 once xi >= 2
    led = BoundLedger(1, 2)
    assert led.cost(led.alpha_cap() - 1, 0) < 1
    assert BoundLedger(1, 1).cost(0, 0) == 1


def test_parameters_validated():
    with pytest.raises(ValueError):
        BoundLedger(0, 1)
    with pytest.raises(ValueError):
        BoundLedger(1, -1)


def test_json_summary():
    obj = BoundLedger(1, 2).to_json_obj()
    assert obj["twist"] == 262 and obj["M1"] == 8
