import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eitengine import derive_rates, reference_params
from eitengine.errors import DomainError, ThresholdError
from eitengine.params import CONSTANTS, AtomicSystem, ReservoirConfig
from eitengine.thermo import (
    Threshold,
    b_t_max,
    efficiencies,
    efficiency_ratio,
    entropy_delta,
    lwi_threshold,
    power_budget,
    reservoir_range,
    second_law_bound,
    thermo_report,
)

W13, W12 = 4e15, 1e15
W23 = W13 - W12


def test_bound_equal_reservoirs():
    assert second_law_bound(5778.0, 5778.0, W13, W23) == pytest.approx(23112.0, rel=1e-14)


def test_bound_without_two_photon_leverage():
    assert second_law_bound(5778.0, 3000.0, W13, 0.0) == 5778.0
    assert second_law_bound(5778.0, 3000.0, W13, 1e-3) == pytest.approx(5778.0, rel=1e-12)


@pytest.mark.parametrize("t23", [0.75 * 5778.0, 3000.0])
def test_bound_threshold_error(t23):
    with pytest.raises(ThresholdError) as info:
        second_law_bound(5778.0, t23, W13, W23)
    assert info.value.margin <= 0


def test_entropy_zero_at_bound():
    tb = second_law_bound(5778.0, 5778.0, W13, W23)
    assert abs(entropy_delta(5778.0, 5778.0, W13, W23, tb)) <= 1e-25


def test_entropy_signs():
    assert entropy_delta(5778.0, 5778.0, W13, W23, 5778.0) == pytest.approx(
        CONSTANTS.hbar * W23 / 5778.0, rel=1e-14)
    assert entropy_delta(5778.0, 5778.0, W13, W23, 30000.0) < 0
    with pytest.raises(DomainError):
        entropy_delta(5778.0, 5778.0, W13, W23, 0.0)


@settings(max_examples=300, deadline=None)
@given(t13=st.floats(10.0, 1e5), q=st.floats(0.01, 0.99), f=st.floats(0.05, 0.95))
def test_entropy_vanishes_at_bound_everywhere(t13, q, f):
    w23 = W13 * (1 - f)
    t23 = (w23 / W13) * t13 / q
    tb = second_law_bound(t13, t23, W13, w23)
    scale = CONSTANTS.hbar * W13 / min(t13, t23, tb)
    assert abs(entropy_delta(t13, t23, W13, w23, tb)) <= max(1e-25, 1e-14 * scale)


def test_b_t_max_ref(ref_rates):
    b, t = b_t_max(ref_rates, reference_params().system)
    assert b == pytest.approx(0.3636, abs=5e-4)
    assert b / ref_rates.nbar13 == pytest.approx(71.6, abs=0.05)
    assert t == pytest.approx(23112.0, rel=1e-12)


def test_b_t_max_limits():
    sys_ = reference_params().system
    hot = derive_rates(reference_params().with_reservoirs(5778.0, 1e12))
    assert b_t_max(hot, sys_)[0] == pytest.approx(hot.nbar13, rel=1e-6)
    near = derive_rates(reference_params().with_reservoirs(5778.0, 0.75 * 5778.0 * (1 + 1e-6)))
    assert b_t_max(near, sys_)[0] > 1e4 * near.nbar13
    at = derive_rates(reference_params().with_reservoirs(5778.0, 3000.0))
    with pytest.raises(ThresholdError):
        b_t_max(at, sys_)


def test_lwi_classes():
    p = reference_params()
    below = lwi_threshold(derive_rates(p))
    assert below.status is Threshold.BELOW
    assert below.margin == pytest.approx(0.0193 - 0.0051, abs=2e-4)
    assert lwi_threshold(derive_rates(p.with_reservoirs(5778.0, 0.75 * 5778.0))).status is Threshold.AT
    assert lwi_threshold(derive_rates(p.with_reservoirs(5778.0, 4000.0))).status is Threshold.ABOVE


@settings(max_examples=500, deadline=None)
@given(t13=st.floats(50.0, 1e5), q=st.floats(0.2, 5.0), f=st.floats(0.05, 0.95))
def test_threshold_forms_agree(t13, q, f):
    sys_ = AtomicSystem(1e7, 6e7, W13, W13 * f)
    t23 = (sys_.omega23 / W13) * t13 / q
    rates = derive_rates(reference_params().with_system(omega12=W13 * f).with_reservoirs(t13, t23))
    status = lwi_threshold(rates).status
    den = t23 * W13 - t13 * sys_.omega23
    if status is Threshold.BELOW:
        assert den > 0
    elif status is Threshold.ABOVE:
        assert den < 0
    else:
        assert abs(den) <= 1e-11 * t23 * W13


def test_efficiencies_ref_frequencies():
    e = efficiencies(reference_params().system, ReservoirConfig(5778.0, 5778.0))
    assert e.eta_carnot == 0.25
    assert e.eta_eit == pytest.approx(4 / 7, rel=1e-15)
    assert e.eta_carnot_temperature == 0.0
    assert e.eta_eit_temperature == 0.5
    assert math.isnan(e.ratio)


def test_efficiencies_600_300():
    e = efficiencies(reference_params().system, ReservoirConfig(600.0, 300.0))
    assert e.eta_eit_temperature == pytest.approx(2 / 3, rel=1e-15)
    assert e.ratio == pytest.approx(4 / 3, rel=1e-15)
    assert efficiency_ratio(600.0, 300.0) == pytest.approx(4 / 3, rel=1e-15)


def test_efficiency_ratio_limits_and_errors():
    assert efficiency_ratio(600.0, 1e-9) == pytest.approx(1.0, rel=1e-15)
    for t13, t23 in [(300.0, 300.0), (300.0, 600.0), (600.0, 0.0)]:
        with pytest.raises(DomainError):
            efficiency_ratio(t13, t23)


def test_efficiency_ratio_exceeds_one_seeded():
    rng = np.random.default_rng(13)
    t13 = 10 ** rng.uniform(0, 5, 1000)
    t23 = t13 * rng.uniform(1e-6, 1 - 1e-9, 1000)
    assert all(efficiency_ratio(a, b) > 1 for a, b in zip(t13, t23))


def test_power_budget():
    pb = power_budget(reference_params().system)
    assert (pb.coupling, pb.thermal) == (0.75, 0.25)
    assert power_budget(AtomicSystem(1e7, 6e7, W13, W13)).coupling == 0.0
    assert power_budget(AtomicSystem(1e7, 6e7, W13, 1e-3)).coupling == pytest.approx(1.0, abs=1e-15)


def test_reservoir_range():
    lo, hi = reservoir_range(reference_params().system, 5778.0)
    assert lo == pytest.approx(4333.5, rel=1e-15) and hi == math.inf
    assert reservoir_range(AtomicSystem(1e7, 6e7, W13, 1e-30), 5778.0)[0] == pytest.approx(5778.0, rel=1e-15)
    assert reservoir_range(reference_params().system, 1e-300)[0] == pytest.approx(0.0, abs=1e-299)
    with pytest.raises(DomainError):
        reservoir_range(reference_params().system, 0.0)


def test_report_below_threshold():
    rep = thermo_report(reference_params())
    assert rep.threshold is Threshold.BELOW
    assert rep.b_max > 0 and rep.t_max <= rep.t_bound * (1 + 1e-12)
    assert 0 < rep.eta_carnot < 1 and 0 < rep.eta_eit < 1
    # the beam runs cooler than the bound, so entropy is produced
    assert rep.delta_s_per_photon > 0
    assert rep.t23_lower_bound == pytest.approx(4333.5)


def test_report_above_threshold():
    rep = thermo_report(reference_params().with_reservoirs(5778.0, 3000.0))
    assert rep.threshold is Threshold.ABOVE
    assert rep.t_bound == rep.b_max == rep.t_max == math.inf
