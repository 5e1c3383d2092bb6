import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eitengine import CONSTANTS, derive_rates, reference_params, occupation_number
from eitengine.errors import DomainError
from eitengine.rates import occupation_from_exponent, rates_from_occupations


def planck_mp(omega, t):
    """High-precision Planck occupation, independent of the float code path."""
    mpmath.mp.dps = 40
    x = mpmath.mpf(CONSTANTS.hbar) * omega / (mpmath.mpf(CONSTANTS.k_b) * t)
    return float(1 / mpmath.expm1(x))


@pytest.mark.parametrize("omega,t,expected", [
    (4e15, 5778.0, 5.0785e-3),
    (3e15, 5778.0, 1.9318e-2),
])
def test_occupation_reference_values(omega, t, expected):
    n = occupation_number(omega, t)
    assert n == pytest.approx(planck_mp(omega, t), rel=1e-14)
    assert n == pytest.approx(expected, rel=1e-4)


def test_occupation_exactly_one_at_ln2():
    assert occupation_from_exponent(math.log(2.0)) == 1.0


@pytest.mark.parametrize("x", [1e-8, 1e-3, 0.5, 1.0, 1.0000001, 5.0, 40.0, 300.0, 700.0])
def test_occupation_from_exponent_against_mpmath(x):
    mpmath.mp.dps = 40
    assert occupation_from_exponent(x) == pytest.approx(float(1 / mpmath.expm1(x)), rel=1e-14)


def test_occupation_underflows_to_cold():
    assert occupation_from_exponent(800.0) == 0.0
    assert occupation_from_exponent(1e6) == 0.0


@pytest.mark.parametrize("omega,t", [(0.0, 300.0), (-1.0, 300.0), (1e15, 0.0), (1e15, -5.0)])
def test_occupation_domain(omega, t):
    with pytest.raises(DomainError):
        occupation_number(omega, t)


def test_ref_rates(ref_rates):
    r = ref_rates
    assert r.r13 == pytest.approx(5.0785e4, rel=1e-4)
    assert r.r23 == pytest.approx(1.15908e6, rel=1e-4)
    assert r.gamma21 == pytest.approx(1.20986e6, rel=1e-4)
    assert r.gamma31 == pytest.approx(7.12606e7, rel=1e-5)
    assert r.gamma32 == pytest.approx(7.23689e7, rel=1e-5)


def test_cold_reservoirs_leave_lifetime_widths(ref):
    r = derive_rates(ref.with_reservoirs(1.0, 1.0))
    base = ref.system.gamma31 + ref.system.gamma32
    assert r.r13 == 0.0 and r.r23 == 0.0 and r.gamma21 == 0.0
    assert r.gamma31 == base and r.gamma32 == base


def test_relabeling_symmetry():
    r = rates_from_occupations(0.37, 0.37, 2.5e7, 2.5e7)
    assert r.r13 == r.r23
    assert r.gamma31 == r.gamma32


def test_derive_rates_rejects_invalid(ref):
    with pytest.raises(ValueError):
        derive_rates(ref.with_reservoirs(-1.0, 10.0))


temps = st.floats(min_value=50.0, max_value=1e5)
omegas = st.floats(min_value=1e13, max_value=1e16)


@settings(max_examples=300, deadline=None)
@given(omega=omegas, t=temps)
def test_detailed_balance_form(omega, t):
    n = occupation_number(omega, t)
    x = CONSTANTS.hbar * omega / (CONSTANTS.k_b * t)
    if n == 0.0:
        return
    assert n / (n + 1.0) == pytest.approx(math.exp(-x), rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(t13=temps, t23=temps, g31=st.floats(1e5, 1e9), g32=st.floats(1e5, 1e9))
def test_rates_identities_and_monotonicity(t13, t23, g31, g32):
    p = reference_params().with_reservoirs(t13, t23).with_system(gamma31=g31, gamma32=g32)
    r = derive_rates(p)
    assert r.gamma21 == r.r13 + r.r23
    assert r.gamma31 >= g31 + g32 and r.gamma32 >= g31 + g32
    bumped = [derive_rates(p.with_reservoirs(t13 * 1.01, t23)),
              derive_rates(p.with_reservoirs(t13, t23 * 1.01))]
    for b in bumped:
        for name in ("r13", "r23", "gamma21", "gamma31", "gamma32"):
            assert getattr(b, name) >= getattr(r, name)


def test_occupation_monotone_sample():
    t = np.geomspace(100, 1e5, 50)
    n = occupation_number(3e15, t)
    assert np.all(np.diff(n) > 0)
    w = np.geomspace(1e13, 1e16, 50)
    n = occupation_number(w, 5778.0)
    assert np.all(np.diff(n) < 0)
