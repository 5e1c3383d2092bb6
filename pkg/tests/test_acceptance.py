"""Acceptance gate: one test per criterion, each at its stated tolerance.

Every test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary, or directly with ``python3 tests/test_acceptance.py``.
"""
import math

import numpy as np
import pytest

from eitengine import (
    DriveConfig,
    b_infinite_coupling,
    b_line_center,
    brightness_to_temperature,
    derive_rates,
    reference_params,
    lambda_ratio,
    second_law_bound,
    spectrum_grid,
    tail_ratio,
)
from eitengine.commands import RunConfig, cmd_sweep_rabi, cmd_verify
from eitengine.thermo import efficiencies, efficiency_ratio
from eitengine import verify

RESULTS = []


def record(name, ok, detail):
    RESULTS.append(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, detail


def _rel(a, b):
    return abs(a - b) / abs(b)


def test_c01_lambda_reproduction():
    p = reference_params()
    lam = lambda_ratio(derive_rates(p), p.drive, p.system)
    record("C1 lambda in [0.0181, 0.0191]", 0.0181 <= lam <= 0.0191, f"lambda={lam:.6g}")


def test_c02_peak_brightness():
    p = reference_params()
    r = derive_rates(p)
    b7 = b_line_center(r, p.drive, p.system)
    b46 = spectrum_grid(p, 0.0).b[0]
    ratio = b7 / r.nbar13
    ok = 64.4 <= ratio <= 65.4 and _rel(b46, b7) <= 1e-9
    record("C2 B(0)/nbar13 in [64.4, 65.4]", ok, f"ratio={ratio:.6g} routes_rel_dev={_rel(b46, b7):.2e}")


def test_c03_tail_ratio():
    tr = tail_ratio(reference_params(), depth=10.0, tail_multiple=10.0, depth_convention="eit")
    ok = 443 <= tr.ratio <= 665 and tr.symmetry_deviation <= 1e-10
    record("C3 tail ratio in [443, 665], symmetric", ok,
           f"ratio={tr.ratio:.6g} symmetry_rel_dev={tr.symmetry_deviation:.2e}")


def test_c04_second_law_bound():
    p = reference_params()
    s = p.system
    tb = second_law_bound(5778.0, 5778.0, s.omega13, s.omega23)
    record("C4 T_B = 23112 K", tb == pytest.approx(23112.0, rel=1e-15, abs=0), f"T_B={tb!r}")


def test_c05_identity_suite():
    draws = verify.random_below_threshold(np.random.default_rng(verify.DEFAULT_SEED), 10_000)
    checks = {c.name: c for c in verify.check_identities(draws)}
    names = ["t_of_b_max_vs_second_law_bound", "infinite_coupling_gamma31_zero_vs_b_max", "gamma21_identity"]
    ok = all(checks[n].passed and checks[n].tol == 1e-12 for n in names)
    detail = " ".join(f"{n}={checks[n].max_dev:.2e}" for n in names)
    record("C5 exact identities over 1e4 draws <= 1e-12", ok, detail)


def test_c06_detailed_balance():
    p = reference_params().with_drive(0.0)
    r = derive_rates(p)
    rng = np.random.default_rng(6)
    det = np.r_[0.0, rng.normal(size=500) * r.gamma31 * 10 ** rng.uniform(-3, 3, 500)]
    dev = float(np.max(np.abs(spectrum_grid(p, det).b / r.nbar13 - 1)))
    record("C6 B_black = nbar13 at Omega_c = 0", dev <= 1e-10, f"max_rel_dev={dev:.2e} n={det.size}")


def test_c07_strong_coupling():
    p = reference_params()
    r = derive_rates(p)
    b7 = b_line_center(r, DriveConfig(1e5 * r.gamma31), p.system)
    b8 = b_infinite_coupling(r, p.system)
    record("C7 line center at 1e5 gamma31 vs infinite-coupling limit <= 1e-4", _rel(b7, b8) <= 1e-4, f"rel_dev={_rel(b7, b8):.2e}")


def test_c08_oracle_equivalences():
    p = reference_params()
    rng = np.random.default_rng(verify.DEFAULT_SEED)
    checks = [
        verify.check_susceptibility(rng, n=1000),
        verify.check_liouvillian_limits(p, verify.random_below_threshold(rng, 50)),
        verify.check_liouvillian_intermediate(p),
        verify.check_integrator(rng, n=200),
    ]
    expected_tol = [1e-10, 1e-10, 5e-3, 1e-8]
    ok = all(c.passed and c.tol == t for c, t in zip(checks, expected_tol))
    record("C8 oracle equivalences", ok, " ".join(f"{c.name}={c.max_dev:.2e}" for c in checks))


@pytest.fixture(scope="module")
def sweep():
    table = cmd_sweep_rabi(RunConfig())
    return table, np.array(table.column("b0")), derive_rates(reference_params())


def test_c09a_sweep_non_decreasing(sweep):
    _, b, _ = sweep
    ok = bool(np.all(np.diff(b) >= 0))
    record("C9a B(0) non-decreasing on [1e-2, 1e3]", ok, f"min_step={np.min(np.diff(b)):.3e}")


def test_c09b_sweep_starts_at_nbar13(sweep):
    _, b, r = sweep
    dev = _rel(b[0], r.nbar13)
    record("C9b B(0) at Omega_c/gamma31=1e-2 within 1e-6 of nbar13", dev <= 1e-6,
           f"rel_dev={dev:.4e} B/nbar13={b[0] / r.nbar13:.6g}")


def test_c09c_sweep_ends_at_asymptote(sweep):
    _, b, r = sweep
    b8 = b_infinite_coupling(r, reference_params().system)
    dev = _rel(b[-1], b8)
    record("C9c B(0) at 1e3 within 1e-3 of asymptote", dev <= 1e-3, f"rel_dev={dev:.2e}")


def test_c09d_sweep_below_bound(sweep):
    table, b, _ = sweep
    s, res = reference_params().system, reference_params().reservoirs
    tb = second_law_bound(res.t13, res.t23, s.omega13, s.omega23)
    t = np.array([brightness_to_temperature(x, s.omega13) for x in b])
    record("C9d T(B(0)) < T_B everywhere", bool(np.all(t < tb)), f"max T/T_B={np.max(t) / tb:.6f}")


def test_c10_efficiency_claims():
    rng = np.random.default_rng(10)
    t13 = 10 ** rng.uniform(-1, 6, 1000)
    # T23/T13 >= 1e-6 keeps the excess over 1 above double rounding
    t23 = t13 * rng.uniform(1e-6, 1, 1000)
    ratios = np.array([efficiency_ratio(a, c) for a, c in zip(t13, t23)])
    e = efficiencies(reference_params().system, reference_params().reservoirs)
    ok = bool(np.all(ratios > 1)) and e.eta_carnot == 0.25 and abs(e.eta_eit - 4 / 7) <= 1e-15
    record("C10 ratio > 1 over 1e3 draws, eta 0.25 and 4/7", ok,
           f"min_ratio-1={ratios.min() - 1:.3e} eta_carnot={e.eta_carnot!r} eta_eit={e.eta_eit!r}")


def test_c11_determinism():
    a = cmd_verify(RunConfig(seed=11)).to_text()
    b = cmd_verify(RunConfig(seed=11)).to_text()
    record("C11 verify byte-identical for a fixed seed", a == b and "result: PASS" in a,
           f"bytes={len(a.encode())} identical={a == b}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
