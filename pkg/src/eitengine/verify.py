"""Cross-checks of every closed form against an independent route.

Each check returns a :class:`CheckResult`; :func:`run_checks` bundles them
into a report whose text rendering is byte-stable for a given seed.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .brightness import b_infinite_coupling, b_line_center, spectrum_grid
from .params import CONSTANTS, AtomicSystem, DriveConfig, EngineParams, ReservoirConfig
from .rates import DerivedRates, derive_rates
from .spectra import cross_sections, susceptibility_oracle
from .steady import lambda_ratio, liouvillian_steady_state
from .thermo import b_t_max, second_law_bound
from .transfer import closed_form
from . import kernels

DEFAULT_SEED = 20240101

TOL_LIOUVILLE_LIMIT = 1e-10
TOL_LIOUVILLE_INTERMEDIATE = 5e-3
TOL_SUSCEPTIBILITY = 1e-10
TOL_INTEGRATOR = 1e-8
TOL_IDENTITY = 1e-12
TOL_LINE_CENTER = 1e-9
TOL_DETAILED_BALANCE = 1e-10


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_dev: float
    tol: float
    n: int
    worst: str = ""


@dataclass
class VerifyReport:
    seed: int
    params: EngineParams
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_text(self) -> str:
        s, r, d = self.params.system, self.params.reservoirs, self.params.drive
        lines = [
            "eitengine verify",
            f"seed: {self.seed}",
            f"constants: {CONSTANTS.version}",
            f"params: gamma31={s.gamma31!r} gamma32={s.gamma32!r} omega13={s.omega13!r} "
            f"omega12={s.omega12!r} t13={r.t13!r} t23={r.t23!r} omega_c={d.omega_c!r}",
        ]
        for c in self.checks:
            tag = "PASS" if c.passed else "FAIL"
            line = f"{tag} {c.name}: max_rel_dev={c.max_dev:.6e} tol={c.tol:.1e} n={c.n}"
            if not c.passed and c.worst:
                line += f" worst=[{c.worst}]"
            lines.append(line)
        n_ok = sum(c.passed for c in self.checks)
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'} ({n_ok}/{len(self.checks)})")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "constants": CONSTANTS.version,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "max_rel_dev": c.max_dev,
                 "tol": c.tol, "n": c.n, "worst": c.worst}
                for c in self.checks
            ],
        }


def _rel(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.abs(a - b) / np.maximum(np.abs(b), np.finfo(float).tiny)


def _result(name, devs, tol, labels=None) -> CheckResult:
    devs = np.atleast_1d(np.asarray(devs, dtype=float))
    i = int(np.nanargmax(np.where(np.isnan(devs), np.inf, devs)))
    worst = float(devs[i]) if np.isfinite(devs[i]) else float("inf")
    ok = bool(np.all(devs <= tol))
    return CheckResult(name, ok, worst, tol, devs.size, labels[i] if labels else "")


def random_below_threshold(rng: np.random.Generator, n: int) -> list[EngineParams]:
    """Random parameter sets strictly below the LWI threshold.

    Planck exponents hbar*omega/(k T) on 1-3 are log-uniform in [1e-2, 30];
    the 2-3 exponent is a fraction q in [0.01, 0.999] of it, which keeps
    n23 > n13 with a relative margin of at least 1e-3.
    """
    out = []
    hk = CONSTANTS.hbar / CONSTANTS.k_b
    for _ in range(n):
        g31 = 10 ** rng.uniform(5, 9)
        g32 = g31 * 10 ** rng.uniform(-1, 2)
        w13 = 10 ** rng.uniform(14, 16)
        w12 = w13 * rng.uniform(0.05, 0.95)
        x13 = 10 ** rng.uniform(-2, np.log10(30))
        q = rng.uniform(0.01, 0.999)
        t13 = hk * w13 / x13
        t23 = (w13 - w12) / w13 * t13 / q
        oc = (g31 + g32) * 10 ** rng.uniform(-3, 4)
        out.append(EngineParams(AtomicSystem(g31, g32, w13, w12), ReservoirConfig(t13, t23), DriveConfig(oc)))
    return out


def _label(p: EngineParams) -> str:
    s, r = p.system, p.reservoirs
    return (f"gamma31={s.gamma31:.6e} gamma32={s.gamma32:.6e} omega13={s.omega13:.6e} "
            f"omega12={s.omega12:.6e} t13={r.t13:.6e} t23={r.t23:.6e} omega_c={p.drive.omega_c:.6e}")


def check_liouvillian_limits(params: EngineParams, draws: list[EngineParams]) -> CheckResult:
    devs, labels = [], []
    for p in [params] + draws:
        rates = derive_rates(p)
        for oc in (0.0, 1e12):
            drive = DriveConfig(oc)
            oracle = liouvillian_steady_state(rates, drive, p.system).lam
            devs.append(float(_rel(oracle, lambda_ratio(rates, drive, p.system))))
            labels.append(f"omega_c={oc:.1e} {_label(p)}")
    return _result("liouvillian_vs_lambda_limits", devs, TOL_LIOUVILLE_LIMIT, labels)


def check_liouvillian_intermediate(params: EngineParams) -> CheckResult:
    rates = derive_rates(params)
    oracle = liouvillian_steady_state(rates, params.drive, params.system).lam
    dev = _rel(oracle, lambda_ratio(rates, params.drive, params.system))
    return _result("liouvillian_vs_lambda_configured", dev, TOL_LIOUVILLE_INTERMEDIATE, [_label(params)])


def check_susceptibility(rng: np.random.Generator, n: int = 1000) -> CheckResult:
    g21 = 10 ** rng.uniform(2, 8, n)
    g31 = 10 ** rng.uniform(5, 9, n)
    om = 10 ** rng.uniform(3, 10, n)
    det = rng.normal(size=n) * g31 * 10 ** rng.uniform(-2, 2, n)
    devs, labels = [], []
    for i in range(n):
        # only the dephasing rates enter sigma_abs
        rates = DerivedRates(0.0, 0.0, 0.0, 0.0, g21[i], g31[i], g31[i])
        drive = DriveConfig(om[i])
        sys_ = AtomicSystem(1.0, 1.0, 2.0, 1.0)
        eq = cross_sections(det[i], rates, drive, sys_).sigma_abs_norm
        devs.append(float(_rel(eq, susceptibility_oracle(det[i], rates, drive))))
        labels.append(f"delta={det[i]:.6e} gamma21={g21[i]:.6e} gamma31={g31[i]:.6e} omega_c={om[i]:.6e}")
    return _result("susceptibility_vs_cross_section", devs, TOL_SUSCEPTIBILITY, labels)


def check_integrator(rng: np.random.Generator, n: int = 200) -> CheckResult:
    alpha = np.concatenate([
        rng.uniform(-3.0, 30.0, n - n // 4),
        rng.uniform(-1e-6, 1e-6, n // 4),
    ])
    alpha[-1] = 0.0
    source = 10 ** rng.uniform(-3, 3, alpha.size)
    z = np.linspace(0.0, 1.0, 21)
    b, _ = kernels.integrate_linear(alpha, source, z, rtol=1e-9)
    exact = closed_form(alpha[:, None], source[:, None], z[None, :])
    devs = _rel(b[:, 1:], exact[:, 1:]).max(axis=1)
    labels = [f"alpha={a:.6e} source={s:.6e}" for a, s in zip(alpha, source)]
    return _result("integrator_vs_closed_form", devs, TOL_INTEGRATOR, labels)


def check_identities(draws: list[EngineParams]) -> list[CheckResult]:
    t_devs, g_devs, e_devs, c_devs, labels = [], [], [], [], []
    for p in draws:
        s, r = p.system, p.reservoirs
        rates = derive_rates(p)
        b_max, t_max = b_t_max(rates, s)
        t_devs.append(float(_rel(t_max, second_law_bound(r.t13, r.t23, s.omega13, s.omega23))))
        no31 = AtomicSystem(0.0, s.gamma32, s.omega13, s.omega12)
        e_devs.append(float(_rel(b_infinite_coupling(rates, no31), b_max)))
        g_devs.append(float(_rel(rates.gamma21, rates.r13 + rates.r23)))
        b0 = b_line_center(rates, p.drive, s)
        c_devs.append(float(_rel(b0, spectrum_grid(p, 0.0).b[0])))
        labels.append(_label(p))
    return [
        _result("t_of_b_max_vs_second_law_bound", t_devs, TOL_IDENTITY, labels),
        _result("infinite_coupling_gamma31_zero_vs_b_max", e_devs, TOL_IDENTITY, labels),
        _result("gamma21_identity", g_devs, TOL_IDENTITY, labels),
        _result("line_center_vs_saturated_spectrum", c_devs, TOL_LINE_CENTER, labels),
    ]


def check_detailed_balance(params: EngineParams, rng: np.random.Generator, n: int = 200) -> CheckResult:
    p = params.with_drive(0.0)
    rates = derive_rates(p)
    det = rng.normal(size=n) * rates.gamma31 * 10 ** rng.uniform(-2, 2, n)
    det[0] = 0.0
    grid = spectrum_grid(p, det)
    return _result("detailed_balance_no_coupling", _rel(grid.b, rates.nbar13), TOL_DETAILED_BALANCE,
                   [f"delta={d:.6e}" for d in det])


def run_checks(params: EngineParams, seed: int = DEFAULT_SEED, n_identity: int = 10_000,
               n_liouville: int = 200) -> VerifyReport:
    rng = np.random.default_rng(seed)
    report = VerifyReport(seed=seed, params=params)
    liouville_draws = random_below_threshold(rng, n_liouville)
    report.checks.append(check_liouvillian_limits(params, liouville_draws))
    report.checks.append(check_liouvillian_intermediate(params))
    report.checks.append(check_susceptibility(rng))
    report.checks.append(check_integrator(rng))
    report.checks.extend(check_identities(random_below_threshold(rng, n_identity)))
    report.checks.append(check_detailed_balance(params, rng))
    return report
