"""Second-law accounting for the EIT engine: brightness bounds, threshold, efficiencies."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .brightness import b_line_center, brightness_to_temperature
from .errors import DomainError, ThresholdError
from .params import CONSTANTS, AtomicSystem, EngineParams, ReservoirConfig
from .rates import DerivedRates, derive_rates

# Relative tolerance on n23 - n13 for the "at threshold" class.
THRESHOLD_RTOL = 1e-12


class Threshold(str, enum.Enum):
    BELOW = "below"
    AT = "at"
    ABOVE = "above"


@dataclass(frozen=True)
class ThresholdStatus:
    status: Threshold
    margin: float  # n23 - n13


@dataclass(frozen=True)
class Efficiencies:
    eta_carnot: float  # omega12 / omega13
    eta_carnot_temperature: float  # 1 - T23/T13
    eta_eit: float  # omega13 / (omega13 + omega23)
    eta_eit_temperature: float  # T13 / (T13 + T23)
    ratio: float  # T13^2 / (T13^2 - T23^2); nan unless T13 > T23


@dataclass(frozen=True)
class PowerBudget:
    coupling: float
    thermal: float


@dataclass(frozen=True)
class ThermoReport:
    delta_s_per_photon: float
    t_bound: float
    b_max: float
    t_max: float
    threshold: Threshold
    threshold_margin: float
    eta_carnot: float
    eta_carnot_temperature: float
    eta_eit: float
    eta_eit_temperature: float
    eta_ratio: float
    coupling_power_fraction: float
    thermal_power_fraction: float
    t23_lower_bound: float


def entropy_delta(t13: float, t23: float, omega13: float, omega23: float, t_b: float) -> float:
    """Entropy change (J/K) per generated photon.

    One photon leaves the 1-3 reservoir, one enters the 2-3 reservoir and one
    leaves in the output beam at temperature ``t_b``; the coupling laser adds
    no entropy.
    """
    if not (t13 > 0 and t23 > 0 and t_b > 0):
        raise DomainError("temperatures must be > 0")
    hb = CONSTANTS.hbar
    return -hb * omega13 / t13 + hb * omega23 / t23 + hb * omega13 / t_b


def second_law_bound(t13: float, t23: float, omega13: float, omega23: float) -> float:
    """Highest output-beam temperature with non-negative entropy production."""
    den = t23 * omega13 - t13 * omega23
    if not den > 0:
        raise ThresholdError(
            "second-law bound is unbounded: reservoirs at or above the LWI threshold",
            condition="T23*omega13 - T13*omega23 <= 0",
            margin=den,
        )
    return t13 * t23 * omega13 / den


def b_t_max(rates: DerivedRates, system: AtomicSystem) -> tuple[float, float]:
    """Peak brightness for Gamma31 << Gamma32 and its temperature."""
    n13, n23 = rates.nbar13, rates.nbar23
    if not n23 > n13:
        raise ThresholdError(
            "B_max diverges: n23 <= n13", condition="n23 - n13 <= 0", margin=n23 - n13
        )
    b = (n23 + 1.0) / (n23 - n13) * n13
    return b, brightness_to_temperature(b, system.omega13)


def lwi_threshold(rates: DerivedRates) -> ThresholdStatus:
    margin = rates.nbar23 - rates.nbar13
    scale = max(abs(rates.nbar23), abs(rates.nbar13))
    if abs(margin) <= THRESHOLD_RTOL * scale:
        status = Threshold.AT
    elif margin > 0:
        status = Threshold.BELOW
    else:
        status = Threshold.ABOVE
    return ThresholdStatus(status, margin)


def efficiencies(system: AtomicSystem, reservoirs: ReservoirConfig) -> Efficiencies:
    """Carnot and EIT-engine efficiencies in frequency and temperature forms.

    The two forms of each coincide only on the inversion condition
    omega23/T23 = omega13/T13; both are reported. ``ratio`` is nan when
    T13 <= T23; :func:`efficiency_ratio` raises instead.
    """
    w13, w23 = system.omega13, system.omega23
    t13, t23 = reservoirs.t13, reservoirs.t23
    ratio = efficiency_ratio(t13, t23) if t13 > t23 else math.nan
    return Efficiencies(
        eta_carnot=system.omega12 / w13,
        eta_carnot_temperature=1.0 - t23 / t13,
        eta_eit=w13 / (w13 + w23),
        eta_eit_temperature=t13 / (t13 + t23),
        ratio=ratio,
    )


def efficiency_ratio(t13: float, t23: float) -> float:
    """EIT-engine to Carnot efficiency at threshold; needs T13 > T23 > 0."""
    if not (t13 > t23 > 0):
        raise DomainError("efficiency ratio needs T13 > T23 > 0")
    return t13 * t13 / ((t13 - t23) * (t13 + t23))


def power_budget(system: AtomicSystem) -> PowerBudget:
    """Shares of the output power supplied by the laser and by the reservoirs."""
    coupling = system.omega23 / system.omega13
    return PowerBudget(coupling=coupling, thermal=1.0 - coupling)


def reservoir_range(system: AtomicSystem, t13: float) -> tuple[float, float]:
    """Open interval of T23 values below the LWI threshold for a given T13."""
    if not t13 > 0:
        raise DomainError("t13 must be > 0")
    return system.omega23 / system.omega13 * t13, math.inf


def thermo_report(params: EngineParams) -> ThermoReport:
    """Every thermodynamic figure of merit; bounds are inf at or above threshold.

    ``delta_s_per_photon`` uses the brightness temperature of the line-center
    output beam, so it is the actual entropy production per photon.
    """
    s, r = params.system, params.reservoirs
    rates = derive_rates(params)
    status = lwi_threshold(rates)
    if status.status is Threshold.BELOW:
        t_bound = second_law_bound(r.t13, r.t23, s.omega13, s.omega23)
        b_max, t_max = b_t_max(rates, s)
        t_beam = brightness_to_temperature(b_line_center(rates, params.drive, s), s.omega13)
        ds = entropy_delta(r.t13, r.t23, s.omega13, s.omega23, t_beam)
    else:
        t_bound = b_max = t_max = math.inf
        ds = -CONSTANTS.hbar * s.omega13 / r.t13 + CONSTANTS.hbar * s.omega23 / r.t23
    eff = efficiencies(s, r)
    pb = power_budget(s)
    return ThermoReport(
        delta_s_per_photon=ds,
        t_bound=t_bound,
        b_max=b_max,
        t_max=t_max,
        threshold=status.status,
        threshold_margin=status.margin,
        eta_carnot=eff.eta_carnot,
        eta_carnot_temperature=eff.eta_carnot_temperature,
        eta_eit=eff.eta_eit,
        eta_eit_temperature=eff.eta_eit_temperature,
        eta_ratio=eff.ratio,
        coupling_power_fraction=pb.coupling,
        thermal_power_fraction=pb.thermal,
        t23_lower_bound=reservoir_range(s, r.t13)[0],
    )
