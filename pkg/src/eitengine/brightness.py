"""Saturated spectral brightness, its line-center forms, and brightness temperature."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, ThresholdError
from .params import CONSTANTS, AtomicSystem, DriveConfig, EngineParams
from .rates import DerivedRates, derive_rates, occupation_number
from .spectra import CrossSections
from .steady import SteadyState, lambda_ratio


@dataclass(frozen=True)
class BrightnessPoint:
    detuning: float
    b: float
    b_normalized: float


@dataclass(frozen=True)
class BrightnessTemperature:
    temperature: float
    reference_omega: float


@dataclass(frozen=True)
class SpectrumGrid:
    """Cross sections and saturated brightness on a detuning grid.

    ``b`` is nan wherever ``amplifying`` is set (net gain, no finite
    saturated brightness).
    """

    detuning: np.ndarray
    sigma_abs_norm: np.ndarray
    sigma_em_norm: np.ndarray
    b: np.ndarray
    b_normalized: np.ndarray
    amplifying: np.ndarray
    lam: float
    nbar13: float


def b_black(steady: SteadyState, xs: CrossSections, nbar13: float) -> BrightnessPoint:
    """Brightness reached deep in an optically thick medium at one detuning."""
    lam = steady.lam
    em = lam * xs.sigma_em_norm
    net = xs.sigma_abs_norm - em
    if not net > 0:
        raise ThresholdError(
            f"net gain at detuning {xs.detuning!r}: sigma_abs - Lambda*sigma_em = {net!r} * sigma0",
            condition="sigma_abs - Lambda*sigma_em <= 0",
            margin=float(net),
        )
    b = em / net
    return BrightnessPoint(detuning=float(xs.detuning), b=float(b), b_normalized=float(b / nbar13))


def spectrum_grid(params: EngineParams, detuning) -> SpectrumGrid:
    rates = derive_rates(params)
    s, d = params.system, params.drive
    lam = lambda_ratio(rates, d, s)
    det = np.atleast_1d(np.asarray(detuning, dtype=float))
    sa, se, b, gain = kernels.spectrum(
        det, rates.gamma21, rates.gamma31, rates.gamma32, s.gamma32, rates.r23, d.omega_c, lam
    )
    return SpectrumGrid(
        detuning=det, sigma_abs_norm=sa, sigma_em_norm=se, b=b,
        b_normalized=b / rates.nbar13, amplifying=gain, lam=lam, nbar13=rates.nbar13,
    )


def line_center_denominator(rates: DerivedRates, drive: DriveConfig, system: AtomicSystem) -> float:
    """Denominator of the line-center brightness; negative below threshold."""
    om2 = drive.omega_c**2
    return system.gamma32 * rates.nbar13 * om2 - rates.gamma21 * (
        rates.gamma32 * system.gamma32 * rates.nbar23 + om2
    )


def b_line_center(rates: DerivedRates, drive: DriveConfig, system: AtomicSystem) -> float:
    """Closed-form saturated brightness at zero detuning."""
    om2 = drive.omega_c**2
    den = line_center_denominator(rates, drive, system)
    if not den < 0:
        raise ThresholdError(
            "line-center brightness diverges: at or above the lasing-without-inversion threshold",
            condition="Gamma32*n13*Omega_c^2 - gamma21*(gamma32*Gamma32*n23 + Omega_c^2) >= 0",
            margin=den,
        )
    num = rates.nbar13 * (
        rates.gamma21 * rates.gamma32 * system.gamma32 * rates.nbar23
        + (rates.gamma21 + system.gamma32) * om2
    )
    return -num / den


def b_infinite_coupling(rates: DerivedRates, system: AtomicSystem) -> float:
    """Line-center brightness in the limit Omega_c -> infinity."""
    n13, n23 = rates.nbar13, rates.nbar23
    den = system.gamma31 * n13 + system.gamma32 * (n23 - n13)
    if not den > 0:
        raise ThresholdError(
            "strong-coupling brightness diverges: lasing-without-inversion threshold reached",
            condition="Gamma31*n13 + Gamma32*(n23 - n13) <= 0",
            margin=den,
        )
    return n13 * (system.gamma31 * n13 + system.gamma32 * (n23 + 1.0)) / den


def brightness_to_temperature(b, omega13: float):
    """Temperature of the blackbody mode at omega13 holding ``b`` photons."""
    b = np.asarray(b, dtype=float)
    if np.any(~(b > 0)):
        raise DomainError("brightness temperature needs b > 0")
    # ln(1/b + 1), split so 1/b cannot overflow for subnormal b
    small = b < 1.0
    with np.errstate(divide="ignore"):
        ln = np.where(small, np.log1p(b) - np.log(np.where(small, b, 1.0)), np.log1p(1.0 / b))
        t = (CONSTANTS.hbar * omega13 / CONSTANTS.k_b) / ln
    return float(t) if t.ndim == 0 else t


def temperature_to_brightness(t, omega13: float):
    return occupation_number(omega13, t)


def line_center_temperature(params: EngineParams) -> BrightnessTemperature:
    rates = derive_rates(params)
    b = b_line_center(rates, params.drive, params.system)
    return BrightnessTemperature(
        temperature=brightness_to_temperature(b, params.system.omega13),
        reference_omega=params.system.omega13,
    )
