"""Line-center normalization sigma0 and the EIT absorption/emission cross sections."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from . import kernels
from .errors import DomainError, MissingParameterError
from .params import CONSTANTS, AtomicSystem, DriveConfig
from .rates import DerivedRates


@dataclass(frozen=True)
class CrossSections:
    """Normalized cross sections sigma/sigma0 at one detuning or a grid."""

    detuning: np.ndarray | float
    sigma_abs_norm: np.ndarray | float
    sigma_em_norm: np.ndarray | float


@dataclass(frozen=True)
class Sigma0Spec:
    mode: Literal["from-dipole", "lifetime-broadened", "explicit"] = "lifetime-broadened"
    value: Optional[float] = None

    def __post_init__(self):
        if self.mode not in ("from-dipole", "lifetime-broadened", "explicit"):
            raise DomainError(f"unknown sigma0 mode {self.mode!r}")
        if self.mode == "explicit" and not (self.value is not None and self.value > 0):
            raise DomainError("explicit sigma0 needs a positive value")


def wavelength(system: AtomicSystem) -> float:
    return 2.0 * math.pi * CONSTANTS.c / system.omega13


def sigma0(system: AtomicSystem, rates: DerivedRates, spec: Sigma0Spec = Sigma0Spec()) -> float:
    """Resonant cross section (m^2) used to normalize the spectra.

    In from-dipole mode the linewidth is the 1-3 dephasing rate gamma31.
    """
    if spec.mode == "explicit":
        return float(spec.value)
    if spec.mode == "lifetime-broadened":
        lam = wavelength(system)
        return lam * lam / (2.0 * math.pi)
    if system.dipole13 is None:
        raise MissingParameterError("from-dipole sigma0 mode needs system.dipole13")
    k = CONSTANTS
    return 2.0 * system.omega13 * system.dipole13**2 / (k.epsilon0 * k.c * k.hbar * rates.gamma31)


def _unwrap(delta, arr):
    return float(arr[0]) if np.ndim(delta) == 0 else arr.reshape(np.shape(delta))


def cross_sections(delta, rates: DerivedRates, drive: DriveConfig, system: AtomicSystem) -> CrossSections:
    """sigma_abs/sigma0 and sigma_em/sigma0 at detuning(s) omega13 - omega.

    Uses the strong-coupling (weak-probe) closed forms; ``delta`` may be a
    scalar or any array shape.
    """
    sa, se = kernels.cross_sections(
        np.atleast_1d(np.asarray(delta, dtype=float)),
        rates.gamma21, rates.gamma31, rates.gamma32,
        system.gamma32, rates.r23, drive.omega_c,
    )
    return CrossSections(
        detuning=delta if np.ndim(delta) == 0 else np.asarray(delta, dtype=float),
        sigma_abs_norm=_unwrap(delta, sa),
        sigma_em_norm=_unwrap(delta, se),
    )


def susceptibility_oracle(delta, rates: DerivedRates, drive: DriveConfig):
    """sigma_abs/sigma0 from the complex probe susceptibility.

    Independent route to the absorption profile: gamma31 * Re of the
    probe coherence response (gamma21 + 2i d) / ((gamma21 + 2i d)(gamma31 + 2i d) + Omega_c^2).
    """
    d = np.asarray(delta, dtype=float)
    g21 = rates.gamma21 + 2j * d
    g31 = rates.gamma31 + 2j * d
    chi = g21 / (g21 * g31 + drive.omega_c**2)
    out = rates.gamma31 * chi.real
    return float(out) if out.ndim == 0 else out
