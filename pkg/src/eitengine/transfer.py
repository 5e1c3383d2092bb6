"""Growth of spectral brightness along a uniform pumped medium.

dB/dz + alpha(d) B = s(d), with alpha = N sigma0 (sa rho11 - se (rho22 + rho33))
and s = N sigma0 se (rho22 + rho33), B(z=0) = 0. The source carries the
density N so that s/alpha is the saturated brightness.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from . import kernels
from .errors import DomainError, ThresholdError
from .params import EngineParams
from .rates import derive_rates
from .spectra import CrossSections, Sigma0Spec, cross_sections, sigma0
from .steady import SteadyState, populations

DepthConvention = Literal["eit", "bare"]

# Below this |alpha z| the closed form switches to its Taylor series.
_SERIES_CUTOFF = 1e-6


@dataclass(frozen=True)
class MediumConfig:
    """Uniform medium of ``length`` metres.

    Give either ``density`` (atoms/m^3) or ``depth``, the target line-center
    optical depth N rho11 sigma L. With ``depth_convention="eit"`` sigma is the
    EIT-suppressed line-center absorption cross section; with ``"bare"`` it is
    sigma0.
    """

    length: float = 1.0
    density: Optional[float] = None
    depth: Optional[float] = None
    depth_convention: DepthConvention = "eit"

    def __post_init__(self):
        if not self.length > 0:
            raise DomainError("medium length must be > 0")
        if (self.density is None) == (self.depth is None):
            raise DomainError("give exactly one of density or depth")
        if self.density is not None and not self.density > 0:
            raise DomainError("density must be > 0")
        if self.depth is not None and not self.depth > 0:
            raise DomainError("depth must be > 0")
        if self.depth_convention not in ("eit", "bare"):
            raise DomainError(f"unknown depth convention {self.depth_convention!r}")


@dataclass(frozen=True)
class TransferField:
    detuning: np.ndarray
    z: np.ndarray
    b: np.ndarray  # shape (len(detuning), len(z))
    alpha: np.ndarray
    source: np.ndarray
    amplifying: np.ndarray
    density: float
    sigma0: float
    steps: np.ndarray

    @property
    def b_black(self) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(self.alpha > 0, self.source / self.alpha, np.nan)


@dataclass(frozen=True)
class TailRatio:
    ratio: float
    b_peak: float
    b_tail_plus: float
    b_tail_minus: float
    tail_detuning: float
    depth: float
    depth_convention: str

    @property
    def symmetry_deviation(self) -> float:
        return abs(self.b_tail_plus - self.b_tail_minus) / abs(self.b_tail_minus)


def absorption_coefficient(steady: SteadyState, xs: CrossSections, sigma0_m2: float, density: float):
    """Net absorption coefficient and source term, both in 1/m."""
    nsig = density * sigma0_m2
    alpha = nsig * (xs.sigma_abs_norm * steady.rho11 - xs.sigma_em_norm * steady.upper)
    source = nsig * xs.sigma_em_norm * steady.upper
    return alpha, source


def resolve_density(medium: MediumConfig, steady: SteadyState, xs0: CrossSections, sigma0_m2: float) -> float:
    """Atom density; ``xs0`` are the cross sections at zero detuning."""
    if medium.density is not None:
        return medium.density
    sig = sigma0_m2 * (xs0.sigma_abs_norm if medium.depth_convention == "eit" else 1.0)
    return medium.depth / (steady.rho11 * sig * medium.length)


def closed_form(alpha, source, z):
    """B(z) = (s/alpha)(1 - exp(-alpha z)), with the alpha -> 0 limit s z."""
    alpha, source, z = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (alpha, source, z)))
    x = alpha * z
    small = np.abs(x) < _SERIES_CUTOFF
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        full = -np.expm1(-x) / x
    growth = np.where(small, 1.0 - x / 2.0 + x * x / 6.0, full)
    out = source * z * growth
    return float(out) if out.ndim == 0 else out


class _Medium:
    """Per-parameter-set quantities shared by every detuning channel."""

    def __init__(self, params: EngineParams, medium: MediumConfig, sigma0_spec: Sigma0Spec):
        self.params = params
        self.rates = derive_rates(params)
        self.steady = populations(self.rates, params.drive, params.system)
        self.sigma0 = sigma0(params.system, self.rates, sigma0_spec)
        xs0 = cross_sections(0.0, self.rates, params.drive, params.system)
        self.density = resolve_density(medium, self.steady, xs0, self.sigma0)

    def coefficients(self, detuning):
        xs = cross_sections(detuning, self.rates, self.params.drive, self.params.system)
        return absorption_coefficient(self.steady, xs, self.sigma0, self.density)


def analytic_transfer(detuning, z, medium: MediumConfig, params: EngineParams,
                      sigma0_spec: Sigma0Spec = Sigma0Spec()):
    m = _Medium(params, medium, sigma0_spec)
    alpha, source = m.coefficients(detuning)
    return closed_form(alpha, source, z)


def integrate_transfer(detuning, medium: MediumConfig, params: EngineParams, z=None,
                       sigma0_spec: Sigma0Spec = Sigma0Spec(), rtol: float = 1e-9) -> TransferField:
    """Adaptive Dormand-Prince integration of the transfer equation per detuning.

    ``z`` defaults to 51 evenly spaced points on [0, length]. Channels with
    alpha < 0 grow exponentially and are flagged in ``amplifying``.
    """
    m = _Medium(params, medium, sigma0_spec)
    det = np.atleast_1d(np.asarray(detuning, dtype=float))
    zz = np.linspace(0.0, medium.length, 51) if z is None else np.asarray(z, dtype=float)
    if zz.ndim != 1 or zz[0] != 0.0 or np.any(np.diff(zz) <= 0):
        raise DomainError("z grid must start at 0 and be strictly increasing")
    alpha, source = m.coefficients(det)
    b, steps = kernels.integrate_linear(alpha, source, zz, rtol=rtol)
    return TransferField(
        detuning=det, z=zz, b=b, alpha=alpha, source=source, amplifying=alpha < 0,
        density=m.density, sigma0=m.sigma0, steps=steps,
    )


def tail_ratio(params: EngineParams, depth: float = 10.0, tail_multiple: float = 10.0,
               depth_convention: DepthConvention = "eit", length: float = 1.0,
               sigma0_spec: Sigma0Spec = Sigma0Spec()) -> TailRatio:
    """Peak-to-wing brightness ratio B(0, L) / B(k gamma31, L) at a given depth."""
    medium = MediumConfig(length=length, depth=depth, depth_convention=depth_convention)
    m = _Medium(params, medium, sigma0_spec)
    k_det = tail_multiple * m.rates.gamma31
    alpha, source = m.coefficients(np.array([0.0, k_det, -k_det]))
    if not alpha[0] > 0:
        raise ThresholdError(
            "medium amplifies at line center", condition="alpha(0) <= 0", margin=float(alpha[0])
        )
    b = closed_form(alpha, source, length)
    return TailRatio(
        ratio=float(b[0] / b[1]), b_peak=float(b[0]), b_tail_plus=float(b[1]),
        b_tail_minus=float(b[2]), tail_detuning=k_det, depth=depth, depth_convention=depth_convention,
    )
