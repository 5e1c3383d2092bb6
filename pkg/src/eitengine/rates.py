"""Thermal occupation numbers, blackbody pumping rates and dephasing rates."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .params import CONSTANTS, EngineParams, require_valid


@dataclass(frozen=True)
class DerivedRates:
    nbar13: float
    nbar23: float
    r13: float
    r23: float
    gamma21: float
    gamma31: float
    gamma32: float


def planck_exponent(omega, t):
    """hbar*omega / (k_b*T)."""
    omega = np.asarray(omega, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(~(omega > 0)) or np.any(~(t > 0)):
        raise DomainError("occupation number needs omega > 0 and t > 0")
    x = CONSTANTS.hbar * omega / (CONSTANTS.k_b * t)
    return x if x.ndim else float(x)


def occupation_from_exponent(x):
    """1/(exp(x) - 1), evaluated in the decaying form for large x.

    Beyond x ~ 745 the result underflows to 0.0, which downstream code treats
    as a cold reservoir.
    """
    x = np.asarray(x, dtype=float)
    with np.errstate(over="ignore", under="ignore", divide="ignore"):
        em = np.exp(-x)
        n = np.where(x > 1.0, em / -np.expm1(-x), 1.0 / np.expm1(np.minimum(x, 1.0)))
    return n if n.ndim else float(n)


def occupation_number(omega, t):
    """Mean photon number per mode of a blackbody field (Planck form)."""
    return occupation_from_exponent(planck_exponent(omega, t))


def derive_rates(params: EngineParams) -> DerivedRates:
    require_valid(params)
    s, r = params.system, params.reservoirs
    n13 = occupation_number(s.omega13, r.t13)
    n23 = occupation_number(s.omega23, r.t23)
    return rates_from_occupations(n13, n23, s.gamma31, s.gamma32)


def rates_from_occupations(nbar13: float, nbar23: float, gamma31: float, gamma32: float) -> DerivedRates:
    """Pumping and dephasing rates for given occupation numbers.

    The pumping rate on each transition is symmetric (R_ij = R_ji), so only
    one value per transition is kept.
    """
    r13 = gamma31 * nbar13
    r23 = gamma32 * nbar23
    base = gamma31 + gamma32
    return DerivedRates(
        nbar13=nbar13,
        nbar23=nbar23,
        r13=r13,
        r23=r23,
        gamma21=r23 + r13,
        gamma31=base + r23 + 2.0 * r13,
        gamma32=base + r13 + 2.0 * r23,
    )
