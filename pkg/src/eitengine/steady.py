"""Steady-state populations of the blackbody-pumped, laser-coupled Lambda atom.

Two routes are provided: the closed-form population ratio and a dense
master-equation solve used to check it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, NumericalDegeneracyError
from .params import AtomicSystem, DriveConfig
from .rates import DerivedRates

# Singular-system cutoff for the master-equation solve (reciprocal condition).
_MAX_CONDITION = 1e14


@dataclass(frozen=True)
class SteadyState:
    rho11: float
    rho22: float
    rho33: float
    lam: float

    @property
    def upper(self) -> float:
        """Population of the upper manifold, rho22 + rho33."""
        return self.rho22 + self.rho33


def lambda_ratio(rates: DerivedRates, drive: DriveConfig, system: AtomicSystem) -> float:
    """Ratio (rho22 + rho33) / rho11 of upper-manifold to ground population."""
    om2 = drive.omega_c**2
    ground_factor = system.gamma31 + rates.r13
    coupling_factor = om2 + rates.gamma32 * rates.r23
    if ground_factor <= 0:
        raise DegenerateInputError("Gamma31 + R13 vanishes")
    if coupling_factor <= 0:
        raise DegenerateInputError(
            "Omega_c^2 + gamma32*R23 vanishes (no coupling laser and no 2-3 pumping)"
        )
    num = rates.r13 * (2.0 * om2 + rates.gamma32 * (system.gamma32 + 2.0 * rates.r23))
    return num / (ground_factor * coupling_factor)


def populations(rates: DerivedRates, drive: DriveConfig, system: AtomicSystem) -> SteadyState:
    """Normalized diagonal populations consistent with :func:`lambda_ratio`.

    The 1-3 balance fixes rho33/rho11 = R13/(Gamma31 + R13); the remainder of
    the upper manifold sits in |2>.
    """
    lam = lambda_ratio(rates, drive, system)
    rho11 = 1.0 / (1.0 + lam)
    upper = lam / (1.0 + lam)
    rho33 = rho11 * rates.r13 / (system.gamma31 + rates.r13)
    rho22 = max(upper - rho33, 0.0)
    return SteadyState(rho11=rho11, rho22=rho22, rho33=rho33, lam=lam)


def _ket_bra(i: int, j: int) -> np.ndarray:
    m = np.zeros((3, 3), dtype=complex)
    m[i, j] = 1.0
    return m


def liouvillian(rates: DerivedRates, drive: DriveConfig, system: AtomicSystem) -> np.ndarray:
    """9x9 generator acting on the row-major vectorized density matrix.

    Levels are indexed |1> -> 0, |2> -> 1, |3> -> 2. Thermal driving enters
    only as incoherent jumps; the resonant coupling laser on 2-3 is the sole
    Hamiltonian term, H = (Omega_c/2)(|2><3| + |3><2|).
    """
    eye = np.eye(3)
    h = 0.5 * drive.omega_c * (_ket_bra(1, 2) + _ket_bra(2, 1))
    gen = -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    jumps = [
        (system.gamma31 + rates.r13, _ket_bra(0, 2)),
        (rates.r13, _ket_bra(2, 0)),
        (system.gamma32 + rates.r23, _ket_bra(1, 2)),
        (rates.r23, _ket_bra(2, 1)),
    ]
    for rate, op in jumps:
        if rate == 0.0:
            continue
        ldl = op.conj().T @ op
        gen += rate * (
            np.kron(op, op.conj()) - 0.5 * np.kron(ldl, eye) - 0.5 * np.kron(eye, ldl.T)
        )
    return gen


def liouvillian_steady_state(
    rates: DerivedRates, drive: DriveConfig, system: AtomicSystem
) -> SteadyState:
    gen = liouvillian(rates, drive, system)
    scale = np.max(np.abs(gen))
    if scale == 0:
        raise NumericalDegeneracyError("master equation has no dynamics", np.inf)
    a = gen / scale
    # The generator is rank-deficient; trade the rho11 balance row for Tr(rho) = 1.
    a[0, :] = 0.0
    a[0, [0, 4, 8]] = 1.0
    b = np.zeros(9, dtype=complex)
    b[0] = 1.0
    cond = np.linalg.cond(a)
    if not np.isfinite(cond) or cond > _MAX_CONDITION:
        raise NumericalDegeneracyError(
            f"steady-state system is singular (condition number {cond:.3e})", cond
        )
    rho = np.linalg.solve(a, b).reshape(3, 3)
    p11, p22, p33 = (float(rho[k, k].real) for k in range(3))
    return SteadyState(rho11=p11, rho22=p22, rho33=p33, lam=(p22 + p33) / p11)
