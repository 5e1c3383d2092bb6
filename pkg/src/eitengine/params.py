"""Input parameter types, physical constants and validation.

All frequencies and rates (Gamma, gamma, Omega_c, detuning) are angular
frequencies in rad/s; temperatures are in kelvin.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

from .errors import InvalidParamsError


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float
    k_b: float
    c: float
    epsilon0: float
    version: str


#: CODATA 2018 values. Module-level and frozen; not configurable at runtime.
CONSTANTS = PhysicalConstants(
    hbar=1.054571817e-34,
    k_b=1.380649e-23,
    c=2.99792458e8,
    epsilon0=8.8541878128e-12,
    version="CODATA 2018",
)


@dataclass(frozen=True)
class AtomicSystem:
    """Three-level Lambda atom: ground |1>, metastable |2>, upper |3>.

    ``gamma31`` and ``gamma32`` are the spontaneous decay rates out of |3>;
    ``omega13`` and ``omega12`` the transition angular frequencies.
    ``dipole13`` (C m) is only needed for the from-dipole sigma0 mode.
    """

    gamma31: float
    gamma32: float
    omega13: float
    omega12: float
    dipole13: Optional[float] = None

    @property
    def omega23(self) -> float:
        return self.omega13 - self.omega12


@dataclass(frozen=True)
class ReservoirConfig:
    t13: float
    t23: float


@dataclass(frozen=True)
class DriveConfig:
    omega_c: float = 0.0


@dataclass(frozen=True)
class EngineParams:
    system: AtomicSystem
    reservoirs: ReservoirConfig
    drive: DriveConfig = field(default_factory=DriveConfig)

    def with_drive(self, omega_c: float) -> "EngineParams":
        return replace(self, drive=DriveConfig(omega_c))

    def with_reservoirs(self, t13: float, t23: float) -> "EngineParams":
        return replace(self, reservoirs=ReservoirConfig(t13, t23))

    def with_system(self, **changes) -> "EngineParams":
        return replace(self, system=replace(self.system, **changes))


def reference_params() -> EngineParams:
    """The reference parameter set used throughout: equal 5778 K reservoirs."""
    return EngineParams(
        system=AtomicSystem(gamma31=1e7, gamma32=6e7, omega13=4e15, omega12=1e15),
        reservoirs=ReservoirConfig(t13=5778.0, t23=5778.0),
        drive=DriveConfig(omega_c=5e7),
    )


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def codes(self) -> list[str]:
        return [v.code for v in self.violations]

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "\n".join(f"{v.code}: {v.message}" for v in self.violations)


def _finite_positive(out, code, name, value):
    if not isinstance(value, (int, float)) or math.isnan(value) or math.isinf(value):
        out.append(Violation(f"{code}-nonfinite", f"{name} must be a finite number, got {value!r}"))
        return False
    if value <= 0:
        out.append(Violation(f"{code}-nonpositive", f"{name} must be > 0, got {value!r}"))
        return False
    return True


def validate(params: EngineParams) -> ValidationReport:
    """Collect every violated invariant of ``params``; never raises."""
    out: list[Violation] = []
    s, r, d = params.system, params.reservoirs, params.drive

    _finite_positive(out, "gamma31", "gamma31", s.gamma31)
    _finite_positive(out, "gamma32", "gamma32", s.gamma32)
    ok13 = _finite_positive(out, "omega13", "omega13", s.omega13)
    ok12 = _finite_positive(out, "omega12", "omega12", s.omega12)
    if ok13 and ok12 and not s.omega13 > s.omega12:
        out.append(Violation(
            "frequency-ordering",
            f"need omega13 > omega12 (omega23 > 0), got omega13={s.omega13!r}, omega12={s.omega12!r}",
        ))
    if s.dipole13 is not None:
        _finite_positive(out, "dipole13", "dipole13", s.dipole13)

    _finite_positive(out, "t13", "t13", r.t13)
    _finite_positive(out, "t23", "t23", r.t23)

    oc = d.omega_c
    if not isinstance(oc, (int, float)) or math.isnan(oc) or math.isinf(oc):
        out.append(Violation("omega_c-nonfinite", f"omega_c must be finite, got {oc!r}"))
    elif oc < 0:
        out.append(Violation("omega_c-negative", f"omega_c must be >= 0, got {oc!r}"))

    return ValidationReport(tuple(out))


def require_valid(params: EngineParams) -> None:
    report = validate(params)
    if not report.ok:
        raise InvalidParamsError(report)
