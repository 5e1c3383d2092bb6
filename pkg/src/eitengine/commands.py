"""Command implementations behind the CLI; each returns a ResultTable or report."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Literal, Optional

import numpy as np

from .brightness import (
    b_infinite_coupling,
    b_line_center,
    brightness_to_temperature,
    spectrum_grid,
)
from .errors import DomainError, ThresholdError
from .params import CONSTANTS, DriveConfig, EngineParams, reference_params, require_valid
from .rates import derive_rates
from .table import ResultTable
from .thermo import Threshold, lwi_threshold, second_law_bound, thermo_report
from .transfer import MediumConfig, closed_form, integrate_transfer, tail_ratio
from .verify import DEFAULT_SEED, VerifyReport, run_checks


@dataclass(frozen=True)
class Grid:
    start: float
    stop: float
    count: int
    log: bool = False

    def __post_init__(self):
        if not self.start < self.stop:
            raise DomainError(f"grid needs min < max, got {self.start!r}:{self.stop!r}")
        if self.count < 2:
            raise DomainError("grid needs at least 2 points")
        if self.log and not self.start > 0:
            raise DomainError("log grid needs min > 0")

    @classmethod
    def parse(cls, text: str) -> "Grid":
        parts = text.split(":")
        if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] != "log"):
            raise DomainError(f"grid must be MIN:MAX:COUNT[:log], got {text!r}")
        try:
            return cls(float(parts[0]), float(parts[1]), int(parts[2]), len(parts) == 4)
        except ValueError as exc:
            raise DomainError(f"bad grid {text!r}: {exc}") from None

    def values(self) -> np.ndarray:
        if self.log:
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)

    def __str__(self) -> str:
        return f"{self.start!r}:{self.stop!r}:{self.count}" + (":log" if self.log else "")


DEFAULT_GRIDS = {
    "spectrum": Grid(-3.0, 3.0, 121),
    "sweep-rabi": Grid(1e-2, 1e3, 51, log=True),
    "transfer": Grid(-10.0, 10.0, 41),
}


@dataclass(frozen=True)
class RunConfig:
    params: EngineParams = field(default_factory=reference_params)
    grid: Optional[Grid] = None
    detuning_units: Literal["gamma31", "rad/s"] = "gamma31"
    length: float = 1.0
    density: Optional[float] = None
    depth: float = 10.0
    depth_convention: Literal["eit", "bare"] = "eit"
    nz: int = 51
    tail_multiple: float = 10.0
    seed: int = DEFAULT_SEED

    def grid_for(self, command: str) -> Grid:
        return self.grid if self.grid is not None else DEFAULT_GRIDS[command]


def _metadata(command: str, cfg: RunConfig, **conventions) -> dict:
    p = cfg.params
    return {
        "command": command,
        "constants": CONSTANTS.version,
        "system": asdict(p.system),
        "reservoirs": asdict(p.reservoirs),
        "drive": asdict(p.drive),
        "conventions": {"frequency_units": "rad/s", "temperature_units": "K", **conventions},
    }


def _detunings(cfg: RunConfig, command: str, gamma31: float) -> tuple[np.ndarray, np.ndarray]:
    """Grid values as given and converted to rad/s."""
    raw = cfg.grid_for(command).values()
    return raw, raw * gamma31 if cfg.detuning_units == "gamma31" else raw


def cmd_spectrum(cfg: RunConfig) -> ResultTable:
    require_valid(cfg.params)
    rates = derive_rates(cfg.params)
    raw, det = _detunings(cfg, "spectrum", rates.gamma31)
    g = spectrum_grid(cfg.params, det)
    rows = [
        [float(raw[i]), float(det[i]), float(g.sigma_abs_norm[i]), float(g.sigma_em_norm[i]),
         float(g.b[i]), float(g.b_normalized[i]), bool(g.amplifying[i])]
        for i in range(det.size)
    ]
    columns = [
        ("detuning", cfg.detuning_units), ("detuning_rad_s", "rad/s"),
        ("sigma_abs_norm", "sigma0"), ("sigma_em_norm", "sigma0"),
        ("b_black", "photons/mode"), ("b_black_norm", "nbar13"), ("amplifying", "flag"),
    ]
    meta = _metadata("spectrum", cfg, detuning_units=cfg.detuning_units,
                     detuning="omega13 - omega", grid=str(cfg.grid_for("spectrum")))
    meta["derived"] = {"lambda": g.lam, "nbar13": g.nbar13, "gamma31": rates.gamma31}
    return ResultTable(columns, rows, meta)


def cmd_sweep_rabi(cfg: RunConfig) -> ResultTable:
    """Line-center brightness and temperature against Omega_c / gamma31."""
    require_valid(cfg.params)
    p = cfg.params
    rates = derive_rates(p)
    s, r = p.system, p.reservoirs
    t0 = r.t13
    status = lwi_threshold(rates)
    if status.status is Threshold.BELOW:
        t_bound = second_law_bound(r.t13, r.t23, s.omega13, s.omega23)
        b_inf = b_infinite_coupling(rates, s)
    else:
        t_bound = b_inf = math.inf
    rows = []
    for x in cfg.grid_for("sweep-rabi").values():
        oc = float(x) * rates.gamma31
        try:
            b0 = b_line_center(rates, DriveConfig(oc), s)
            t = brightness_to_temperature(b0, s.omega13)
            above = False
        except ThresholdError:
            b0 = t = math.nan
            above = True
        rows.append([float(x), oc, b0, b0 / rates.nbar13, t / t0, t_bound / t0, above])
    columns = [
        ("omega_c_over_gamma31", ""), ("omega_c", "rad/s"), ("b0", "photons/mode"),
        ("b0_norm", "nbar13"), ("t_over_t0", "T13"), ("t_bound_over_t0", "T13"),
        ("above_threshold", "flag"),
    ]
    meta = _metadata("sweep-rabi", cfg, rabi_axis="omega_c / gamma31 (dephasing rate)",
                     temperature_reference="T0 = t13", grid=str(cfg.grid_for("sweep-rabi")))
    meta["derived"] = {"nbar13": rates.nbar13, "gamma31": rates.gamma31,
                       "b_infinite_coupling": b_inf, "b_infinite_coupling_norm": b_inf / rates.nbar13}
    return ResultTable(columns, rows, meta)


def cmd_transfer(cfg: RunConfig) -> ResultTable:
    """Brightness field B(detuning, z) with a peak/tail summary."""
    require_valid(cfg.params)
    rates = derive_rates(cfg.params)
    raw, det = _detunings(cfg, "transfer", rates.gamma31)
    if cfg.density is not None:
        medium = MediumConfig(length=cfg.length, density=cfg.density)
    else:
        medium = MediumConfig(length=cfg.length, depth=cfg.depth, depth_convention=cfg.depth_convention)
    z = np.linspace(0.0, cfg.length, cfg.nz)
    field_ = integrate_transfer(det, medium, cfg.params, z=z)
    exact = closed_form(field_.alpha[:, None], field_.source[:, None], z[None, :])
    rows = []
    for i in range(det.size):
        for j in range(z.size):
            rows.append([float(raw[i]), float(det[i]), float(z[j]), float(field_.b[i, j]),
                         float(exact[i, j]), bool(field_.amplifying[i])])
    columns = [
        ("detuning", cfg.detuning_units), ("detuning_rad_s", "rad/s"), ("z", "m"),
        ("b", "photons/mode"), ("b_closed_form", "photons/mode"), ("amplifying", "flag"),
    ]
    meta = _metadata("transfer", cfg, detuning_units=cfg.detuning_units,
                     depth_convention=cfg.depth_convention, sigma0="lifetime-broadened",
                     grid=str(cfg.grid_for("transfer")))
    meta["medium"] = {"length": cfg.length, "density": field_.density, "nz": cfg.nz}
    tr = tail_ratio(cfg.params, depth=cfg.depth, tail_multiple=cfg.tail_multiple,
                    depth_convention=cfg.depth_convention, length=cfg.length)
    summary = {
        "depth": tr.depth, "depth_convention": tr.depth_convention,
        "tail_multiple": cfg.tail_multiple, "tail_detuning": tr.tail_detuning,
        "b_peak": tr.b_peak, "b_tail_plus": tr.b_tail_plus, "b_tail_minus": tr.b_tail_minus,
        "tail_ratio": tr.ratio,
    }
    return ResultTable(columns, rows, meta, summary)


def cmd_bounds(cfg: RunConfig) -> ResultTable:
    require_valid(cfg.params)
    rep = thermo_report(cfg.params)
    fields = asdict(rep)
    fields["threshold"] = rep.threshold.value
    columns = [(k, _BOUND_UNITS.get(k, "")) for k in fields]
    return ResultTable(columns, [list(fields.values())], _metadata("bounds", cfg))


_BOUND_UNITS = {
    "delta_s_per_photon": "J/K", "t_bound": "K", "t_max": "K", "t23_lower_bound": "K",
    "b_max": "photons/mode",
}


def cmd_verify(cfg: RunConfig) -> VerifyReport:
    require_valid(cfg.params)
    return run_checks(cfg.params, seed=cfg.seed)
