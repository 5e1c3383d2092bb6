"""Simulation of a blackbody-pumped EIT quantum heat engine.

Submodules: ``params`` (inputs, constants, validation), ``rates`` (occupation
numbers, pumping and dephasing rates), ``steady`` (populations and the
master-equation oracle), ``spectra`` (cross sections), ``brightness``,
``transfer`` (radiative transfer along the medium), ``thermo`` (second-law
bounds, threshold, efficiencies), ``verify`` and ``cli``.
"""
from .brightness import (
    b_black,
    b_infinite_coupling,
    b_line_center,
    brightness_to_temperature,
    spectrum_grid,
    temperature_to_brightness,
)
from .errors import (
    DegenerateInputError,
    DomainError,
    EngineError,
    InvalidParamsError,
    MissingParameterError,
    NumericalDegeneracyError,
    ThresholdError,
)
from .kernels import BACKEND
from .params import (
    CONSTANTS,
    AtomicSystem,
    DriveConfig,
    EngineParams,
    ReservoirConfig,
    reference_params,
    validate,
)
from .rates import DerivedRates, derive_rates, occupation_number
from .spectra import CrossSections, Sigma0Spec, cross_sections, sigma0, susceptibility_oracle
from .steady import SteadyState, lambda_ratio, liouvillian_steady_state, populations
from .thermo import (
    ThermoReport,
    b_t_max,
    efficiencies,
    entropy_delta,
    lwi_threshold,
    power_budget,
    reservoir_range,
    second_law_bound,
    thermo_report,
)
from .transfer import MediumConfig, TransferField, analytic_transfer, integrate_transfer, tail_ratio

__version__ = "0.1.0"
