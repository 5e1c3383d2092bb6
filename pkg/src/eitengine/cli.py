"""eitengine command line.

Examples:
  eitengine spectrum --grid=-3:3:121 --out ref.csv
  eitengine sweep-rabi --grid 1e-2:1e3:51:log --format json
  eitengine transfer --depth 10 --depth-convention eit
  eitengine bounds --t13 600 --t23 300
  eitengine verify --seed 7

Parameters default to the reference set (Gamma31=1e7, Gamma32=6e7,
Omega_c=5e7, omega13=4e15, omega12=1e15 rad/s, T13=T23=5778 K). A YAML
``--config`` file overrides the defaults; flags override the file.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

import yaml

from .commands import Grid, RunConfig, cmd_bounds, cmd_spectrum, cmd_sweep_rabi, cmd_transfer, cmd_verify
from .errors import EngineError, InvalidParamsError, NumericalDegeneracyError, ThresholdError
from .params import AtomicSystem, DriveConfig, EngineParams, ReservoirConfig, reference_params
from .table import to_csv, to_json

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VERIFY_FAILED = 2
EXIT_NUMERICAL = 3

COMMANDS = ("spectrum", "sweep-rabi", "transfer", "bounds", "verify")

_SYSTEM_KEYS = ("gamma31", "gamma32", "omega13", "omega12", "dipole13")
_RESERVOIR_KEYS = ("t13", "t23")


class ConfigError(EngineError, ValueError):
    pass


def load_config(path: str | Path) -> dict:
    """Read a YAML run config; see README for the layout."""
    try:
        doc = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    except (OSError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if doc is None:
        return {}
    if not isinstance(doc, dict):
        raise ConfigError("config must be a mapping at top level")
    known = {"system", "reservoirs", "drive", "grid", "detuning_units", "medium", "tail_multiple", "seed"}
    unknown = set(doc) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return doc


def _section(doc: dict, name: str, keys) -> dict:
    sec = doc.get(name) or {}
    if not isinstance(sec, dict):
        raise ConfigError(f"config section {name!r} must be a mapping")
    bad = set(sec) - set(keys)
    if bad:
        raise ConfigError(f"unknown keys in {name!r}: {', '.join(sorted(bad))}")
    return {k: float(v) for k, v in sec.items()}


def build_run_config(args: argparse.Namespace) -> RunConfig:
    doc = load_config(args.config) if args.config else {}
    base = reference_params()

    sys_vals = {k: getattr(base.system, k) for k in _SYSTEM_KEYS}
    sys_vals.update(_section(doc, "system", _SYSTEM_KEYS))
    res_vals = {k: getattr(base.reservoirs, k) for k in _RESERVOIR_KEYS}
    res_vals.update(_section(doc, "reservoirs", _RESERVOIR_KEYS))
    omega_c = _section(doc, "drive", ("omega_c",)).get("omega_c", base.drive.omega_c)
    medium = doc.get("medium") or {}
    if not isinstance(medium, dict):
        raise ConfigError("config section 'medium' must be a mapping")

    for key in _SYSTEM_KEYS:
        if getattr(args, key) is not None:
            sys_vals[key] = getattr(args, key)
    for key in _RESERVOIR_KEYS:
        if getattr(args, key) is not None:
            res_vals[key] = getattr(args, key)
    if args.omega_c is not None:
        omega_c = args.omega_c

    params = EngineParams(AtomicSystem(**sys_vals), ReservoirConfig(**res_vals), DriveConfig(omega_c))
    cfg = RunConfig(params=params)

    grid = args.grid if args.grid is not None else doc.get("grid")
    changes = {}
    if grid is not None:
        changes["grid"] = Grid.parse(str(grid))
    units = args.detuning_units or doc.get("detuning_units")
    if units is not None:
        if units not in ("gamma31", "rad/s"):
            raise ConfigError(f"detuning units must be gamma31 or rad/s, got {units!r}")
        changes["detuning_units"] = units
    for key, flag in (("length", args.length), ("density", args.density), ("depth", args.depth),
                      ("nz", args.nz)):
        value = flag if flag is not None else medium.get(key)
        if value is not None:
            changes[key] = int(value) if key == "nz" else float(value)
    conv = args.depth_convention or medium.get("depth_convention")
    if conv is not None:
        if conv not in ("eit", "bare"):
            raise ConfigError(f"depth convention must be eit or bare, got {conv!r}")
        changes["depth_convention"] = conv
    tail = args.tail_multiple if args.tail_multiple is not None else doc.get("tail_multiple")
    if tail is not None:
        changes["tail_multiple"] = float(tail)
    seed = args.seed if args.seed is not None else doc.get("seed")
    if seed is not None:
        changes["seed"] = int(seed)
    return replace(cfg, **changes)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="YAML run configuration")
    common.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=None,
                        help="output format (default csv; verify defaults to text)")
    common.add_argument("--grid", metavar="MIN:MAX:COUNT[:log]",
                        help="sweep grid; use --grid=-3:3:61 for negative minima")
    common.add_argument("--detuning-units", choices=("gamma31", "rad/s"), default=None)
    common.add_argument("--depth", type=float, help="line-center optical depth")
    common.add_argument("--depth-convention", choices=("eit", "bare"), default=None)
    common.add_argument("--length", type=float, help="medium length (m)")
    common.add_argument("--density", type=float, help="atom density (1/m^3); overrides --depth for the field")
    common.add_argument("--nz", type=int, help="number of z samples")
    common.add_argument("--tail-multiple", type=float, help="tail detuning in units of gamma31")
    common.add_argument("--seed", type=int)
    for key in _SYSTEM_KEYS + _RESERVOIR_KEYS:
        common.add_argument(f"--{key.replace('_', '-')}", dest=key, type=float)
    common.add_argument("--omega-c", dest="omega_c", type=float)

    parser = argparse.ArgumentParser(
        prog="eitengine", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "spectrum": "cross sections and saturated brightness versus detuning",
        "sweep-rabi": "line-center brightness and temperature versus coupling Rabi frequency",
        "transfer": "brightness along the medium plus peak/tail ratio",
        "bounds": "second-law bound, B_max/T_max, threshold and efficiencies",
        "verify": "run every oracle cross-check",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = build_run_config(args)
        if args.command == "verify":
            report = cmd_verify(cfg)
            if args.format == "json":
                text = json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
            else:
                text = report.to_text()
            _emit(text, args.out)
            return EXIT_OK if report.passed else EXIT_VERIFY_FAILED
        table = {
            "spectrum": cmd_spectrum,
            "sweep-rabi": cmd_sweep_rabi,
            "transfer": cmd_transfer,
            "bounds": cmd_bounds,
        }[args.command](cfg)
        _emit(to_json(table) if args.format == "json" else to_csv(table), args.out)
        return EXIT_OK
    except InvalidParamsError as exc:
        print(f"error: invalid parameters\n{exc.report}", file=sys.stderr)
        return EXIT_INVALID
    except ThresholdError as exc:
        print(f"error: {exc} [{exc.condition}; margin={exc.margin!r}]", file=sys.stderr)
        return EXIT_INVALID
    except (NumericalDegeneracyError, ArithmeticError) as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (EngineError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
