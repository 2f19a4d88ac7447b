# Copyright 2025 rram-sim developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Command-line parsing and config-file loading.

Human-facing units are nm, V, Hz and A; everything is converted to SI
before it reaches the models. Precedence: defaults < config file < flags.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional

from rram_sim.analysis.metrics import MetricsConfig, MetricsError
from rram_sim.analysis.sweep import GridError, SweepGrid, build_grid
from rram_sim.models.device import DeviceParams, validate_params
from rram_sim.models.waveform import DriveWaveform, WaveformError
from rram_sim.solvers.integrator import SimConfig, SimulationConfigError

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - Python 3.10
    import tomli as tomllib

logger = logging.getLogger(__name__)

Command = Literal["run", "sweep", "verify"]


class ConfigError(ValueError):
    """Raised for unreadable, malformed or unknown config-file entries."""


def _nm(value: float) -> float:
    return value / 1e9


# config key -> (section, field, converter to SI)
_CONFIG_KEYS = {
    "device.D_nm": ("device", "D", _nm),
    "device.w0_nm": ("device", "w0", _nm),
    "device.r_on_ohm": ("device", "r_on", float),
    "device.r_off_ohm": ("device", "r_off", float),
    "device.mu_v": ("device", "mu_v", float),
    "device.eta": ("device", "eta", None),
    "sim.steps_per_period": ("sim", "steps_per_period", None),
    "sim.settle_periods": ("sim", "settle_periods", None),
    "metrics.i_sense_amp": ("metrics", "i_sense", float),
    "grid.amplitudes_v": ("grid", "amplitudes", None),
    "grid.frequencies_hz": ("grid", "frequencies", None),
}
_INTEGER_KEYS = {"device.eta", "sim.steps_per_period", "sim.settle_periods"}
_LIST_KEYS = {"grid.amplitudes_v", "grid.frequencies_hz"}


@dataclass(frozen=True)
class ConfigOverrides:
    """Partial settings from a config file, already in SI field names."""

    device: Dict[str, Any] = field(default_factory=dict)
    sim: Dict[str, Any] = field(default_factory=dict)
    metrics: Dict[str, Any] = field(default_factory=dict)
    grid: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class RunSpec:
    command: Command
    device: DeviceParams
    sim: SimConfig
    metrics_cfg: MetricsConfig
    out_path: Path
    drive: Optional[DriveWaveform] = None
    grid: Optional[SweepGrid] = None
    emit_plot_data: bool = False
    plot_dir: Optional[Path] = None
    workers: Optional[int] = None
    verbose: bool = False


def _flatten(doc: Mapping[str, Any], prefix: str = "") -> Dict[str, Any]:
    flat: Dict[str, Any] = {}
    for key, value in doc.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{name}."))
        else:
            flat[name] = value
    return flat


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def load_config(path: Path | str) -> ConfigOverrides:
    """Read a TOML config of dotted keys (``device.D_nm = 10``) into overrides."""

    source = Path(path)
    try:
        with source.open("rb") as handle:
            doc = tomllib.load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config '{source}': {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        # The decoder message carries the line and column.
        raise ConfigError(f"config '{source}': parse error {exc}") from exc

    sections: Dict[str, Dict[str, Any]] = {"device": {}, "sim": {}, "metrics": {}, "grid": {}}
    for key, value in _flatten(doc).items():
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"config '{source}': unknown key '{key}'")
        section, name, convert = _CONFIG_KEYS[key]
        if key in _LIST_KEYS:
            if not isinstance(value, list) or not all(_is_number(item) for item in value):
                raise ConfigError(f"config '{source}': '{key}' must be a list of numbers")
            sections[section][name] = [float(item) for item in value]
            continue
        if not _is_number(value):
            raise ConfigError(f"config '{source}': '{key}' must be a number, got {value!r}")
        if key in _INTEGER_KEYS:
            if isinstance(value, float) and not value.is_integer():
                raise ConfigError(f"config '{source}': '{key}' must be an integer, got {value!r}")
            value = int(value)
        sections[section][name] = convert(value) if convert else value

    eta = sections["device"].get("eta")
    if eta is not None and eta not in (1, -1):
        raise ConfigError(f"config '{source}': eta must be +1 or -1, got {eta!r}")

    logger.debug("load_config path=%s keys=%s", source, sum(len(s) for s in sections.values()))
    return ConfigOverrides(**sections)


def _number_list(text: str) -> List[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed number list: {text!r}") from None


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, default=None, help="TOML config file (flags override it)")
    parser.add_argument("--out", required=True, help="Output CSV path")
    parser.add_argument("--steps-per-period", type=int, default=None, help="RK4 steps per drive period")
    parser.add_argument("--settle-periods", type=int, default=None, help="Periods simulated before the measured one")
    parser.add_argument("--i-sense", type=float, default=None, help="Sense-amplifier threshold current (A)")
    parser.add_argument("--d-nm", type=float, default=None, help="Device thickness D (nm)")
    parser.add_argument("--w0-nm", type=float, default=None, help="Initial doped width w0 (nm)")
    parser.add_argument("--r-on", type=float, default=None, help="R_ON (ohm)")
    parser.add_argument("--r-off", type=float, default=None, help="R_OFF (ohm)")
    parser.add_argument("--mu-v", type=float, default=None, help="Dopant mobility (m^2/V/s)")
    parser.add_argument("--eta", type=int, default=None, help="Polarity, +1 or -1")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")


def _add_drive(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--amplitude", type=float, required=True, help="Write amplitude V0 (V)")
    parser.add_argument("--frequency", type=float, required=True, help="Drive frequency (Hz)")
    parser.add_argument("--periods", type=int, default=1, help="Measured periods to simulate")
    parser.add_argument("--phase", type=float, default=0.0, help="Initial phase (rad)")


def _add_plot_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--emit-plot-data", action="store_true", help="Write per-figure CSV series")
    parser.add_argument("--plot-dir", type=Path, default=None, help="Directory for figure series")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rram-sim",
        description="Linear-drift memristor RRAM simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Simulate one drive and write its trace")
    _add_common(run)
    _add_drive(run)
    _add_plot_flags(run)

    sweep = sub.add_parser("sweep", help="Sweep amplitude x frequency and write the metrics table")
    _add_common(sweep)
    _add_plot_flags(sweep)
    sweep.add_argument("--amplitudes", type=_number_list, default=None, help="Comma list of amplitudes (V)")
    sweep.add_argument("--frequencies", type=_number_list, default=None, help="Comma list of frequencies (Hz)")
    sweep.add_argument("--workers", type=int, default=None, help="Parallel sweep workers")

    verify = sub.add_parser("verify", help="Check the integrator against the closed-form solution")
    _add_common(verify)
    _add_drive(verify)
    return parser


def _pick(flag: Any, overrides: Mapping[str, Any], name: str) -> Dict[str, Any]:
    if flag is not None:
        return {name: flag}
    if name in overrides:
        return {name: overrides[name]}
    return {}


def parse_cli(argv: Optional[List[str]] = None) -> RunSpec:
    """Resolve argv into a RunSpec; usage errors exit with status 2."""

    parser = _build_parser()
    args = parser.parse_args(argv)

    try:
        overrides = load_config(args.config) if args.config else ConfigOverrides()
    except ConfigError as exc:
        parser.error(str(exc))

    device_kwargs: Dict[str, Any] = {}
    device_kwargs.update(_pick(None if args.d_nm is None else _nm(args.d_nm), overrides.device, "D"))
    device_kwargs.update(_pick(None if args.w0_nm is None else _nm(args.w0_nm), overrides.device, "w0"))
    device_kwargs.update(_pick(args.r_on, overrides.device, "r_on"))
    device_kwargs.update(_pick(args.r_off, overrides.device, "r_off"))
    device_kwargs.update(_pick(args.mu_v, overrides.device, "mu_v"))
    device_kwargs.update(_pick(args.eta, overrides.device, "eta"))
    device = DeviceParams(**device_kwargs)
    check = validate_params(device)
    if not check.ok:
        parser.error("; ".join(str(problem) for problem in check.problems))

    sim_kwargs: Dict[str, Any] = {}
    sim_kwargs.update(_pick(args.steps_per_period, overrides.sim, "steps_per_period"))
    sim_kwargs.update(_pick(args.settle_periods, overrides.sim, "settle_periods"))
    metrics_kwargs = _pick(args.i_sense, overrides.metrics, "i_sense")

    try:
        sim = SimConfig(**sim_kwargs)
        metrics_cfg = MetricsConfig(**metrics_kwargs)
        drive = grid = None
        if args.command in ("run", "verify"):
            drive = DriveWaveform(v0=args.amplitude, freq=args.frequency, phase=args.phase, periods=args.periods)
        else:
            grid = build_grid(
                args.amplitudes if args.amplitudes is not None else overrides.grid.get("amplitudes"),
                args.frequencies if args.frequencies is not None else overrides.grid.get("frequencies"),
            )
    except (SimulationConfigError, MetricsError, WaveformError, GridError) as exc:
        parser.error(str(exc))

    if not args.out.strip():
        parser.error("--out must not be empty")
    out_path = Path(args.out)

    emit = getattr(args, "emit_plot_data", False)
    plot_dir = getattr(args, "plot_dir", None)
    if emit and plot_dir is None:
        plot_dir = out_path.parent / f"{out_path.stem}_plots"

    spec = RunSpec(
        command=args.command,
        device=device,
        sim=sim,
        metrics_cfg=metrics_cfg,
        out_path=out_path,
        drive=drive,
        grid=grid,
        emit_plot_data=emit,
        plot_dir=plot_dir,
        workers=getattr(args, "workers", None),
        verbose=args.verbose,
    )
    return spec
