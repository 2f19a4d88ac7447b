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

import re
from pathlib import Path

import pytest

from rram_sim.cli import ConfigError, load_config, parse_cli
from rram_sim.config import DEFAULT_AMPLITUDES_V, DEFAULT_FREQUENCIES_HZ
from rram_sim.models.device import DeviceParams
from rram_sim.models.waveform import DriveWaveform


def _config(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "rram.toml"
    path.write_text(text, encoding="utf-8")
    return path


def _usage_error(argv, capsys) -> str:
    with pytest.raises(SystemExit) as info:
        parse_cli(argv)
    assert info.value.code == 2
    return capsys.readouterr().err


def test_run_flags_map_to_spec():
    spec = parse_cli(["run", "--amplitude", "1.0", "--frequency", "1", "--out", "trace.csv"])

    assert spec.command == "run"
    assert spec.drive == DriveWaveform(v0=1.0, freq=1.0, phase=0.0, periods=1)
    assert spec.device == DeviceParams()
    assert spec.sim.steps_per_period == 10_000
    assert spec.metrics_cfg.i_sense == 1e-6
    assert spec.out_path == Path("trace.csv")
    assert spec.grid is None
    assert not spec.emit_plot_data
    assert spec.plot_dir is None


def test_sweep_defaults_to_full_grid():
    spec = parse_cli(["sweep", "--out", "metrics.csv"])

    assert spec.grid.amplitudes == DEFAULT_AMPLITUDES_V
    assert spec.grid.frequencies == DEFAULT_FREQUENCIES_HZ
    assert spec.drive is None


def test_sweep_grid_flags():
    spec = parse_cli(["sweep", "--amplitudes", "0.2,0.4", "--frequencies", "1,200", "--workers", "2", "--out", "m.csv"])

    assert spec.grid.amplitudes == (0.2, 0.4)
    assert spec.grid.frequencies == (1.0, 200.0)
    assert spec.workers == 2


def test_plot_dir_defaults_next_to_output():
    spec = parse_cli(["sweep", "--emit-plot-data", "--out", "results/metrics.csv"])

    assert spec.emit_plot_data
    assert spec.plot_dir == Path("results/metrics_plots")


def test_device_flags_are_converted_to_si():
    spec = parse_cli(
        ["verify", "--amplitude", "0.2", "--frequency", "1", "--d-nm", "20", "--w0-nm", "5", "--eta", "-1", "--out", "r.csv"]
    )

    assert spec.device.D == pytest.approx(20e-9)
    assert spec.device.w0 == pytest.approx(5e-9)
    assert spec.device.eta == -1


def test_negative_frequency_is_usage_error(capsys):
    err = _usage_error(["run", "--amplitude", "1.0", "--frequency", "-3", "--out", "t.csv"], capsys)

    assert "frequency must be positive" in err


def test_malformed_number_names_token(capsys):
    err = _usage_error(["run", "--amplitude", "abc", "--frequency", "1", "--out", "t.csv"], capsys)

    assert "abc" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["run", "--frequency", "1", "--out", "t.csv"],
        ["run", "--amplitude", "1", "--frequency", "1"],
        ["sweep", "--out", "m.csv", "--bogus"],
        ["sweep", "--amplitudes", "0.4,0.2", "--out", "m.csv"],
        ["run", "--amplitude", "1", "--frequency", "1", "--steps-per-period", "10", "--out", "t.csv"],
        ["run", "--amplitude", "1", "--frequency", "1", "--out", ""],
        ["run", "--amplitude", "1", "--frequency", "1", "--w0-nm", "12", "--out", "t.csv"],
    ],
)
def test_usage_errors(argv, capsys):
    _usage_error(argv, capsys)


def test_empty_config_keeps_defaults(tmp_path):
    overrides = load_config(_config(tmp_path, ""))

    assert overrides.device == {}
    assert overrides.sim == {}
    assert overrides.metrics == {}
    assert overrides.grid == {}


def test_config_values_are_converted(tmp_path):
    overrides = load_config(
        _config(
            tmp_path,
            "device.D_nm = 10\n"
            "device.w0_nm = 2\n"
            "device.r_on_ohm = 250\n"
            "sim.steps_per_period = 2000\n"
            "metrics.i_sense_amp = 2e-6\n"
            "grid.amplitudes_v = [0.2, 0.4]\n",
        )
    )

    assert overrides.device == {"D": 1e-8, "w0": 2e-9, "r_on": 250.0}
    assert overrides.sim == {"steps_per_period": 2000}
    assert overrides.metrics == {"i_sense": 2e-6}
    assert overrides.grid == {"amplitudes": [0.2, 0.4]}


def test_config_r_on_leaves_r_off(tmp_path):
    path = _config(tmp_path, "device.r_on_ohm = 250\n")
    spec = parse_cli(["run", "--amplitude", "0.2", "--frequency", "1", "--config", str(path), "--out", "t.csv"])

    assert spec.device.r_on == 250.0
    assert spec.device.r_off == 20_000.0


@pytest.mark.parametrize(
    "text, message",
    [
        ("device.eta = 0\n", "eta must be +1 or -1"),
        ("device.colour = 3\n", "unknown key 'device.colour'"),
        ("device.r_on_ohm = 'low'\n", "must be a number"),
        ("sim.steps_per_period = 1000.5\n", "must be an integer"),
        ("grid.frequencies_hz = [1, 'x']\n", "must be a list of numbers"),
        ("device.D_nm = \n", "parse error"),
    ],
)
def test_config_rejects(tmp_path, text, message):
    with pytest.raises(ConfigError, match=re.escape(message)):
        load_config(_config(tmp_path, text))


def test_config_parse_error_reports_line(tmp_path):
    with pytest.raises(ConfigError, match="line 2"):
        load_config(_config(tmp_path, "device.D_nm = 10\ndevice.w0_nm = = 2\n"))


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError, match="cannot read config"):
        load_config(tmp_path / "absent.toml")


def test_bad_config_is_usage_error(tmp_path, capsys):
    path = _config(tmp_path, "device.eta = 0\n")
    err = _usage_error(["sweep", "--config", str(path), "--out", "m.csv"], capsys)

    assert "eta must be +1 or -1" in err


_PRECEDENCE = [
    ("device.D_nm = 20", ["--d-nm", "30"], lambda s: s.device.D, 30e-9),
    ("device.w0_nm = 3", ["--w0-nm", "4"], lambda s: s.device.w0, 4e-9),
    ("device.r_on_ohm = 200", ["--r-on", "300"], lambda s: s.device.r_on, 300.0),
    ("device.r_off_ohm = 10000", ["--r-off", "15000"], lambda s: s.device.r_off, 15_000.0),
    ("device.mu_v = 2e-14", ["--mu-v", "3e-14"], lambda s: s.device.mu_v, 3e-14),
    ("device.eta = -1", ["--eta", "1"], lambda s: s.device.eta, 1),
    ("sim.steps_per_period = 2000", ["--steps-per-period", "3000"], lambda s: s.sim.steps_per_period, 3000),
    ("sim.settle_periods = 1", ["--settle-periods", "2"], lambda s: s.sim.settle_periods, 2),
    ("metrics.i_sense_amp = 2e-6", ["--i-sense", "3e-6"], lambda s: s.metrics_cfg.i_sense, 3e-6),
    ("grid.amplitudes_v = [0.2]", ["--amplitudes", "0.4"], lambda s: s.grid.amplitudes, (0.4,)),
    ("grid.frequencies_hz = [1]", ["--frequencies", "2"], lambda s: s.grid.frequencies, (2.0,)),
]


@pytest.mark.parametrize("line, flags, read, expected", _PRECEDENCE)
def test_flag_beats_config(tmp_path, line, flags, read, expected):
    path = _config(tmp_path, line + "\n")
    from_file = parse_cli(["sweep", "--config", str(path), "--out", "m.csv"])
    from_flag = parse_cli(["sweep", "--config", str(path), *flags, "--out", "m.csv"])

    assert read(from_file) != read(from_flag)
    assert read(from_flag) == pytest.approx(expected)
