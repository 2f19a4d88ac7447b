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

from dataclasses import replace
from datetime import datetime, timezone

import numpy as np
import pytest

import rram_sim.runtime as runtime
import rram_sim.solvers.integrator as integrator
from rram_sim.models.device import DeviceState, StateOutOfRangeError, clip_state
from rram_sim.models.waveform import DriveWaveform
from rram_sim.solvers.integrator import SimConfig, SimulationConfigError, advance_state, simulate, step
from rram_sim.solvers.oracle import analytic_trace


def _w_error(device, drive, steps):
    numeric = simulate(device, drive, SimConfig(steps_per_period=steps))
    exact = analytic_trace(device, drive, steps + 1)
    return float(np.max(np.abs(numeric.w - exact.w)))


def test_trace_starts_at_initial_state(low_trace, device):
    assert len(low_trace) == 2_001
    assert low_trace.t[0] == 0.0
    assert low_trace.w[0] == device.w0
    assert low_trace.m[0] == pytest.approx(16020.0)
    assert low_trace.i[0] == 0.0
    assert low_trace.q[0] == 0.0
    assert low_trace.phi[0] == 0.0
    assert low_trace.t[-1] == pytest.approx(1.0)


def test_state_returns_after_full_period(high_trace, device):
    # Net flux over a period is zero, so the state comes back to w0.
    assert high_trace.w[-1] == pytest.approx(device.w0, abs=1e-6 * device.D)
    assert not high_trace.clipped


def test_state_peaks_at_half_period(high_trace):
    assert int(np.argmax(high_trace.w)) == pytest.approx(1_000, abs=1)


def test_null_drive_keeps_state(device, fast_sim):
    trace = simulate(device, DriveWaveform(v0=0.0, freq=1.0), fast_sim)

    assert np.all(trace.w == device.w0)
    assert np.all(trace.i == 0.0)
    assert not trace.clipped


def test_trace_columns_are_read_only(low_trace):
    with pytest.raises(ValueError):
        low_trace.w[0] = 0.0


def test_samples_iterate_rows(device):
    trace = simulate(device, DriveWaveform(v0=0.2, freq=1.0), SimConfig(steps_per_period=100))
    rows = list(trace.samples())

    assert len(rows) == 101
    assert rows[0].w == device.w0
    assert rows[-1].t == pytest.approx(1.0)


def test_settle_periods_extend_the_trace(device):
    sim = SimConfig(steps_per_period=500, settle_periods=2)
    trace = simulate(device, DriveWaveform(v0=0.4, freq=2.0), sim)
    final = trace.final_period()

    assert len(trace) == 1_501
    assert len(final) == 501
    assert final.t[0] == trace.t[1_000]
    assert final.settle_periods == 0
    assert final.drive.periods == 1


def test_final_period_of_multi_period_drive(device, fast_sim):
    trace = simulate(device, DriveWaveform(v0=0.4, freq=1.0, periods=3), fast_sim)
    final = trace.final_period()

    assert len(trace) == 6_001
    np.testing.assert_array_equal(final.w, trace.w[4_000:])


def test_clipping_is_flagged(device, fast_sim):
    # 1.2 V at 0.5 Hz drives more flux than the device can absorb.
    trace = simulate(device, DriveWaveform(v0=1.2, freq=0.5), fast_sim)

    assert trace.clipped
    assert float(np.max(trace.w)) == device.D
    assert float(np.min(trace.m)) == pytest.approx(device.r_on)


def test_negative_polarity_drives_state_down(device, fast_sim):
    trace = simulate(replace(device, eta=-1), DriveWaveform(v0=0.2, freq=1.0), fast_sim)

    assert float(np.min(trace.w)) < device.w0
    assert float(np.max(trace.m)) > 16020.0


def test_convergence_order(device):
    drive = DriveWaveform(v0=1.2, freq=1.0)
    coarse = _w_error(device, drive, 1_000)
    fine = _w_error(device, drive, 2_000)

    assert coarse / fine >= 12.0


def test_step_without_drive_is_identity(device):
    drive = DriveWaveform(v0=0.0, freq=1.0)

    assert step(device, drive, device.w0, 0.0, 1e-3) == device.w0


def test_step_moves_with_current(device):
    drive = DriveWaveform(v0=1.0, freq=1.0)
    w_next = step(device, drive, device.w0, 0.25, 1e-3)

    # dw/dt = beta * V / M at the crest.
    assert w_next - device.w0 == pytest.approx(1e-4 * 1.0 / 16020.0 * 1e-3, rel=1e-3)


def test_step_rejects_bad_inputs(device):
    drive = DriveWaveform(v0=1.0, freq=1.0)
    with pytest.raises(StateOutOfRangeError):
        step(device, drive, -1e-9, 0.0, 1e-3)
    with pytest.raises(SimulationConfigError):
        step(device, drive, device.w0, 0.0, 0.0)


@pytest.mark.parametrize(
    "kwargs",
    [{"steps_per_period": 10}, {"steps_per_period": 1_000.5}, {"settle_periods": -1}, {"steps_per_period": True}],
)
def test_sim_config_rejects(kwargs):
    with pytest.raises(SimulationConfigError):
        SimConfig(**kwargs)


def test_python_kernel_when_jit_disabled(monkeypatch, device):
    caps = runtime.RuntimeCapabilities(
        cpu_count=1,
        numba_available=False,
        numba_version=None,
        jit_enabled=False,
        default_workers=1,
        timestamp=datetime.now(timezone.utc),
    )
    monkeypatch.setattr(runtime, "_RUNTIME", runtime.Runtime(caps))
    calls = []
    original = integrator._march_py

    def _spy(*args):
        calls.append(args)
        return original(*args)

    monkeypatch.setattr(integrator, "_march_py", _spy)
    trace = simulate(device, DriveWaveform(v0=0.2, freq=1.0), SimConfig(steps_per_period=100))

    assert len(calls) == 1
    assert len(trace) == 101


@pytest.mark.skipif(integrator._march_jit is None, reason="numba not installed")
def test_jit_kernel_matches_python_kernel(device):
    drive = DriveWaveform(v0=1.0, freq=2.0)
    args = integrator._kernel_args(device, drive)
    dt = drive.period / 1_000

    w_py, clipped_py = integrator._march_py(device.w0, 1_000, dt, *args)
    w_jit, clipped_jit = integrator._march_jit(device.w0, 1_000, dt, *args)

    np.testing.assert_allclose(w_jit, w_py, rtol=1e-13, atol=0.0)
    assert bool(clipped_jit) == bool(clipped_py)


def test_current_is_ohmic(high_trace):
    residual = np.abs(high_trace.i * high_trace.m - high_trace.v)

    assert np.all(residual <= 1e-12 * np.maximum(np.abs(high_trace.v), 1.0))


def test_state_returns_after_every_period(device, fast_sim):
    trace = simulate(device, DriveWaveform(v0=0.4, freq=1.0, periods=3), fast_sim)

    for k in (1, 2, 3):
        assert trace.w[k * fast_sim.steps_per_period] == pytest.approx(device.w0, abs=1e-6 * device.D)


def test_step_polarity_is_symmetric(device):
    drive = DriveWaveform(v0=0.2, freq=1.0)
    w = 2e-9

    up = step(device, drive, w, 0.0, 1e-4) - w
    down = step(replace(device, eta=-1), drive, w, 0.0, 1e-4) - w

    assert 0.0 < up < 1e-12
    assert down == pytest.approx(-up, rel=1e-6)


def test_step_overshoot_lands_on_boundary(device):
    drive = DriveWaveform(v0=1.0, freq=1.0)

    assert step(device, drive, device.D - 1e-12, 0.25, 1e-5) == device.D
    assert step(replace(device, eta=-1), drive, 1e-12, 0.25, 1e-3) == 0.0


@pytest.mark.parametrize(
    "eta, w, dt",
    [(1, 10e-9 - 1e-12, 1e-5), (-1, 1e-12, 1e-3), (1, 2e-9, 1e-3), (-1, 5e-9, 1e-3)],
)
def test_kernel_clamp_matches_clip_state(device, eta, w, dt):
    p = replace(device, eta=eta)
    args = integrator._kernel_args(p, DriveWaveform(v0=1.0, freq=1.0))

    assert integrator._advance_py(w, 0.25, dt, *args) == clip_state(p, integrator._rk4_py(w, 0.25, dt, *args))


def test_advance_state_keeps_clipped_flag(device):
    drive = DriveWaveform(v0=1.0, freq=1.0)
    start = DeviceState(w=device.D - 1e-12)

    hit = advance_state(device, drive, start, 0.25, 1e-5)
    assert hit == DeviceState(w=device.D, clipped=True)

    # Negative half-cycle pulls the state back inside; the flag stays set.
    back = advance_state(device, drive, hit, 0.75, 1e-5)
    assert 0.0 < back.w < device.D
    assert back.clipped


def test_advance_state_agrees_with_step(device):
    drive = DriveWaveform(v0=0.6, freq=2.0)
    state = advance_state(device, drive, DeviceState(w=device.w0), 0.1, 1e-4)

    assert state.w == step(device, drive, device.w0, 0.1, 1e-4)
    assert not state.clipped
    with pytest.raises(StateOutOfRangeError):
        advance_state(device, drive, DeviceState(w=2 * device.D), 0.0, 1e-4)


def test_final_state(device, fast_sim, high_trace):
    assert high_trace.final_state == DeviceState(w=float(high_trace.w[-1]), clipped=False)

    clipped = simulate(device, DriveWaveform(v0=1.2, freq=0.5), fast_sim)
    assert clipped.final_state.clipped
