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

from __future__ import annotations

import pytest

from rram_sim.analysis.metrics import MetricsConfig
from rram_sim.models.device import DeviceParams
from rram_sim.models.waveform import DriveWaveform
from rram_sim.solvers.integrator import SimConfig, SimTrace, simulate

# Coarse enough to keep unit tests fast, fine enough for 1e-6 level checks.
FAST_STEPS = 2_000


@pytest.fixture
def device() -> DeviceParams:
    return DeviceParams()


@pytest.fixture
def fast_sim() -> SimConfig:
    return SimConfig(steps_per_period=FAST_STEPS)


@pytest.fixture
def metrics_cfg() -> MetricsConfig:
    return MetricsConfig()


@pytest.fixture
def low_trace(device: DeviceParams, fast_sim: SimConfig) -> SimTrace:
    """0.2 V at 1 Hz, the most linear point of the default grid."""
    return simulate(device, DriveWaveform(v0=0.2, freq=1.0), fast_sim)


@pytest.fixture
def high_trace(device: DeviceParams, fast_sim: SimConfig) -> SimTrace:
    """1.2 V at 1 Hz, the strongest write of the default grid."""
    return simulate(device, DriveWaveform(v0=1.2, freq=1.0), fast_sim)
