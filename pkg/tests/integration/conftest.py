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

import rram_sim.config as config
from rram_sim.analysis.metrics import MetricsConfig
from rram_sim.analysis.sweep import SweepResult, build_grid, run_sweep
from rram_sim.models.device import DeviceParams
from rram_sim.solvers.integrator import SimConfig


@pytest.fixture(autouse=True)
def _log_to_tmp(tmp_path, monkeypatch):
    monkeypatch.setattr(config, "LOG_DIR", tmp_path / "logs")


@pytest.fixture(scope="session")
def default_sweep() -> SweepResult:
    """The full default grid at full resolution, computed once per session."""
    return run_sweep(DeviceParams(), build_grid(), SimConfig(), MetricsConfig())
