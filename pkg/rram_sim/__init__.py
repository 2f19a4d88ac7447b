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

"""Linear-drift memristor simulator for RRAM write-drive studies."""

from .analysis.metrics import CycleMetrics, MetricsConfig, cycle_metrics
from .analysis.sweep import SweepGrid, SweepResult, build_grid, rank_lifetime, run_sweep
from .models.device import DeviceParams
from .models.waveform import DriveWaveform
from .solvers.integrator import SimConfig, SimTrace, simulate
from .solvers.oracle import analytic_trace, compare_traces

__all__ = [
    "CycleMetrics",
    "MetricsConfig",
    "cycle_metrics",
    "SweepGrid",
    "SweepResult",
    "build_grid",
    "rank_lifetime",
    "run_sweep",
    "DeviceParams",
    "DriveWaveform",
    "SimConfig",
    "SimTrace",
    "simulate",
    "analytic_trace",
    "compare_traces",
]
