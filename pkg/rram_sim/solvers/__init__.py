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

"""Numerical and closed-form solutions of the drift model."""

from .integrator import SimConfig, SimTrace, SimulationConfigError, simulate, step
from .oracle import (
    AnalyticValidityError,
    OracleReport,
    TraceMismatchError,
    analytic_trace,
    charge_of_flux,
    clip_flux_threshold,
    compare_traces,
    flux_window,
)

__all__ = [
    "SimConfig",
    "SimTrace",
    "SimulationConfigError",
    "simulate",
    "step",
    "AnalyticValidityError",
    "OracleReport",
    "TraceMismatchError",
    "analytic_trace",
    "charge_of_flux",
    "clip_flux_threshold",
    "compare_traces",
    "flux_window",
]
