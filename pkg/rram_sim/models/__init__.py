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

"""Device and drive models."""

from .device import (
    DeviceParams,
    DeviceParamsError,
    DeviceState,
    StateOutOfRangeError,
    ValidationResult,
    clip_state,
    memristance,
    state_derivative,
    validate_params,
)
from .waveform import DriveWaveform, WaveformError, flux_at, time_grid, voltage_at

__all__ = [
    "DeviceParams",
    "DeviceParamsError",
    "DeviceState",
    "StateOutOfRangeError",
    "ValidationResult",
    "clip_state",
    "memristance",
    "state_derivative",
    "validate_params",
    "DriveWaveform",
    "WaveformError",
    "flux_at",
    "time_grid",
    "voltage_at",
]
