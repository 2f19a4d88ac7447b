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

"""Sinusoidal write-voltage drive and its closed-form flux."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

ArrayLike = Union[float, np.ndarray]


class WaveformError(ValueError):
    """Raised for an invalid drive specification or sampling request."""


@dataclass(frozen=True)
class DriveWaveform:
    """V(t) = v0 * sin(2*pi*freq*t + phase), simulated for ``periods`` periods."""

    v0: float
    freq: float
    phase: float = 0.0
    periods: int = 1

    def __post_init__(self) -> None:
        if not math.isfinite(self.v0) or self.v0 < 0:
            raise WaveformError(f"amplitude must be non-negative, got {self.v0!r}")
        if not math.isfinite(self.freq) or self.freq <= 0:
            raise WaveformError(f"frequency must be positive, got {self.freq!r}")
        if not math.isfinite(self.phase):
            raise WaveformError(f"phase must be finite, got {self.phase!r}")
        if isinstance(self.periods, bool) or not isinstance(self.periods, int) or self.periods < 1:
            raise WaveformError(f"periods must be an integer >= 1, got {self.periods!r}")

    @property
    def period(self) -> float:
        return 1.0 / self.freq

    @property
    def omega(self) -> float:
        return 2.0 * math.pi * self.freq

    @property
    def peak_flux(self) -> float:
        """Largest flux reached from t = 0 (phase 0: v0 / (pi * freq) at T/2)."""
        return self.v0 * (math.cos(self.phase) + 1.0) / self.omega


def voltage_at(d: DriveWaveform, t: ArrayLike) -> ArrayLike:
    if np.ndim(t):
        return d.v0 * np.sin(d.omega * np.asarray(t, dtype=float) + d.phase)
    return d.v0 * math.sin(d.omega * t + d.phase)


def flux_at(d: DriveWaveform, t: ArrayLike) -> ArrayLike:
    """Integral of V from 0 to t: v0 * (cos(phase) - cos(omega*t + phase)) / omega."""
    if np.ndim(t):
        return d.v0 * (math.cos(d.phase) - np.cos(d.omega * np.asarray(t, dtype=float) + d.phase)) / d.omega
    return d.v0 * (math.cos(d.phase) - math.cos(d.omega * t + d.phase)) / d.omega


def time_grid(d: DriveWaveform, n_samples: int, n_periods: int) -> np.ndarray:
    """Uniform sample times covering ``n_periods`` periods, both ends included.

    The integrator and the analytic oracle both sample through here, so two
    traces over the same span and sample count share bit-identical times.
    """

    if n_samples < 2:
        raise WaveformError(f"need at least 2 samples, got {n_samples}")
    if n_periods < 1:
        raise WaveformError(f"need at least 1 period, got {n_periods}")
    dt = (n_periods / d.freq) / (n_samples - 1)
    return np.arange(n_samples, dtype=float) * dt
