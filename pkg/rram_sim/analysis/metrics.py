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

"""Figures of merit of one measured drive period.

Every extractor works on the final period of the trace it is given.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy.stats import linregress

from rram_sim.config import DEFAULT_I_SENSE_A
from rram_sim.solvers.integrator import SimTrace

logger = logging.getLogger(__name__)


class MetricsError(ValueError):
    """Raised when a trace cannot support the requested measurement."""


class DegenerateFitError(MetricsError):
    """Raised when the q-phi fit has no spread in flux."""


@dataclass(frozen=True)
class MetricsConfig:
    i_sense: float = DEFAULT_I_SENSE_A

    def __post_init__(self) -> None:
        if not (isinstance(self.i_sense, (int, float)) and math.isfinite(self.i_sense) and self.i_sense > 0):
            raise MetricsError(f"i_sense must be positive, got {self.i_sense!r}")


@dataclass(frozen=True)
class CycleMetrics:
    v0: float
    freq: float
    lrs: float
    hrs: float
    window_ratio: float
    window_diff: float
    loop_area: float
    peak_current: float
    tau: float
    qphi_nonlinearity: float
    clipped: bool

    @property
    def distinguishable(self) -> bool:
        """Whether the peak read current clears the sense threshold."""
        return self.tau > 1.0

    @property
    def current_decade(self) -> float:
        return current_multiplier(self.peak_current)


def _measured(trace: SimTrace) -> SimTrace:
    if len(trace) == 0:
        raise MetricsError("trace is empty")
    try:
        return trace.final_period()
    except ValueError as exc:
        raise MetricsError(str(exc)) from exc


def extract_lrs_hrs(trace: SimTrace) -> Tuple[float, float]:
    """(LRS, HRS) as the min and max of the state-derived memristance."""
    cycle = _measured(trace)
    return float(np.min(cycle.m)), float(np.max(cycle.m))


def memory_window(lrs: float, hrs: float) -> Tuple[float, float]:
    if not lrs > 0:
        raise MetricsError(f"lrs must be positive, got {lrs!r}")
    if hrs < lrs:
        raise MetricsError(f"hrs ({hrs!r}) must not be below lrs ({lrs!r})")
    return hrs / lrs, hrs - lrs


def _crossings(v: np.ndarray, i: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Voltage zero crossings of a cyclic sample sequence.

    Returns (indices, currents): index j marks either a sample sitting
    exactly at V = 0 (reported with its own current) or a sign change
    between samples j and j+1 (mod n), reported with the current linearly
    interpolated to the crossing.
    """

    v_next, i_next = np.roll(v, -1), np.roll(i, -1)
    exact = v == 0.0
    straddle = (v * v_next < 0.0) & ~exact
    with np.errstate(invalid="ignore", divide="ignore"):
        frac = np.where(straddle, v / (v - v_next), 0.0)
    idx = np.flatnonzero(exact | straddle)
    return idx, (i + (i_next - i) * frac)[idx]


def _cycle_points(trace: SimTrace) -> Tuple[np.ndarray, np.ndarray]:
    # The measured period's last sample repeats its first one phase-wise.
    cycle = _measured(trace)
    return cycle.v[:-1], cycle.i[:-1]


def zero_crossing_currents(trace: SimTrace) -> np.ndarray:
    """Interpolated currents at every voltage zero crossing of the measured period."""
    v, i = _cycle_points(trace)
    return _crossings(v, i)[1]


def pinch_residual(trace: SimTrace) -> float:
    """Largest |I| at a voltage zero crossing, relative to the peak current."""
    peak = peak_current(trace)
    currents = zero_crossing_currents(trace)
    if peak == 0.0 or currents.size == 0:
        return 0.0
    return float(np.max(np.abs(currents))) / peak


def lobe_areas(trace: SimTrace) -> List[float]:
    """Signed shoelace area of each I-V lobe between voltage zero crossings."""

    v, i = _cycle_points(trace)
    if not np.any(v):
        return []
    indices, currents = _crossings(v, i)
    if indices.size == 0:
        raise MetricsError("drive never crosses zero within the measured period")

    n = len(v)
    areas: List[float] = []
    for k, (start, i_start) in enumerate(zip(indices, currents)):
        nxt = (k + 1) % indices.size
        end, i_end = int(indices[nxt]), currents[nxt]
        # Samples strictly after the start crossing up to and including `end`.
        count = (end - start) % n or n
        idx = (start + 1 + np.arange(count)) % n
        xs = np.concatenate(([0.0], v[idx], [0.0]))
        ys = np.concatenate(([i_start], i[idx], [i_end]))
        if v[end] == 0.0:
            # Exact zero sample: it is the closing point itself.
            xs, ys = xs[:-1], ys[:-1]
        if len(xs) < 3:
            raise MetricsError(f"lobe starting at sample {start} has fewer than 3 points")
        areas.append(0.5 * float(np.dot(xs, np.roll(ys, -1)) - np.dot(ys, np.roll(xs, -1))))
    return areas


def loop_area(trace: SimTrace) -> float:
    """Sum of absolute lobe areas of the pinched I-V loop (V*A)."""
    return float(sum(abs(area) for area in lobe_areas(trace)))


def peak_current(trace: SimTrace) -> float:
    cycle = _measured(trace)
    return float(np.max(np.abs(cycle.i)))


def lifetime_margin(peak: float, cfg: MetricsConfig) -> float:
    """tau = peak / i_sense; tau <= 1 means data is indistinguishable from noise."""
    if peak < 0:
        raise MetricsError(f"peak current must be non-negative, got {peak!r}")
    return peak / cfg.i_sense


def current_multiplier(peak: float) -> float:
    """Decade of the peak current, e.g. 1.3e-5 A -> 1e-5 A."""
    if peak <= 0:
        return 0.0
    return 10.0 ** math.floor(math.log10(peak))


def qphi_nonlinearity(trace: SimTrace) -> float:
    """1 - R^2 of the least-squares line q = a*phi + b over the measured period."""

    cycle = _measured(trace)
    if np.ptp(cycle.phi) == 0.0:
        raise DegenerateFitError("flux is constant over the measured period; q-phi fit is degenerate")
    if np.ptp(cycle.q) == 0.0:
        return 1.0
    fit = linregress(cycle.phi, cycle.q)
    return min(max(1.0 - fit.rvalue**2, 0.0), 1.0)


def cycle_metrics(trace: SimTrace, cfg: MetricsConfig) -> CycleMetrics:
    lrs, hrs = extract_lrs_hrs(trace)
    ratio, diff = memory_window(lrs, hrs)
    peak = peak_current(trace)
    try:
        nonlinearity = qphi_nonlinearity(trace)
    except DegenerateFitError:
        if trace.drive.v0 != 0.0:
            raise
        # A null drive leaves q and phi at the origin: nothing nonlinear to measure.
        nonlinearity = 0.0
    return CycleMetrics(
        v0=trace.drive.v0,
        freq=trace.drive.freq,
        lrs=lrs,
        hrs=hrs,
        window_ratio=ratio,
        window_diff=diff,
        loop_area=loop_area(trace),
        peak_current=peak,
        tau=lifetime_margin(peak, cfg),
        qphi_nonlinearity=nonlinearity,
        clipped=trace.clipped,
    )
