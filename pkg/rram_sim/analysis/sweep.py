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

"""Amplitude x frequency sweep of the write drive."""

from __future__ import annotations

import logging
import math
from concurrent.futures import FIRST_EXCEPTION, ThreadPoolExecutor, wait
from dataclasses import dataclass
from time import perf_counter
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple

from rram_sim.analysis.metrics import CycleMetrics, MetricsConfig, cycle_metrics
from rram_sim.config import DEFAULT_AMPLITUDES_V, DEFAULT_FREQUENCIES_HZ
from rram_sim.models.device import DeviceParams
from rram_sim.models.waveform import DriveWaveform
from rram_sim.runtime import WorkerRequest, choose_workers, detect_runtime
from rram_sim.solvers.integrator import SimConfig, simulate

logger = logging.getLogger(__name__)


class GridError(ValueError):
    """Raised when a grid axis is empty, unordered or non-positive."""


class SweepError(RuntimeError):
    """Raised when a grid cell fails; carries the failing coordinates."""

    def __init__(self, v0: float, freq: float, cause: BaseException):
        self.v0 = v0
        self.freq = freq
        super().__init__(f"sweep cell v0={v0!r} V freq={freq!r} Hz failed: {cause}")


@dataclass(frozen=True)
class SweepGrid:
    amplitudes: Tuple[float, ...]
    frequencies: Tuple[float, ...]

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.amplitudes), len(self.frequencies)


class LifetimeRank(NamedTuple):
    v0: float
    freq: float
    tau: float


@dataclass(frozen=True)
class SweepResult:
    """Cells indexed [amplitude index][frequency index]."""

    grid: SweepGrid
    device: DeviceParams
    sim: SimConfig
    metrics_cfg: MetricsConfig
    cells: Tuple[Tuple[CycleMetrics, ...], ...]

    def cell(self, row: int, col: int) -> CycleMetrics:
        return self.cells[row][col]

    def iter_cells(self) -> Iterator[CycleMetrics]:
        """Row-major: amplitude outer, frequency inner."""
        for row in self.cells:
            yield from row


def _check_axis(name: str, values: Sequence[float]) -> Tuple[float, ...]:
    axis = tuple(float(value) for value in values)
    if not axis:
        raise GridError(f"{name} must not be empty")
    for index, value in enumerate(axis):
        if not math.isfinite(value) or value <= 0:
            raise GridError(f"{name}: entry {value!r} at index {index} must be positive")
        if index and value <= axis[index - 1]:
            raise GridError(f"{name}: not strictly increasing at index {index}")
    return axis


def build_grid(
    amplitudes: Optional[Sequence[float]] = None,
    frequencies: Optional[Sequence[float]] = None,
) -> SweepGrid:
    """Validate a grid; an omitted axis falls back to the default sweep."""

    return SweepGrid(
        amplitudes=_check_axis("amplitudes", DEFAULT_AMPLITUDES_V if amplitudes is None else amplitudes),
        frequencies=_check_axis("frequencies", DEFAULT_FREQUENCIES_HZ if frequencies is None else frequencies),
    )


def run_cell(
    device: DeviceParams, v0: float, freq: float, sim: SimConfig, mcfg: MetricsConfig
) -> CycleMetrics:
    """Simulate one grid point and measure its final period."""
    trace = simulate(device, DriveWaveform(v0=v0, freq=freq, phase=0.0, periods=1), sim)
    return cycle_metrics(trace, mcfg)


def run_sweep(
    device: DeviceParams,
    grid: SweepGrid,
    sim: SimConfig,
    mcfg: MetricsConfig,
    *,
    workers: Optional[int] = None,
) -> SweepResult:
    """Run every (amplitude, frequency) cell; results are assembled by grid index."""

    device.validated()
    t_start = perf_counter()
    coords = [
        (row, col)
        for row in range(len(grid.amplitudes))
        for col in range(len(grid.frequencies))
    ]
    choice = choose_workers(WorkerRequest(task="sweep", cells=len(coords), explicit=workers), detect_runtime())
    logger.info(
        "run_sweep start cells=%s workers=%s reason=%s steps_per_period=%s",
        len(coords),
        choice.workers,
        choice.reason,
        sim.steps_per_period,
    )

    table: List[List[Optional[CycleMetrics]]] = [[None] * len(grid.frequencies) for _ in grid.amplitudes]
    with ThreadPoolExecutor(max_workers=choice.workers, thread_name_prefix="sweep") as pool:
        futures = {
            pool.submit(run_cell, device, grid.amplitudes[row], grid.frequencies[col], sim, mcfg): (row, col)
            for row, col in coords
        }
        done, pending = wait(futures, return_when=FIRST_EXCEPTION)
        for future in pending:
            future.cancel()
        # Report the first failing cell in grid order, not completion order.
        for future in sorted(done, key=futures.__getitem__):
            row, col = futures[future]
            exc = future.exception()
            if exc is not None:
                raise SweepError(grid.amplitudes[row], grid.frequencies[col], exc) from exc
            table[row][col] = future.result()

    result = SweepResult(
        grid=grid,
        device=device,
        sim=sim,
        metrics_cfg=mcfg,
        cells=tuple(tuple(row) for row in table),  # type: ignore[arg-type]
    )
    logger.info(
        "run_sweep done cells=%s clipped=%s duration=%.3fs",
        len(coords),
        sum(cell.clipped for cell in result.iter_cells()),
        perf_counter() - t_start,
    )
    return result


def rank_lifetime(result: SweepResult) -> List[LifetimeRank]:
    """Cells by tau descending; ties go to higher v0, then lower frequency."""

    ranked = sorted(result.iter_cells(), key=lambda c: (-c.tau, -c.v0, c.freq))
    return [LifetimeRank(cell.v0, cell.freq, cell.tau) for cell in ranked]


def readable_region(result: SweepResult) -> List[Tuple[float, float]]:
    """(v0, freq) of every cell whose peak current clears the sense threshold."""
    return [(cell.v0, cell.freq) for cell in result.iter_cells() if cell.distinguishable]
