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

"""Deterministic CSV serialization of traces, sweep tables and rankings.

Floats are written in their shortest round-trip form (``repr``), so a
file parses back to the exact values and rewriting it is byte-identical.
"""

from __future__ import annotations

import csv
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Sequence

import numpy as np

from rram_sim.analysis.sweep import LifetimeRank, SweepResult
from rram_sim.solvers.integrator import SimTrace

logger = logging.getLogger(__name__)

TRACE_HEADER = ("t_s", "v_V", "i_A", "w_m", "m_ohm", "q_C", "phi_Vs")
METRICS_HEADER = (
    "v0_V",
    "freq_Hz",
    "lrs_ohm",
    "hrs_ohm",
    "window_ratio",
    "window_diff_ohm",
    "loop_area_VA",
    "peak_current_A",
    "tau",
    "qphi_nonlinearity",
    "clipped",
)
RANKING_HEADER = ("rank", "v0_V", "freq_Hz", "tau")


class OutputError(RuntimeError):
    """Raised when an output file cannot be written or read."""


def format_number(value: object) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def write_rows(path: Path | str, header: Sequence[str], rows: Iterable[Sequence[object]]) -> int:
    """Write a header plus formatted rows; returns the number of data rows."""

    target = Path(path)
    count = 0
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with target.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([format_number(value) for value in row])
                count += 1
    except OSError as exc:
        raise OutputError(f"failed to write '{target}': {exc}") from exc
    logger.debug("wrote %s rows to %s", count, target)
    return count


def write_trace_csv(trace: SimTrace, path: Path | str) -> None:
    write_rows(path, TRACE_HEADER, trace.samples())


def read_trace_csv(path: Path | str) -> Dict[str, np.ndarray]:
    """Parse a trace file back into float columns keyed by header name."""

    source = Path(path)
    try:
        with source.open(newline="", encoding="utf-8") as handle:
            reader = csv.reader(handle)
            header = next(reader)
            rows: List[List[str]] = list(reader)
    except (OSError, StopIteration) as exc:
        raise OutputError(f"failed to read '{source}': {exc}") from exc
    if tuple(header) != TRACE_HEADER:
        raise OutputError(f"'{source}' is not a trace file: header {header!r}")
    data = np.array(rows, dtype=float).reshape(len(rows), len(TRACE_HEADER))
    return {name: data[:, index] for index, name in enumerate(TRACE_HEADER)}


def write_metrics_csv(result: SweepResult, path: Path | str) -> None:
    rows = (
        (
            cell.v0,
            cell.freq,
            cell.lrs,
            cell.hrs,
            cell.window_ratio,
            cell.window_diff,
            cell.loop_area,
            cell.peak_current,
            cell.tau,
            cell.qphi_nonlinearity,
            cell.clipped,
        )
        for cell in result.iter_cells()
    )
    count = write_rows(path, METRICS_HEADER, rows)
    logger.info("write_metrics_csv path=%s rows=%s", path, count)


def write_ranking_csv(ranking: Sequence[LifetimeRank], path: Path | str) -> None:
    write_rows(
        path,
        RANKING_HEADER,
        ((position, entry.v0, entry.freq, entry.tau) for position, entry in enumerate(ranking, start=1)),
    )
