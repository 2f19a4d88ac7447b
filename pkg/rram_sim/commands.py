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

"""The run, sweep and verify commands behind the CLI."""

from __future__ import annotations

import logging
import sys
from time import perf_counter
from typing import Callable, Dict, TextIO, Tuple

from rram_sim.analysis.metrics import cycle_metrics
from rram_sim.analysis.sweep import rank_lifetime, readable_region, run_sweep
from rram_sim.cli import RunSpec
from rram_sim.models.waveform import DriveWaveform
from rram_sim.outputs.plotdata import emit_plot_data
from rram_sim.outputs.tables import write_metrics_csv, write_ranking_csv, write_rows, write_trace_csv
from rram_sim.solvers.integrator import simulate
from rram_sim.solvers.oracle import AnalyticValidityError, OracleReport, analytic_trace, compare_traces

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_VERIFY_FAILED = 3

# verify passes when both errors sit below these bounds (w relative to D).
W_ERROR_BOUND = 1e-6
I_ERROR_BOUND = 1e-6

REPORT_HEADER = ("metric", "value")


def run(spec: RunSpec) -> int:
    drive = spec.drive
    assert drive is not None
    t_start = perf_counter()
    trace = simulate(spec.device, drive, spec.sim)
    write_trace_csv(trace, spec.out_path)
    metrics = cycle_metrics(trace, spec.metrics_cfg)
    final = trace.final_state
    logger.info(
        "run v0=%s freq=%s samples=%s final_w=%.6g lrs=%.6g hrs=%.6g window_ratio=%.6g peak_current=%.6g tau=%.6g clipped=%s",
        drive.v0,
        drive.freq,
        len(trace),
        final.w,
        metrics.lrs,
        metrics.hrs,
        metrics.window_ratio,
        metrics.peak_current,
        metrics.tau,
        final.clipped,
    )
    if spec.emit_plot_data and spec.plot_dir is not None:
        emit_plot_data(trace, spec.plot_dir)
    logger.info("run done out=%s duration=%.3fs", spec.out_path, perf_counter() - t_start)
    return EXIT_OK


def sweep(spec: RunSpec) -> int:
    grid = spec.grid
    assert grid is not None
    t_start = perf_counter()
    result = run_sweep(spec.device, grid, spec.sim, spec.metrics_cfg, workers=spec.workers)
    write_metrics_csv(result, spec.out_path)

    ranking = rank_lifetime(result)
    ranking_path = spec.out_path.with_name(f"{spec.out_path.stem}_ranking.csv")
    write_ranking_csv(ranking, ranking_path)
    logger.info(
        "sweep ranking best=(%s V, %s Hz) worst=(%s V, %s Hz) readable=%s/%s",
        ranking[0].v0,
        ranking[0].freq,
        ranking[-1].v0,
        ranking[-1].freq,
        len(readable_region(result)),
        len(ranking),
    )

    if spec.emit_plot_data and spec.plot_dir is not None:
        emit_plot_data(result, spec.plot_dir)
        # Loop panels for every amplitude at the lowest frequency.
        freq = grid.frequencies[0]
        for v0 in grid.amplitudes:
            trace = simulate(spec.device, DriveWaveform(v0=v0, freq=freq), spec.sim)
            emit_plot_data(trace, spec.plot_dir)
    logger.info("sweep done out=%s duration=%.3fs", spec.out_path, perf_counter() - t_start)
    return EXIT_OK


def _report_rows(report: OracleReport) -> Tuple[Tuple[str, object], ...]:
    return (
        ("max_abs_w_error", report.max_abs_w_error),
        ("max_rel_i_error", report.max_rel_i_error),
        ("rms_rel_m_error", report.rms_rel_m_error),
        ("valid", report.valid),
    )


def verify(spec: RunSpec, stream: TextIO | None = None) -> int:
    """Compare the RK4 trace with the closed form; 0 on agreement, 3 otherwise."""

    out = stream if stream is not None else sys.stdout
    drive = spec.drive
    assert drive is not None
    n_samples = (spec.sim.settle_periods + drive.periods) * spec.sim.steps_per_period + 1
    try:
        exact = analytic_trace(spec.device, drive, n_samples, settle_periods=spec.sim.settle_periods)
    except AnalyticValidityError as exc:
        logger.error("verify v0=%s freq=%s refused: %s", drive.v0, drive.freq, exc)
        print(f"verify: {exc}", file=out)
        return EXIT_VERIFY_FAILED

    numeric = simulate(spec.device, drive, spec.sim)
    report = compare_traces(numeric, exact)
    rows = _report_rows(report)
    write_rows(spec.out_path, REPORT_HEADER, rows)
    for name, value in rows:
        print(f"{name}: {value}", file=out)

    passed = (
        report.valid
        and report.max_abs_w_error < W_ERROR_BOUND * spec.device.D
        and report.max_rel_i_error < I_ERROR_BOUND
    )
    if not passed:
        logger.error(
            "verify v0=%s freq=%s failed: max_abs_w_error=%.3e max_rel_i_error=%.3e valid=%s",
            drive.v0,
            drive.freq,
            report.max_abs_w_error,
            report.max_rel_i_error,
            report.valid,
        )
        return EXIT_VERIFY_FAILED
    logger.info("verify v0=%s freq=%s passed", drive.v0, drive.freq)
    return EXIT_OK


COMMANDS: Dict[str, Callable[[RunSpec], int]] = {
    "run": run,
    "sweep": sweep,
    "verify": verify,
}


def dispatch(spec: RunSpec) -> int:
    return COMMANDS[spec.command](spec)
