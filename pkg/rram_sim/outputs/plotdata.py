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

"""Plot-ready series, one CSV per figure panel.

Trace files (measured period of one run):
  fig1_phl_v0=<V>_f=<Hz>.csv       v_V,i_A          pinched I-V loop
  fig2_qphi_v0=<V>_f=<Hz>.csv      phi_Vs,q_C       charge-flux curve
  fig3_semilog_v0=<V>_f=<Hz>.csv   v_V,abs_i_A      semi-log I-V
  fig6_current_v0=<V>_f=<Hz>.csv   t_s,i_A          current vs time

Sweep files:
  fig4_memory_window.csv           freq_Hz,v0_V,window_ratio,window_diff_ohm
  fig5_lrs_hrs_f=<Hz>.csv          v0_V,lrs_ohm,hrs_ohm
  fig6_peak_current.csv            freq_Hz,v0_V,peak_current_A,tau
"""

from __future__ import annotations

import logging
from functools import singledispatch
from pathlib import Path
from typing import List

import numpy as np

from rram_sim.analysis.sweep import SweepResult
from rram_sim.outputs.tables import write_rows
from rram_sim.solvers.integrator import SimTrace

logger = logging.getLogger(__name__)


def _tag(value: float) -> str:
    return format(value, "g")


def _point(v0: float, freq: float) -> str:
    return f"v0={_tag(v0)}_f={_tag(freq)}"


@singledispatch
def emit_plot_data(source: object, out_dir: Path | str) -> List[Path]:
    """Write the figure series for a trace or a sweep; returns the files written."""
    raise TypeError(f"no plot data for {type(source).__name__}")


@emit_plot_data.register
def _(trace: SimTrace, out_dir: Path | str) -> List[Path]:
    base = Path(out_dir)
    cycle = trace.final_period()
    point = _point(trace.drive.v0, trace.drive.freq)
    series = {
        f"fig1_phl_{point}.csv": (("v_V", "i_A"), (cycle.v, cycle.i)),
        f"fig2_qphi_{point}.csv": (("phi_Vs", "q_C"), (cycle.phi, cycle.q)),
        f"fig3_semilog_{point}.csv": (("v_V", "abs_i_A"), (cycle.v, np.abs(cycle.i))),
        f"fig6_current_{point}.csv": (("t_s", "i_A"), (cycle.t, cycle.i)),
    }
    written = []
    for name, (header, columns) in series.items():
        write_rows(base / name, header, zip(*columns))
        written.append(base / name)
    logger.info("emit_plot_data trace %s files=%s dir=%s", point, len(written), base)
    return written


@emit_plot_data.register
def _(result: SweepResult, out_dir: Path | str) -> List[Path]:
    base = Path(out_dir)
    grid = result.grid
    written = []

    # Series per frequency, points over amplitude.
    by_freq = [
        [result.cell(row, col) for row in range(len(grid.amplitudes))]
        for col in range(len(grid.frequencies))
    ]

    path = base / "fig4_memory_window.csv"
    write_rows(
        path,
        ("freq_Hz", "v0_V", "window_ratio", "window_diff_ohm"),
        ((c.freq, c.v0, c.window_ratio, c.window_diff) for series in by_freq for c in series),
    )
    written.append(path)

    for freq, series in zip(grid.frequencies, by_freq):
        path = base / f"fig5_lrs_hrs_f={_tag(freq)}.csv"
        write_rows(path, ("v0_V", "lrs_ohm", "hrs_ohm"), ((c.v0, c.lrs, c.hrs) for c in series))
        written.append(path)

    path = base / "fig6_peak_current.csv"
    write_rows(
        path,
        ("freq_Hz", "v0_V", "peak_current_A", "tau"),
        ((c.freq, c.v0, c.peak_current, c.tau) for series in by_freq for c in series),
    )
    written.append(path)

    logger.info("emit_plot_data sweep files=%s dir=%s", len(written), base)
    return written
