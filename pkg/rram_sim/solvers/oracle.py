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

"""Closed-form solution of the unclipped linear-drift model.

With beta = mu_v*r_on/D the state follows the charge, w = w0 + eta*beta*q,
so M(q) = M0 - eta*k*q with k = mu_v*r_on*(r_off - r_on)/D**2. Integrating
d(phi) = M dq gives phi = M0*q - eta*k*q**2/2, which is inverted on the
branch through q(0) = 0. This holds for any drive as long as w stays
inside [0, D].
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from rram_sim.models.device import DeviceParams, memristance
from rram_sim.models.waveform import DriveWaveform, flux_at, time_grid, voltage_at
from rram_sim.solvers.integrator import SimTrace

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# Slack on the [0, D] check so a state landing on the boundary within
# rounding is still accepted.
_BOUNDARY_RTOL = 1e-12


class AnalyticValidityError(ValueError):
    """Raised when the closed form does not apply (clipping/turnover regime)."""


class TraceMismatchError(ValueError):
    """Raised when two traces do not share a time grid."""


@dataclass(frozen=True)
class OracleReport:
    max_abs_w_error: float
    max_rel_i_error: float
    rms_rel_m_error: float
    valid: bool


def drift_constants(p: DeviceParams) -> Tuple[float, float, float]:
    """Return (beta, M0, k) for ``p``."""
    beta = p.beta
    m0 = memristance(p, p.w0)
    k = p.mu_v * p.r_on * (p.r_off - p.r_on) / (p.D * p.D)
    return beta, m0, k


def charge_of_flux(p: DeviceParams, phi: ArrayLike) -> ArrayLike:
    """Charge that has passed once the device has seen flux ``phi``."""

    beta, m0, k = drift_constants(p)
    phi_arr = np.asarray(phi, dtype=float)
    disc = m0 * m0 - 2.0 * p.eta * k * phi_arr
    if np.any(disc < 0.0):
        raise AnalyticValidityError(
            "analytic solution invalid (clipping/turnover regime): "
            f"flux {float(np.max(np.abs(phi_arr)))!r} V*s turns the charge-flux curve over"
        )
    # Stable root, q(0) = 0; reduces to phi/M0 as k -> 0.
    q = 2.0 * phi_arr / (m0 + np.sqrt(disc))
    w = p.w0 + p.eta * beta * q
    slack = _BOUNDARY_RTOL * p.D
    if np.any(w < -slack) or np.any(w > p.D + slack):
        raise AnalyticValidityError(
            "analytic solution invalid (clipping/turnover regime): "
            f"state leaves [0, {p.D!r}] m"
        )
    if np.ndim(phi) == 0:
        return float(q)
    return q


def flux_window(p: DeviceParams) -> Tuple[float, float]:
    """Flux range (phi_min, phi_max) over which the state stays inside [0, D]."""

    beta, m0, k = drift_constants(p)
    # Charge that carries the state to each boundary.
    q_to_D = p.eta * (p.D - p.w0) / beta
    q_to_0 = -p.eta * p.w0 / beta
    bounds = sorted(m0 * q - p.eta * k * q * q / 2.0 for q in (q_to_D, q_to_0))
    return bounds[0], bounds[1]


def clip_flux_threshold(p: DeviceParams) -> float:
    """Flux at which the state first reaches a boundary under positive drive.

    For eta = +1 this is phi* with w(phi*) = D:
    q_D = (D - w0)/beta, phi* = M0*q_D - k*q_D**2/2.
    """
    return flux_window(p)[1]


def analytic_trace(
    p: DeviceParams, d: DriveWaveform, n_samples: int, *, settle_periods: int = 0
) -> SimTrace:
    """Exact trace on the same time grid ``simulate`` would use."""

    p.validated()
    total_periods = settle_periods + d.periods
    if (n_samples - 1) % total_periods:
        raise ValueError(
            f"n_samples - 1 = {n_samples - 1} is not a multiple of the {total_periods} simulated periods"
        )
    phi_min, phi_max = flux_window(p)
    if d.peak_flux > phi_max:
        raise AnalyticValidityError(
            "analytic solution invalid (clipping/turnover regime): "
            f"peak flux {d.peak_flux:.6g} V*s exceeds the boundary flux {phi_max:.6g} V*s"
        )

    beta, _, _ = drift_constants(p)
    t = time_grid(d, n_samples, total_periods)
    v = voltage_at(d, t)
    phi = flux_at(d, t)
    if float(np.min(phi)) < phi_min:
        raise AnalyticValidityError(
            "analytic solution invalid (clipping/turnover regime): "
            f"flux {float(np.min(phi)):.6g} V*s is below the boundary flux {phi_min:.6g} V*s"
        )
    q = charge_of_flux(p, phi)
    w = np.clip(p.w0 + p.eta * beta * q, 0.0, p.D)
    m = memristance(p, w)
    i = v / m
    return SimTrace(
        t=t,
        v=v,
        i=i,
        w=w,
        m=m,
        q=q,
        phi=phi,
        params=p,
        drive=d,
        clipped=False,
        steps_per_period=(n_samples - 1) // total_periods,
        settle_periods=settle_periods,
    )


def compare_traces(numeric: SimTrace, analytic: SimTrace) -> OracleReport:
    """Element-wise error statistics of ``numeric`` against ``analytic``.

    Current error is normalised by the analytic peak current, since the
    per-sample ratio is singular at the zero crossings.
    """

    if len(numeric) != len(analytic):
        raise TraceMismatchError(
            f"sample counts differ: numeric={len(numeric)} analytic={len(analytic)}"
        )
    if not np.array_equal(numeric.t, analytic.t):
        raise TraceMismatchError("time grids differ")

    max_abs_w = float(np.max(np.abs(numeric.w - analytic.w)))
    i_scale = float(np.max(np.abs(analytic.i)))
    di = float(np.max(np.abs(numeric.i - analytic.i)))
    max_rel_i = di / i_scale if i_scale > 0 else di
    rms_rel_m = math.sqrt(float(np.mean(((numeric.m - analytic.m) / analytic.m) ** 2)))

    report = OracleReport(
        max_abs_w_error=max_abs_w,
        max_rel_i_error=max_rel_i,
        rms_rel_m_error=rms_rel_m,
        valid=not (numeric.clipped or analytic.clipped),
    )
    logger.debug("compare_traces %s", report)
    return report
