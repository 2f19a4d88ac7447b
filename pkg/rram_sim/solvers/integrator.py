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

"""Fixed-step RK4 integration of the linear-drift memristor under a sine drive."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from time import perf_counter
from typing import Iterator, NamedTuple

import numpy as np
from scipy.integrate import cumulative_trapezoid

from rram_sim.config import DEFAULT_SETTLE_PERIODS, DEFAULT_STEPS_PER_PERIOD
from rram_sim.models.device import DeviceParams, DeviceState, StateOutOfRangeError, clip_state, memristance
from rram_sim.models.waveform import DriveWaveform, flux_at, time_grid, voltage_at
from rram_sim.runtime import detect_runtime

try:  # pragma: no cover - optional dependency
    import numba
except Exception:  # pragma: no cover
    numba = None  # type: ignore

logger = logging.getLogger(__name__)

MIN_STEPS_PER_PERIOD = 100


class SimulationConfigError(ValueError):
    """Raised when integration settings are out of range."""


@dataclass(frozen=True)
class SimConfig:
    steps_per_period: int = DEFAULT_STEPS_PER_PERIOD
    settle_periods: int = DEFAULT_SETTLE_PERIODS

    def __post_init__(self) -> None:
        for name in ("steps_per_period", "settle_periods"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise SimulationConfigError(f"{name} must be an integer, got {value!r}")
        if self.steps_per_period < MIN_STEPS_PER_PERIOD:
            raise SimulationConfigError(
                f"steps_per_period must be >= {MIN_STEPS_PER_PERIOD}, got {self.steps_per_period}"
            )
        if self.settle_periods < 0:
            raise SimulationConfigError(f"settle_periods must be >= 0, got {self.settle_periods}")


class TraceSample(NamedTuple):
    t: float
    v: float
    i: float
    w: float
    m: float
    q: float
    phi: float


@dataclass(frozen=True, eq=False)
class SimTrace:
    """Uniformly sampled (t, V, I, w, M, q, phi) columns of one run.

    The last ``steps_per_period + 1`` samples form the measured period;
    ``settle_periods`` periods precede the ``drive.periods`` measured ones.
    """

    t: np.ndarray
    v: np.ndarray
    i: np.ndarray
    w: np.ndarray
    m: np.ndarray
    q: np.ndarray
    phi: np.ndarray
    params: DeviceParams
    drive: DriveWaveform
    clipped: bool
    steps_per_period: int
    settle_periods: int = 0

    COLUMNS = ("t", "v", "i", "w", "m", "q", "phi")

    def __post_init__(self) -> None:
        n = len(self.t)
        for name in self.COLUMNS:
            column = getattr(self, name)
            if len(column) != n:
                raise ValueError(f"trace column '{name}' has {len(column)} samples, expected {n}")
            column.flags.writeable = False

    def __len__(self) -> int:
        return len(self.t)

    @property
    def final_state(self) -> DeviceState:
        return DeviceState(w=float(self.w[-1]), clipped=self.clipped)

    def samples(self) -> Iterator[TraceSample]:
        for row in zip(*(getattr(self, name) for name in self.COLUMNS)):
            yield TraceSample(*(float(value) for value in row))

    def final_period(self) -> "SimTrace":
        """The last full period of the trace as a trace of its own."""
        n = len(self)
        if n < self.steps_per_period + 1:
            raise ValueError(
                f"trace has {n} samples; one period needs {self.steps_per_period + 1}"
            )
        if n == self.steps_per_period + 1:
            return self
        window = slice(n - self.steps_per_period - 1, n)
        return replace(
            self,
            settle_periods=0,
            drive=replace(self.drive, periods=1),
            **{name: getattr(self, name)[window] for name in self.COLUMNS},
        )


def _rate(t, w, v0, omega, phase, coef, r_on, r_off, D):
    x = w / D
    return coef * (v0 * math.sin(omega * t + phase) / (r_on * x + r_off * (1.0 - x)))


def _build_kernels(wrap):
    """Build (rk4, advance, march) with ``wrap`` applied to every stage.

    ``wrap`` is either the identity or ``numba.njit``; both variants run
    the same arithmetic in the same order.
    """

    rate = wrap(_rate)

    @wrap
    def rk4(w, t, dt, v0, omega, phase, coef, r_on, r_off, D):
        # Stages see the unclamped state; only the committed step is clamped.
        half = 0.5 * dt
        k1 = rate(t, w, v0, omega, phase, coef, r_on, r_off, D)
        k2 = rate(t + half, w + half * k1, v0, omega, phase, coef, r_on, r_off, D)
        k3 = rate(t + half, w + half * k2, v0, omega, phase, coef, r_on, r_off, D)
        k4 = rate(t + dt, w + dt * k3, v0, omega, phase, coef, r_on, r_off, D)
        return w + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    @wrap
    def advance(w, t, dt, v0, omega, phase, coef, r_on, r_off, D):
        # Same clamp as clip_state, inlined for the JIT.
        w_next = rk4(w, t, dt, v0, omega, phase, coef, r_on, r_off, D)
        if w_next < 0.0:
            return 0.0, True
        if w_next > D:
            return D, True
        return w_next, False

    @wrap
    def march(w0, n_steps, dt, v0, omega, phase, coef, r_on, r_off, D):
        out = np.empty(n_steps + 1)
        out[0] = w0
        w = w0
        clipped = False
        for j in range(n_steps):
            w, hit = advance(w, j * dt, dt, v0, omega, phase, coef, r_on, r_off, D)
            if hit:
                clipped = True
            out[j + 1] = w
        return out, clipped

    return rk4, advance, march


_rk4_py, _advance_py, _march_py = _build_kernels(lambda fn: fn)
_march_jit = _build_kernels(numba.njit(nogil=True))[2] if numba is not None else None


def _kernel_args(p: DeviceParams, d: DriveWaveform) -> tuple:
    coef = p.eta * p.mu_v * p.r_on / p.D
    return (d.v0, d.omega, d.phase, coef, p.r_on, p.r_off, p.D)


def step(p: DeviceParams, d: DriveWaveform, w: float, t: float, dt: float) -> float:
    """Advance ``w`` by one RK4 step of dw/dt = eta*mu_v*r_on*V(t) / (D*M(w)), clamped to [0, D]."""

    if not 0.0 <= w <= p.D:
        raise StateOutOfRangeError(f"state width outside [0, {p.D!r}] m: {w!r}")
    if not dt > 0:
        raise SimulationConfigError(f"dt must be positive, got {dt!r}")
    w_next, _ = clip_state(p, _rk4_py(w, t, dt, *_kernel_args(p, d)))
    return w_next


def advance_state(p: DeviceParams, d: DriveWaveform, state: DeviceState, t: float, dt: float) -> DeviceState:
    """One clamped RK4 step; the clipped flag stays set once a boundary was hit."""

    if not 0.0 <= state.w <= p.D:
        raise StateOutOfRangeError(f"state width outside [0, {p.D!r}] m: {state.w!r}")
    if not dt > 0:
        raise SimulationConfigError(f"dt must be positive, got {dt!r}")
    w_next, hit = clip_state(p, _rk4_py(state.w, t, dt, *_kernel_args(p, d)))
    return DeviceState(w=w_next, clipped=state.clipped or hit)


def _march(w0: float, n_steps: int, dt: float, args: tuple) -> tuple[np.ndarray, bool]:
    if _march_jit is not None and detect_runtime().capabilities.jit_enabled:
        try:
            return _march_jit(w0, n_steps, dt, *args)
        except Exception as exc:  # pragma: no cover - depends on the numba build
            logger.warning("JIT kernel failed (%s); falling back to the Python kernel", exc)
    return _march_py(w0, n_steps, dt, *args)


def simulate(p: DeviceParams, d: DriveWaveform, c: SimConfig) -> SimTrace:
    """Integrate ``settle_periods + periods`` periods of ``d`` and return the sampled trace."""

    p.validated()
    if not isinstance(c, SimConfig):
        raise SimulationConfigError(f"expected SimConfig, got {type(c).__name__}")

    t_start = perf_counter()
    total_periods = c.settle_periods + d.periods
    n_steps = total_periods * c.steps_per_period
    t = time_grid(d, n_steps + 1, total_periods)
    dt = (total_periods / d.freq) / n_steps

    w, clipped = _march(p.w0, n_steps, dt, _kernel_args(p, d))
    v = voltage_at(d, t)
    m = memristance(p, w)
    i = v / m
    q = cumulative_trapezoid(i, dx=dt, initial=0.0)
    phi = cumulative_trapezoid(v, dx=dt, initial=0.0)

    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(
            "simulate v0=%s freq=%s steps=%s clipped=%s phi_closed_form_dev=%.3e duration=%.3fs",
            d.v0,
            d.freq,
            n_steps,
            clipped,
            float(np.max(np.abs(phi - flux_at(d, t)))),
            perf_counter() - t_start,
        )
    if clipped:
        logger.info("simulate v0=%s freq=%s: state clamped at a device boundary", d.v0, d.freq)

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
        clipped=bool(clipped),
        steps_per_period=c.steps_per_period,
        settle_periods=c.settle_periods,
    )
