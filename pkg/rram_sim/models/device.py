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

"""Linear-drift memristor: device constants, memristance and state velocity.

All quantities are SI (meters, ohms, amps, seconds).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Tuple, Union

import numpy as np

from rram_sim.config import (
    DEFAULT_D_M,
    DEFAULT_ETA,
    DEFAULT_MU_V,
    DEFAULT_R_OFF_OHM,
    DEFAULT_R_ON_OHM,
    DEFAULT_W0_M,
)

ArrayLike = Union[float, np.ndarray]


class DeviceParamsError(ValueError):
    """Raised when device constants violate their physical constraints."""

    def __init__(self, problems: Tuple["ParamProblem", ...]):
        self.problems = problems
        super().__init__("; ".join(str(problem) for problem in problems))


class StateOutOfRangeError(ValueError):
    """Raised when a state width lies outside [0, D]."""


@dataclass(frozen=True)
class DeviceParams:
    """Physical constants of one memristor.

    Parameters
    ----------
    D:
        Total device thickness (m).
    w0:
        Initial doped-region width (m).
    r_on:
        Fully-doped (low) resistance R_ON (ohm).
    r_off:
        Fully-undoped (high) resistance R_OFF (ohm).
    mu_v:
        Average oxygen-vacancy drift mobility (m^2 V^-1 s^-1).
    eta:
        Device polarity, +1 or -1.
    """

    D: float = DEFAULT_D_M
    w0: float = DEFAULT_W0_M
    r_on: float = DEFAULT_R_ON_OHM
    r_off: float = DEFAULT_R_OFF_OHM
    mu_v: float = DEFAULT_MU_V
    eta: int = DEFAULT_ETA

    @property
    def beta(self) -> float:
        """Width gained per coulomb of charge, mu_v * r_on / D (m/C)."""
        return self.mu_v * self.r_on / self.D

    def validated(self) -> "DeviceParams":
        result = validate_params(self)
        if not result.ok:
            raise DeviceParamsError(result.problems)
        return self


@dataclass(frozen=True)
class DeviceState:
    w: float
    clipped: bool = False


@dataclass(frozen=True)
class ParamProblem:
    field: str
    value: object
    message: str

    def __str__(self) -> str:
        return f"{self.message} ({self.field}={self.value!r})"


@dataclass(frozen=True)
class ValidationResult:
    problems: Tuple[ParamProblem, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.problems


def _finite(value: object) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


def validate_params(p: DeviceParams) -> ValidationResult:
    """Check every DeviceParams constraint and itemize the violations."""

    problems: list[ParamProblem] = []
    for f in fields(p):
        value = getattr(p, f.name)
        if not _finite(value):
            problems.append(ParamProblem(f.name, value, f"{f.name} must be a finite number"))
    if problems:
        return ValidationResult(tuple(problems))

    if p.D <= 0:
        problems.append(ParamProblem("D", p.D, "D must be positive"))
    if p.w0 < 0:
        problems.append(ParamProblem("w0", p.w0, "w0 must be non-negative"))
    elif p.D > 0 and p.w0 > p.D:
        problems.append(ParamProblem("w0", p.w0, "w0 exceeds D"))
    if p.r_on <= 0:
        problems.append(ParamProblem("r_on", p.r_on, "r_on must be positive"))
    if p.r_on >= p.r_off:
        problems.append(ParamProblem("r_off", p.r_off, "r_on must be strictly less than r_off"))
    if p.mu_v <= 0:
        problems.append(ParamProblem("mu_v", p.mu_v, "mu_v must be positive"))
    if p.eta not in (1, -1):
        problems.append(ParamProblem("eta", p.eta, "eta must be +1 or -1"))
    return ValidationResult(tuple(problems))


def memristance(p: DeviceParams, w: ArrayLike) -> ArrayLike:
    """M(w) = r_on * (w / D) + r_off * (1 - w / D); rejects w outside [0, D]."""

    arr = np.asarray(w, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > p.D):
        raise StateOutOfRangeError(f"state width outside [0, {p.D!r}] m: {w!r}")
    x = arr / p.D
    m = p.r_on * x + p.r_off * (1.0 - x)
    if np.ndim(w) == 0:
        return float(m)
    return m


def state_derivative(p: DeviceParams, i: ArrayLike) -> ArrayLike:
    """dw/dt = eta * mu_v * r_on * i / D."""
    return p.eta * p.mu_v * p.r_on * i / p.D


def clip_state(p: DeviceParams, w: float) -> Tuple[float, bool]:
    clamped = min(max(w, 0.0), p.D)
    return clamped, clamped != w
