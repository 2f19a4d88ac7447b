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

"""Runtime capability detection shared by the integrator and the sweep.

This module runs a one-time capability check and exposes a read-only ``Runtime``
object that the integrator consults to pick its RK4 kernel and that the
sweep consults to size its worker pool. It only reports what is available
and preferred based on environment hints; callers make their own policy.
"""

from __future__ import annotations

import logging
import os
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Optional

from rram_sim.config import LOG_DIR

logger = logging.getLogger(__name__)

try:  # pragma: no cover - optional dependency
    import numba
except Exception:  # pragma: no cover
    numba = None  # type: ignore


@dataclass(frozen=True)
class WorkerRequest:
    """Parameters for sizing a worker pool.

    - task: label for the debug log line.
    - cells: number of independent jobs; the pool never exceeds it.
    - explicit: highest-priority worker count (e.g. from ``--workers``).
    """

    task: str
    cells: int
    explicit: Optional[int] = None


@dataclass(frozen=True)
class WorkerChoice:
    workers: int
    reason: str


@dataclass(frozen=True)
class RuntimeCapabilities:
    cpu_count: int
    numba_available: bool
    numba_version: Optional[str]
    jit_enabled: bool
    default_workers: int
    timestamp: datetime


class Runtime:
    """Encapsulates runtime capabilities and configuration."""

    def __init__(self, capabilities: RuntimeCapabilities):
        self.capabilities = capabilities
        self.log_dir = LOG_DIR

    def log_info(self) -> None:
        c = self.capabilities
        logger.info(
            "Runtime detected: cpu_count=%s numba=%s numba_version=%s jit=%s default_workers=%s",
            c.cpu_count,
            c.numba_available,
            c.numba_version,
            c.jit_enabled,
            c.default_workers,
        )
        logger.info("Configuration: log_dir=%s", self.log_dir)


_RUNTIME: Optional[Runtime] = None
_LOCK = threading.Lock()


def _env_bool(name: str) -> bool:
    return os.getenv(name, "").lower() in {"1", "true", "yes", "on"}


def _parse_workers(value: Optional[str]) -> Optional[int]:
    if not value:
        return None
    try:
        workers = int(value.strip())
    except ValueError:
        logger.warning("Ignoring RRAM_SIM_WORKERS=%r: not an integer", value)
        return None
    return workers if workers > 0 else None


def detect_runtime(force_workers: int | None = None, disable_jit: bool = False) -> Runtime:
    """Detect runtime capabilities once and cache the result.

    Environment overrides:
    - RRAM_SIM_DISABLE_JIT=1   → pure-Python RK4 kernel
    - RRAM_SIM_WORKERS=<n>     → default sweep worker count
    """

    global _RUNTIME
    with _LOCK:
        if _RUNTIME is not None:
            return _RUNTIME

        logger.info("Detecting runtime capabilities...")
        cpu_count = os.cpu_count() or 1
        env_workers = force_workers if force_workers and force_workers > 0 else None
        env_workers = env_workers or _parse_workers(os.getenv("RRAM_SIM_WORKERS"))
        disable = disable_jit or _env_bool("RRAM_SIM_DISABLE_JIT")

        capabilities = RuntimeCapabilities(
            cpu_count=cpu_count,
            numba_available=numba is not None,
            numba_version=getattr(numba, "__version__", None),
            jit_enabled=numba is not None and not disable,
            default_workers=env_workers or cpu_count,
            timestamp=datetime.now(timezone.utc),
        )

        _RUNTIME = Runtime(capabilities)
        _RUNTIME.log_info()

        return _RUNTIME


def get_runtime() -> Runtime:
    if _RUNTIME is None:
        raise RuntimeError("detect_runtime() must be called before accessing runtime capabilities")
    return _RUNTIME


def choose_workers(req: WorkerRequest, runtime: Runtime | None = None) -> WorkerChoice:
    """Compute the worker count for a batch of independent jobs."""

    rt = runtime or get_runtime()
    cells = max(req.cells, 1)

    # 1) explicit override
    if req.explicit is not None and req.explicit > 0:
        choice = WorkerChoice(min(req.explicit, cells), f"explicit={req.explicit}")
    else:
        reason = "auto" if req.explicit is None else f"explicit={req.explicit} invalid; falling back"
        # 2) runtime default, capped by the job count
        choice = WorkerChoice(
            min(rt.capabilities.default_workers, cells),
            reason + f" -> default={rt.capabilities.default_workers}",
        )
    logger.debug("choose_workers task=%s cells=%s workers=%s reason=%s", req.task, cells, choice.workers, choice.reason)
    return choice
