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

"""Command line entrypoint for the RRAM simulator."""

from __future__ import annotations

import logging
import sys
from logging.handlers import RotatingFileHandler
from typing import Optional

from rram_sim import config
from rram_sim.cli import ConfigError, parse_cli
from rram_sim.commands import EXIT_FAILURE, EXIT_USAGE, dispatch
from rram_sim.models.device import DeviceParamsError
from rram_sim.runtime import detect_runtime

logger = logging.getLogger(__name__)


def _configure_logging(verbose: bool = False) -> str:
    """Configure logging to console and a rotating file."""
    log_dir = config.LOG_DIR
    log_dir.mkdir(parents=True, exist_ok=True)
    log_file = log_dir / "rram-sim.log"

    handlers = [
        logging.StreamHandler(),
        RotatingFileHandler(
            log_file,
            maxBytes=10 * 1024 * 1024,  # 10MB
            backupCount=5,
        ),
    ]

    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=handlers,
        # Replace handlers from an earlier call in the same process.
        force=True,
    )
    return str(log_file)


def main(argv: Optional[list[str]] = None) -> int:
    try:
        spec = parse_cli(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help.
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    log_file_path = _configure_logging(spec.verbose)
    logger.info("Logging to file: %s", log_file_path)

    # Detect once so the integrator and the sweep share the same view.
    detect_runtime(force_workers=spec.workers)

    try:
        return dispatch(spec)
    except (ConfigError, DeviceParamsError) as exc:
        logger.error("%s: %s", spec.command, exc)
        return EXIT_USAGE
    except KeyboardInterrupt:
        logger.info("Interrupted, stopping %s.", spec.command)
        return EXIT_FAILURE
    except Exception as exc:
        logger.exception("%s failed: %s", spec.command, exc)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
