# Centralized defaults for the device, the drive grid and the runtime.

import os
from pathlib import Path

# Device constants of the simulated 10 nm Pt/TiO2/Pt cell. Only the
# R_OFF/R_ON ratio (200) is fixed by the study; R_ON = 100 ohm reproduces
# the reported 1e-5 A current scale at 0.2 V.
DEFAULT_D_M = 10e-9
DEFAULT_W0_M = 2e-9
DEFAULT_R_ON_OHM = 100.0
DEFAULT_R_OFF_OHM = 20_000.0
DEFAULT_MU_V = 1e-14
DEFAULT_ETA = 1

# Write-voltage and frequency grid of the sweep.
DEFAULT_AMPLITUDES_V = (0.2, 0.4, 0.6, 0.8, 1.0, 1.2)
DEFAULT_FREQUENCIES_HZ = (1.0, 2.0, 4.0, 10.0, 100.0, 200.0)

DEFAULT_STEPS_PER_PERIOD = 10_000
DEFAULT_SETTLE_PERIODS = 0

# Minimum current a sense amplifier can tell apart from noise.
DEFAULT_I_SENSE_A = 1e-6

# Rotating log file location; can be overridden via RRAM_SIM_LOG_DIR.
LOG_DIR = Path(os.getenv("RRAM_SIM_LOG_DIR", "logs"))
