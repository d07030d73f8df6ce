"""Configuration settings for the generalized isotonic oscillator solver."""
import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Project paths
BASE_DIR = Path(__file__).parent
FIXTURE_DIR = BASE_DIR / "cli" / "fixtures"

# Working precision (significant decimal digits)
DEFAULT_DIGITS = int(os.getenv("GISO_DIGITS", "60"))

# Exact root isolation
ROOT_GUARD_DIGITS = 10  # extra digits carried while refining isolated roots
RATIONAL_ROOT_MAX_DENOMINATOR = 10**6  # exact-root recognition after refinement

# Asymptotic iteration method
AIM_T0 = "0.5"
AIM_T0_SCHEDULE = ("0.5", "0.35", "0.2", "0.1")  # tried in order while roots fail to stabilize
AIM_MAX_ITERATIONS = 120
AIM_START_ITERATIONS = 16
AIM_ITERATION_STEP = 6
AIM_SERIES_PADDING = 8  # series depth D = N + padding
AIM_SCAN_POINTS = 64
AIM_MAX_SCAN_POINTS = 512
AIM_TOLERANCE = "1e-12"
AIM_CROSSCHECK_TOLERANCE = "1e-10"

# Finite-difference oracle
ORACLE_GRID_POINTS = 2000
ORACLE_MIN_CUTOFF = 8.0
ORACLE_DRIFT_FACTOR = 10.0

# Normalization quadrature
QUADRATURE_BREAKPOINTS = (0, 1, 3)

# Emission
OUTPUT_DECIMALS = 15
REPRO_WORKERS = 1  # >1 runs reproduction rows in a process pool

# Reference fixture tolerances per reproduction target
REPRO_TOLERANCES = {
    "table1": "1e-30",
    "table2": "1e-30",
    "order1": "1e-30",
    "table3": "1e-12",
    "table4": "1e-9",
    "figure1": "1e-3",
}
