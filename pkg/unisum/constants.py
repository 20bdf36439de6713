import os

from dotenv import load_dotenv

load_dotenv()

AXIOM_TOL = float(os.getenv("UNISUM_AXIOM_TOL", "1e-9"))
NUMERIC_AXIOM_TOL = float(os.getenv("UNISUM_NUMERIC_AXIOM_TOL", "1e-7"))

INVERSION_XTOL = float(os.getenv("UNISUM_INVERSION_XTOL", "1e-12"))
INVERSION_MAXITER = int(os.getenv("UNISUM_INVERSION_MAXITER", "200"))

BINARY_GRID = int(os.getenv("UNISUM_BINARY_GRID", "101"))
TERNARY_GRID = int(os.getenv("UNISUM_TERNARY_GRID", "51"))
DECOMPOSE_GRID = int(os.getenv("UNISUM_DECOMPOSE_GRID", "201"))

# A jump is declared when a bracket this narrow still changes by JUMP_FACTOR * tol
JUMP_BRACKET = float(os.getenv("UNISUM_JUMP_BRACKET", "1e-9"))
JUMP_FACTOR = float(os.getenv("UNISUM_JUMP_FACTOR", "10"))

BREAKPOINT_SNAP = float(os.getenv("UNISUM_BREAKPOINT_SNAP", "1e-6"))
DECOMPOSE_RESIDUAL_TOL = float(os.getenv("UNISUM_RESIDUAL_TOL", "1e-6"))

# generator tables step 2^-FIT_RESOLUTION in generator value, down to value FIT_DEPTH
FIT_RESOLUTION = int(os.getenv("UNISUM_FIT_RESOLUTION", "10"))
FIT_DEPTH = float(os.getenv("UNISUM_FIT_DEPTH", "64"))

REPORT_DIGITS = int(os.getenv("UNISUM_REPORT_DIGITS", "12"))
LOG_LEVEL = os.getenv("UNISUM_LOG_LEVEL", "INFO")
