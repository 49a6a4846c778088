# %% HEADER
# Numerical constants and paths shared across the package.

# %% IMPORTS
import os
import pathlib

from kstruve.errors import DomainError

# %% PATHS
# Point to the repository root
PROJECT_ROOT = pathlib.Path(__file__).resolve().parent.parent

# Output of the exploration scripts under projects/
DATA_DIR = PROJECT_ROOT / "data"

# %% CONSTANTS
# Absolute distance to a k-gamma pole below which evaluation is refused
POLE_TOLERANCE = 1e-12

# Series stopping rule
SERIES_REL_TOL = 1e-16
SERIES_RATIO_BOUND = 0.5
SERIES_GUARD_TERMS = 2

# Ratio sum(|terms|) / |sum| above which the series is re-summed in double-double
CANCELLATION_LIMIT = 4.0

# Term cap, overridable through the environment
DEFAULT_MAX_TERMS = 500
MAX_TERMS_ENV = "KSTRUVE_MAX_TERMS"

# Slack for the inequality checks, multiplicative on the compared magnitude
INEQUALITY_SLACK = 1e-12

# Relative tie tolerance when classifying coefficient ratio sequences
RATIO_TIE_TOLERANCE = 1e-14


# %% FUNCTIONS
def get_max_terms() -> int:
    """Get the series term cap from KSTRUVE_MAX_TERMS, falling back to the default.

    The variable is read on every call so that it can be changed between runs of
    the same process.

    Returns:
        int: The maximum number of series terms.

    Raises:
        DomainError: If the variable is set but is not an integer of at least 1.
    """
    raw = os.environ.get(MAX_TERMS_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_TERMS

    try:
        value = int(raw)
    except ValueError as e:
        raise DomainError(f"{MAX_TERMS_ENV} must be an integer, got {raw!r}") from e

    if value < 1:
        raise DomainError(f"{MAX_TERMS_ENV} must be at least 1, got {value}")
    return value
