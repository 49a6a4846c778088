# %% HEADER
# General utility functions

# %% IMPORTS
from collections.abc import Sequence
import math
from typing import Any

import numpy as np


# %% FUNCTIONS
def log_spaced(low: float, high: float, num: int) -> list[float]:
    """Get num points spaced evenly on a log scale between low and high inclusive.

    Args:
        low (float): The first point, positive.
        high (float): The last point.
        num (int): The number of points.

    Returns:
        list[float]: The points as plain floats.
    """
    return [float(v) for v in np.geomspace(low, high, num)]


def relative_margin(difference: float, scale: float) -> float:
    """Divide a signed difference by a nonnegative scale.

    A zero scale gives 0 for a zero difference and a signed infinity otherwise, so
    margins of vanishing quantities still compare correctly against a tolerance.

    Args:
        difference (float): The signed difference.
        scale (float): The magnitude to relativise by.

    Returns:
        float: The relative margin.
    """
    if scale > 0:
        return difference / scale
    if difference == 0:
        return 0.0
    return math.copysign(math.inf, difference)


def jsonable(value: Any) -> Any:
    """Convert a value to something json.dumps writes as strict JSON.

    Non-finite floats become the strings "inf", "-inf" and "nan"; numpy scalars become
    Python scalars; tuples become lists.

    Args:
        value (Any): The value to convert.

    Returns:
        Any: The converted value.
    """
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, Sequence) and not isinstance(value, str):
        return [jsonable(v) for v in value]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value
