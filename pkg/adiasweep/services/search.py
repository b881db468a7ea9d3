import math
from typing import Callable, Optional, Tuple

from adiasweep.config import settings
from adiasweep.exceptions import ConfigurationError

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2


def golden_section_search(
    f: Callable[[float], float], a: float, b: float, tol: Optional[float] = None
) -> Tuple[float, float]:
    """
    Golden-section search.

    Given a function f with a single local minimum in the interval [a, b],
    returns a sub-interval [c, d] containing the minimum with d - c <= tol
    (settings.GOLDEN_TOL by default). Ties keep the left part of the bracket.
    """
    tol = settings.GOLDEN_TOL if tol is None else tol
    if not tol > 0:
        raise ConfigurationError(f"tolerance must be positive, got {tol}")
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        return a, b

    # Required steps to achieve tolerance
    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))

    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)

    for _ in range(n - 1):
        if yc <= yd:
            b = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)

    if yc <= yd:
        return a, d
    return c, b
