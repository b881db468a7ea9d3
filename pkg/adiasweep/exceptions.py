"""Error hierarchy. ConfigurationError maps to CLI exit 1, NumericalError to exit 2."""
from typing import Optional


class AdiasweepError(Exception):
    """Base class for all adiasweep errors."""


class ConfigurationError(AdiasweepError):
    """Invalid arguments or an unsupported model/schedule combination."""


class NumericalError(AdiasweepError):
    """A computation could not produce a trustworthy result."""


class DimensionError(NumericalError):
    pass


class NonHermitianError(NumericalError):
    def __init__(self, deviation: float, tolerance: float):
        self.deviation = deviation
        self.tolerance = tolerance
        super().__init__(
            f"Matrix is not Hermitian: max |H - H^dagger| = {deviation:.3e} > {tolerance:.1e}"
        )


class EigenSolverError(NumericalError):
    pass


class DegenerateGroundStateError(NumericalError):
    def __init__(self, gap: float, tolerance: float):
        self.gap = gap
        super().__init__(
            f"Ground level is degenerate (gap {gap:.3e} < {tolerance:.1e}); "
            "fidelity against a degenerate ground space is not supported"
        )


class ParameterRangeError(ConfigurationError):
    """A swept parameter or time value outside its admissible range."""


class ScheduleError(ConfigurationError):
    """Time outside [0, T], a model mismatch, or an overflowing exponential-like schedule."""

    def __init__(self, message: str, max_alpha: Optional[float] = None):
        self.max_alpha = max_alpha
        super().__init__(message)


class BoundaryMinimumError(NumericalError):
    def __init__(self, s: float, gap: float):
        self.s = s
        self.gap = gap
        super().__init__(
            f"Gap minimum lies on the boundary s={s:.6g} (gap {gap:.6g}); "
            "no interior avoided crossing"
        )


class ScanError(NumericalError):
    def __init__(self, schedule_id: str, T: float, cause: Exception):
        self.schedule_id = schedule_id
        self.T = T
        super().__init__(f"Evolution failed for schedule={schedule_id}, T={T:.12g}: {cause}")
