"""Exception types shared across the package."""


class AgejamError(Exception):
    """Base class for all package-specific errors."""


class DomainError(AgejamError, ValueError):
    """A raw parameter lies outside its admissible interval.

    Carries the offending field name and the admissible interval so the
    CLI can print an actionable diagnostic.
    """

    def __init__(self, field: str, value, interval: str):
        self.field = field
        self.value = value
        self.interval = interval
        super().__init__(f"{field}={value!r} outside admissible interval {interval}")


class CapTooSmall(AgejamError):
    """Brute-force scan cap reached while the reward was still increasing."""


class Unbounded(AgejamError):
    """Energy cost exceeds every representable breakpoint."""


class NoConvergence(AgejamError):
    """Iterative solver failed to converge within its iteration budget."""

    def __init__(self, msg: str, iterations: int, residual: float | None = None,
                 trace=None):
        self.iterations = iterations
        self.residual = residual
        self.trace = trace
        super().__init__(msg)


class CapSuspicious(AgejamError):
    """Stationary mass near the truncation boundary is non-negligible."""


class InsufficientSamples(AgejamError):
    """A frequency-table cell received too few visits to estimate."""
