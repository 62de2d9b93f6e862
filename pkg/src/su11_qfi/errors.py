"""Exception types shared across the package."""


class DomainError(ValueError):
    """A parameter lies outside the mathematically valid domain."""


class StateValidityError(ValueError):
    """A state object violates its physical invariants."""


class CutoffTooSmallError(RuntimeError):
    """Truncated-basis tail rule failed; retry with a larger cutoff."""


class InfeasibleParametersError(RuntimeError):
    """No admissible truncation exists within the configured cutoff cap."""
