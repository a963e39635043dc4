"""Exception types shared across the package."""


class EulerFanError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(EulerFanError, ValueError):
    """An input lies outside the mathematical domain of an operation."""


class DegenerateDensityError(DomainError):
    """The two initial densities coincide, so the middle-density analysis
    is undefined (no one-shock-one-rarefaction configuration exists)."""


class VelocityGapError(DomainError):
    """The velocity gap is outside the regime where the two interface
    speeds are real and ordered (the discriminant is nonnegative)."""


class ConstraintError(EulerFanError):
    """A requested reconstruction violates one of the feasibility
    inequalities; the message names the violated condition."""


class NumericalError(EulerFanError, RuntimeError):
    """A numerical self-check failed (root bracketing, cross-check
    disagreement); the message carries diagnostics."""
