"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a formula holds."""


class NonFiniteIntegrandError(ValueError):
    """An integrand returned nan or inf.

    The offending abscissa (or sample index, for Monte Carlo) is kept on
    ``location`` so callers can report it.
    """

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class ChartSingularityError(DomainError):
    """A null-cone chart was evaluated too close to its frame singularity."""


class CalibrationError(RuntimeError):
    """The superposition normalization is not stable across test points."""


class ConvergenceError(RuntimeError):
    """A numerical integration stopped before meeting its tolerance."""
