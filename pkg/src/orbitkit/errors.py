"""Exception hierarchy shared by every orbitkit module."""


class OrbitkitError(Exception):
    """Base class for all orbitkit errors."""


class StructureError(OrbitkitError):
    """Objects from incompatible algebras or an unknown catalog entry."""


class DomainError(OrbitkitError, ValueError):
    """An input lies outside the mathematical domain of an operation."""


class UnsupportedError(OrbitkitError):
    """The requested operation has no definition for this object."""


class IntegrationError(OrbitkitError):
    """ODE integration stopped early.

    ``partial`` holds the trajectory accumulated up to the failure.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class DomainExitError(IntegrationError):
    """A trajectory left the domain of its chart.

    ``last_state`` is the last accepted state inside the domain.
    """

    def __init__(self, message, partial=None, last_state=None):
        super().__init__(message, partial)
        self.last_state = last_state


class NumericalError(OrbitkitError):
    """Numerical differentiation or another approximation broke down."""
