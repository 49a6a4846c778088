# %% HEADER
# Exceptions raised by the k-Struve library.


# %% CLASSES
class KStruveError(Exception):
    """Base class for every error the library raises on purpose."""


class DomainError(KStruveError):
    """An argument lies outside the mathematical domain of the operation."""


class PoleError(DomainError):
    """An argument lies within the pole tolerance of a k-gamma pole.

    Attributes:
        pole (float): The pole closest to the offending argument.
    """

    def __init__(self, message: str, pole: float):
        """Initialise with a message and the nearest pole."""
        super().__init__(message)
        self.pole = pole


class QuadratureError(KStruveError):
    """The tanh-sinh integrator did not reach the requested tolerance.

    Attributes:
        value (float): The last refinement of the integral.
        error_estimate (float): Difference between the last two refinements.
        levels_used (int): Number of refinement levels computed.
    """

    def __init__(
        self, message: str, value: float, error_estimate: float, levels_used: int
    ):
        """Initialise with a message and the state of the failed integration."""
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate
        self.levels_used = levels_used
