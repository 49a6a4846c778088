# %% HEADER
# Real-argument k-gamma family: k-gamma, log-k-gamma, k-digamma, k-trigamma and k-beta.
# Everything reduces to the classical functions through Gamma_k(x) = k^(x/k-1) Gamma(x/k).

# %% IMPORTS
from dataclasses import dataclass
import math

import numpy as np
from scipy import special

from kstruve.config import POLE_TOLERANCE
from kstruve.errors import DomainError, PoleError
from kstruve.numerics import QuadratureConfig, QuadratureResult, integrate_unit_interval

# %% CONSTANTS
_LOG_MAX = math.log(np.finfo(float).max)


# %% TYPES
@dataclass(frozen=True, slots=True)
class KParam:
    """The deformation parameter k of the k-gamma family.

    Attributes:
        k (float): A positive real.
    """

    k: float

    def __post_init__(self):
        """Validate k > 0."""
        if not (math.isfinite(self.k) and self.k > 0):
            raise DomainError(f"k must be a positive real, got {self.k}")


@dataclass(frozen=True, slots=True)
class MathConstants:
    """Constants used across the package."""

    euler_gamma: float = float(np.euler_gamma)
    sqrt_pi: float = math.sqrt(math.pi)


MATH_CONSTANTS = MathConstants()


# %% FUNCTIONS
def _check_pole(x: float, k: float) -> None:
    """Raise PoleError if x lies within the pole tolerance of some -nk, n >= 0."""
    if x > POLE_TOLERANCE:
        return
    pole = -max(round(-x / k), 0) * k
    if abs(x - pole) <= POLE_TOLERANCE:
        raise PoleError(f"Argument {x} is at the pole {pole} of Gamma_k (k={k})", pole)


def k_gamma(x: float, k: float) -> float:
    """Get the k-gamma function Gamma_k(x) = k^(x/k - 1) Gamma(x/k).

    Args:
        x (float): The argument, not a pole -nk.
        k (float): The deformation parameter.

    Returns:
        float: Gamma_k(x).

    Raises:
        PoleError: If x is within 1e-12 of a pole.
        OverflowError: If the result is outside the finite range.
    """
    k = KParam(k).k
    _check_pole(x, k)
    z = x / k

    with np.errstate(over="ignore", under="ignore"):
        power = np.power(k, z - 1.0)
        gamma_z = special.gamma(z)
        value = power * gamma_z
    if np.isfinite(value) and value != 0.0:
        return float(value)

    # One of the factors left the finite range, fall back to the log form
    log_abs = (z - 1.0) * math.log(k) + special.gammaln(z)
    sign = float(special.gammasgn(z))
    if log_abs > _LOG_MAX:
        raise OverflowError(
            f"Gamma_k({x}) with k={k} overflows to {'+' if sign > 0 else '-'}inf"
        )
    return sign * math.exp(log_abs)


def log_k_gamma(x: float, k: float) -> float:
    """Get ln Gamma_k(x) = (x/k - 1) ln k + ln Gamma(x/k) for x > 0."""
    k = KParam(k).k
    if not x > 0:
        raise DomainError(f"log_k_gamma requires x > 0, got {x}")
    z = x / k
    return (z - 1.0) * math.log(k) + float(special.gammaln(z))


def k_digamma(t: float, k: float) -> float:
    """Get the k-digamma function Psi_k(t) = ln(k)/k + psi(t/k)/k.

    Only t > 0 is supported.

    Args:
        t (float): The argument.
        k (float): The deformation parameter.

    Returns:
        float: Psi_k(t).

    Raises:
        PoleError: If t is within 1e-12 of a pole -nk.
        DomainError: For negative t away from the poles.
    """
    k = KParam(k).k
    _check_pole(t, k)
    if t < 0:
        raise DomainError(f"k_digamma is only implemented for t > 0, got {t}")
    return math.log(k) / k + float(special.digamma(t / k)) / k


def k_trigamma(t: float, k: float) -> float:
    """Get the k-trigamma function Psi'_k(t) = psi'(t/k) / k^2 for t > 0."""
    k = KParam(k).k
    if not t > 0:
        raise DomainError(f"k_trigamma requires t > 0, got {t}")
    return float(special.polygamma(1, t / k)) / (k * k)


def k_beta(x: float, y: float, k: float) -> float:
    """Get the k-beta function B_k(x, y) = Gamma_k(x) Gamma_k(y) / Gamma_k(x + y).

    Computed from log_k_gamma so that large arguments do not overflow.

    Args:
        x (float): First argument, positive.
        y (float): Second argument, positive.
        k (float): The deformation parameter.

    Returns:
        float: B_k(x, y).
    """
    if not (x > 0 and y > 0):
        raise DomainError(f"k_beta requires x > 0 and y > 0, got x={x}, y={y}")
    return math.exp(log_k_gamma(x, k) + log_k_gamma(y, k) - log_k_gamma(x + y, k))


def k_beta_integral(
    x: float,
    y: float,
    k: float,
    quad: QuadratureConfig | None = None,
    squared: bool = False,
) -> QuadratureResult:
    """Evaluate B_k(x, y) from its Euler-type integral by tanh-sinh quadrature.

    The plain form is (1/k) int_0^1 t^(x/k-1) (1-t)^(y/k-1) dt. With ``squared`` the
    substitution t -> t^2 is applied first, giving
    (2/k) int_0^1 t^(2x/k-1) (1-t^2)^(y/k-1) dt.

    Args:
        x (float): First argument, positive.
        y (float): Second argument, positive.
        k (float): The deformation parameter.
        quad (QuadratureConfig | None, optional): Integrator settings. Defaults to
            None.
        squared (bool, optional): Use the t -> t^2 form. Defaults to False.

    Returns:
        QuadratureResult: The integral, already scaled by 1/k or 2/k.
    """
    k = KParam(k).k
    if not (x > 0 and y > 0):
        raise DomainError(f"k_beta requires x > 0 and y > 0, got x={x}, y={y}")
    a, b = x / k, y / k

    if squared:
        def integrand(t, tc):
            return (2.0 / k) * t ** (2 * a - 1) * (tc * (1 + t)) ** (b - 1)
    else:
        def integrand(t, tc):
            return (1.0 / k) * t ** (a - 1) * tc ** (b - 1)

    return integrate_unit_interval(integrand, quad, complement=True)


def k_digamma_series(t: float, k: float, n_terms: int = 10**6) -> tuple[float, float]:
    """Sum the defining series of Psi_k directly.

    Psi_k(t) = (ln k - gamma)/k - 1/t + sum_{n>=1} t / (nk (nk + t)). The tail past
    n_terms is estimated by the midpoint integral (1/k) ln(1 + t / (k (N + 1/2))) and
    bounded by t / (k^2 N).

    Args:
        t (float): The argument, positive.
        k (float): The deformation parameter.
        n_terms (int, optional): Number of summed terms N. Defaults to 10**6.

    Returns:
        tuple[float, float]: The series value including the tail estimate, and the
            bound on the tail.
    """
    k = KParam(k).k
    if not t > 0:
        raise DomainError(f"k_digamma_series requires t > 0, got {t}")
    if n_terms < 1:
        raise DomainError(f"n_terms must be positive, got {n_terms}")

    nk = np.arange(n_terms, 0, -1, dtype=float) * k
    head = float(np.sum(t / (nk * (nk + t))))
    tail = math.log1p(t / (k * (n_terms + 0.5))) / k
    constant = (math.log(k) - MATH_CONSTANTS.euler_gamma) / k - 1.0 / t
    return constant + head + tail, t / (k * k * n_terms)
