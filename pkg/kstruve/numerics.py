# %% HEADER
# Shared numerical machinery: tanh-sinh quadrature on (0, 1), compensated summation,
# centred finite differences and the double-double series oracle.

# %% IMPORTS
from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass
import math
import sys
from typing import TYPE_CHECKING

from loguru import logger
import mpmath
import numpy as np

from kstruve.errors import DomainError, QuadratureError

if TYPE_CHECKING:
    from kstruve.struve import StruveParams

# %% CONSTANTS
EPS = sys.float_info.epsilon

# tanh-sinh: step of level 0, half-width of the s-range and minimum refinements
TS_H0 = 0.5
TS_S_MAX = 6.0
TS_MIN_LEVELS = 3

# Differences between levels below this many ulps of sum(|w f|) are noise
TS_ROUNDING_ULPS = 64

# Dekker splitter, 2^27 + 1
_SPLITTER = 134217729.0

# Working precision of the oracle prefactor, in bits
ORACLE_PREC = 128
ORACLE_MAX_TERMS = 200

# Relative rounding of a double-double operation
DD_EPS = 2.0**-104


# %% QUADRATURE
@dataclass(frozen=True, slots=True)
class QuadratureConfig:
    """Settings of the tanh-sinh integrator.

    Attributes:
        target_rel_tol (float): Relative tolerance on the difference between the last
            two refinement levels.
        max_levels (int): Maximum number of step halvings.
        abs_floor (float): Absolute tolerance added to the relative one.
    """

    target_rel_tol: float = 1e-11
    max_levels: int = 12
    abs_floor: float = 1e-300

    def __post_init__(self):
        """Validate the settings."""
        if not 1e-15 < self.target_rel_tol < 1e-2:
            raise DomainError(
                f"target_rel_tol must lie in (1e-15, 1e-2), got {self.target_rel_tol}"
            )
        if not 4 <= self.max_levels <= 16:
            raise DomainError(f"max_levels must lie in [4, 16], got {self.max_levels}")
        if not (math.isfinite(self.abs_floor) and self.abs_floor > 0):
            raise DomainError(f"abs_floor must be positive, got {self.abs_floor}")


@dataclass(frozen=True, slots=True)
class QuadratureResult:
    """Value of an integral over (0, 1) with its error estimate.

    Attributes:
        value (float): The last refinement.
        error_estimate (float): Absolute difference of the last two refinements.
        levels_used (int): Number of step halvings performed.
        rounding_floor (float): Rounding noise level of the weighted node sum.
        converged (bool): Whether the error estimate met the tolerance.
    """

    value: float
    error_estimate: float
    levels_used: int
    rounding_floor: float
    converged: bool


def _tanh_sinh_nodes(s: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Map s-nodes to (0, 1) with t = (1 + tanh(pi/2 sinh s)) / 2.

    Args:
        s (np.ndarray): Nodes in the auxiliary variable.

    Returns:
        tuple: The abscissae t, their complements 1 - t and the Jacobian dt/ds.
    """
    u = 0.5 * np.pi * np.sinh(s)
    t = 1.0 / (1.0 + np.exp(-2.0 * u))
    tc = 1.0 / (1.0 + np.exp(2.0 * u))
    jacobian = np.pi * np.cosh(s) * t * tc
    return t, tc, jacobian


def _weighted_values(
    f: Callable, s: np.ndarray, complement: bool
) -> tuple[float, float]:
    """Evaluate sum(w f) and sum(|w f|) over one set of nodes.

    Args:
        f (Callable): The vectorised integrand.
        s (np.ndarray): Nodes in the auxiliary variable.
        complement (bool): Call f(t, 1 - t) instead of f(t).

    Returns:
        tuple: The weighted sum and the weighted sum of magnitudes.
    """
    t, tc, jacobian = _tanh_sinh_nodes(s)
    if complement:
        values = f(t, tc)
    else:
        # Nodes that rounded onto the endpoints carry no usable information
        inside = (t > 0.0) & (t < 1.0)
        t, jacobian = t[inside], jacobian[inside]
        values = f(t)
    values = np.broadcast_to(np.asarray(values, dtype=float), t.shape)
    products = jacobian * values
    if not np.all(np.isfinite(products)):
        raise QuadratureError(
            "Integrand returned non-finite values", math.nan, math.inf, 0
        )
    return float(np.sum(products)), float(np.sum(np.abs(products)))


def integrate_unit_interval(
    f: Callable,
    config: QuadratureConfig | None = None,
    *,
    complement: bool = False,
    strict: bool = True,
) -> QuadratureResult:
    """Integrate f over (0, 1) with the tanh-sinh rule.

    The trapezoidal rule in the variable s is refined by halving the step; each level
    only evaluates the new odd nodes. Integrable algebraic singularities at either
    endpoint are handled without special treatment. Near t = 1 the value 1 - t is not
    representable from t itself, so integrands singular there should be written in
    terms of the complement: with ``complement=True`` f is called as f(t, tc) with
    tc = 1 - t computed to full relative precision.

    Args:
        f (Callable): Vectorised integrand taking numpy arrays.
        config (QuadratureConfig | None, optional): Integrator settings. Defaults to
            QuadratureConfig().
        complement (bool, optional): Pass the complement 1 - t as second argument.
            Defaults to False.
        strict (bool, optional): Raise when the tolerance is not met; otherwise
            return the last refinement with converged=False. Defaults to True.

    Returns:
        QuadratureResult: The integral and its error estimate.

    Raises:
        QuadratureError: If strict and the tolerance is not met within
            config.max_levels.
    """
    config = config or QuadratureConfig()

    h = TS_H0
    n = int(TS_S_MAX / h)
    total, magnitude = _weighted_values(f, np.arange(-n, n + 1) * h, complement)
    total *= h
    magnitude *= h

    error = math.inf
    rounding_floor = 0.0
    for level in range(1, config.max_levels + 1):
        h /= 2
        odd = np.arange(1, int(TS_S_MAX / h) + 1, 2) * h
        new, new_magnitude = _weighted_values(
            f, np.concatenate((-odd[::-1], odd)), complement
        )
        previous = total
        total = total / 2 + h * new
        magnitude = magnitude / 2 + h * new_magnitude

        error = abs(total - previous)
        rounding_floor = TS_ROUNDING_ULPS * EPS * magnitude
        threshold = config.target_rel_tol * abs(total) + config.abs_floor
        if level >= TS_MIN_LEVELS and error <= threshold + rounding_floor:
            return QuadratureResult(total, error, level, rounding_floor, True)

    logger.warning(
        f"tanh-sinh stopped after {config.max_levels} levels with error {error:.3e}"
    )
    if not strict:
        return QuadratureResult(total, error, config.max_levels, rounding_floor, False)
    raise QuadratureError(
        f"Quadrature did not converge to rel. tol. {config.target_rel_tol:g} "
        f"(last difference {error:.3e})",
        total,
        error,
        config.max_levels,
    )


# %% SUMMATION
class NeumaierAccumulator:
    """Running Kahan-Neumaier compensated sum.

    Attributes:
        total (float): The uncompensated running sum.
        compensation (float): The accumulated rounding error of total.
    """

    __slots__ = ("compensation", "total")

    def __init__(self):
        """Start from zero."""
        self.total = 0.0
        self.compensation = 0.0

    def add(self, term: float) -> None:
        """Add one term.

        Args:
            term (float): The term to add.
        """
        running = self.total + term
        if abs(self.total) >= abs(term):
            self.compensation += (self.total - running) + term
        else:
            self.compensation += (term - running) + self.total
        self.total = running

    @property
    def value(self) -> float:
        """The compensated sum."""
        return self.total + self.compensation


def compensated_sum(terms: Iterable[float]) -> float:
    """Sum terms with Kahan-Neumaier compensation.

    Args:
        terms (Iterable[float]): The terms, summed in the given order.

    Returns:
        float: The compensated total; 0.0 for no terms.
    """
    acc = NeumaierAccumulator()
    for term in terms:
        acc.add(float(term))
    return acc.value


# %% DIFFERENTIATION
def central_difference(
    f: Callable[[float], float], x: float, order: int, step: float | None = None
) -> float:
    """Centred finite difference of first or second order.

    Default steps are eps^(1/3) * max(1, |x|) for the first derivative and
    eps^(1/4) * max(1, |x|) for the second. The step is rounded so that x + h is
    exactly representable.

    Args:
        f (Callable[[float], float]): Function to differentiate.
        x (float): Point of evaluation.
        order (int): Derivative order, 1 or 2.
        step (float | None, optional): Override of the default step. Defaults to
            None.

    Returns:
        float: The finite-difference derivative.

    Raises:
        DomainError: For an unsupported order or a non-positive step.
    """
    match order:
        case 1:
            h = step if step is not None else EPS ** (1 / 3) * max(1.0, abs(x))
        case 2:
            h = step if step is not None else EPS**0.25 * max(1.0, abs(x))
        case _:
            raise DomainError(f"order must be 1 or 2, got {order}")
    if not h > 0:
        raise DomainError(f"step must be positive, got {h}")

    h = (x + h) - x
    if order == 1:
        return (f(x + h) - f(x - h)) / (2 * h)
    return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h)


# %% DOUBLE-DOUBLE
def two_sum(a: float, b: float) -> tuple[float, float]:
    """Sum with exact error: s + err == a + b."""
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def quick_two_sum(a: float, b: float) -> tuple[float, float]:
    """As two_sum, assuming |a| >= |b|."""
    s = a + b
    err = b - (s - a)
    return s, err


def _split(a: float) -> tuple[float, float]:
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a: float, b: float) -> tuple[float, float]:
    """Product with exact error: p + err == a * b."""
    p = a * b
    if hasattr(math, "fma"):
        return p, math.fma(a, b, -p)
    a_hi, a_lo = _split(a)
    b_hi, b_lo = _split(b)
    err = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return p, err


@dataclass(frozen=True, slots=True)
class DoubleDouble:
    """Unevaluated sum hi + lo of two doubles with |lo| <= ulp(hi) / 2.

    Attributes:
        hi (float): Leading part.
        lo (float): Trailing part.
    """

    hi: float
    lo: float = 0.0

    @classmethod
    def from_mpf(cls, value: mpmath.mpf) -> DoubleDouble:
        """Round a multiprecision number to double-double."""
        hi = float(value)
        lo = float(value - hi)
        return cls(hi, lo)

    @staticmethod
    def _coerce(other: DoubleDouble | float) -> DoubleDouble:
        if isinstance(other, DoubleDouble):
            return other
        return DoubleDouble(float(other))

    def __neg__(self) -> DoubleDouble:
        return DoubleDouble(-self.hi, -self.lo)

    def __abs__(self) -> DoubleDouble:
        return -self if self.hi < 0 else self

    def __add__(self, other: DoubleDouble | float) -> DoubleDouble:
        other = self._coerce(other)
        s, e = two_sum(self.hi, other.hi)
        t, f = two_sum(self.lo, other.lo)
        e += t
        s, e = quick_two_sum(s, e)
        e += f
        return DoubleDouble(*quick_two_sum(s, e))

    __radd__ = __add__

    def __sub__(self, other: DoubleDouble | float) -> DoubleDouble:
        return self + (-self._coerce(other))

    def __mul__(self, other: DoubleDouble | float) -> DoubleDouble:
        other = self._coerce(other)
        p, e = two_prod(self.hi, other.hi)
        e += self.hi * other.lo + self.lo * other.hi
        return DoubleDouble(*quick_two_sum(p, e))

    __rmul__ = __mul__

    def __truediv__(self, other: DoubleDouble | float) -> DoubleDouble:
        other = self._coerce(other)
        if other.hi == 0.0:
            raise ZeroDivisionError("double-double division by zero")
        q1 = self.hi / other.hi
        remainder = self - other * q1
        q2 = remainder.hi / other.hi
        remainder -= other * q2
        q3 = remainder.hi / other.hi
        return DoubleDouble(*quick_two_sum(q1, q2)) + q3

    def __float__(self) -> float:
        return self.hi + self.lo

    def __repr__(self) -> str:
        return f"DoubleDouble(hi={self.hi:.17g}, lo={self.lo:.17g})"


# %% ORACLE
@dataclass(frozen=True, slots=True)
class OracleResult:
    """Double-double sum of the k-Struve series.

    Attributes:
        value (DoubleDouble): The sum.
        tail_bound (float): Bound on the omitted tail from the geometric ratio.
        rounding_bound (float): Bound on double-double rounding of the summed terms.
        terms_used (int): Number of terms summed.
    """

    value: DoubleDouble
    tail_bound: float
    rounding_bound: float
    terms_used: int

    @property
    def error_bound(self) -> float:
        """Total absolute error bound."""
        return self.tail_bound + self.rounding_bound

    def __float__(self) -> float:
        return float(self.value)


def _oracle_prefactor(nu: float, k: float, x: float) -> DoubleDouble:
    """(x/2)^(nu/k + 1) / (Gamma_k(nu + 3k/2) Gamma(3/2)) rounded to double-double."""
    with mpmath.workprec(ORACLE_PREC):
        nu_mp, k_mp = mpmath.mpf(nu), mpmath.mpf(k)
        g = nu_mp + 3 * k_mp / 2
        k_gamma = k_mp ** (g / k_mp - 1) * mpmath.gamma(g / k_mp)
        power = (mpmath.mpf(x) / 2) ** (nu_mp / k_mp + 1)
        return DoubleDouble.from_mpf(power / (k_gamma * mpmath.gamma(mpmath.mpf(1.5))))


def oracle_struve_sum(
    params: StruveParams, x: float, terms: int = ORACLE_MAX_TERMS
) -> OracleResult:
    """Sum the k-Struve series in double-double arithmetic.

    The prefactor (x/2)^(nu/k+1) / (Gamma_k(nu+3k/2) Gamma(3/2)) is computed at 128 bits
    and the term ratios -c (x/2)^2 / ((rk + nu + 3k/2)(r + 3/2)) in double-double, so the
    inputs are used exactly as given in binary.

    Args:
        params (StruveParams): The parameters (nu, k, c).
        x (float): Argument, x >= 0.
        terms (int, optional): Number of terms to sum, at most 200. Defaults to 200.

    Returns:
        OracleResult: The sum with its tail and rounding bounds.

    Raises:
        DomainError: For x < 0, x = 0 with nu <= -k, or terms outside [1, 200].
    """
    if not 1 <= terms <= ORACLE_MAX_TERMS:
        raise DomainError(f"terms must lie in [1, {ORACLE_MAX_TERMS}], got {terms}")
    if not x >= 0:
        raise DomainError(f"x must be nonnegative, got {x}")
    if x == 0:
        if not params.nu > -params.k:
            raise DomainError(f"x = 0 requires nu > -k, got nu={params.nu}")
        return OracleResult(DoubleDouble(0.0), 0.0, 0.0, 1)

    half = DoubleDouble(x / 2)
    z = -params.c * (half * half)
    g = DoubleDouble(params.nu) + DoubleDouble(1.5) * params.k

    partial = DoubleDouble(0.0)
    q = DoubleDouble(1.0)
    abs_sum = 0.0
    for r in range(terms):
        partial += q
        abs_sum += abs(q.hi)
        q = q * z / ((DoubleDouble(float(r)) * params.k + g) * (r + 1.5))

    prefactor = _oracle_prefactor(params.nu, params.k, x)
    rho = abs(float(z)) / ((terms * params.k + float(g)) * (terms + 1.5))
    scale = abs(float(prefactor))
    tail = scale * abs(float(q)) / (1 - rho) if rho < 1 else math.inf
    rounding = scale * abs_sum * (terms + 4) * DD_EPS
    return OracleResult(prefactor * partial, tail, rounding, terms)
