# %% HEADER
# Series evaluation of the k-Struve function S^k_{nu,c}, its modified and normalized
# variants, their coefficients and exact term-wise derivatives.

# %% IMPORTS
from __future__ import annotations

from dataclasses import dataclass, replace
import math

from loguru import logger

from kstruve.config import (
    CANCELLATION_LIMIT,
    SERIES_GUARD_TERMS,
    SERIES_RATIO_BOUND,
    SERIES_REL_TOL,
    get_max_terms,
)
from kstruve.errors import DomainError
from kstruve.numerics import DD_EPS, EPS, DoubleDouble, NeumaierAccumulator
from kstruve.special_functions import MATH_CONSTANTS, k_gamma, log_k_gamma

# %% CONSTANTS
_GAMMA_3_2 = 0.5 * MATH_CONSTANTS.sqrt_pi
_LN_GAMMA_3_2 = math.log(_GAMMA_3_2)


# %% TYPES
@dataclass(frozen=True, slots=True)
class StruveParams:
    """The triple (nu, k, c) of S^k_{nu,c}.

    Attributes:
        nu (float): The order, nu > -3k/2.
        k (float): The deformation parameter, k > 0.
        c (float): The sign and scale parameter.
    """

    nu: float
    k: float
    c: float

    def __post_init__(self):
        """Validate the domain of the series."""
        if not all(math.isfinite(v) for v in (self.nu, self.k, self.c)):
            raise DomainError(f"Parameters must be finite, got {self}")
        if not self.k > 0:
            raise DomainError(f"k must be positive, got k={self.k}")
        if not self.nu > -1.5 * self.k:
            raise DomainError(
                f"nu={self.nu} violates nu > -3k/2 = {-1.5 * self.k} (k={self.k})"
            )

    @property
    def exponent(self) -> float:
        """The leading power nu/k + 1 of x/2."""
        return self.nu / self.k + 1.0

    @property
    def gamma_offset(self) -> float:
        """The k-gamma argument nu + 3k/2 of the leading coefficient."""
        return self.nu + 1.5 * self.k

    def shifted(self, dnu: float) -> StruveParams:
        """Get the same function with the order moved by dnu."""
        return replace(self, nu=self.nu + dnu)


@dataclass(frozen=True, slots=True)
class EvalResult:
    """A series value with its truncation error estimate.

    Attributes:
        value (float): The compensated sum.
        abs_error_estimate (float): Bound on the omitted tail.
        terms_used (int): Number of summed terms.
        magnitude (float): Sum of the absolute values of the summed terms, the scale of
            cancellation in alternating series.
        truncated (bool): True if the term cap was hit before the stopping rule fired.
        extended (bool): True if cancellation made the series be re-summed in
            double-double.
    """

    value: float
    abs_error_estimate: float
    terms_used: int
    magnitude: float = 0.0
    truncated: bool = False
    extended: bool = False

    def __post_init__(self):
        """Check the invariants of the estimate."""
        if self.terms_used < 1:
            raise ValueError(f"terms_used must be at least 1, got {self.terms_used}")
        if not self.abs_error_estimate >= 0:
            raise ValueError(
                f"abs_error_estimate must be nonnegative, got {self.abs_error_estimate}"
            )

    @property
    def rounding_error_estimate(self) -> float:
        """Bound on rounding, proportional to the summed magnitudes.

        A double-double sum is only left with the rounding of its leading term, which
        scales with the value itself.
        """
        steps = 8 * self.terms_used + 32
        if self.extended:
            return EPS * steps * abs(self.value) + DD_EPS * steps * self.magnitude
        return EPS * steps * self.magnitude

    @property
    def error_budget(self) -> float:
        """Truncation plus rounding estimate."""
        return self.abs_error_estimate + self.rounding_error_estimate


@dataclass(frozen=True, slots=True)
class TuranProbe:
    """Order nu and shift a of a Turan determinant of the normalized function.

    Attributes:
        nu (float): The central order.
        a (float): The shift, the determinant uses nu - a, nu and nu + a.
        k (float): The deformation parameter.
    """

    nu: float
    a: float
    k: float

    def __post_init__(self):
        """Validate nu > |a| - 3k/2."""
        if not (math.isfinite(self.k) and self.k > 0):
            raise DomainError(f"k must be positive, got k={self.k}")
        if not self.nu > abs(self.a) - 1.5 * self.k:
            raise DomainError(
                f"Turan probe needs nu > |a| - 3k/2, got nu={self.nu}, a={self.a}, "
                f"k={self.k}"
            )


# %% SERIES ENGINE
def _derivative_weight(m: float, derivative: int, x: float) -> float:
    """Factor turning x^m into its derivative of the given order, divided by x^m."""
    match derivative:
        case 0:
            return 1.0
        case 1:
            return m / x
        case 2:
            return m * (m - 1.0) / (x * x)
        case _:
            raise DomainError(f"derivative must be 0, 1 or 2, got {derivative}")


def _extended_sum(
    leading: float,
    z: DoubleDouble,
    gamma_offset: DoubleDouble,
    k: float,
    exponent: float,
    x: float,
    derivative: int,
    terms: int,
) -> float:
    """Re-sum the first terms with ratios, weights and total in double-double."""
    total = DoubleDouble(0.0)
    b = DoubleDouble(leading)
    for r in range(terms):
        m = DoubleDouble(exponent) + 2 * r
        match derivative:
            case 0:
                total += b
            case 1:
                total += b * m / x
            case _:
                total += b * m * (m - 1.0) / x / x
        b = b * z / ((DoubleDouble(float(r)) * k + gamma_offset) * (r + 1.5))
    return float(total)


def _sum_series(
    leading: float,
    z: DoubleDouble,
    gamma_offset: DoubleDouble,
    k: float,
    exponent: float,
    x: float,
    derivative: int = 0,
) -> EvalResult:
    """Sum b_r * w_r with b_{r+1} = b_r z / ((rk + gamma_offset)(r + 3/2)).

    b_r is the r-th term of the series in powers x^(2r + exponent) and w_r the weight of
    the requested derivative. Terms are added until the contribution is below
    SERIES_REL_TOL of the running sum, the ratio of consecutive b is at most
    SERIES_RATIO_BOUND and the weights have settled; then SERIES_GUARD_TERMS more are
    added. The tail estimate is |first omitted| / (1 - rho) with rho the largest ratio of
    consecutive omitted contributions.

    The terms are summed in binary64 first. When sum(|terms|) exceeds
    CANCELLATION_LIMIT times the result, the same terms are summed again in
    double-double so that cancellation does not eat the significant digits.

    Args:
        leading (float): b_0.
        z (DoubleDouble): Numerator of the term ratio.
        gamma_offset (DoubleDouble): nu + 3k/2.
        k (float): The deformation parameter.
        exponent (float): Power of the leading term.
        x (float): The argument, positive when derivative > 0.
        derivative (int, optional): Order of differentiation. Defaults to 0.

    Returns:
        EvalResult: The value with its estimates.
    """
    max_terms = get_max_terms()
    z_value, g = float(z), float(gamma_offset)
    acc = NeumaierAccumulator()
    magnitude = 0.0
    b = leading
    stop_at = None

    for r in range(max_terms):
        m = 2 * r + exponent
        contribution = b * _derivative_weight(m, derivative, x)
        acc.add(contribution)
        magnitude += abs(contribution)

        rho = abs(z_value) / ((r * k + g) * (r + 1.5))
        if (
            stop_at is None
            and abs(contribution) <= SERIES_REL_TOL * abs(acc.value)
            and rho <= SERIES_RATIO_BOUND
            and m - derivative > 0
        ):
            stop_at = r + SERIES_GUARD_TERMS
        b *= z_value / ((r * k + g) * (r + 1.5))
        if stop_at is not None and r >= stop_at:
            break
    else:
        logger.warning(
            f"Series hit the {max_terms}-term cap before converging "
            f"(x={x}, derivative={derivative})"
        )

    if not math.isfinite(acc.value):
        raise OverflowError(f"k-Struve series overflowed at x={x}")

    terms_used = r + 1
    m_next = 2 * terms_used + exponent
    omitted = abs(b * _derivative_weight(m_next, derivative, x))
    rho_next = abs(z_value) / ((terms_used * k + g) * (terms_used + 1.5))
    if derivative:
        # Successive weights grow, at most by their ratio at the first omitted term
        w_ratio = _derivative_weight(m_next + 2, derivative, x) / _derivative_weight(
            m_next, derivative, x
        )
        rho_next *= abs(w_ratio)
    error = omitted / (1.0 - rho_next) if rho_next < 1.0 else math.inf

    value = acc.value
    extended = magnitude > CANCELLATION_LIMIT * abs(value)
    if extended:
        value = _extended_sum(
            leading, z, gamma_offset, k, exponent, x, derivative, terms_used
        )

    return EvalResult(
        value=value,
        abs_error_estimate=error,
        terms_used=terms_used,
        magnitude=magnitude,
        truncated=stop_at is None,
        extended=extended,
    )


def _exact_offset(params: StruveParams) -> DoubleDouble:
    """nu + 3k/2 without rounding."""
    return DoubleDouble(params.nu) + DoubleDouble(1.5) * params.k


def _leading_term(params: StruveParams, x: float) -> float:
    """(x/2)^(nu/k+1) / (Gamma_k(nu + 3k/2) Gamma(3/2)), through logs if it leaves range."""
    half = x / 2
    try:
        denominator = k_gamma(params.gamma_offset, params.k) * _GAMMA_3_2
        value = half**params.exponent / denominator
    except OverflowError:
        value = 0.0
    if math.isfinite(value) and value != 0.0:
        return value
    log_value = (
        params.exponent * math.log(half)
        - log_k_gamma(params.gamma_offset, params.k)
        - _LN_GAMMA_3_2
    )
    return math.exp(log_value)


def _check_argument(params: StruveParams, x: float, derivative: int) -> None:
    if derivative > 0:
        if not x > 0:
            raise DomainError(f"Derivatives are evaluated for x > 0 only, got x={x}")
        return
    if not x >= 0:
        raise DomainError(
            f"S^k_(nu,c)(x) is defined for x >= 0 only (non-integer power of a "
            f"negative base), got x={x}"
        )
    if x == 0 and not params.nu > -params.k:
        raise DomainError(f"x = 0 requires nu > -k, got nu={params.nu}, k={params.k}")


def _struve_series(params: StruveParams, x: float, derivative: int) -> EvalResult:
    _check_argument(params, x, derivative)
    if x == 0:
        return EvalResult(0.0, 0.0, 1)
    half = x / 2
    return _sum_series(
        leading=_leading_term(params, x),
        z=-(DoubleDouble(half) * half) * params.c,
        gamma_offset=_exact_offset(params),
        k=params.k,
        exponent=params.exponent,
        x=x,
        derivative=derivative,
    )


# %% COEFFICIENTS
def struve_coefficient(r: int, nu: float, k: float, c: float) -> float:
    """Get the coefficient (-c)^r / (Gamma_k(rk + nu + 3k/2) Gamma(r + 3/2)).

    It multiplies (x/2)^(2r + nu/k + 1) in the series. The value is carried as a mantissa
    and a binary exponent through the ratio recurrence, so large r neither overflows nor
    loses the exact consecutive ratio.

    Args:
        r (int): The term index, r >= 0.
        nu (float): The order.
        k (float): The deformation parameter.
        c (float): The sign and scale parameter.

    Returns:
        float: The coefficient; 0.0 if it underflows.

    Raises:
        DomainError: If r < 0 or (nu, k, c) is outside the domain.
        OverflowError: If the coefficient exceeds the finite range.
    """
    params = StruveParams(nu, k, c)
    if r < 0 or int(r) != r:
        raise DomainError(f"r must be a nonnegative integer, got {r}")

    g = params.gamma_offset
    try:
        mantissa, exponent = math.frexp(1.0 / (k_gamma(g, k) * _GAMMA_3_2))
    except OverflowError:
        log2_value = -(log_k_gamma(g, k) + _LN_GAMMA_3_2) / math.log(2)
        exponent = math.floor(log2_value)
        mantissa = 2.0 ** (log2_value - exponent)

    for j in range(int(r)):
        mantissa *= -c / ((j * k + g) * (j + 1.5))
        mantissa, shift = math.frexp(mantissa)
        exponent += shift
    return math.ldexp(mantissa, exponent)


def struve_coefficient_normalized(r: int, nu: float, k: float) -> float:
    """Get f_r = Gamma_k(nu+3k/2) / (Gamma_k(rk+nu+3k/2) Gamma(r+3/2) 2^(2r+1)).

    Starts from f_0 = 1/sqrt(pi) and applies f_{r+1}/f_r = 1 / (4 (rk+nu+3k/2)(r+3/2)).
    """
    params = StruveParams(nu, k, -1.0)
    if r < 0 or int(r) != r:
        raise DomainError(f"r must be a nonnegative integer, got {r}")

    g = params.gamma_offset
    mantissa, exponent = math.frexp(1.0 / MATH_CONSTANTS.sqrt_pi)
    for j in range(int(r)):
        mantissa /= 4.0 * (j * k + g) * (j + 1.5)
        mantissa, shift = math.frexp(mantissa)
        exponent += shift
    return math.ldexp(mantissa, exponent)


# %% EVALUATION
def struve(params: StruveParams, x: float) -> EvalResult:
    """Evaluate S^k_{nu,c}(x) by its power series.

    Args:
        params (StruveParams): The parameters (nu, k, c).
        x (float): The argument, x >= 0 (x > 0 unless nu > -k).

    Returns:
        EvalResult: The value with truncation estimate and term count.

    Raises:
        DomainError: For x < 0, or x = 0 with nu <= -k.
    """
    return _struve_series(params, x, derivative=0)


def modified_struve(nu: float, k: float, x: float) -> EvalResult:
    """Evaluate the modified k-Struve function L^k_nu(x) = S^k_{nu,-1}(x)."""
    return struve(StruveParams(nu, k, -1.0), x)


def struve_derivative(params: StruveParams, x: float) -> EvalResult:
    """Evaluate d/dx S^k_{nu,c}(x) by term-wise differentiation, x > 0."""
    return _struve_series(params, x, derivative=1)


def struve_second_derivative(params: StruveParams, x: float) -> EvalResult:
    """Evaluate the second derivative of S^k_{nu,c}(x) term-wise, x > 0."""
    return _struve_series(params, x, derivative=2)


def _normalized_series(nu: float, k: float, x: float, derivative: int) -> EvalResult:
    params = StruveParams(nu, k, -1.0)
    return _sum_series(
        leading=x / MATH_CONSTANTS.sqrt_pi,
        z=DoubleDouble(x / 2) * (x / 2),
        gamma_offset=_exact_offset(params),
        k=k,
        exponent=1.0,
        x=x,
        derivative=derivative,
    )


def normalized_struve(nu: float, k: float, x: float) -> EvalResult:
    """Evaluate the normalized function sum_r f_r(nu, k) x^(2r+1).

    It equals (2/x)^(nu/k) Gamma_k(nu+3k/2) L^k_nu(x) and is odd in x; negative
    arguments are evaluated at |x| and negated, so oddness holds bit for bit.

    Args:
        nu (float): The order, nu > -3k/2.
        k (float): The deformation parameter.
        x (float): Any real argument.

    Returns:
        EvalResult: The value with truncation estimate and term count.
    """
    if x == 0:
        StruveParams(nu, k, -1.0)
        return EvalResult(0.0, 0.0, 1)
    result = _normalized_series(nu, k, abs(x), derivative=0)
    if x < 0:
        return replace(result, value=-result.value)
    return result


def normalized_struve_derivative(nu: float, k: float, x: float) -> EvalResult:
    """Evaluate the derivative of the normalized function, an even function of x."""
    if x == 0:
        StruveParams(nu, k, -1.0)
        f0 = 1.0 / MATH_CONSTANTS.sqrt_pi
        return EvalResult(f0, 0.0, 1, magnitude=f0)
    return _normalized_series(nu, k, abs(x), derivative=1)

