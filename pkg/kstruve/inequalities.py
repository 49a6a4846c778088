# %% HEADER
# Grid certification of the inequalities of the normalized k-Struve function: ratio
# monotonicity in x, monotonicity and log-convexity in the order, the decreasing
# order-ratio of the modified function and the reversed Turan inequality.

# %% IMPORTS
from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations_with_replacement, pairwise
import math

try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        """Backport of enum.StrEnum for Python < 3.11."""

        __str__ = str.__str__
        __format__ = str.__format__

from kstruve.config import INEQUALITY_SLACK, RATIO_TIE_TOLERANCE
from kstruve.errors import DomainError
from kstruve.special_functions import KParam, k_digamma, k_trigamma
from kstruve.struve import (
    StruveParams,
    TuranProbe,
    modified_struve,
    normalized_struve,
    normalized_struve_derivative,
    struve_coefficient_normalized,
)
from kstruve.utils import jsonable, relative_margin


# %% TYPES
class Direction(StrEnum):
    """Observed monotonicity of a finite sequence."""

    INCREASING = "increasing"
    DECREASING = "decreasing"
    CONSTANT = "constant"
    MIXED = "mixed"


@dataclass(frozen=True, slots=True)
class GridSpec:
    """Rectangular grid of orders, deformation parameters, arguments and shifts.

    With ``relative_to_k`` (the default) the order and shift values are multiples of k,
    so nu_values=(-0.4, 0, 0.5) means nu in {-0.4k, 0, k/2} for every k.

    Attributes:
        nu_values (tuple[float, ...]): Orders.
        k_values (tuple[float, ...]): Deformation parameters.
        x_values (tuple[float, ...]): Arguments.
        a_values (tuple[float, ...]): Turan shifts.
        alpha_convexity (tuple[float, ...]): Convex combination weights in [0, 1].
        relative_to_k (bool): Whether nu and a values are multiples of k.
    """

    nu_values: tuple[float, ...]
    k_values: tuple[float, ...]
    x_values: tuple[float, ...]
    a_values: tuple[float, ...] = (0.0,)
    alpha_convexity: tuple[float, ...] = (0.5,)
    relative_to_k: bool = True

    def __post_init__(self):
        """Normalise the value lists to tuples of floats and validate the domain."""
        for name in ("nu_values", "k_values", "x_values", "a_values", "alpha_convexity"):
            values = tuple(float(v) for v in getattr(self, name))
            if not values:
                raise DomainError(f"GridSpec.{name} must not be empty")
            if not all(math.isfinite(v) for v in values):
                raise DomainError(f"GridSpec.{name} must be finite, got {values}")
            object.__setattr__(self, name, values)

        for k in self.k_values:
            KParam(k)
            for nu in self.orders(k):
                for a in self.shifts(k):
                    if not nu > abs(a) - 1.5 * k:
                        raise DomainError(
                            f"Grid point nu={nu}, a={a}, k={k} violates nu > |a| - 3k/2"
                        )
        if not all(0.0 <= w <= 1.0 for w in self.alpha_convexity):
            raise DomainError(
                f"alpha_convexity must lie in [0, 1], got {self.alpha_convexity}"
            )

    def orders(self, k: float) -> list[float]:
        """Get the sorted orders nu for a given k."""
        scale = k if self.relative_to_k else 1.0
        return sorted({v * scale for v in self.nu_values})

    def shifts(self, k: float) -> list[float]:
        """Get the Turan shifts a for a given k."""
        scale = k if self.relative_to_k else 1.0
        return [v * scale for v in self.a_values]

    def positive_x(self) -> list[float]:
        """Get the strictly positive arguments, sorted."""
        return sorted(x for x in self.x_values if x > 0)

    def describe(self) -> str:
        """Get a one-line description of the sampled set."""
        unit = "k*" if self.relative_to_k else ""
        return (
            f"nu in {unit}{list(self.nu_values)}, k in {list(self.k_values)}, "
            f"x in {list(self.x_values)}, a in {unit}{list(self.a_values)}, "
            f"alpha in {list(self.alpha_convexity)}"
        )

    def to_dict(self) -> dict:
        """Get the grid as a JSON-ready dictionary."""
        return {
            "nu_values": list(self.nu_values),
            "k_values": list(self.k_values),
            "x_values": list(self.x_values),
            "a_values": list(self.a_values),
            "alpha_convexity": list(self.alpha_convexity),
            "relative_to_k": self.relative_to_k,
        }


@dataclass(frozen=True, slots=True)
class Violation:
    """A grid point where the margin exceeded the tolerance."""

    point: dict
    margin: float


@dataclass(frozen=True, slots=True)
class VerificationReport:
    """Outcome of one check over a finite sample set.

    Margins are signed and normalised so that a check holds at a point when its margin
    is at most the tolerance; the worst margin is the largest one observed.

    Attributes:
        check_name (str): Name of the check.
        points_tested (int): Number of comparisons made.
        violations (tuple[Violation, ...]): Points whose margin exceeded the tolerance.
        worst_margin (float): Largest margin, 0.0 when nothing was compared.
        witness (dict | None): Point of the worst margin.
        tolerance (float): Slack the margins were compared against.
        sample_set (str): Description of what was sampled.
        direction (Direction | None): Observed direction, for monotonicity checks.
    """

    check_name: str
    points_tested: int
    violations: tuple[Violation, ...]
    worst_margin: float
    witness: dict | None
    tolerance: float
    sample_set: str = ""
    direction: Direction | None = None

    @property
    def passed(self) -> bool:
        """True when no point violated the tolerance."""
        return not self.violations

    def to_dict(self) -> dict:
        """Get the report in the stable JSON layout."""
        return jsonable({
            "name": self.check_name,
            "points": self.points_tested,
            "worst_margin": self.worst_margin,
            "witness": self.witness,
            "passed": self.passed,
        })


class ReportBuilder:
    """Collect margins of one check and assemble its VerificationReport.

    Attributes:
        check_name (str): Name of the check.
        tolerance (float): Largest acceptable margin.
        sample_set (str): Description of what is sampled.
    """

    def __init__(self, check_name: str, tolerance: float, sample_set: str = ""):
        """Initialise an empty report."""
        self.check_name = check_name
        self.tolerance = tolerance
        self.sample_set = sample_set
        self.points_tested = 0
        self.violations: list[Violation] = []
        self.worst_margin = -math.inf
        self.witness: dict | None = None

    def record(self, margin: float, **point) -> None:
        """Record the margin observed at one point; NaN counts as a violation.

        Args:
            margin (float): The normalised margin.
            **point: The coordinates of the point.
        """
        self.points_tested += 1
        first_nan = math.isnan(margin) and not math.isnan(self.worst_margin)
        if self.witness is None or margin > self.worst_margin or first_nan:
            self.worst_margin = margin
            self.witness = point
        if not margin <= self.tolerance:
            self.violations.append(Violation(point, margin))

    def build(self, direction: Direction | None = None) -> VerificationReport:
        """Assemble the report."""
        worst = self.worst_margin if self.witness is not None else 0.0
        return VerificationReport(
            check_name=self.check_name,
            points_tested=self.points_tested,
            violations=tuple(self.violations),
            worst_margin=worst,
            witness=self.witness,
            tolerance=self.tolerance,
            sample_set=self.sample_set,
            direction=direction,
        )


@dataclass(frozen=True, slots=True)
class RatioSequence:
    """Coefficients a_r and b_r > 0 of two power series sum a_r x^r and sum b_r x^r.

    Attributes:
        numerator_coeffs (tuple[float, ...]): The a_r.
        denominator_coeffs (tuple[float, ...]): The b_r, strictly positive.
    """

    numerator_coeffs: tuple[float, ...]
    denominator_coeffs: tuple[float, ...]

    def __post_init__(self):
        """Validate equal lengths and positive denominators."""
        numerators = tuple(float(v) for v in self.numerator_coeffs)
        denominators = tuple(float(v) for v in self.denominator_coeffs)
        if len(numerators) != len(denominators):
            raise DomainError(
                f"Coefficient sequences differ in length: {len(numerators)} vs "
                f"{len(denominators)}"
            )
        if not all(b > 0 for b in denominators):
            raise DomainError("Denominator coefficients must be strictly positive")
        object.__setattr__(self, "numerator_coeffs", numerators)
        object.__setattr__(self, "denominator_coeffs", denominators)

    @classmethod
    def from_normalized(
        cls, numerator_nu: float, denominator_nu: float, k: float, length: int
    ) -> RatioSequence:
        """Build the sequences f_r(numerator_nu, k) and f_r(denominator_nu, k), r < length."""
        return cls(
            tuple(struve_coefficient_normalized(r, numerator_nu, k) for r in range(length)),
            tuple(
                struve_coefficient_normalized(r, denominator_nu, k) for r in range(length)
            ),
        )

    @property
    def length(self) -> int:
        """The number of coefficients."""
        return len(self.numerator_coeffs)

    @property
    def ratios(self) -> list[float]:
        """The ratios w_r = a_r / b_r."""
        return [a / b for a, b in zip(self.numerator_coeffs, self.denominator_coeffs)]


# %% FUNCTIONS
def merge_reports(check_name: str, reports: Iterable[VerificationReport]) -> VerificationReport:
    """Merge reports of the same check over several sample sets into one.

    Args:
        check_name (str): Name of the merged check.
        reports (Iterable[VerificationReport]): Reports sharing one tolerance.

    Returns:
        VerificationReport: Summed points, all violations and the overall worst margin.
    """
    reports = list(reports)
    if not reports:
        raise DomainError("Cannot merge an empty list of reports")
    compared = [r for r in reports if r.witness is not None]
    worst = max(compared, key=lambda r: r.worst_margin, default=None)
    return VerificationReport(
        check_name=check_name,
        points_tested=sum(r.points_tested for r in reports),
        violations=tuple(v for r in reports for v in r.violations),
        worst_margin=worst.worst_margin if worst else 0.0,
        witness=worst.witness if worst else None,
        tolerance=reports[0].tolerance,
        sample_set="; ".join(r.sample_set for r in reports),
    )


def _classify(values: Sequence[float], tolerance: float) -> Direction:
    """Classify a sequence, treating steps within tolerance * magnitude as ties."""
    up = down = False
    for first, second in pairwise(values):
        step = second - first
        if abs(step) <= tolerance * max(abs(first), abs(second)):
            continue
        if step > 0:
            up = True
        else:
            down = True
    match (up, down):
        case (False, False):
            return Direction.CONSTANT
        case (True, False):
            return Direction.INCREASING
        case (False, True):
            return Direction.DECREASING
        case _:
            return Direction.MIXED


def _normalized(nu: float, k: float, x: float) -> float:
    return normalized_struve(nu, k, x).value


def turanian(f_minus: float, f_center: float, f_plus: float) -> float:
    """Get the 2x2 Turan determinant f_center^2 - f_minus * f_plus."""
    return f_center * f_center - f_minus * f_plus


def coefficient_ratio_direction(seq: RatioSequence) -> Direction:
    """Classify the monotonicity of a_r / b_r with relative tie tolerance 1e-14.

    If the ratio of coefficients is increasing (decreasing) then so is the ratio of the
    power series on (0, infinity).

    Args:
        seq (RatioSequence): The coefficient sequences, at least two of each.

    Returns:
        Direction: The observed direction.
    """
    if seq.length < 2:
        raise DomainError(f"Need at least 2 coefficients, got {seq.length}")
    return _classify(seq.ratios, RATIO_TIE_TOLERANCE)


def ratio_monotonicity_check(
    mu: float,
    nu: float,
    k: float,
    x_values: Iterable[float],
    tolerance: float = INEQUALITY_SLACK,
) -> VerificationReport:
    """Check that x -> L_mu(x) / L_nu(x) is nondecreasing on (0, infinity) for nu >= mu.

    With the arguments swapped (nu < mu) the expected direction is reversed. The report
    carries the observed direction of the sampled ratios.

    Args:
        mu (float): Order of the numerator, mu > -3k/2.
        nu (float): Order of the denominator, nu > -3k/2.
        k (float): The deformation parameter.
        x_values (Iterable[float]): Strictly increasing positive arguments.
        tolerance (float, optional): Relative slack. Defaults to 1e-12.

    Returns:
        VerificationReport: One comparison per consecutive pair of arguments.
    """
    StruveParams(mu, k, -1.0)
    StruveParams(nu, k, -1.0)
    xs = [float(x) for x in x_values]
    if not all(x > 0 for x in xs):
        raise DomainError(f"Ratio monotonicity is checked on x > 0 only, got {xs}")
    if any(b <= a for a, b in pairwise(xs)):
        raise DomainError(f"x_values must be strictly increasing, got {xs}")

    ratios = []
    for x in xs:
        denominator = _normalized(nu, k, x)
        if denominator == 0:
            raise DomainError(f"L_nu vanished at x={x} (nu={nu}, k={k})")
        ratios.append(_normalized(mu, k, x) / denominator)

    increasing = nu >= mu
    builder = ReportBuilder("ratio_monotonicity", tolerance, f"x in {xs}")
    for (x0, q0), (x1, q1) in pairwise(zip(xs, ratios)):
        step = q0 - q1 if increasing else q1 - q0
        builder.record(
            relative_margin(step, max(abs(q0), abs(q1))), mu=mu, nu=nu, k=k, x=x1
        )
    return builder.build(direction=_classify(ratios, tolerance))


def parameter_monotonicity_check(
    grid: GridSpec, tolerance: float = INEQUALITY_SLACK
) -> VerificationReport:
    """Check that nu -> L_nu(x) is decreasing for x >= 0 and increasing for x < 0.

    Args:
        grid (GridSpec): Orders, k and arguments to sample.
        tolerance (float, optional): Relative slack. Defaults to 1e-12.

    Returns:
        VerificationReport: One comparison per consecutive pair of orders.
    """
    builder = ReportBuilder("parameter_monotonicity", tolerance, grid.describe())
    for k in grid.k_values:
        orders = grid.orders(k)
        for x in grid.x_values:
            values = [_normalized(nu, k, x) for nu in orders]
            for (nu1, v1), (nu2, v2) in pairwise(zip(orders, values)):
                step = v2 - v1 if x >= 0 else v1 - v2
                builder.record(
                    relative_margin(step, max(abs(v1), abs(v2))),
                    k=k,
                    x=x,
                    nu1=nu1,
                    nu2=nu2,
                )
    return builder.build()


def log_convexity_check(
    grid: GridSpec, tolerance: float = INEQUALITY_SLACK
) -> VerificationReport:
    """Check L_{a nu1 + (1-a) nu2}(x) <= L_nu1(x)^a L_nu2(x)^(1-a) on the grid.

    All pairs nu1 <= nu2 of grid orders and all weights in grid.alpha_convexity are
    combined. The margin is the relative excess of the left side over the weighted
    geometric mean.

    Args:
        grid (GridSpec): Orders, k, positive arguments and weights.
        tolerance (float, optional): Relative slack. Defaults to 1e-12.

    Returns:
        VerificationReport: One comparison per (k, x, nu1, nu2, weight).
    """
    if not all(x > 0 for x in grid.x_values):
        raise DomainError(f"Log-convexity is checked on x > 0 only, got {grid.x_values}")

    builder = ReportBuilder("log_convexity", tolerance, grid.describe())
    for k in grid.k_values:
        for x in grid.x_values:
            logs = {nu: math.log(_normalized(nu, k, x)) for nu in grid.orders(k)}
            for nu1, nu2 in combinations_with_replacement(grid.orders(k), 2):
                for weight in grid.alpha_convexity:
                    nu_mix = weight * nu1 + (1 - weight) * nu2
                    log_mix = math.log(_normalized(nu_mix, k, x))
                    bound = weight * logs[nu1] + (1 - weight) * logs[nu2]
                    builder.record(
                        math.expm1(log_mix - bound),
                        k=k,
                        x=x,
                        nu1=nu1,
                        nu2=nu2,
                        alpha=weight,
                    )
    return builder.build()


def _record_turan(builder: ReportBuilder, probe: TuranProbe, xs: list[float]) -> None:
    for x in xs:
        if not x > 0:
            raise DomainError(f"Turan inequality is checked on x > 0 only, got x={x}")
        center = _normalized(probe.nu, probe.k, x)
        delta = turanian(
            _normalized(probe.nu - probe.a, probe.k, x),
            center,
            _normalized(probe.nu + probe.a, probe.k, x),
        )
        builder.record(
            relative_margin(delta, center * center),
            nu=probe.nu,
            a=probe.a,
            k=probe.k,
            x=x,
        )


def turan_check(
    probe: TuranProbe,
    x_values: Iterable[float],
    tolerance: float = INEQUALITY_SLACK,
) -> VerificationReport:
    """Check the reversed Turan inequality L_nu^2 - L_{nu-a} L_{nu+a} <= 0.

    The margin is the Turanian divided by L_nu(x)^2.

    Args:
        probe (TuranProbe): The order, shift and k.
        x_values (Iterable[float]): Positive arguments.
        tolerance (float, optional): Relative slack. Defaults to 1e-12.

    Returns:
        VerificationReport: One comparison per argument.
    """
    xs = [float(x) for x in x_values]
    builder = ReportBuilder("turan", tolerance, f"x in {xs}")
    _record_turan(builder, probe, xs)
    return builder.build()


def turan_suite_check(
    grid: GridSpec, tolerance: float = INEQUALITY_SLACK
) -> VerificationReport:
    """Run turan_check for every (nu, a, k) of the grid, merged into one report."""
    xs = list(grid.x_values)
    builder = ReportBuilder("turan", tolerance, grid.describe())
    for k in grid.k_values:
        for nu in grid.orders(k):
            for a in grid.shifts(k):
                _record_turan(builder, TuranProbe(nu, a, k), xs)
    return builder.build()


def nu_ratio_decreasing_check(
    k: float,
    nu_values: Iterable[float],
    x: float,
    tolerance: float = INEQUALITY_SLACK,
) -> VerificationReport:
    """Check that nu -> L^k_{nu+k}(x) / L^k_nu(x) of the modified function is nonincreasing.

    Args:
        k (float): The deformation parameter.
        nu_values (Iterable[float]): Orders, nu > -3k/2; sorted before comparison.
        x (float): The argument, positive.
        tolerance (float, optional): Relative slack. Defaults to 1e-12.

    Returns:
        VerificationReport: One comparison per consecutive pair of orders.
    """
    if not x > 0:
        raise DomainError(f"Order ratio is checked on x > 0 only, got x={x}")
    orders = sorted(float(nu) for nu in nu_values)
    ratios = [
        modified_struve(nu + k, k, x).value / modified_struve(nu, k, x).value
        for nu in orders
    ]

    builder = ReportBuilder("nu_ratio_decreasing", tolerance, f"nu in {orders}, x={x}")
    for (nu0, r0), (nu1, r1) in pairwise(zip(orders, ratios)):
        builder.record(
            relative_margin(r1 - r0, max(abs(r0), abs(r1))), k=k, x=x, nu1=nu0, nu2=nu1
        )
    return builder.build(direction=_classify(ratios, tolerance))


def ratio_derivative_check(grid: GridSpec, tolerance: float = 1e-10) -> VerificationReport:
    """Check L_mu' L_nu - L_mu L_nu' >= 0 for mu <= nu and x > 0.

    This is the sign of the derivative of L_mu / L_nu, evaluated with exact term-wise
    series derivatives; the margin is the negated numerator of the quotient rule over
    the sum of the magnitudes of its two products.

    Args:
        grid (GridSpec): Orders, k and arguments; nonpositive arguments are skipped.
        tolerance (float, optional): Relative slack. Defaults to 1e-10.

    Returns:
        VerificationReport: One comparison per (k, x, mu, nu).
    """
    builder = ReportBuilder("ratio_derivative", tolerance, grid.describe())
    for k in grid.k_values:
        for x in grid.positive_x():
            values = {nu: _normalized(nu, k, x) for nu in grid.orders(k)}
            slopes = {
                nu: normalized_struve_derivative(nu, k, x).value for nu in grid.orders(k)
            }
            for mu, nu in combinations_with_replacement(grid.orders(k), 2):
                first, second = slopes[mu] * values[nu], values[mu] * slopes[nu]
                builder.record(
                    relative_margin(second - first, abs(first) + abs(second)),
                    k=k,
                    x=x,
                    mu=mu,
                    nu=nu,
                )
    return builder.build()


def coefficient_ratio_check(
    grid: GridSpec, r_max: int = 20, tolerance: float = RATIO_TIE_TOLERANCE
) -> VerificationReport:
    """Check that f_r(mu) / f_r(nu) is nondecreasing in r for mu <= nu.

    Args:
        grid (GridSpec): Orders and k.
        r_max (int, optional): Largest coefficient index. Defaults to 20.
        tolerance (float, optional): Relative slack. Defaults to 1e-14.

    Returns:
        VerificationReport: One comparison per consecutive pair of ratios.
    """
    builder = ReportBuilder("coefficient_ratio", tolerance, f"{grid.describe()}, r<={r_max}")
    for k in grid.k_values:
        for mu, nu in combinations_with_replacement(grid.orders(k), 2):
            ratios = RatioSequence.from_normalized(mu, nu, k, r_max + 1).ratios
            for r, (w0, w1) in enumerate(pairwise(ratios)):
                builder.record(
                    relative_margin(w0 - w1, max(abs(w0), abs(w1))),
                    k=k,
                    mu=mu,
                    nu=nu,
                    r=r + 1,
                )
    return builder.build()


def digamma_difference_check(
    grid: GridSpec, r_max: int = 10, tolerance: float = INEQUALITY_SLACK
) -> VerificationReport:
    """Check Psi_k(nu + 3k/2) - Psi_k(rk + nu + 3k/2) <= 0 for r = 0..r_max.

    Args:
        grid (GridSpec): Orders and k.
        r_max (int, optional): Largest index. Defaults to 10.
        tolerance (float, optional): Relative slack. Defaults to 1e-12.

    Returns:
        VerificationReport: One comparison per (k, nu, r).
    """
    builder = ReportBuilder("digamma_difference", tolerance, f"{grid.describe()}, r<={r_max}")
    for k in grid.k_values:
        for nu in grid.orders(k):
            g = nu + 1.5 * k
            base = k_digamma(g, k)
            for r in range(r_max + 1):
                shifted = k_digamma(r * k + g, k)
                builder.record(
                    relative_margin(base - shifted, max(abs(base), abs(shifted))),
                    k=k,
                    nu=nu,
                    r=r,
                )
    return builder.build()


def coefficient_log_convexity_check(
    grid: GridSpec, r_max: int = 10, tolerance: float = INEQUALITY_SLACK
) -> VerificationReport:
    """Check d^2/dnu^2 log f_r(nu, k) = Psi'_k(nu + 3k/2) - Psi'_k(rk + nu + 3k/2) >= 0.

    Args:
        grid (GridSpec): Orders and k.
        r_max (int, optional): Largest index. Defaults to 10.
        tolerance (float, optional): Relative slack. Defaults to 1e-12.

    Returns:
        VerificationReport: One comparison per (k, nu, r).
    """
    builder = ReportBuilder(
        "coefficient_log_convexity", tolerance, f"{grid.describe()}, r<={r_max}"
    )
    for k in grid.k_values:
        for nu in grid.orders(k):
            g = nu + 1.5 * k
            base = k_trigamma(g, k)
            for r in range(r_max + 1):
                builder.record(
                    relative_margin(k_trigamma(r * k + g, k) - base, base),
                    k=k,
                    nu=nu,
                    r=r,
                )
    return builder.build()
