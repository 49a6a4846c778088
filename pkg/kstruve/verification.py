# %% HEADER
# Named verification suites over compiled-in default grids. Each suite is a list of
# checks; every check sweeps its grid and returns one VerificationReport.

# %% IMPORTS
from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass, field, replace
from itertools import combinations
import math
import sys

from joblib import Parallel, delayed
from loguru import logger
from tqdm import tqdm

from kstruve.errors import DomainError
from kstruve.identities import (
    ResidualReport,
    beta_integral_residual,
    closed_form_half_order,
    digamma_series_residual,
    duplication_residual,
    functional_equation_residual,
    half_order_solution,
    integral_rep,
    kbeta_decomposition_check,
    ode_residual,
    rec1_residual,
    rec2_residual,
    rec3_residual,
    rec4_residual,
    rec_combination_residual,
    scaling_residual,
    trigamma_derivative_residual,
)
from kstruve.inequalities import (
    GridSpec,
    ReportBuilder,
    VerificationReport,
    coefficient_log_convexity_check,
    coefficient_ratio_check,
    digamma_difference_check,
    log_convexity_check,
    merge_reports,
    nu_ratio_decreasing_check,
    parameter_monotonicity_check,
    ratio_derivative_check,
    ratio_monotonicity_check,
    turan_suite_check,
)
from kstruve.numerics import central_difference, oracle_struve_sum
from kstruve.special_functions import k_gamma
from kstruve.struve import (
    StruveParams,
    modified_struve,
    normalized_struve,
    struve,
    struve_coefficient,
    struve_derivative,
    struve_second_derivative,
)
from kstruve.utils import jsonable, log_spaced, relative_margin

# %% CONSTANTS
SUITE_ORDER = (
    "gamma",
    "struve",
    "recurrence",
    "ode",
    "integral",
    "closedform",
    "turan",
    "monotonicity",
    "logconvexity",
)
SUITE_NAMES = (*SUITE_ORDER, "all")

# k-gamma family
GAMMA_K_VALUES = (0.5, 1.0, 2.0, 3.0)
GAMMA_X_VALUES = tuple(log_spaced(0.1, 50.0, 100))
DIGAMMA_T_VALUES = (0.1, 0.5, 1.0, 3.0, 10.0)
TRIGAMMA_T_VALUES = (0.5, 1.0, 3.0, 10.0, 50.0)
DUPLICATION_Z_VALUES = tuple(log_spaced(0.1, 40.0, 50))
BETA_REDUCED_VALUES = (0.6, 1.5, 5.0)

# Series, recurrences, ODE and integral representations
IDENTITY_GRID = GridSpec(
    nu_values=(-0.4, 0.0, 0.5, 1.0, 2.0),
    k_values=(0.5, 1.0, 2.0),
    x_values=(0.1, 0.5, 1.0, 2.0, 5.0, 10.0),
)
C_VALUES = (-1.0, 1.0)
CLASSICAL_NU_VALUES = (0.0, 0.5, 1.0, 2.5)
CLASSICAL_X_VALUES = (0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 15.0, 20.0)
ORACLE_X_VALUES = (0.5, 2.0, 10.0, 20.0)
COEFFICIENT_C_VALUES = (-1.0, 1.0, 2.5)
COEFFICIENT_R_MAX = 50
INTEGRAL_ALPHAS = (0.5, 1.0, 2.0)
KBETA_R_VALUES = (0, 1, 3, 10, 30)

# Closed forms of order k/2
CLOSED_FORM_K_VALUES = (0.5, 1.0, 2.0, 4.0)
CLOSED_FORM_ALPHAS = (0.5, 1.0, 2.0)
CLOSED_FORM_X_VALUES = (0.1, 1.0, 2.0, 5.0)

# Inequalities
TURAN_GRID = GridSpec(
    nu_values=(-0.4, 0.0, 0.5, 1.0, 2.0, 4.0),
    k_values=(0.5, 1.0, 2.0),
    x_values=(0.1, 1.0, 5.0, 10.0),
    a_values=(0.0, 0.25, 0.5, 1.0),
)
LOGCONVEXITY_GRID = GridSpec(
    nu_values=(-0.4, 0.0, 0.5, 1.0, 2.0, 4.0),
    k_values=(0.5, 1.0, 2.0),
    x_values=(0.1, 1.0, 5.0, 10.0),
    alpha_convexity=(0.25, 0.5, 0.75),
)
MONOTONICITY_GRID = GridSpec(
    nu_values=(-0.4, 0.0, 0.5, 1.0, 2.0, 4.0),
    k_values=(0.5, 1.0, 2.0),
    x_values=(-5.0, -1.0, 0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0),
)


# %% TYPES
@dataclass(frozen=True, slots=True)
class SuiteSelector:
    """A suite name and an optional tolerance that replaces every check tolerance.

    Attributes:
        name (str): One of SUITE_NAMES.
        tol_override (float | None): Positive tolerance, or None for the defaults.
    """

    name: str
    tol_override: float | None = None

    def __post_init__(self):
        """Reject unknown names and nonpositive tolerances."""
        if self.name not in SUITE_NAMES:
            raise DomainError(
                f"Unknown suite {self.name!r}, expected one of {', '.join(SUITE_NAMES)}"
            )
        if self.tol_override is not None and not (
            math.isfinite(self.tol_override) and self.tol_override > 0
        ):
            raise DomainError(f"Tolerance must be positive, got {self.tol_override}")

    def suites(self) -> tuple[str, ...]:
        """Get the selected suites in run order."""
        return SUITE_ORDER if self.name == "all" else (self.name,)


@dataclass(frozen=True, slots=True)
class CheckSpec:
    """One planned check: the function, its arguments and its default tolerance."""

    suite: str
    name: str
    func: Callable[..., VerificationReport]
    tolerance: float
    kwargs: dict = field(default_factory=dict)

    @property
    def qualified_name(self) -> str:
        """Get the name prefixed by its suite."""
        return f"{self.suite}.{self.name}"


@dataclass(frozen=True, slots=True)
class SuiteReport:
    """Reports of all checks run for one selector.

    Attributes:
        suite (str): The selected suite name.
        checks (tuple[VerificationReport, ...]): Reports in run order.
    """

    suite: str
    checks: tuple[VerificationReport, ...]

    @property
    def passed(self) -> bool:
        """True when every check passed."""
        return all(check.passed for check in self.checks)

    def to_dict(self) -> dict:
        """Get the report as {suite, checks: [{name, points, worst_margin, witness, passed}], passed}."""
        return {
            "suite": self.suite,
            "checks": [check.to_dict() for check in self.checks],
            "passed": self.passed,
        }


# %% HELPERS
def _record(builder: ReportBuilder, report: ResidualReport) -> None:
    builder.record(report.relative_residual, **report.point)


def _identity_points(grid: GridSpec, c_values: Iterable[float]):
    """Yield (params, x) over the grid for every c."""
    for k in grid.k_values:
        for nu in grid.orders(k):
            for c in c_values:
                params = StruveParams(nu, k, c)
                for x in grid.positive_x():
                    yield params, x


def _identity_sample(grid: GridSpec, c_values: Iterable[float]) -> str:
    return f"{grid.describe()}, c in {list(c_values)}"


# %% CHECKS: GAMMA
def check_gamma_functional_equation(tolerance: float) -> VerificationReport:
    """Gamma_k(x + k) = x Gamma_k(x) on 100 log-spaced x in [0.1, 50] per k."""
    builder = ReportBuilder("functional_equation", tolerance, f"k in {GAMMA_K_VALUES}")
    for k in GAMMA_K_VALUES:
        for x in GAMMA_X_VALUES:
            _record(builder, functional_equation_residual(x, k))
    return builder.build()


def check_gamma_scaling(tolerance: float) -> VerificationReport:
    """Gamma_k(kx) = k^(x-1) Gamma(x) on the same grid."""
    builder = ReportBuilder("scaling", tolerance, f"k in {GAMMA_K_VALUES}")
    for k in GAMMA_K_VALUES:
        for x in GAMMA_X_VALUES:
            _record(builder, scaling_residual(x, k))
    return builder.build()


def check_gamma_duplication(tolerance: float) -> VerificationReport:
    """Legendre duplication for 50 log-spaced z in [0.1, 40]."""
    builder = ReportBuilder("duplication", tolerance, "z in [0.1, 40]")
    for z in DUPLICATION_Z_VALUES:
        _record(builder, duplication_residual(z))
    return builder.build()


def check_gamma_digamma_series(tolerance: float) -> VerificationReport:
    """k_digamma against 10^6 terms of its series plus tail, absolute."""
    builder = ReportBuilder(
        "digamma_series", tolerance, f"t in {DIGAMMA_T_VALUES}, k in {GAMMA_K_VALUES}"
    )
    for k in GAMMA_K_VALUES:
        for t in DIGAMMA_T_VALUES:
            _record(builder, digamma_series_residual(t, k))
    return builder.build()


def check_gamma_trigamma(tolerance: float) -> VerificationReport:
    """k_trigamma against a centred difference of k_digamma."""
    builder = ReportBuilder(
        "trigamma_derivative", tolerance, f"t in {TRIGAMMA_T_VALUES}, k in {GAMMA_K_VALUES}"
    )
    for k in GAMMA_K_VALUES:
        for t in TRIGAMMA_T_VALUES:
            _record(builder, trigamma_derivative_residual(t, k))
    return builder.build()


def check_gamma_beta_integral(tolerance: float) -> VerificationReport:
    """Gamma-ratio k_beta against quadrature for x/k, y/k in [0.6, 5]."""
    builder = ReportBuilder(
        "beta_integral", tolerance, f"x/k, y/k in {BETA_REDUCED_VALUES}, k in (0.5, 1, 2)"
    )
    for k in (0.5, 1.0, 2.0):
        for a in BETA_REDUCED_VALUES:
            for b in BETA_REDUCED_VALUES:
                _record(builder, beta_integral_residual(a * k, b * k, k))
    return builder.build()


# %% CHECKS: STRUVE
def check_classical_reduction(tolerance: float) -> VerificationReport:
    """S^1_{nu,1} against the double-double oracle, relative."""
    builder = ReportBuilder(
        "classical_reduction",
        tolerance,
        f"k=1, c=1, nu in {CLASSICAL_NU_VALUES}, x in {CLASSICAL_X_VALUES}",
    )
    for nu in CLASSICAL_NU_VALUES:
        params = StruveParams(nu, 1.0, 1.0)
        for x in CLASSICAL_X_VALUES:
            reference = float(oracle_struve_sum(params, x))
            value = struve(params, x).value
            builder.record(
                relative_margin(abs(value - reference), abs(reference)), nu=nu, x=x
            )
    return builder.build()


def check_oracle_agreement(tolerance: float) -> VerificationReport:
    """Excess of |struve - oracle| over both error budgets, relative to the value."""
    builder = ReportBuilder(
        "oracle_agreement", tolerance, _identity_sample(IDENTITY_GRID, C_VALUES)
    )
    for k in IDENTITY_GRID.k_values:
        for nu in IDENTITY_GRID.orders(k):
            for c in C_VALUES:
                params = StruveParams(nu, k, c)
                for x in ORACLE_X_VALUES:
                    result = struve(params, x)
                    oracle = oracle_struve_sum(params, x)
                    excess = abs(result.value - float(oracle)) - (
                        result.error_budget + oracle.error_bound
                    )
                    builder.record(
                        relative_margin(max(excess, 0.0), abs(float(oracle))),
                        nu=nu,
                        k=k,
                        c=c,
                        x=x,
                    )
    return builder.build()


def check_scaling_consistency(tolerance: float) -> VerificationReport:
    """Normalized series against (2/x)^(nu/k) Gamma_k(nu+3k/2) L^k_nu(x)."""
    builder = ReportBuilder("scaling_consistency", tolerance, IDENTITY_GRID.describe())
    for k in IDENTITY_GRID.k_values:
        for nu in IDENTITY_GRID.orders(k):
            for x in IDENTITY_GRID.positive_x():
                normalized = normalized_struve(nu, k, x).value
                rescaled = (
                    (2 / x) ** (nu / k)
                    * k_gamma(nu + 1.5 * k, k)
                    * modified_struve(nu, k, x).value
                )
                builder.record(
                    relative_margin(abs(normalized - rescaled), abs(normalized)),
                    nu=nu,
                    k=k,
                    x=x,
                )
    return builder.build()


def check_coefficient_recurrence(tolerance: float) -> VerificationReport:
    """Consecutive struve_coefficient ratios against -c / ((rk + nu + 3k/2)(r + 3/2))."""
    builder = ReportBuilder(
        "coefficient_recurrence",
        tolerance,
        f"{IDENTITY_GRID.describe()}, c in {COEFFICIENT_C_VALUES}, r<{COEFFICIENT_R_MAX}",
    )
    for k in IDENTITY_GRID.k_values:
        for nu in IDENTITY_GRID.orders(k):
            g = nu + 1.5 * k
            for c in COEFFICIENT_C_VALUES:
                coefficients = [
                    struve_coefficient(r, nu, k, c) for r in range(COEFFICIENT_R_MAX + 1)
                ]
                for r in range(COEFFICIENT_R_MAX):
                    expected = -c / ((r * k + g) * (r + 1.5))
                    observed = coefficients[r + 1] / coefficients[r]
                    builder.record(
                        relative_margin(abs(observed - expected), abs(expected)),
                        nu=nu,
                        k=k,
                        c=c,
                        r=r,
                    )
    return builder.build()


def check_oddness(tolerance: float) -> VerificationReport:
    """Normalized series at -x is the exact negation of the value at x."""
    builder = ReportBuilder("oddness", tolerance, IDENTITY_GRID.describe())
    for k in IDENTITY_GRID.k_values:
        for nu in IDENTITY_GRID.orders(k):
            for x in IDENTITY_GRID.positive_x():
                total = normalized_struve(nu, k, -x).value + normalized_struve(nu, k, x).value
                builder.record(abs(total), nu=nu, k=k, x=x)
    return builder.build()


def _finite_difference_check(name: str, order: int, tolerance: float) -> VerificationReport:
    exact = struve_derivative if order == 1 else struve_second_derivative
    builder = ReportBuilder(name, tolerance, _identity_sample(IDENTITY_GRID, C_VALUES))
    for params, x in _identity_points(IDENTITY_GRID, C_VALUES):
        derivative = exact(params, x)
        difference = central_difference(
            lambda s, params=params: struve(params, s).value, x, order
        )
        scale = derivative.magnitude + struve(params, x).magnitude
        builder.record(
            relative_margin(abs(derivative.value - difference), scale),
            nu=params.nu,
            k=params.k,
            c=params.c,
            x=x,
        )
    return builder.build()


def check_derivative_fd(tolerance: float) -> VerificationReport:
    """Term-wise first derivative against a centred difference of the series."""
    return _finite_difference_check("derivative_fd", 1, tolerance)


def check_second_derivative_fd(tolerance: float) -> VerificationReport:
    """Term-wise second derivative against a second-order centred difference."""
    return _finite_difference_check("second_derivative_fd", 2, tolerance)


# %% CHECKS: RECURRENCE AND ODE
RECURRENCES = {
    "rec1": rec1_residual,
    "rec2": rec2_residual,
    "rec3": rec3_residual,
    "rec4": rec4_residual,
    "rec_combination": rec_combination_residual,
    "ode": ode_residual,
}


def check_identity(which: str, tolerance: float) -> VerificationReport:
    """Sweep one recurrence (or the ODE) over IDENTITY_GRID for c in {-1, 1}."""
    residual = RECURRENCES[which]
    builder = ReportBuilder(which, tolerance, _identity_sample(IDENTITY_GRID, C_VALUES))
    for params, x in _identity_points(IDENTITY_GRID, C_VALUES):
        _record(builder, residual(params, x))
    return builder.build()


def check_ode_closed_form(tolerance: float) -> VerificationReport:
    """The elementary order-k/2 solutions substituted into the ODE."""
    builder = ReportBuilder(
        "ode_closed_form",
        tolerance,
        f"nu=k/2, k in {IDENTITY_GRID.k_values}, alpha in {INTEGRAL_ALPHAS}",
    )
    for k in IDENTITY_GRID.k_values:
        for alpha in INTEGRAL_ALPHAS:
            for sign, c in (("+", alpha * alpha), ("-", -alpha * alpha)):
                params = StruveParams(0.5 * k, k, c)
                solution = half_order_solution(k, alpha, sign)
                for x in IDENTITY_GRID.positive_x():
                    _record(builder, ode_residual(params, x, solution=solution))
    return builder.build()


# %% CHECKS: INTEGRALS AND CLOSED FORMS
def check_integral_rep(tolerance: float, paper_literal: bool = False) -> VerificationReport:
    """Series against the integral representation on both branches."""
    builder = ReportBuilder(
        "integral_rep",
        tolerance,
        f"{IDENTITY_GRID.describe()}, alpha in {INTEGRAL_ALPHAS}, c = +-alpha^2",
    )
    for k in IDENTITY_GRID.k_values:
        for nu in IDENTITY_GRID.orders(k):
            for alpha in INTEGRAL_ALPHAS:
                for c in (alpha * alpha, -alpha * alpha):
                    params = StruveParams(nu, k, c)
                    for x in IDENTITY_GRID.positive_x():
                        _record(
                            builder,
                            integral_rep(params, alpha, x, paper_literal=paper_literal),
                        )
    return builder.build()


def check_kbeta_decomposition(
    tolerance: float, paper_literal: bool = False
) -> VerificationReport:
    """Reciprocal coefficient gamma against its k-beta integral."""
    builder = ReportBuilder(
        "kbeta_decomposition",
        tolerance,
        f"{IDENTITY_GRID.describe()}, r in {KBETA_R_VALUES}",
    )
    for k in IDENTITY_GRID.k_values:
        for nu in IDENTITY_GRID.orders(k):
            for r in KBETA_R_VALUES:
                _record(
                    builder, kbeta_decomposition_check(r, nu, k, paper_literal=paper_literal)
                )
    return builder.build()


def check_closed_form(tolerance: float, paper_literal: bool = False) -> VerificationReport:
    """Elementary side against the order-k/2 series, both signs."""
    builder = ReportBuilder(
        "closed_form",
        tolerance,
        f"k in {CLOSED_FORM_K_VALUES}, alpha in {CLOSED_FORM_ALPHAS}, "
        f"x in {CLOSED_FORM_X_VALUES}",
    )
    for k in CLOSED_FORM_K_VALUES:
        for alpha in CLOSED_FORM_ALPHAS:
            for x in CLOSED_FORM_X_VALUES:
                for sign in ("+", "-"):
                    _record(
                        builder,
                        closed_form_half_order(
                            k, alpha, x, sign, paper_literal=paper_literal
                        ),
                    )
    return builder.build()


# %% CHECKS: INEQUALITIES
def check_turan(tolerance: float) -> VerificationReport:
    """Reversed Turan inequality over TURAN_GRID."""
    return turan_suite_check(TURAN_GRID, tolerance)


def check_turan_zero_shift(tolerance: float) -> VerificationReport:
    """The Turanian vanishes for a = 0."""
    grid = replace(TURAN_GRID, a_values=(0.0,))
    return turan_suite_check(grid, tolerance)


def check_ratio_monotonicity(tolerance: float) -> VerificationReport:
    """x -> L_mu / L_nu nondecreasing for every grid pair mu < nu."""
    grid = MONOTONICITY_GRID
    reports = [
        ratio_monotonicity_check(mu, nu, k, grid.positive_x(), tolerance)
        for k in grid.k_values
        for mu, nu in combinations(grid.orders(k), 2)
    ]
    return merge_reports("ratio_monotonicity", reports)


def check_parameter_monotonicity(tolerance: float) -> VerificationReport:
    """nu -> L_nu(x) decreasing for x >= 0, increasing for x < 0."""
    return parameter_monotonicity_check(MONOTONICITY_GRID, tolerance)


def check_nu_ratio(tolerance: float) -> VerificationReport:
    """nu -> L_{nu+k} / L_nu of the modified function nonincreasing."""
    grid = MONOTONICITY_GRID
    reports = [
        nu_ratio_decreasing_check(k, grid.orders(k), x, tolerance)
        for k in grid.k_values
        for x in grid.positive_x()
    ]
    return merge_reports("nu_ratio_decreasing", reports)


def check_ratio_derivative(tolerance: float) -> VerificationReport:
    """Sign of the derivative of L_mu / L_nu for mu <= nu."""
    return ratio_derivative_check(MONOTONICITY_GRID, tolerance)


def check_coefficient_ratio(tolerance: float) -> VerificationReport:
    """f_r(mu) / f_r(nu) nondecreasing in r for mu <= nu."""
    return coefficient_ratio_check(MONOTONICITY_GRID, tolerance=tolerance)


def check_digamma_difference(tolerance: float) -> VerificationReport:
    """Psi_k(nu + 3k/2) <= Psi_k(rk + nu + 3k/2)."""
    return digamma_difference_check(MONOTONICITY_GRID, tolerance=tolerance)


def check_log_convexity(tolerance: float) -> VerificationReport:
    """Midpoint log-convexity in the order over LOGCONVEXITY_GRID."""
    return log_convexity_check(LOGCONVEXITY_GRID, tolerance)


def check_coefficient_log_convexity(tolerance: float) -> VerificationReport:
    """Log-convexity of each coefficient f_r in the order."""
    return coefficient_log_convexity_check(LOGCONVEXITY_GRID, tolerance=tolerance)


# %% PLAN
def plan_suite(suite: str, paper_literal: bool = False) -> list[CheckSpec]:
    """Get the checks of one suite in run order.

    Args:
        suite (str): A name from SUITE_ORDER.
        paper_literal (bool, optional): Use the printed constants in the integral and
            closed-form checks. Defaults to False.

    Returns:
        list[CheckSpec]: The planned checks.
    """
    literal = {"paper_literal": paper_literal}
    match suite:
        case "gamma":
            specs = [
                ("functional_equation", check_gamma_functional_equation, 1e-12, {}),
                ("scaling", check_gamma_scaling, 1e-12, {}),
                ("duplication", check_gamma_duplication, 1e-12, {}),
                ("digamma_series", check_gamma_digamma_series, 1e-8, {}),
                ("trigamma_derivative", check_gamma_trigamma, 1e-6, {}),
                ("beta_integral", check_gamma_beta_integral, 1e-9, {}),
            ]
        case "struve":
            specs = [
                ("classical_reduction", check_classical_reduction, 1e-12, {}),
                ("oracle_agreement", check_oracle_agreement, 1e-13, {}),
                ("scaling_consistency", check_scaling_consistency, 1e-13, {}),
                ("coefficient_recurrence", check_coefficient_recurrence, 1e-14, {}),
                ("oddness", check_oddness, 0.0, {}),
                ("derivative_fd", check_derivative_fd, 1e-6, {}),
                ("second_derivative_fd", check_second_derivative_fd, 1e-5, {}),
            ]
        case "recurrence":
            specs = [
                (name, check_identity, 1e-9, {"which": name})
                for name in ("rec1", "rec2", "rec3", "rec4")
            ]
            specs.append(
                ("rec_combination", check_identity, 1e-12, {"which": "rec_combination"})
            )
        case "ode":
            specs = [
                ("ode", check_identity, 1e-9, {"which": "ode"}),
                ("ode_closed_form", check_ode_closed_form, 1e-9, {}),
            ]
        case "integral":
            specs = [
                ("integral_rep", check_integral_rep, 1e-9, literal),
                ("kbeta_decomposition", check_kbeta_decomposition, 1e-9, literal),
            ]
        case "closedform":
            specs = [("closed_form", check_closed_form, 1e-12, literal)]
        case "turan":
            specs = [
                ("turan", check_turan, 1e-12, {}),
                ("turan_zero_shift", check_turan_zero_shift, 1e-15, {}),
            ]
        case "monotonicity":
            specs = [
                ("ratio_monotonicity", check_ratio_monotonicity, 1e-12, {}),
                ("parameter_monotonicity", check_parameter_monotonicity, 1e-12, {}),
                ("nu_ratio_decreasing", check_nu_ratio, 1e-12, {}),
                ("ratio_derivative", check_ratio_derivative, 1e-10, {}),
                ("coefficient_ratio", check_coefficient_ratio, 1e-14, {}),
                ("digamma_difference", check_digamma_difference, 1e-12, {}),
            ]
        case "logconvexity":
            specs = [
                ("log_convexity", check_log_convexity, 1e-12, {}),
                ("coefficient_log_convexity", check_coefficient_log_convexity, 1e-12, {}),
            ]
        case _:
            raise DomainError(f"Unknown suite {suite!r}")
    return [CheckSpec(suite, name, func, tol, kwargs) for name, func, tol, kwargs in specs]


def default_grids() -> dict:
    """Get the compiled-in grids of every suite, ready for JSON output."""
    return jsonable({
        "gamma": {
            "k_values": GAMMA_K_VALUES,
            "x_values": GAMMA_X_VALUES,
            "digamma_t_values": DIGAMMA_T_VALUES,
            "trigamma_t_values": TRIGAMMA_T_VALUES,
            "duplication_z_values": DUPLICATION_Z_VALUES,
            "beta_reduced_values": BETA_REDUCED_VALUES,
        },
        "struve": {
            "grid": IDENTITY_GRID.to_dict(),
            "c_values": C_VALUES,
            "classical_nu_values": CLASSICAL_NU_VALUES,
            "classical_x_values": CLASSICAL_X_VALUES,
            "oracle_x_values": ORACLE_X_VALUES,
            "coefficient_c_values": COEFFICIENT_C_VALUES,
            "coefficient_r_max": COEFFICIENT_R_MAX,
        },
        "recurrence": {"grid": IDENTITY_GRID.to_dict(), "c_values": C_VALUES},
        "ode": {
            "grid": IDENTITY_GRID.to_dict(),
            "c_values": C_VALUES,
            "closed_form_alphas": INTEGRAL_ALPHAS,
        },
        "integral": {
            "grid": IDENTITY_GRID.to_dict(),
            "alphas": INTEGRAL_ALPHAS,
            "kbeta_r_values": KBETA_R_VALUES,
        },
        "closedform": {
            "k_values": CLOSED_FORM_K_VALUES,
            "alphas": CLOSED_FORM_ALPHAS,
            "x_values": CLOSED_FORM_X_VALUES,
        },
        "turan": {"grid": TURAN_GRID.to_dict()},
        "monotonicity": {"grid": MONOTONICITY_GRID.to_dict()},
        "logconvexity": {"grid": LOGCONVEXITY_GRID.to_dict()},
    })


# %% RUNNER
def _run_check(spec: CheckSpec, tolerance: float) -> VerificationReport:
    report = spec.func(tolerance=tolerance, **spec.kwargs)
    return replace(report, check_name=spec.qualified_name)


class SuiteRunner:
    """Run the checks of a SuiteSelector, optionally on several joblib workers.

    Reports come back in plan order whatever the number of workers, so the output is
    identical for any worker count.

    Attributes:
        selector (SuiteSelector): What to run.
        paper_literal (bool): Use the printed constants where they differ.
        jobs (int): Number of joblib workers.
        progress (bool): Show a tqdm bar on stderr.
    """

    def __init__(
        self,
        selector: SuiteSelector,
        *,
        paper_literal: bool = False,
        jobs: int = 1,
        progress: bool = False,
    ):
        """Initialise the runner."""
        if jobs < 1:
            raise DomainError(f"jobs must be at least 1, got {jobs}")
        self.selector = selector
        self.paper_literal = paper_literal
        self.jobs = jobs
        self.progress = progress

    def plan(self) -> list[CheckSpec]:
        """Get every planned check in run order."""
        return [
            spec
            for suite in self.selector.suites()
            for spec in plan_suite(suite, self.paper_literal)
        ]

    def tolerance(self, spec: CheckSpec) -> float:
        """Get the tolerance applied to a check."""
        override = self.selector.tol_override
        return spec.tolerance if override is None else override

    def run(self) -> SuiteReport:
        """Run the plan and collect the reports.

        Returns:
            SuiteReport: All reports in plan order.
        """
        specs = self.plan()
        logger.info(
            f"Running {len(specs)} checks of suite '{self.selector.name}' "
            f"on {self.jobs} worker(s)"
        )

        parallel = Parallel(n_jobs=self.jobs, return_as="generator")
        results = parallel(delayed(_run_check)(spec, self.tolerance(spec)) for spec in specs)
        reports = []
        for report in tqdm(
            results,
            total=len(specs),
            desc=f"verify {self.selector.name}",
            disable=not self.progress,
            file=sys.stderr,
        ):
            if report.passed:
                logger.debug(
                    f"{report.check_name}: {report.points_tested} points, "
                    f"worst margin {report.worst_margin:.3e}"
                )
            else:
                logger.warning(
                    f"{report.check_name} failed at {len(report.violations)} of "
                    f"{report.points_tested} points, worst margin "
                    f"{report.worst_margin:.3e} at {report.witness}"
                )
            reports.append(report)

        suite_report = SuiteReport(self.selector.name, tuple(reports))
        logger.info(
            f"Suite '{self.selector.name}' {'passed' if suite_report.passed else 'FAILED'}"
        )
        return suite_report
