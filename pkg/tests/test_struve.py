import math

from hypothesis import given, settings, strategies as st
import mpmath
import pytest
from scipy import special

from kstruve.errors import DomainError
from kstruve.numerics import central_difference, oracle_struve_sum
from kstruve.special_functions import k_gamma
from kstruve.struve import (
    EvalResult,
    StruveParams,
    TuranProbe,
    modified_struve,
    normalized_struve,
    normalized_struve_derivative,
    struve,
    struve_coefficient,
    struve_coefficient_normalized,
    struve_derivative,
    struve_second_derivative,
)


def half_order(x: float) -> float:
    """H_{1/2}(x) = sqrt(2 / (pi x)) (1 - cos x), with 1 - cos x = 2 sin^2(x/2)."""
    return math.sqrt(2 / (math.pi * x)) * 2 * math.sin(x / 2) ** 2


class TestParams:
    def test_rejects_order_below_bound(self):
        with pytest.raises(DomainError, match=r"nu > -3k/2"):
            StruveParams(-2.0, 1.0, 1.0)

    @pytest.mark.parametrize("k", [0.0, -1.0])
    def test_rejects_nonpositive_k(self, k):
        with pytest.raises(DomainError):
            StruveParams(0.0, k, 1.0)

    def test_rejects_non_finite(self):
        with pytest.raises(DomainError):
            StruveParams(0.0, 1.0, math.inf)

    def test_derived_quantities(self):
        params = StruveParams(1.0, 2.0, -1.0)
        assert params.exponent == 1.5
        assert params.gamma_offset == 4.0
        assert params.shifted(2.0) == StruveParams(3.0, 2.0, -1.0)

    def test_turan_shift_bound(self):
        TuranProbe(1.0, 2.0, 1.0)
        with pytest.raises(DomainError):
            TuranProbe(0.0, 2.0, 1.0)


class TestClassicalReduction:
    def test_reference_value(self, classical):
        assert struve(classical, 1.0).value == pytest.approx(0.5686566, abs=1e-6)

    @pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
    def test_half_order_closed_form(self, x):
        value = struve(StruveParams(0.5, 1.0, 1.0), x).value
        assert value == pytest.approx(half_order(x), rel=1e-12)

    @pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 2.5])
    @pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 15.0, 20.0])
    def test_struve_h(self, nu, x):
        with mpmath.workdps(40):
            reference = float(mpmath.struveh(nu, x))
        assert struve(StruveParams(nu, 1.0, 1.0), x).value == pytest.approx(reference, rel=1e-12)

    def test_cancelling_series_is_resummed(self, classical):
        result = struve(classical, 20.0)
        assert result.extended
        assert result.magnitude > 4 * abs(result.value)
        assert not struve(classical, 0.5).extended

    @pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 2.5])
    @pytest.mark.parametrize("x", [0.1, 1.0, 5.0, 10.0])
    def test_modified_struve_l(self, nu, x):
        value = modified_struve(nu, 1.0, x).value
        assert value == pytest.approx(special.modstruve(nu, x), rel=1e-12)


class TestEvaluation:
    def test_zero_argument(self):
        result = struve(StruveParams(1.0, 2.0, -1.0), 0.0)
        assert result.value == 0.0
        assert result.terms_used == 1

    def test_zero_argument_needs_order_above_minus_k(self):
        with pytest.raises(DomainError):
            struve(StruveParams(-1.2, 1.0, 1.0), 0.0)

    def test_negative_argument(self, classical):
        with pytest.raises(DomainError):
            struve(classical, -1.0)

    def test_result_carries_estimates(self, classical):
        result = struve(classical, 3.0)
        assert not result.truncated
        assert result.magnitude >= abs(result.value)
        assert result.error_budget >= result.rounding_error_estimate > 0

    def test_zero_c_is_leading_term(self):
        params = StruveParams(1.0, 1.0, 0.0)
        leading = 1.0 / (k_gamma(2.5, 1.0) * math.gamma(1.5))
        assert struve(params, 2.0).value == pytest.approx(leading, rel=1e-14)

    def test_large_order_uses_log_leading_term(self):
        # Gamma_k(nu + 3k/2) overflows here but the leading term is finite
        result = modified_struve(200.0, 1.0, 300.0)
        assert math.isfinite(result.value)
        assert result.value > 0

    def test_term_cap_from_environment(self, monkeypatch, classical, log_messages):
        monkeypatch.setenv("KSTRUVE_MAX_TERMS", "3")
        result = struve(classical, 5.0)
        assert result.truncated
        assert result.terms_used == 3
        assert result.abs_error_estimate > 0
        assert any("cap" in str(m) for m in log_messages)

    @pytest.mark.parametrize("raw", ["abc", "0", "-4"])
    def test_malformed_term_cap(self, monkeypatch, classical, raw):
        monkeypatch.setenv("KSTRUVE_MAX_TERMS", raw)
        with pytest.raises(DomainError):
            struve(classical, 1.0)

    def test_eval_result_invariants(self):
        with pytest.raises(ValueError):
            EvalResult(1.0, 0.0, 0)
        with pytest.raises(ValueError):
            EvalResult(1.0, -1.0, 1)


class TestDerivatives:
    def test_half_order_first_derivative(self):
        expected = math.sqrt(2 / math.pi) * (math.sin(1.0) - (1 - math.cos(1.0)) / 2)
        value = struve_derivative(StruveParams(0.5, 1.0, 1.0), 1.0).value
        assert value == pytest.approx(expected, rel=1e-12)
        assert value == pytest.approx(0.4880054, abs=1e-7)

    def test_half_order_second_derivative(self):
        x = 1.3
        f0, f1, f2 = 1 - math.cos(x), math.sin(x), math.cos(x)
        expected = math.sqrt(2 / math.pi) * (
            f2 / math.sqrt(x) - f1 / x**1.5 + 0.75 * f0 / x**2.5
        )
        value = struve_second_derivative(StruveParams(0.5, 1.0, 1.0), x).value
        assert value == pytest.approx(expected, rel=1e-11)

    def test_h0_slope_at_origin(self, classical):
        assert struve_derivative(classical, 1e-8).value == pytest.approx(
            2 / math.pi, rel=1e-7
        )

    def test_derivative_needs_positive_argument(self, classical):
        with pytest.raises(DomainError):
            struve_derivative(classical, 0.0)

    @pytest.mark.parametrize("x", [0.1, 1.0, 4.0])
    def test_derivative_against_finite_difference(self, identity_params, x):
        exact = struve_derivative(identity_params, x)
        difference = central_difference(lambda s: struve(identity_params, s).value, x, 1)
        assert abs(exact.value - difference) <= 1e-7 * exact.magnitude


class TestCoefficients:
    def test_leading_coefficients(self):
        assert struve_coefficient(0, 0.0, 1.0, 1.0) == pytest.approx(4 / math.pi, rel=1e-14)
        assert struve_coefficient(1, 0.0, 1.0, 1.0) == pytest.approx(
            -16 / (9 * math.pi), rel=1e-14
        )

    def test_normalized_coefficient(self):
        value = struve_coefficient_normalized(1, 0.0, 1.0)
        assert value == pytest.approx(1 / (9 * math.sqrt(math.pi)), rel=1e-14)
        assert value == pytest.approx(0.0626877, abs=1e-7)

    def test_consecutive_ratio_at_large_index(self):
        nu, k, c, r = 0.5, 0.5, 2.5, 40
        ratio = struve_coefficient(r + 1, nu, k, c) / struve_coefficient(r, nu, k, c)
        expected = -c / ((r * k + nu + 1.5 * k) * (r + 1.5))
        assert ratio == pytest.approx(expected, rel=1e-14)

    def test_rejects_negative_index(self):
        with pytest.raises(DomainError):
            struve_coefficient(-1, 0.0, 1.0, 1.0)
        with pytest.raises(DomainError):
            struve_coefficient_normalized(-1, 0.0, 1.0)


class TestNormalized:
    def test_odd(self):
        assert normalized_struve(1.0, 2.0, -3.0).value == -normalized_struve(1.0, 2.0, 3.0).value

    def test_zero(self):
        assert normalized_struve(0.0, 1.0, 0.0).value == 0.0

    @pytest.mark.parametrize("nu, k", [(-0.4, 1.0), (1.0, 2.0), (2.0, 0.5)])
    @pytest.mark.parametrize("x", [0.1, 1.0, 10.0])
    def test_matches_scaled_modified_function(self, nu, k, x):
        rescaled = (
            (2 / x) ** (nu / k) * k_gamma(nu + 1.5 * k, k) * modified_struve(nu, k, x).value
        )
        assert normalized_struve(nu, k, x).value == pytest.approx(rescaled, rel=1e-13)

    def test_derivative_at_origin(self):
        assert normalized_struve_derivative(1.0, 1.0, 0.0).value == pytest.approx(
            1 / math.sqrt(math.pi)
        )

    @pytest.mark.parametrize("x", [-2.0, 0.5, 3.0])
    def test_derivative_against_finite_difference(self, x):
        exact = normalized_struve_derivative(0.5, 2.0, x).value
        difference = central_difference(
            lambda s: normalized_struve(0.5, 2.0, s).value, x, 1
        )
        assert exact == pytest.approx(difference, rel=1e-8)


@settings(max_examples=500, deadline=None)
@given(
    nu_over_k=st.floats(min_value=-1.4, max_value=4.0),
    k=st.floats(min_value=0.25, max_value=4.0),
    c=st.floats(min_value=-2.0, max_value=2.0),
    x=st.floats(min_value=1e-3, max_value=20.0),
)
def test_series_agrees_with_oracle_within_budget(nu_over_k, k, c, x):
    params = StruveParams(nu_over_k * k, k, c)
    result = struve(params, x)
    oracle = oracle_struve_sum(params, x)
    allowed = result.error_budget + oracle.error_bound + 1e-13 * abs(float(oracle))
    assert abs(result.value - float(oracle)) <= allowed


def test_worked_values():
    assert normalized_struve(0.0, 1.0, 1.0).value == pytest.approx(0.62943663, rel=1e-8)
    assert modified_struve(-1.0, 1.0, 2.0).value > 0
