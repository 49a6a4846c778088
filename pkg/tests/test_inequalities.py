import math

import pytest

from kstruve.errors import DomainError
from kstruve.inequalities import (
    Direction,
    GridSpec,
    RatioSequence,
    ReportBuilder,
    coefficient_log_convexity_check,
    coefficient_ratio_check,
    coefficient_ratio_direction,
    digamma_difference_check,
    log_convexity_check,
    merge_reports,
    nu_ratio_decreasing_check,
    parameter_monotonicity_check,
    ratio_derivative_check,
    ratio_monotonicity_check,
    turan_check,
    turan_suite_check,
    turanian,
)
from kstruve.struve import TuranProbe


@pytest.fixture
def small_grid():
    return GridSpec(
        nu_values=(-0.4, 0.0, 0.5, 2.0),
        k_values=(0.5, 2.0),
        x_values=(0.1, 1.0, 5.0),
        a_values=(0.0, 0.5),
        alpha_convexity=(0.25, 0.5),
    )


class TestGridSpec:
    def test_orders_are_scaled_and_sorted(self):
        grid = GridSpec(nu_values=(1.0, -0.4, 0.0), k_values=(2.0,), x_values=(1.0,))
        assert grid.orders(2.0) == [-0.8, 0.0, 2.0]

    def test_absolute_orders(self):
        grid = GridSpec(
            nu_values=(1.0,), k_values=(2.0,), x_values=(1.0,), relative_to_k=False
        )
        assert grid.orders(2.0) == [1.0]

    def test_values_become_float_tuples(self):
        grid = GridSpec(nu_values=[0, 1], k_values=[1], x_values=[2])
        assert grid.nu_values == (0.0, 1.0)
        assert isinstance(grid.x_values, tuple)

    def test_positive_x(self):
        grid = GridSpec(nu_values=(0.0,), k_values=(1.0,), x_values=(2.0, -1.0, 0.0, 0.5))
        assert grid.positive_x() == [0.5, 2.0]

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"nu_values": (-2.0,)},
            {"a_values": (1.5,)},
            {"alpha_convexity": (1.5,)},
            {"k_values": (0.0,)},
            {"x_values": ()},
            {"x_values": (math.nan,)},
        ],
    )
    def test_invalid(self, kwargs):
        fields = {"nu_values": (0.0,), "k_values": (1.0,), "x_values": (1.0,)} | kwargs
        with pytest.raises(DomainError):
            GridSpec(**fields)

    def test_to_dict(self, small_grid):
        assert small_grid.to_dict()["k_values"] == [0.5, 2.0]


class TestReportBuilder:
    def test_empty(self):
        report = ReportBuilder("empty", 1e-12).build()
        assert report.passed
        assert report.points_tested == 0
        assert report.worst_margin == 0.0
        assert report.witness is None

    def test_records_worst_and_violations(self):
        builder = ReportBuilder("demo", 0.1)
        builder.record(-1.0, x=1)
        builder.record(0.5, x=2)
        builder.record(0.05, x=3)
        report = builder.build()
        assert not report.passed
        assert report.points_tested == 3
        assert report.worst_margin == 0.5
        assert report.witness == {"x": 2}
        assert [v.point for v in report.violations] == [{"x": 2}]

    def test_nan_margin_is_a_violation(self):
        builder = ReportBuilder("demo", 0.1)
        builder.record(-1.0, x=1)
        builder.record(math.nan, x=2)
        report = builder.build()
        assert not report.passed
        assert report.witness == {"x": 2}

    def test_to_dict_layout(self):
        builder = ReportBuilder("demo", 0.0)
        builder.record(math.inf, x=1.0)
        assert builder.build().to_dict() == {
            "name": "demo",
            "points": 1,
            "worst_margin": "inf",
            "witness": {"x": 1.0},
            "passed": False,
        }

    def test_merge(self):
        first, second = ReportBuilder("a", 0.1), ReportBuilder("b", 0.1)
        first.record(-0.5, x=1)
        second.record(0.2, x=2)
        merged = merge_reports("merged", [first.build(), second.build()])
        assert merged.check_name == "merged"
        assert merged.points_tested == 2
        assert merged.worst_margin == 0.2
        assert merged.witness == {"x": 2}
        assert len(merged.violations) == 1

    def test_merge_nothing(self):
        with pytest.raises(DomainError):
            merge_reports("none", [])


class TestRatioSequence:
    def test_turanian(self):
        assert turanian(1.0, 2.0, 3.0) == 1.0

    @pytest.mark.parametrize(
        "numerators, expected",
        [
            ((1.0, 1.0, 1.0), Direction.CONSTANT),
            ((1.0, 2.0, 3.0), Direction.INCREASING),
            ((3.0, 2.0, 1.0), Direction.DECREASING),
            ((1.0, 2.0, 1.0), Direction.MIXED),
        ],
    )
    def test_direction(self, numerators, expected):
        seq = RatioSequence(numerators, (1.0, 1.0, 1.0))
        assert coefficient_ratio_direction(seq) == expected

    def test_lower_over_higher_order_increases(self):
        seq = RatioSequence.from_normalized(0.0, 1.0, 1.0, 10)
        assert seq.length == 10
        assert coefficient_ratio_direction(seq) == Direction.INCREASING

    def test_length_mismatch(self):
        with pytest.raises(DomainError):
            RatioSequence((1.0, 2.0), (1.0,))

    def test_nonpositive_denominator(self):
        with pytest.raises(DomainError):
            RatioSequence((1.0, 2.0), (1.0, 0.0))

    def test_too_short(self):
        with pytest.raises(DomainError):
            coefficient_ratio_direction(RatioSequence((1.0,), (1.0,)))


class TestMonotonicity:
    def test_ratio_increasing(self):
        report = ratio_monotonicity_check(0.0, 1.0, 1.0, [0.1, 0.5, 1.0, 5.0, 10.0])
        assert report.passed
        assert report.direction == Direction.INCREASING
        assert report.points_tested == 4

    def test_ratio_swapped_orders_decreasing(self):
        report = ratio_monotonicity_check(2.0, 0.5, 0.5, [0.1, 1.0, 10.0])
        assert report.passed
        assert report.direction == Direction.DECREASING

    def test_ratio_needs_positive_arguments(self):
        with pytest.raises(DomainError):
            ratio_monotonicity_check(0.0, 1.0, 1.0, [0.0, 1.0])

    def test_ratio_needs_increasing_arguments(self):
        with pytest.raises(DomainError):
            ratio_monotonicity_check(0.0, 1.0, 1.0, [2.0, 1.0])

    def test_parameter_monotonicity_includes_negative_arguments(self):
        grid = GridSpec(
            nu_values=(-0.4, 0.0, 1.0, 4.0),
            k_values=(0.5, 1.0),
            x_values=(-5.0, -1.0, 0.0, 1.0, 5.0),
        )
        report = parameter_monotonicity_check(grid)
        assert report.passed
        assert report.points_tested == 2 * 5 * 3

    def test_nu_ratio_decreasing(self):
        report = nu_ratio_decreasing_check(1.0, [2.0, -0.4, 0.0, 1.0], 3.0)
        assert report.passed
        assert report.direction == Direction.DECREASING

    def test_nu_ratio_needs_positive_argument(self):
        with pytest.raises(DomainError):
            nu_ratio_decreasing_check(1.0, [0.0, 1.0], 0.0)

    def test_ratio_derivative(self, small_grid):
        assert ratio_derivative_check(small_grid).passed

    def test_coefficient_ratio(self, small_grid):
        report = coefficient_ratio_check(small_grid, r_max=20)
        assert report.passed
        # 10 order pairs per k, 20 consecutive ratio pairs each
        assert report.points_tested == 2 * 10 * 20

    def test_digamma_difference(self, small_grid):
        report = digamma_difference_check(small_grid, r_max=10)
        assert report.passed
        assert report.worst_margin == 0.0


class TestConvexityAndTuran:
    def test_log_convexity(self, small_grid):
        assert log_convexity_check(small_grid).passed

    def test_log_convexity_needs_positive_arguments(self):
        grid = GridSpec(nu_values=(0.0, 1.0), k_values=(1.0,), x_values=(0.0, 1.0))
        with pytest.raises(DomainError):
            log_convexity_check(grid)

    def test_coefficient_log_convexity(self, small_grid):
        report = coefficient_log_convexity_check(small_grid)
        assert report.passed
        assert report.worst_margin == 0.0

    def test_turan_single_point(self):
        report = turan_check(TuranProbe(1.0, 0.5, 1.0), [0.5, 1.0, 2.0, 10.0])
        assert report.passed
        assert report.worst_margin < 0

    def test_turan_zero_shift_vanishes(self):
        report = turan_check(TuranProbe(1.0, 0.0, 2.0), [0.1, 1.0, 10.0])
        assert report.worst_margin == 0.0

    def test_turan_needs_positive_arguments(self):
        with pytest.raises(DomainError):
            turan_check(TuranProbe(1.0, 0.5, 1.0), [0.0])

    def test_turan_suite(self, small_grid):
        report = turan_suite_check(small_grid)
        assert report.passed
        assert report.points_tested == 2 * 4 * 2 * 3


def test_ratio_of_equal_orders_is_constant():
    report = ratio_monotonicity_check(0.5, 0.5, 1.0, [0.5, 1.0, 2.0])
    assert report.passed
    assert report.worst_margin == 0.0
    assert report.direction is Direction.CONSTANT


def test_log_convexity_at_endpoint_weights():
    grid = GridSpec(
        nu_values=(0.0, 1.0), k_values=(1.0, 2.0), x_values=(0.5, 2.0),
        alpha_convexity=(0.0, 1.0),
    )
    report = log_convexity_check(grid)
    assert report.passed
    assert abs(report.worst_margin) <= 1e-15


def test_log_convexity_with_equal_orders():
    grid = GridSpec(nu_values=(0.5,), k_values=(1.0,), x_values=(1.0,), alpha_convexity=(0.3,))
    report = log_convexity_check(grid)
    assert report.points_tested == 1
    assert abs(report.worst_margin) <= 1e-15


def test_single_order_ratio_is_vacuous():
    report = nu_ratio_decreasing_check(1.0, [0.5], 1.0)
    assert report.passed
    assert report.points_tested == 0
