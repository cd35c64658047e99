"""Tests for normalizability classification, error tables and modulus checks."""

import cmath
import math

import pytest

from series_mirage.diagnostics import (
    ErrorRow,
    ErrorTable,
    NormClass,
    classify_gaussian_packet,
    classify_normalizability,
    truncation_error_table,
    unit_modulus_deviation,
)
from series_mirage.errors import InvalidInputError
from series_mirage.exact import exact_linear, exact_reduced_nls
from series_mirage.expsum import ExpSum
from series_mirage.methods import (
    Equation,
    adm_series,
    partial_sum_eval,
    partial_sum_fn,
    taylor_series,
)

COSH_SUM = ExpSum(((1, 0), (1, 2), (1, -2)))
FLOAT_SLACK = 1e-13
X_SAMPLES = [-1.0 + 0.5 * i for i in range(5)]


class TestClassifier:
    def test_cosh_sum_unbounded(self):
        assert classify_normalizability(COSH_SUM) is NormClass.UNBOUNDED

    def test_plane_wave_bounded_not_l2(self):
        assert classify_normalizability(ExpSum.single(1, 3j)) is NormClass.BOUNDED_NOT_L2
        assert classify_normalizability(ExpSum.single(1, 1j)) is NormClass.BOUNDED_NOT_L2

    def test_zero(self):
        assert classify_normalizability(ExpSum.zero()) is NormClass.ZERO

    def test_scalar_invariance(self):
        for u0 in (COSH_SUM, ExpSum.single(1, 3j), ExpSum(((1, 1j), (2, -0.5)))):
            base = classify_normalizability(u0)
            for s in (2.0, -1j, 1e-6, 300 + 4j):
                assert classify_normalizability(s * u0) is base

    def test_tiny_real_part_counts_as_oscillatory(self):
        u0 = ExpSum.single(1, complex(1e-13, 1.0))
        assert classify_normalizability(u0) is NormClass.BOUNDED_NOT_L2

    def test_mixed_sum_unbounded(self):
        u0 = ExpSum(((1, 1j), (1e-3, 0.5)))
        assert classify_normalizability(u0) is NormClass.UNBOUNDED

    def test_gaussian_tagged_square_integrable(self):
        assert classify_gaussian_packet() is NormClass.SQUARE_INTEGRABLE


class TestErrorTable:
    def test_rows_sorted_and_nonnegative(self):
        rows = (ErrorRow(2, 0.5, 1e-3, None), ErrorRow(0, 1.0, 0.0, 1.0), ErrorRow(0, 0.0, 0.0, 0.0))
        table = ErrorTable(rows)
        assert [(r.order, r.time) for r in table.rows] == [(0, 0.0), (0, 1.0), (2, 0.5)]
        with pytest.raises(InvalidInputError):
            ErrorTable((ErrorRow(0, 0.0, -1.0, None),))

    def test_csv_format(self):
        table = ErrorTable((ErrorRow(0, 0.0, 0.0, 0.0), ErrorRow(1, 0.5, 1e-3, None)))
        lines = table.to_csv().splitlines()
        assert lines[0] == "order,time,sup_error,bound"
        assert lines[1] == "0,0.0,0.0,0.0"
        assert lines[2] == "1,0.5,0.001,"  # empty bound column when undefined

    def test_converged_series_row(self):
        # focusing cubic example at order 20: the tail is ~1/21!, far below
        # double rounding, so the measured error is the evaluation noise
        sol = adm_series(ExpSum.single(1, 1j), Equation.full_nls(2.0), 20)
        table = truncation_error_table(
            sol, exact_reduced_nls(1.0, 2.0), [20], [1.0], X_SAMPLES
        )
        assert table.rows[0].sup_error < 1e-15

    def test_zero_error_at_time_zero(self):
        sol = taylor_series(COSH_SUM, Equation.linear(), 5)
        table = truncation_error_table(sol, exact_linear(COSH_SUM), [0], [0.0], X_SAMPLES)
        assert table.rows[0].sup_error == 0.0
        assert table.rows[0].bound == 0.0

    def test_defocusing_order_two_value(self):
        # order-2 partial sum of e^{-3it} at t=1 vs exact: frozen via cmath
        sol = adm_series(ExpSum.single(1, 1j), Equation.full_nls(-2.0), 5)
        table = truncation_error_table(
            sol, exact_reduced_nls(1.0, -2.0), [2], [1.0], [0.0]
        )
        expect = abs(cmath.exp(-3j) - (1 - 3j - 4.5))
        assert expect == pytest.approx(3.804383323935389, rel=1e-12)
        assert table.rows[0].sup_error == pytest.approx(expect, rel=1e-10)
        assert table.rows[0].bound == pytest.approx(27 / 6 * math.exp(3.0), rel=1e-12)
        assert table.rows[0].sup_error <= table.rows[0].bound

    def test_bound_validity_and_monotonicity(self):
        # defocusing case |b| = 3 at t = 1: orders past |bt| improve
        # monotonically and never beat the analytic bound
        sol = adm_series(ExpSum.single(1, 1j), Equation.full_nls(-2.0), 20)
        table = truncation_error_table(
            sol, exact_reduced_nls(1.0, -2.0), range(21), [1.0], X_SAMPLES
        )
        errors = [r.sup_error for r in table.rows]
        for r in table.rows:
            assert r.bound is not None
            assert r.sup_error <= r.bound + FLOAT_SLACK
        for n in range(4, 20):
            assert errors[n + 1] <= errors[n] + 1e-14

    def test_cosh_example_bound_column(self):
        sol = taylor_series(COSH_SUM, Equation.linear(), 8)
        table = truncation_error_table(
            sol, exact_linear(COSH_SUM), [0, 4, 8], [0.1, 1.0], X_SAMPLES
        )
        # single nonzero frequency |b| = 4 with amplitude max 2cosh(2)
        for r in table.rows:
            assert r.bound is not None
            assert r.sup_error <= r.bound + FLOAT_SLACK

    def test_no_bound_for_mixed_frequencies(self):
        u0 = ExpSum(((1, 1j), (1, 2j)))  # b = -1 and -4 under the linear flow
        sol = taylor_series(u0, Equation.linear(), 6)
        table = truncation_error_table(sol, exact_linear(u0), [3], [0.5], X_SAMPLES)
        assert table.rows[0].bound is None

    def test_orders_out_of_range(self):
        sol = taylor_series(COSH_SUM, Equation.linear(), 4)
        with pytest.raises(InvalidInputError):
            truncation_error_table(sol, exact_linear(COSH_SUM), [5], [0.0], X_SAMPLES)

    def test_empty_inputs_rejected(self):
        sol = taylor_series(COSH_SUM, Equation.linear(), 4)
        with pytest.raises(InvalidInputError):
            truncation_error_table(sol, exact_linear(COSH_SUM), [], [0.0], X_SAMPLES)


class TestUnitModulus:
    SAMPLES = [(x, t) for x in (-1.0, 0.0, 0.5) for t in (0.0, 0.5, 1.0)]

    def test_exact_plane_wave(self):
        ev = exact_reduced_nls(1.0, 2.0)
        assert unit_modulus_deviation(ev, self.SAMPLES) <= 1e-12

    def test_order_two_partial_sum(self):
        sol = adm_series(ExpSum.single(1, 1j), Equation.full_nls(2.0), 5)
        dev = unit_modulus_deviation(partial_sum_fn(sol, 2), [(0.0, 1.0)])
        # |1 + i - 1/2| - 1 = sqrt(5)/2 - 1
        assert dev == pytest.approx(math.sqrt(1.25) - 1, abs=1e-12)

    def test_converged_partial_sum(self):
        sol = adm_series(ExpSum.single(1, 1j), Equation.full_nls(2.0), 30)
        dev = unit_modulus_deviation(partial_sum_fn(sol, 30), [(0.0, 1.0), (0.5, 1.0)])
        assert dev <= 1e-12

    def test_modulus_converges_with_order(self):
        sol = adm_series(ExpSum.single(1, 1j), Equation.full_nls(2.0), 25)
        samples = [(x, 1.0) for x in X_SAMPLES]
        dev25 = unit_modulus_deviation(partial_sum_fn(sol, 25), samples)
        assert dev25 <= 1e-10

    def test_empty_samples_rejected(self):
        with pytest.raises(InvalidInputError):
            unit_modulus_deviation(exact_reduced_nls(1.0, 2.0), [])
