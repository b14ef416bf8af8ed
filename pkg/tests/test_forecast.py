import numpy as np
import pytest

import regionstab as rs
from regionstab.errors import (
    DegenerateYearsError,
    DimensionMismatchError,
    TooFewPointsError,
)

# Frozen oracle for the Sudan series, solved by hand on centered years:
# sum(t_c * v_c) = -0.2244, sum(t_c^2) = 42, mean value = -0.09285, so
# slope = -0.2244/42 and RS(2018) = -0.09285 + slope * 4.5.
SUDAN_SLOPE = -0.005342857142857143
SUDAN_2018 = -0.11689285714285714

ZIGZAG = rs.TimeSeries(years=(2010, 2011, 2012, 2013, 2014, 2015),
                       values=(0.1, -0.1, 0.1, -0.1, 0.1, -0.1))


def series_of(records):
    return rs.TimeSeries(years=tuple(r.year for r in records),
                         values=tuple(r.rs for r in records))


class TestTimeSeries:
    def test_years_must_increase(self):
        with pytest.raises(DegenerateYearsError):
            rs.TimeSeries(years=(2000, 2000), values=(1.0, 2.0))
        with pytest.raises(DegenerateYearsError):
            rs.TimeSeries(years=(2001, 2000), values=(1.0, 2.0))

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            rs.TimeSeries(years=(2000, 2001), values=(1.0,))

    def test_gaps_allowed(self):
        ts = rs.TimeSeries(years=(2000, 2003, 2010), values=(1.0, 2.0, 3.0))
        assert len(ts) == 3


class TestFit:
    def test_sudan_oracle(self, sudan_records):
        linear = rs.fit(series_of(sudan_records))
        assert linear.slope == pytest.approx(SUDAN_SLOPE, abs=1e-15)
        assert linear.predicted(2018) == pytest.approx(SUDAN_2018, abs=1e-12)
        assert linear.r == pytest.approx(-0.826518, abs=5e-7)

    def test_perfect_line_recovered(self):
        years = (2001, 2002, 2004, 2007)
        ts = rs.TimeSeries(years=years, values=tuple(0.3 * y - 500.0 for y in years))
        linear = rs.fit(ts)
        assert linear.slope == pytest.approx(0.3, abs=1e-9)
        assert linear.intercept == pytest.approx(-500.0, abs=1e-6)
        assert linear.r == 1.0
        np.testing.assert_allclose(linear.residuals, 0.0, atol=1e-9)

    def test_residual_identities_on_all_fixtures(self):
        for name in ("sudan", "haiti", "somalia"):
            linear = rs.fit(series_of(rs.load_fixture(name)))
            years = np.array(linear.years, dtype=float)
            assert abs(linear.residuals.sum()) < 1e-9
            assert abs(float(years @ linear.residuals)) < 1e-9

    def test_slope_sign_matches_r_on_fixtures(self):
        for name in ("sudan", "haiti", "somalia"):
            linear = rs.fit(series_of(rs.load_fixture(name)))
            assert np.sign(linear.slope) == np.sign(linear.r)

    def test_too_few_points(self):
        with pytest.raises(TooFewPointsError):
            rs.fit(rs.TimeSeries(years=(2000, 2001), values=(1.0, 2.0)))


class TestRelativityCheck:
    def test_fixture_series_pass(self, sudan_records):
        r, passed = rs.relativity_check(series_of(sudan_records))
        assert passed and r == pytest.approx(-0.826518, abs=5e-7)

    def test_zigzag_fails_gate(self):
        r, passed = rs.relativity_check(ZIGZAG)
        assert abs(r) < 0.5
        assert not passed

    def test_custom_threshold(self):
        r, passed = rs.relativity_check(ZIGZAG, min_abs_r=0.0)
        assert passed


class TestPredict:
    def test_default_horizon_is_five_years_after_last(self, sudan_records):
        linear = rs.fit(series_of(sudan_records))
        preds = rs.predict(linear)
        assert [y for y, _ in preds] == [2018, 2019, 2020, 2021, 2022]

    def test_explicit_years(self, sudan_records):
        linear = rs.fit(series_of(sudan_records))
        preds = rs.predict(linear, [2025])
        assert preds[0][0] == 2025
        assert preds[0][1] == pytest.approx(linear.slope * 2025 + linear.intercept, abs=0)


class TestForecastSeries:
    def test_composite_result(self, sudan_records):
        res = rs.forecast_series(series_of(sudan_records))
        assert res.relativity_pass
        assert res.relativity_r == res.fit.r
        assert dict(res.predictions)[2018] == pytest.approx(SUDAN_2018, abs=1e-12)

    def test_failed_gate_still_predicts(self):
        res = rs.forecast_series(ZIGZAG)
        assert not res.relativity_pass
        assert len(res.predictions) == 5

    def test_horizon_parameter(self, sudan_records):
        res = rs.forecast_series(series_of(sudan_records), horizon=2)
        assert [y for y, _ in res.predictions] == [2018, 2019]

    def test_somalia_predictions_strictly_increase(self):
        res = rs.forecast_series(series_of(rs.load_fixture("somalia")))
        values = [v for _, v in res.predictions]
        assert all(b > a for a, b in zip(values, values[1:]))
