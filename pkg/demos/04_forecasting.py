"""
Trend-gated RS forecasting
==========================

Per country, an OLS line of RS against year extrapolates five years out,
but only after a Pearson-correlation gate (|r| >= 0.8) says the series
is linear enough to trust.
"""

import regionstab as rs

# Eight observed years (2010-2017) of the RS index for three countries.
records = rs.load_country_series()
config = rs.make_config()
results = rs.cmd_forecast(records, config, "out_forecast")

for country, res in results.items():
    gate = "trend OK" if res.relativity_pass else "trend NOT reliable"
    print(f"{country}: r = {res.relativity_r:+.4f} ({gate}), "
          f"slope {res.fit.slope:+.5f} RS/year")
    for year, value in res.predictions:
        print(f"    {year}: {value:+.4f}")

# The residuals of a least-squares line always satisfy two identities;
# a quick look at one country shows them holding to round-off.
sudan = [r for r in records if r.country == "Sudan"]
series = rs.TimeSeries(years=tuple(r.year for r in sudan),
                       values=tuple(r.rs for r in sudan))
linear = rs.fit(series)
print("\nSudan residual checks:")
print("  sum of residuals:        %.2e" % linear.residuals.sum())
print("  year-weighted residuals: %.2e"
      % sum(y * e for y, e in zip(series.years, linear.residuals)))

# A deliberately jagged series fails the gate but still yields a line,
# flagged so a caller will not over-trust it.
zigzag = rs.TimeSeries(years=tuple(range(2010, 2016)),
                       values=(0.1, -0.1, 0.1, -0.1, 0.1, -0.1))
res = rs.forecast_series(zigzag)
print(f"\nzigzag series: r = {res.relativity_r:+.4f}, "
      f"gate pass = {res.relativity_pass}")
