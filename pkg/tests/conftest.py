import csv

import numpy as np
import pytest

import regionstab as rs

PUBLISHED_EIGENVALUES = (3.7366, 1.8172, 1.2306, 1.1533, 0.7351, 0.3561, 0.0533)


@pytest.fixture
def sudan_records():
    return rs.load_fixture("sudan")


@pytest.fixture
def country_records():
    return rs.load_country_series()


@pytest.fixture
def seven_col_matrix():
    """Engineered 7-column matrix where 5 components carry >= 95% variance.

    Five independent standard-normal columns plus two near-duplicates of the
    first two; the duplicate pairs collapse into single components, so four
    components accumulate ~88% and the fifth pushes past 99%.
    """
    rng = np.random.default_rng(42)
    n = 200
    base = rng.normal(0.0, 1.0, (n, 5))
    twin_a = base[:, 0] + 0.02 * rng.normal(size=n)
    twin_b = base[:, 1] + 0.02 * rng.normal(size=n)
    values = np.column_stack([base, twin_a, twin_b])
    return rs.DataMatrix(values=values,
                         column_names=("c1", "c2", "c3", "c4", "c5", "c6", "c7"))


def write_records_csv(path, rows, header=None):
    """Write a raw CSV for ingestion tests; rows are tuples matching header."""
    header = header or ["country", "year", "lap_mm", "aat_c", "fo",
                        "ams_pct", "psr_pct", "rs"]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    return path


@pytest.fixture
def labeled_csv(tmp_path, country_records):
    """Country fixtures augmented with a synthetic fsi label column."""
    header = ["country", "year", "lap_mm", "aat_c", "fo", "ams_pct",
              "psr_pct", "fsi", "rs"]
    rows = [(r.country, r.year, r.lap_mm, r.aat_c, r.fo, r.ams_pct, r.psr_pct,
             (1.0 - r.rs) * 55.0, r.rs) for r in country_records]
    return write_records_csv(tmp_path / "labeled.csv", rows, header)
