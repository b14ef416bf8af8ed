"""Access to the CSV fixtures bundled with the package.

``sudan``, ``haiti``, and ``somalia`` are eight-year index series
(2010-2017) with the RS evaluation included as a data column;
``snapshot_2016`` holds one 2016 row per country. The printed source
values are kept verbatim, including their small inconsistencies (the Sudan
2016 row differs slightly between the snapshot and the series).
"""

from importlib import resources

from .ingest import load_csv

BUNDLED = ("sudan", "haiti", "somalia", "snapshot_2016")


def fixture_path(name: str):
    """Filesystem path of a bundled CSV (name without the .csv suffix)."""
    if name not in BUNDLED:
        raise KeyError(f"unknown fixture {name!r}; available: {BUNDLED}")
    return resources.files("regionstab").joinpath("data", f"{name}.csv")


def load_fixture(name: str):
    """Records of one bundled CSV."""
    return load_csv(fixture_path(name))


def load_country_series():
    """Records of the three bundled eight-year country series, combined."""
    records = []
    for name in ("sudan", "haiti", "somalia"):
        records.extend(load_fixture(name))
    return records
