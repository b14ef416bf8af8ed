"""CSV ingestion, validation, and outlier screening for country-year records.

Input schema (header required, UTF-8, comma separated):

    country,year,lap_mm,aat_c,fo,ams_pct,psr_pct[,ll,do,fsi,rs]

Numeric cells accept a decimal point or a decimal comma ("2.89" and "2,89"
both parse to 2.89; comma cells must be quoted) and tolerate a trailing
percent sign. Optional cells may be empty. (country, year) pairs must be
unique within a file.
"""

import csv
import math
from dataclasses import dataclass, fields

import numpy as np

from .errors import (
    DuplicateKeyError,
    InputOutputError,
    MissingColumnError,
    ParseError,
    RangeViolationError,
    TooFewRecordsError,
)
from .numerics import DataMatrix

REQUIRED_COLUMNS = ("country", "year", "lap_mm", "aat_c", "fo", "ams_pct", "psr_pct")
OPTIONAL_COLUMNS = ("ll", "do", "fsi", "rs")

# Index code -> (record attribute, unit). Order follows the index schema:
# climate indexes first, then government indexes.
INDEX_FIELDS = {
    "LAP": ("lap_mm", "mm"),
    "AAT": ("aat_c", "°C"),
    "FO": ("fo", "dimensionless"),
    "DO": ("do_", "dimensionless"),
    "AMS": ("ams_pct", "%"),
    "LL": ("ll", "dimensionless"),
    "PSR": ("psr_pct", "%"),
}
SEVEN_INDEXES = tuple(INDEX_FIELDS)
# The five indexes the trained network consumes, in contribution-rate order.
TRAINING_INDEXES = ("LAP", "AAT", "AMS", "FO", "PSR")

_CSV_FIELD_FOR_ATTR = {
    "lap_mm": "lap_mm", "aat_c": "aat_c", "fo": "fo", "ams_pct": "ams_pct",
    "psr_pct": "psr_pct", "ll": "ll", "do_": "do", "fsi_label": "fsi", "rs": "rs",
}


@dataclass(frozen=True)
class CountryYearRecord:
    """One country-year row of stability indexes plus optional label columns."""

    country: str
    year: int
    lap_mm: float
    aat_c: float
    fo: float
    ams_pct: float
    psr_pct: float
    ll: float | None = None
    do_: float | None = None
    fsi_label: float | None = None
    rs: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "country", str(self.country))
        object.__setattr__(self, "year", int(self.year))
        for f in fields(self):
            if f.name in ("country", "year"):
                continue
            v = getattr(self, f.name)
            if v is None:
                continue
            v = float(v)
            object.__setattr__(self, f.name, v)
            col = _CSV_FIELD_FOR_ATTR[f.name]
            if not math.isfinite(v):
                raise RangeViolationError(None, col, "must be finite")
        for attr, lo, hi in (("lap_mm", 0.0, None), ("fo", 0.0, None),
                             ("ams_pct", 0.0, None), ("do_", 0.0, None),
                             ("psr_pct", 0.0, 100.0)):
            v = getattr(self, attr)
            if v is None:
                continue
            col = _CSV_FIELD_FOR_ATTR[attr]
            if v < lo:
                raise RangeViolationError(None, col, f"{v} < {lo}")
            if hi is not None and v > hi:
                raise RangeViolationError(None, col, f"{v} > {hi}")

    def index_value(self, code: str) -> float | None:
        return getattr(self, INDEX_FIELDS[code][0])


def parse_number(text: str) -> float:
    """Parse a numeric cell, normalizing decimal commas and a trailing %."""
    s = text.strip()
    if s.endswith("%"):
        s = s[:-1].strip()
    if "," in s and "." not in s:
        s = s.replace(",", ".", 1)
    return float(s)


def _parse_cell(raw, row, column, optional=False):
    if raw is None or raw.strip() == "":
        if optional:
            return None
        raise ParseError(row, column, "empty cell")
    try:
        return parse_number(raw)
    except ValueError:
        raise ParseError(row, column, f"not a number: {raw.strip()!r}") from None


def load_csv(path) -> list[CountryYearRecord]:
    """Read and validate a country-year CSV into records."""
    try:
        fh = open(path, "r", encoding="utf-8-sig", newline="")
    except OSError as exc:
        raise InputOutputError(f"cannot read {path}: {exc}") from exc
    with fh:
        reader = csv.DictReader(fh)
        header = list(reader.fieldnames or [])
        for col in REQUIRED_COLUMNS:
            if col not in header:
                raise MissingColumnError(col)

        records = []
        seen = set()
        for row in reader:
            line = reader.line_num
            country = (row.get("country") or "").strip()
            if not country:
                raise ParseError(line, "country", "empty cell")
            year_raw = (row.get("year") or "").strip()
            try:
                year = int(year_raw)
            except ValueError:
                raise ParseError(line, "year", f"not an integer: {year_raw!r}") from None

            values = {}
            for col in ("lap_mm", "aat_c", "fo", "ams_pct", "psr_pct"):
                values[col] = _parse_cell(row.get(col), line, col)
            optionals = {}
            for col in OPTIONAL_COLUMNS:
                optionals[col] = _parse_cell(row.get(col), line, col, optional=True) \
                    if col in header else None

            key = (country, year)
            if key in seen:
                raise DuplicateKeyError(country, year)
            seen.add(key)
            try:
                records.append(CountryYearRecord(
                    country=country, year=year,
                    lap_mm=values["lap_mm"], aat_c=values["aat_c"], fo=values["fo"],
                    ams_pct=values["ams_pct"], psr_pct=values["psr_pct"],
                    ll=optionals["ll"], do_=optionals["do"],
                    fsi_label=optionals["fsi"], rs=optionals["rs"],
                ))
            except RangeViolationError as exc:
                raise RangeViolationError(line, exc.column,
                                          str(exc).split(": ", 1)[-1]) from None
    return records


def _format_cell(v) -> str:
    if v is None:
        return ""
    return repr(float(v))


def write_csv(records, path) -> None:
    """Write records with canonical decimal points; inverse of load_csv."""
    header = list(REQUIRED_COLUMNS) + list(OPTIONAL_COLUMNS)
    try:
        fh = open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise InputOutputError(f"cannot write {path}: {exc}") from exc
    with fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for rec in records:
            writer.writerow([
                rec.country, rec.year,
                _format_cell(rec.lap_mm), _format_cell(rec.aat_c), _format_cell(rec.fo),
                _format_cell(rec.ams_pct), _format_cell(rec.psr_pct),
                _format_cell(rec.ll), _format_cell(rec.do_),
                _format_cell(rec.fsi_label), _format_cell(rec.rs),
            ])


def preprocess(records, cutoff: float = 4.0, drop: bool = False):
    """Screen records for abnormal index values by per-column z-score.

    A record is flagged when any index column's z-score exceeds ``cutoff``
    in absolute value. Flagged records are always reported; they are removed
    from the returned clean list only when ``drop`` is set. Columns present
    on fewer than 3 records, or with zero spread, cannot be z-scored and are
    skipped.
    """
    recs = list(records)
    if len(recs) < 3:
        raise TooFewRecordsError(f"need >= 3 records, got {len(recs)}")
    if cutoff <= 0:
        raise ValueError(f"cutoff must be positive, got {cutoff}")

    flagged_idx = set()
    for code in SEVEN_INDEXES:
        present = [(i, rec.index_value(code)) for i, rec in enumerate(recs)
                   if rec.index_value(code) is not None]
        if len(present) < 3:
            continue
        vals = np.array([v for _, v in present], dtype=float)
        std = vals.std(ddof=1)
        if std <= 1e-12 * max(1.0, abs(float(vals.mean()))):
            continue
        z = (vals - vals.mean()) / std
        for (i, _), zi in zip(present, z):
            if abs(zi) > cutoff:
                flagged_idx.add(i)

    flagged = [recs[i] for i in sorted(flagged_idx)]
    clean = [rec for i, rec in enumerate(recs) if i not in flagged_idx] if drop else recs
    return clean, flagged


def records_to_matrix(records, codes=SEVEN_INDEXES) -> DataMatrix:
    """Build a DataMatrix of the requested index columns from records.

    Every requested index must be present on every record; a missing
    optional index raises MissingColumnError naming its CSV column.
    """
    recs = list(records)
    rows = []
    for rec in recs:
        row = []
        for code in codes:
            v = rec.index_value(code)
            if v is None:
                raise MissingColumnError(_CSV_FIELD_FOR_ATTR[INDEX_FIELDS[code][0]])
            row.append(v)
        rows.append(row)
    units = tuple(INDEX_FIELDS[code][1] for code in codes)
    return DataMatrix(values=np.array(rows, dtype=float),
                      column_names=tuple(codes), column_units=units)
