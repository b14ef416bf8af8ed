import pytest

import regionstab as rs
from regionstab.errors import (
    DuplicateKeyError,
    InputOutputError,
    MissingColumnError,
    ParseError,
    RangeViolationError,
    TooFewRecordsError,
)
from regionstab.ingest import CountryYearRecord

from conftest import write_records_csv


def rec(country="X", year=2000, lap=100.0, aat=20.0, fo=1.0, ams=2.0, psr=50.0, **kw):
    return CountryYearRecord(country=country, year=year, lap_mm=lap, aat_c=aat,
                             fo=fo, ams_pct=ams, psr_pct=psr, **kw)


class TestParseNumber:
    def test_plain(self):
        assert rs.parse_number("3.25") == 3.25
        assert rs.parse_number(" -0.08 ") == -0.08

    def test_decimal_comma(self):
        assert rs.parse_number("2,89") == 2.89
        assert rs.parse_number("1,5") == 1.5

    def test_trailing_percent(self):
        assert rs.parse_number("17%") == 17.0
        assert rs.parse_number("2,89%") == 2.89

    def test_scientific(self):
        assert rs.parse_number("1e-3") == 0.001

    @pytest.mark.parametrize("bad", ["", "abc", "1,2,3", "--4"])
    def test_rejects_garbage(self, bad):
        with pytest.raises(ValueError):
            rs.parse_number(bad)


class TestRecordValidation:
    def test_optional_fields_default_to_none(self):
        r = rec()
        assert r.ll is None and r.do_ is None and r.fsi_label is None and r.rs is None

    def test_negative_precipitation_rejected(self):
        with pytest.raises(RangeViolationError):
            rec(lap=-1.0)

    def test_psr_is_a_percentage(self):
        with pytest.raises(RangeViolationError):
            rec(psr=101.0)
        with pytest.raises(RangeViolationError):
            rec(psr=-2.0)

    def test_non_finite_rejected(self):
        with pytest.raises(RangeViolationError):
            rec(aat=float("nan"))

    def test_temperature_may_be_negative(self):
        assert rec(aat=-15.0).aat_c == -15.0

    def test_index_value_lookup(self):
        r = rec(ll=3.0, do_=1.5)
        assert r.index_value("LAP") == 100.0
        assert r.index_value("LL") == 3.0
        assert r.index_value("DO") == 1.5


class TestLoadCsv:
    def test_bundled_fixture(self, sudan_records):
        assert len(sudan_records) == 8
        first = sudan_records[0]
        assert (first.country, first.year) == ("Sudan", 2010)
        assert first.lap_mm == 239.0 and first.rs == -0.0825
        assert [r.year for r in sudan_records] == list(range(2010, 2018))

    def test_decimal_comma_cell_normalized(self):
        # the 2016 snapshot keeps one source cell in comma notation
        recs = rs.load_fixture("snapshot_2016")
        sudan = next(r for r in recs if r.country == "Sudan")
        assert sudan.ams_pct == 2.89

    def test_optional_columns_parsed(self, tmp_path):
        path = write_records_csv(
            tmp_path / "t.csv",
            [("A", 2001, 10, 20, 1, 2, 50, 55.0, -0.1), ("A", 2002, 11, 21, 1, 2, 50, "", "")],
            ["country", "year", "lap_mm", "aat_c", "fo", "ams_pct", "psr_pct", "fsi", "rs"])
        recs = rs.load_csv(path)
        assert recs[0].fsi_label == 55.0 and recs[0].rs == -0.1
        assert recs[1].fsi_label is None and recs[1].rs is None

    def test_missing_required_column(self, tmp_path):
        path = write_records_csv(tmp_path / "t.csv", [("A", 2001, 10, 20, 1, 2)],
                                 ["country", "year", "lap_mm", "aat_c", "fo", "ams_pct"])
        with pytest.raises(MissingColumnError) as err:
            rs.load_csv(path)
        assert err.value.column == "psr_pct"

    def test_duplicate_country_year(self, tmp_path):
        rows = [("A", 2001, 10, 20, 1, 2, 50, ""), ("A", 2001, 11, 21, 1, 2, 50, "")]
        path = write_records_csv(tmp_path / "t.csv", rows)
        with pytest.raises(DuplicateKeyError):
            rs.load_csv(path)

    def test_parse_error_reports_row_and_column(self, tmp_path):
        rows = [("A", 2001, 10, 20, 1, 2, 50, ""), ("A", 2002, "wet", 20, 1, 2, 50, "")]
        path = write_records_csv(tmp_path / "t.csv", rows)
        with pytest.raises(ParseError) as err:
            rs.load_csv(path)
        assert err.value.row == 3
        assert err.value.column == "lap_mm"

    def test_range_error_reports_row(self, tmp_path):
        rows = [("A", 2001, 10, 20, 1, 2, 150, "")]
        path = write_records_csv(tmp_path / "t.csv", rows)
        with pytest.raises(RangeViolationError) as err:
            rs.load_csv(path)
        assert err.value.row == 2
        assert err.value.column == "psr_pct"

    def test_empty_country_rejected(self, tmp_path):
        path = write_records_csv(tmp_path / "t.csv", [("", 2001, 10, 20, 1, 2, 50, "")])
        with pytest.raises(ParseError):
            rs.load_csv(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputOutputError):
            rs.load_csv(tmp_path / "absent.csv")

    def test_bom_tolerated(self, tmp_path):
        path = tmp_path / "bom.csv"
        body = "country,year,lap_mm,aat_c,fo,ams_pct,psr_pct\nA,2001,10,20,1,2,50\n"
        path.write_bytes(b"\xef\xbb\xbf" + body.encode())
        assert rs.load_csv(path)[0].country == "A"


class TestWriteCsv:
    def test_round_trip(self, tmp_path, country_records):
        path = tmp_path / "out.csv"
        rs.write_csv(country_records, path)
        again = rs.load_csv(path)
        assert len(again) == len(country_records)
        for a, b in zip(again, country_records):
            assert (a.country, a.year) == (b.country, b.year)
            assert a.lap_mm == b.lap_mm and a.rs == b.rs

    def test_full_header_written(self, tmp_path):
        path = tmp_path / "out.csv"
        rs.write_csv([rec()], path)
        header = path.read_text().splitlines()[0]
        assert header == "country,year,lap_mm,aat_c,fo,ams_pct,psr_pct,ll,do,fsi,rs"


class TestPreprocess:
    def test_no_outliers_in_fixtures(self, country_records):
        clean, flagged = rs.preprocess(country_records)
        assert flagged == []
        assert len(clean) == len(country_records)

    def test_flags_but_keeps_by_default(self):
        recs = [rec(year=2000 + i, lap=100.0 + i) for i in range(10)]
        recs.append(rec(year=2050, lap=5000.0))
        clean, flagged = rs.preprocess(recs, cutoff=3.0)
        assert [r.year for r in flagged] == [2050]
        assert len(clean) == 11

    def test_drop_removes_flagged(self):
        recs = [rec(year=2000 + i, lap=100.0 + i) for i in range(10)]
        recs.append(rec(year=2050, lap=5000.0))
        clean, flagged = rs.preprocess(recs, cutoff=3.0, drop=True)
        assert len(clean) == 10
        assert all(r.year != 2050 for r in clean)

    def test_constant_column_skipped(self):
        # identical FO everywhere cannot be z-scored and must not crash
        recs = [rec(year=2000 + i, fo=1.0, lap=100.0 + i) for i in range(5)]
        clean, flagged = rs.preprocess(recs)
        assert flagged == []

    def test_too_few_records(self):
        with pytest.raises(TooFewRecordsError):
            rs.preprocess([rec(), rec(year=2001)])

    def test_bad_cutoff(self):
        recs = [rec(year=2000 + i) for i in range(3)]
        with pytest.raises(ValueError):
            rs.preprocess(recs, cutoff=0.0)


class TestRecordsToMatrix:
    def test_training_columns(self, sudan_records):
        X = rs.records_to_matrix(sudan_records, rs.TRAINING_INDEXES)
        assert X.column_names == ("LAP", "AAT", "AMS", "FO", "PSR")
        assert X.n_rows == 8
        assert X.values[0, 0] == 239.0   # LAP 2010
        assert X.values[0, 4] == 17.0    # PSR 2010

    def test_missing_optional_index_errors(self, sudan_records):
        with pytest.raises(MissingColumnError) as err:
            rs.records_to_matrix(sudan_records, rs.SEVEN_INDEXES)
        assert err.value.column == "do"

    def test_units_carried(self, sudan_records):
        X = rs.records_to_matrix(sudan_records, ("LAP", "AAT"))
        assert X.column_units == ("mm", "°C")
