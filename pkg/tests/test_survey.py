import json

import pytest

from cyclosig import __version__
from cyclosig.survey import (
    CSV_COLUMNS,
    RankCache,
    SurveyRecord,
    compute_record,
    parse_range,
    records_from_csv,
    records_to_csv,
    run_survey,
    select_conductors,
)


def test_parse_range():
    assert parse_range("3..10000") == (3, 10000)
    for bad in ("3-10", "10..3", "a..b"):
        with pytest.raises(ValueError):
            parse_range(bad)


def test_select_conductors():
    assert select_conductors(3, 30, "odd-prime-powers") == [3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29]
    assert select_conductors(1, 70, "two-powers") == [4, 8, 16, 32, 64]
    assert select_conductors(3, 10, "prime-powers") == [3, 4, 5, 7, 8, 9]
    with pytest.raises(ValueError):
        select_conductors(3, 10, "composites")


def test_record_json_roundtrip():
    rec = compute_record(29)
    assert SurveyRecord.from_json(rec.to_json()) == rec
    assert rec.deficiency == rec.phi_half - rec.rank == 3
    assert rec.toolkit_version == __version__


def test_record_file_roundtrip(tmp_path):
    cache = RankCache(tmp_path)
    rec = compute_record(163)
    cache.put(rec)
    assert cache.get(163) == rec
    assert list(tmp_path.iterdir()) == [cache.path(163)]


def test_cache_keyed_by_version(tmp_path):
    RankCache(tmp_path, version="0.0.1").put(compute_record(29))
    assert RankCache(tmp_path).get(29) is None


def test_cached_and_fresh_reports_identical(tmp_path):
    cache = RankCache(tmp_path)
    first = run_survey([29, 31, 64], cache=cache)
    fresh = run_survey([29, 31, 64])
    cached = run_survey([29, 31, 64], cache=cache)
    assert [r.report_key() for r in first] == [r.report_key() for r in fresh]
    assert [r.to_json() for r in first] == [r.to_json() for r in cached]


def test_csv_layout():
    text = records_to_csv(run_survey([29, 5, 8]))
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    rows = records_from_csv(text)
    assert [r["m"] for r in rows] == ["5", "8", "29"]
    assert rows[2]["rank"] == "11" and rows[2]["status"] == "ok"


def test_parallel_matches_serial():
    ms = select_conductors(3, 300, "prime-powers")
    serial = run_survey(ms, jobs=1)
    parallel = run_survey(ms, jobs=2)
    assert [r.report_key() for r in serial] == [r.report_key() for r in parallel]


def test_large_rows_skipped():
    rec = run_survey([163], max_phi_half=50)[0]
    assert rec.rank is None and rec.status.startswith("skipped")
    assert run_survey([163], max_phi_half=50, allow_large=True)[0].rank == 79


def test_error_rows_are_recorded():
    rec = run_survey([6])[0]
    assert rec.status.startswith("error")
    assert "mod 4" in rec.status


def test_two_power_deficiency_zero():
    rows = run_survey(select_conductors(4, 8192, "two-powers"))
    assert [r.deficiency for r in rows] == [0] * 12


def test_cache_file_is_json(tmp_path):
    cache = RankCache(tmp_path)
    cache.put(compute_record(9))
    data = json.loads(cache.path(9).read_text())
    assert data["m"] == 9 and data["toolkit_version"] == __version__
