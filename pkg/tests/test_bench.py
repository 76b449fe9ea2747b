import csv

import pytest

from swih.bench import CSV_HEADER, BenchRecord, read_csv, run_bench, write_csv
from swih.errors import SwihError


def test_single_row_and_schema(tmp_path):
    records = run_bench(40, 30, 8, [3], ["swih"], seed=1, reps=1)
    assert len(records) == 1
    r = records[0]
    assert (r.method, r.width, r.height, r.kw, r.kh, r.bins) == ("swih", 40, 30, 3, 3, 8)
    assert r.build_ms >= 0 and r.query_total_ms >= 0
    assert r.query_mean_us == pytest.approx(r.query_total_ms * 1e3 / (38 * 28))
    path = tmp_path / "b.csv"
    write_csv(path, records)
    write_csv(path, records)
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == CSV_HEADER == ["method", "width", "height", "kw", "kh", "bins",
                                     "build_ms", "query_total_ms", "query_mean_us"]
    assert len(rows) == 3
    assert read_csv(path) == records * 2


def test_all_methods(tmp_path):
    records = run_bench(32, 32, 4, [3, 7], ["swih", "brute", "cake", "plain"], reps=1)
    assert [(r.method, r.kw) for r in records] == [(m, k) for m in ("swih", "brute", "cake", "plain") for k in (3, 7)]
    assert all(r.build_ms == 0.0 for r in records if r.method == "brute")


def test_invalid_sizes():
    with pytest.raises(SwihError):
        run_bench(10, 10, 4, [4], ["swih"])
    with pytest.raises(SwihError):
        run_bench(10, 10, 4, [11], ["swih"])
    with pytest.raises(ValueError):
        run_bench(10, 10, 4, [3], ["nope"])


def test_record_roundtrip_is_lossless(tmp_path):
    rec = BenchRecord("cake", 7, 9, 3, 5, 16, 0.1 + 0.2, 1 / 3, 2.5e-7)
    path = tmp_path / "r.csv"
    write_csv(path, [rec], append=False)
    assert read_csv(path) == [rec]
