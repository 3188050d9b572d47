import io

import numpy as np
import pytest

from moving_minimax.errors import ConfigError, DataError
from moving_minimax.io import InputSpec, OutputSpec, compute_table, ingest_csv


def ingest(text, **kw):
    return ingest_csv(InputSpec(**kw), stream=io.StringIO(text))


def test_two_rows():
    s = ingest("t,close\n1,100\n2,101\n", price_col="close")
    np.testing.assert_array_equal(s.values, [100, 101])
    assert s.timestamps == ("1", "2")


def test_default_close_column():
    s = ingest("date,open,high,low,close\n2024-01-02,1,3,1,2\n2024-01-03,2,4,2,3\n")
    np.testing.assert_array_equal(s.values, [2, 3])
    assert s.timestamps == ("2024-01-02", "2024-01-03")


def test_missing_column():
    with pytest.raises(ConfigError, match="open"):
        ingest("t,close\n1,100\n2,101\n", price_col="open")


def test_negative_price_names_row():
    with pytest.raises(DataError, match="row 3"):
        ingest("t,close\n1,100\n2,101\n3,-5\n", price_col="close")


def test_unparsable_price():
    with pytest.raises(DataError, match="row 2"):
        ingest("close\n1\nabc\n")


def test_too_few_rows():
    with pytest.raises(DataError):
        ingest("close\n5\n")


def test_no_header_and_index_columns():
    s = ingest("1;10\n2;11\n3;12\n", header=False, price_col=1, time_col=0, delimiter=";")
    np.testing.assert_array_equal(s.values, [10, 11, 12])
    assert s.timestamps == ("1", "2", "3")


def test_numeric_timestamps_compare_numerically():
    s = ingest("t,close\n9,1\n10,2\n", price_col="close")
    assert s.timestamps == ("9", "10")
    with pytest.raises(DataError, match="backwards"):
        ingest("t,close\n10,1\n9,2\n")


def test_blank_lines_skipped():
    s = ingest("close\n1\n\n2\n")
    assert len(s) == 2


def test_delimiter_and_precision_validation():
    with pytest.raises(ConfigError):
        InputSpec(delimiter="ab")
    with pytest.raises(ConfigError):
        OutputSpec(precision=0)
    with pytest.raises(ConfigError):
        OutputSpec(precision=18)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        ingest_csv(InputSpec(str(tmp_path / "nope.csv")))


def test_compute_table_columns():
    s = ingest("t,close\n1,1\n2,2\n3,4\n")
    header, rows = compute_table(s, {"u": [0.1, 0.5, 0.4]}, 3)
    assert header == ["index", "timestamp", "price", "u"]
    assert rows[0] == ["0", "1", "1.0", "0.1"]
