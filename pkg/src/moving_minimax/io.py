"""CSV ingestion and CSV/JSON serialization of indicator results."""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from enum import Enum
from typing import IO, Dict, List, Optional, Sequence, Union

from . import __version__
from .core import PriceSeries, time_key
from .errors import ConfigError, DataError, DomainError, UsageError

Column = Union[str, int, None]

TIME_COLUMN_NAMES = ("t", "time", "timestamp", "date", "datetime")


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    SVG = "svg"


@dataclass(frozen=True)
class InputSpec:
    source: str = "-"
    price_col: Column = None
    time_col: Column = None
    header: bool = True
    delimiter: str = ","

    def __post_init__(self):
        if len(self.delimiter.encode()) != 1:
            raise ConfigError(f"delimiter must be a single byte, got {self.delimiter!r}")


@dataclass(frozen=True)
class OutputSpec:
    format: OutputFormat = OutputFormat.CSV
    destination: str = "-"
    precision: int = 12

    def __post_init__(self):
        object.__setattr__(self, "format", OutputFormat(self.format))
        if not 1 <= self.precision <= 17:
            raise ConfigError(f"precision must lie in [1, 17], got {self.precision}")


def _resolve(col: Column, header: Optional[List[str]], width: int, what: str) -> int:
    if isinstance(col, int):
        if not 0 <= col < width:
            raise ConfigError(f"{what} column index {col} out of range (0..{width - 1})")
        return col
    if isinstance(col, str) and col.isdigit() and (header is None or col not in header):
        return _resolve(int(col), header, width, what)
    if header is None:
        raise ConfigError(f"{what} column {col!r} given by name but input has no header")
    if col in header:
        return header.index(col)
    lowered = [h.strip().lower() for h in header]
    if col.strip().lower() in lowered:
        return lowered.index(col.strip().lower())
    raise ConfigError(f"{what} column {col!r} not found; available: {', '.join(header)}")


def _default_price_column(header: Optional[List[str]], width: int) -> int:
    if header is not None:
        lowered = [h.strip().lower() for h in header]
        if "close" in lowered:
            return lowered.index("close")
    if width == 1:
        return 0
    if header is not None and width == 2:
        return 1
    raise ConfigError("cannot infer the price column; pass --price-col")


def _default_time_column(header: Optional[List[str]], price_idx: int) -> Optional[int]:
    if header is None:
        return None
    for j, name in enumerate(header):
        if j != price_idx and name.strip().lower() in TIME_COLUMN_NAMES:
            return j
    return None


def read_rows(spec: InputSpec, stream: Optional[IO[str]] = None):
    if stream is not None:
        text = stream.read()
    elif spec.source == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(spec.source, newline="") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read {spec.source}: {exc.strerror}") from exc
    return [row for row in csv.reader(io.StringIO(text), delimiter=spec.delimiter)]


def ingest_csv(spec: InputSpec, stream: Optional[IO[str]] = None) -> PriceSeries:
    """Read one price column (and optionally a timestamp column) from CSV.

    Rows are numbered from 1 counting data rows only; blank lines are
    skipped.
    """
    rows = read_rows(spec, stream)
    header = None
    first_line = 1
    if spec.header:
        if not rows:
            raise DataError("input is empty")
        header = [h.strip() for h in rows[0]]
        rows = rows[1:]
        first_line = 2
    width = len(header) if header is not None else max((len(r) for r in rows), default=0)
    if width == 0:
        raise DataError("input has no columns")

    if spec.price_col is None:
        price_idx = _default_price_column(header, width)
    else:
        price_idx = _resolve(spec.price_col, header, width, "price")
    if spec.time_col is not None:
        time_idx = _resolve(spec.time_col, header, width, "time")
    else:
        time_idx = _default_time_column(header, price_idx)

    prices: List[float] = []
    stamps: List[str] = []
    row_no = 0
    for line_no, row in enumerate(rows, start=first_line):
        if not row or all(not cell.strip() for cell in row):
            continue
        row_no += 1
        if price_idx >= len(row):
            raise DataError(f"row {row_no} (line {line_no}): missing price field")
        cell = row[price_idx].strip()
        try:
            price = float(cell)
        except ValueError:
            raise DataError(f"row {row_no} (line {line_no}): unparsable price {cell!r}") from None
        if not (math.isfinite(price) and price > 0):
            raise DataError(f"row {row_no} (line {line_no}): price must be positive, got {cell}")
        prices.append(price)
        if time_idx is not None:
            if time_idx >= len(row):
                raise DataError(f"row {row_no} (line {line_no}): missing timestamp field")
            stamp = row[time_idx].strip()
            if stamps and time_key(stamp) < time_key(stamps[-1]):
                raise DataError(f"row {row_no} (line {line_no}): timestamp {stamp} goes backwards")
            stamps.append(stamp)
    if len(prices) < 2:
        raise DataError(f"need at least 2 valid price rows, got {len(prices)}")
    try:
        return PriceSeries(prices, tuple(stamps) if time_idx is not None else None)
    except (DomainError, UsageError) as exc:
        raise DataError(str(exc)) from exc


def fmt(x: float, precision: int) -> str:
    return f"{x:.{precision}g}"


def fmt_price(x: float) -> str:
    return repr(float(x))


def write_text(text: str, destination: str) -> None:
    if destination == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(destination, "w", newline="") as fh:
            fh.write(text)


def to_csv(header: Sequence[str], rows: Sequence[Sequence[str]], delimiter: str = ",") -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def compute_table(series: PriceSeries, weights: Dict[str, Sequence[float]],
                  precision: int) -> tuple[List[str], List[List[str]]]:
    """Header and rows ``index, timestamp?, price, u?, d?``."""
    header = ["index"]
    if series.timestamps is not None:
        header.append("timestamp")
    header.append("price")
    header.extend(weights)
    rows = []
    for i, price in enumerate(series.values):
        row = [str(i)]
        if series.timestamps is not None:
            row.append(str(series.timestamps[i]))
        row.append(fmt_price(price))
        row.extend(fmt(w[i], precision) for w in weights.values())
        rows.append(row)
    return header, rows


def rounded(values: Sequence[float], precision: int) -> List[float]:
    return [float(fmt(v, precision)) for v in values]


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def metadata(command: str, **fields) -> dict:
    meta = {"command": command, "version": __version__}
    meta.update({k: v for k, v in fields.items() if v is not None})
    return meta
