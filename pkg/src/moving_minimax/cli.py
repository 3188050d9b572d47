"""
Command-line front end.

    moving-minimax compute --input prices.csv --m 5 --direction both
    moving-minimax roll    --input prices.csv --window 64 --hop 8 --format json
    moving-minimax signals --input prices.csv --ma-period 20 --crossings --spindle
    moving-minimax plot    --input prices.csv --m 10 --output chart.svg

Exit status is 0 on success, 1 for bad data and 2 for bad usage or
configuration. Diagnostics go to stderr only.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Dict, List, Optional, Sequence

from . import __version__
from .core import Direction, IndicatorParams, MiniMaxSeries, PriceSeries, minimax
from .errors import ConfigError, DataError, DomainError, MiniMaxError, UsageError
from .io import (
    InputSpec,
    OutputFormat,
    OutputSpec,
    compute_table,
    fmt,
    fmt_price,
    ingest_csv,
    metadata,
    rounded,
    to_csv,
    to_json,
    write_text,
)
from .rolling import RollingConfig, rolling_minimax
from .signals import (
    SpindleConfig,
    detect_spindle,
    extract_extrema,
    support_resistance_pipeline,
)
from .svg import emit_svg

log = logging.getLogger("moving_minimax")

EXIT_OK, EXIT_DATA, EXIT_USAGE = 0, 1, 2


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _column(text: Optional[str]):
    if text is None:
        return None
    return int(text) if text.isdigit() else text


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _add_shared(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", default="-", help="CSV file, or - for stdin (default)")
    p.add_argument("--price-col", help="price column name or zero-based index (default: close)")
    p.add_argument("--time-col", help="timestamp column name or zero-based index")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--no-header", action="store_true", help="input has no header row")
    p.add_argument("--m", type=_positive_int, default=5, help="smoothing window width")
    p.add_argument("--direction", choices=["up", "down", "both"], default="both")
    p.add_argument("--output", default="-", help="output file, or - for stdout (default)")
    p.add_argument("--format", choices=[f.value for f in OutputFormat], default="csv")
    p.add_argument("--precision", type=int, default=12,
                   help="significant digits for emitted weights (1-17)")
    p.add_argument("--figure", help="also render a matplotlib figure to this path")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = ArgumentParser(prog="moving-minimax",
                            description="Moving mini-max indicator for price series.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    p = sub.add_parser("compute", help="mini-max weights for the whole series")
    _add_shared(p)

    p = sub.add_parser("roll", help="mini-max over sliding windows")
    _add_shared(p)
    p.add_argument("--window", type=_positive_int, required=True)
    p.add_argument("--hop", type=_positive_int, default=1)

    p = sub.add_parser("signals", help="resistance/support crossings, spindles, extrema")
    _add_shared(p)
    p.add_argument("--ma-period", type=_positive_int)
    p.add_argument("--crossings", action="store_true", help="emit resistance/support crossings")
    p.add_argument("--spindle", action="store_true", help="emit spindle intervals")
    p.add_argument("--band", type=float, default=0.5, help="spindle band in units of 1/n")
    p.add_argument("--min-len", type=int, help="minimum spindle length (default 2m)")
    p.add_argument("--min-crossings", type=int, default=3)
    p.add_argument("--prominence", type=float,
                   help="emit mini-max extrema with at least this prominence")

    p = sub.add_parser("plot", help="two-panel SVG chart")
    _add_shared(p)
    p.set_defaults(format="svg")
    return parser


def _directions(choice: str) -> List[Direction]:
    return [Direction.UP, Direction.DOWN] if choice == "both" else [Direction(choice)]


def _weights(series: PriceSeries, m: int, choice: str) -> Dict[str, MiniMaxSeries]:
    return {("u" if d is Direction.UP else "d"): minimax(series, IndicatorParams(m, d))
            for d in _directions(choice)}


def _figure(args, series: PriceSeries, mm: Dict[str, MiniMaxSeries], spans=()) -> None:
    if not args.figure:
        return
    from .figures import render_figure

    u = mm.get("u")
    d = mm.get("d")
    if u is None:
        u, d = d, None
    render_figure(series, u, d, path=args.figure, spans=spans)
    log.info("wrote figure %s", args.figure)


def _svg(series: PriceSeries, mm: Dict[str, MiniMaxSeries]) -> str:
    u, d = mm.get("u"), mm.get("d")
    if u is None:
        u, d = d, None
    return emit_svg(series, u, d)


def run_compute(args, series: PriceSeries, out: OutputSpec) -> int:
    mm = _weights(series, args.m, args.direction)
    if out.format is OutputFormat.SVG:
        text = _svg(series, mm)
    elif out.format is OutputFormat.JSON:
        doc = metadata("compute", m=args.m, direction=args.direction, n=len(series))
        doc["index"] = list(range(len(series)))
        if series.timestamps is not None:
            doc["timestamp"] = list(series.timestamps)
        doc["price"] = [float(v) for v in series.values]
        for name, w in mm.items():
            doc[name] = rounded(w.weights, out.precision)
        text = to_json(doc)
    else:
        header, rows = compute_table(series, {k: v.weights for k, v in mm.items()}, out.precision)
        text = to_csv(header, rows)
    write_text(text, out.destination)
    _figure(args, series, mm)
    return EXIT_OK


def run_roll(args, series: PriceSeries, out: OutputSpec) -> int:
    if out.format is OutputFormat.SVG:
        raise UsageError("roll supports csv and json output only")
    if args.window < 2:
        raise UsageError("--window must be at least 2")
    if args.window > len(series):
        raise DataError(f"window {args.window} exceeds series length {len(series)}")
    results = {}
    for d in _directions(args.direction):
        cfg = RollingConfig(args.window, args.hop, IndicatorParams(args.m, d))
        results["u" if d is Direction.UP else "d"] = rolling_minimax(series, cfg)
    names = list(results)
    first = results[names[0]]
    ts = series.timestamps

    if out.format is OutputFormat.JSON:
        doc = metadata("roll", m=args.m, direction=args.direction, n=len(series),
                       window=args.window, hop=args.hop)
        windows = []
        for k, (start, _) in enumerate(first.windows):
            end = first.end_index(start)
            rec = {"start": start, "end": end}
            if ts is not None:
                rec["end_timestamp"] = ts[end]
            for name in names:
                rec[name] = rounded(results[name].windows[k][1].weights, out.precision)
            windows.append(rec)
        doc["windows"] = windows
        text = to_json(doc)
    else:
        header = ["window_start", "window_end", "index"]
        if ts is not None:
            header.append("timestamp")
        header += ["price"] + names
        rows = []
        for k, (start, _) in enumerate(first.windows):
            end = first.end_index(start)
            for j in range(args.window):
                i = start + j
                row = [str(start), str(end), str(i)]
                if ts is not None:
                    row.append(str(ts[i]))
                row.append(fmt_price(series.values[i]))
                row += [fmt(results[name].windows[k][1].weights[j], out.precision)
                        for name in names]
                rows.append(row)
        text = to_csv(header, rows)
    write_text(text, out.destination)
    return EXIT_OK


SIGNAL_COLUMNS = ["kind", "index", "end_index", "sign", "score", "weight", "prominence"]


def run_signals(args, series: PriceSeries, out: OutputSpec) -> int:
    if out.format is OutputFormat.SVG:
        raise UsageError("signals supports csv and json output only")
    if args.crossings and args.ma_period is None:
        raise UsageError("--crossings requires --ma-period")
    if args.prominence is not None and not 0 <= args.prominence <= 1:
        raise UsageError("--prominence must lie in [0, 1]")
    want_crossings = args.crossings or (not args.spindle and args.ma_period is not None)
    want_spindle = args.spindle or not args.crossings
    spindle_cfg = SpindleConfig(args.band, args.min_len, args.min_crossings)

    records = []
    if want_crossings:
        if len(series) < args.ma_period + 1:
            raise DataError(f"series of length {len(series)} too short for "
                            f"--ma-period {args.ma_period}")
        for ev in support_resistance_pipeline(series, args.m, args.ma_period):
            records.append({"kind": ev.kind.value, "index": ev.index, "sign": ev.sign.value})
    mm = _weights(series, args.m, "both")
    spindles = detect_spindle(mm["u"], mm["d"], spindle_cfg) if want_spindle else []
    for iv in spindles:
        records.append({"kind": "spindle", "index": iv.start_index, "end_index": iv.end_index,
                        "score": iv.score})
    if args.prominence is not None:
        for name in [("u" if d is Direction.UP else "d") for d in _directions(args.direction)]:
            for ex in extract_extrema(mm[name], args.prominence):
                records.append({"kind": ex.kind.value, "index": ex.index,
                                "weight": ex.weight, "prominence": ex.prominence})
    records.sort(key=lambda r: (r["index"], r["kind"]))

    p = out.precision
    if out.format is OutputFormat.JSON:
        doc = metadata("signals", m=args.m, n=len(series), ma_period=args.ma_period,
                       band=args.band, min_len=args.min_len, min_crossings=args.min_crossings,
                       prominence=args.prominence)
        for r in records:
            for key in ("index", "score", "weight", "prominence"):
                if isinstance(r.get(key), float):
                    r[key] = float(fmt(r[key], p))
        doc["events"] = records
        text = to_json(doc)
    else:
        rows = []
        for r in records:
            row = []
            for col in SIGNAL_COLUMNS:
                v = r.get(col)
                row.append("" if v is None else fmt(v, p) if isinstance(v, float) else str(v))
            rows.append(row)
        text = to_csv(SIGNAL_COLUMNS, rows)
    write_text(text, out.destination)
    _figure(args, series, mm, spans=[(iv.start_index, iv.end_index) for iv in spindles])
    return EXIT_OK


def run_plot(args, series: PriceSeries, out: OutputSpec) -> int:
    if out.format is not OutputFormat.SVG:
        raise UsageError("plot writes svg only")
    mm = _weights(series, args.m, args.direction)
    write_text(_svg(series, mm), out.destination)
    _figure(args, series, mm)
    return EXIT_OK


COMMANDS = {"compute": run_compute, "roll": run_roll, "signals": run_signals, "plot": run_plot}


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(format="%(name)s: %(levelname)s: %(message)s", stream=sys.stderr)
    try:
        args = build_parser().parse_args(argv)
        log.setLevel(logging.INFO if args.verbose else logging.WARNING)
        out = OutputSpec(args.format, args.output, args.precision)
        spec = InputSpec(args.input, _column(args.price_col), _column(args.time_col),
                         header=not args.no_header, delimiter=args.delimiter)
        series = ingest_csv(spec)
        log.info("read %d prices from %s", len(series), args.input)
        return COMMANDS[args.command](args, series, out)
    except (UsageError, ConfigError) as exc:
        print(f"moving-minimax: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, DomainError) as exc:
        print(f"moving-minimax: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except MiniMaxError as exc:
        print(f"moving-minimax: error: {exc}", file=sys.stderr)
        return EXIT_DATA


def run(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(main(argv))
