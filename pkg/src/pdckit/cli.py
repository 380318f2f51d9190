"""Command-line front end.

One binary, subcommand style.  Counts print exactly; reals print to 10
significant digits.  Every JSON output embeds the effective run config.
Exit codes: 0 success, 1 computation failure (structured JSON on stderr),
2 usage error, 3 assert-class verification failure.

Sieve caches live in --cache-dir (or $PDC_CACHE_DIR) as
sieve_<bound>.pdcs; warm and cold runs produce identical outputs.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import champions as champ_mod
from . import counting, hardy_littlewood, moments, singular, verify
from .sieve import PrimeTable, build_table


@dataclass(frozen=True)
class RunConfig:
    command: str
    x: int | None = None
    x_grid: tuple[int, ...] | None = None
    k: int | None = None
    mode: str | None = None
    set: tuple[int, ...] | None = None
    tolerance: float | None = None
    d_max: int | None = None
    q: int | None = None
    slack: float | None = None
    runner_count: int | None = None
    m_max: int | None = None
    pattern_bound: int | None = None
    out: str | None = None
    format: str | None = None
    cache_dir: str | None = None
    threads: int | None = None
    plot: bool = False
    segment_bits: int | None = None

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        for key in ("x_grid", "set"):
            if d[key] is not None:
                d[key] = list(d[key])
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        d = dict(d)
        for key in ("x_grid", "set"):
            if d.get(key) is not None:
                d[key] = tuple(d[key])
        return cls(**d)


def _int_arg(text: str) -> int:
    # accept 1000000 or 1e6
    value = float(text)
    if value != int(value) or value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return int(value)


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(_int_arg(part) for part in text.split(",") if part)


def _real(value: float) -> str:
    return f"{value:.10g}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdc",
        description="prime difference configurations: exact counts, champions, "
        "singular series, predictions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, plot: bool = False) -> None:
        p.add_argument("--cache-dir", default=None,
                       help="sieve cache directory (default: $PDC_CACHE_DIR)")
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads (default: all cores)")
        p.add_argument("--out", default=None, help="output file path")
        if plot:
            p.add_argument("--plot", action="store_true",
                           help="render a PNG figure next to --out")

    p = sub.add_parser("sieve", help="build (and cache) a prime table")
    p.add_argument("--x", type=_int_arg, required=True)
    p.add_argument("--segment-bits", type=_int_arg, default=None)
    common(p)

    p = sub.add_parser("gaps", help="histogram of consecutive prime gaps")
    p.add_argument("--x", type=_int_arg, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    common(p, plot=True)

    p = sub.add_parser("histogram", help="histogram of prime pair differences")
    p.add_argument("--x", type=_int_arg, required=True)
    p.add_argument("--d-max", type=_int_arg, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    common(p, plot=True)

    p = sub.add_parser("count", help="exact count of a difference configuration")
    p.add_argument("--x", type=_int_arg, required=True)
    p.add_argument("--set", type=_int_list, required=True,
                   help="positive differences, e.g. 2,6")
    common(p)

    p = sub.add_parser("champions", help="search difference champions")
    p.add_argument("--x", type=_int_arg)
    p.add_argument("--x-grid", type=_int_list)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=("exhaustive", "pruned"), default="exhaustive")
    p.add_argument("--runner-count", type=int, default=5)
    p.add_argument("--m-max", type=int, default=None)
    p.add_argument("--pattern-bound", type=int, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    common(p, plot=True)

    p = sub.add_parser("singular", help="singular series with certified tail")
    p.add_argument("--set", type=_int_list, required=True,
                   help="points including 0, e.g. 0,2")
    p.add_argument("--tol", type=float, default=1e-6, dest="tolerance")
    common(p)

    p = sub.add_parser("predict", help="predicted vs exact configuration counts")
    p.add_argument("--x", type=_int_arg)
    p.add_argument("--x-grid", type=_int_list)
    p.add_argument("--set", type=_int_list, required=True)
    p.add_argument("--tol", type=float, default=1e-6, dest="tolerance")
    common(p, plot=True)

    p = sub.add_parser("moments", help="moment sums and identity checks")
    p.add_argument("--x", type=_int_arg, required=True)
    p.add_argument("--q", type=_int_arg, required=True)
    p.add_argument("--k", type=int, required=True)
    common(p)

    p = sub.add_parser("verify", help="champion profiles and verdicts")
    p.add_argument("--x", type=_int_arg)
    p.add_argument("--x-grid", type=_int_list)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=("exhaustive", "pruned"), default="exhaustive")
    p.add_argument("--slack", type=float, default=1.0)
    common(p)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    known = {f.name for f in dataclasses.fields(RunConfig)}
    values = {k: v for k, v in vars(args).items() if k in known}
    if values.get("cache_dir") is None:
        values["cache_dir"] = os.environ.get("PDC_CACHE_DIR")
    return RunConfig(**values)


def _cache_path(cfg: RunConfig, bound: int) -> Path | None:
    if cfg.cache_dir is None:
        return None
    return Path(cfg.cache_dir) / f"sieve_{bound}.pdcs"


def _get_table(cfg: RunConfig, bound: int) -> PrimeTable:
    path = _cache_path(cfg, bound)
    if path is not None and path.exists():
        return PrimeTable.load(path)
    kwargs = {}
    if cfg.segment_bits is not None:
        kwargs["segment_bits"] = cfg.segment_bits
    if cfg.threads is not None:
        kwargs["threads"] = cfg.threads
    table = build_table(bound, **kwargs)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        table.save(path)
    return table


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")


def _emit_json(payload: dict, cfg: RunConfig) -> None:
    payload["config"] = cfg.to_dict()
    _emit(json.dumps(payload, indent=2), cfg.out)


def _plot_path(cfg: RunConfig) -> Path:
    return Path(cfg.out).with_suffix(".png")


def _grid(cfg: RunConfig, parser_error) -> tuple[int, ...]:
    if cfg.x_grid:
        return cfg.x_grid
    if cfg.x is not None:
        return (cfg.x,)
    parser_error("one of --x or --x-grid is required")


def cmd_sieve(cfg: RunConfig) -> int:
    table = _get_table(cfg, cfg.x)
    path = _cache_path(cfg, cfg.x)
    where = str(path) if path is not None else "none"
    _emit(f"pi({cfg.x}) = {table.count}\ncache = {where}", cfg.out)
    return 0


def cmd_gaps(cfg: RunConfig) -> int:
    table = _get_table(cfg, cfg.x)
    hist = counting.gap_histogram(table, cfg.x)
    if cfg.format == "json":
        _emit_json(
            {
                "x": hist.x,
                "counts": {str(d): c for d, c in sorted(hist.counts.items())},
                "max_count": hist.max_count,
                "champions": list(hist.argmax),
            },
            cfg,
        )
    else:
        _emit(counting.histogram_to_csv(hist.counts), cfg.out)
    if cfg.plot:
        from . import plots

        plots.plot_gap_histogram(hist, _plot_path(cfg))
    return 0


def cmd_histogram(cfg: RunConfig) -> int:
    table = _get_table(cfg, cfg.x)
    counts = counting.pair_difference_histogram(table, cfg.x, cfg.d_max)
    if cfg.format == "json":
        _emit_json({"x": cfg.x, "counts": counts[1:].tolist()}, cfg)
    else:
        _emit(counting.histogram_to_csv(counts), cfg.out)
    if cfg.plot:
        from . import plots

        plots.plot_pair_histogram(counts, cfg.x, _plot_path(cfg))
    return 0


def cmd_count(cfg: RunConfig) -> int:
    table = _get_table(cfg, cfg.x)
    d = counting.DifferenceSet.of(cfg.set)
    _emit(str(counting.count_tuple(table, cfg.x, d)), cfg.out)
    return 0


def cmd_champions(cfg: RunConfig) -> int:
    parser_error = build_parser().error
    grid = _grid(cfg, parser_error)
    table = _get_table(cfg, max(grid))
    kwargs = {"runner_count": cfg.runner_count, "threads": cfg.threads or 0}
    if cfg.m_max is not None:
        kwargs["m_max"] = cfg.m_max
    if cfg.pattern_bound is not None:
        kwargs["pattern_bound"] = cfg.pattern_bound
    if not kwargs["threads"]:
        kwargs["threads"] = os.cpu_count() or 1
    records = [
        champ_mod.find_pdc(table, x, cfg.k, mode=cfg.mode, **kwargs) for x in grid
    ]
    if cfg.format == "json":
        _emit_json({"records": [r.to_dict() for r in records]}, cfg)
    else:
        _emit(champ_mod.records_to_csv(records), cfg.out)
    if cfg.plot:
        from . import plots

        plots.plot_champion_scan(records, _plot_path(cfg))
    return 0


def cmd_singular(cfg: RunConfig) -> int:
    result = singular.singular_series(cfg.set, tolerance=cfg.tolerance)
    _emit(
        f"S = {_real(result.value)}\n"
        f"truncated at prime {result.truncation_prime}, "
        f"tail bound {_real(result.tail_bound)}\n"
        f"zero: {result.is_zero}",
        cfg.out,
    )
    return 0


def cmd_predict(cfg: RunConfig) -> int:
    parser_error = build_parser().error
    grid = _grid(cfg, parser_error)
    table = _get_table(cfg, max(grid))
    d = counting.DifferenceSet.of(cfg.set)
    preds = [
        hardy_littlewood.predict(table, x, d, tolerance=cfg.tolerance) for x in grid
    ]
    if cfg.out and cfg.out.endswith(".json"):
        hardy_littlewood.predictions_to_json(preds, cfg.out, cfg.to_dict())
    else:
        lines = ["x,predicted,exact,ratio"]
        for p in preds:
            ratio = "" if p.ratio is None else _real(p.ratio)
            lines.append(f"{p.x},{_real(p.predicted)},{p.exact},{ratio}")
        _emit("\n".join(lines), cfg.out)
    if cfg.plot:
        from . import plots

        plots.plot_predictions(preds, _plot_path(cfg))
    return 0


def cmd_moments(cfg: RunConfig) -> int:
    table = _get_table(cfg, cfg.x)
    report = moments.moment_report(table, cfg.x, cfg.q, cfg.k)
    if cfg.out and cfg.out.endswith(".json"):
        moments.report_to_json(report, cfg.out, cfg.to_dict())
    else:
        margin = (
            "n/a" if report.inequality_margin is None
            else _real(report.inequality_margin)
        )
        _emit(
            f"x = {report.x}, q = {report.q}, k = {report.k}\n"
            f"coprime moment sum = {report.a_k}\n"
            f"full moment sum = {report.full_sum}\n"
            f"centered second term = {_real(report.b_k)}\n"
            f"distinct tuple sums = {list(report.distinct_sums)}\n"
            f"power identity holds = {report.identity_ok}\n"
            f"inequality margin = {margin}",
            cfg.out,
        )
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    parser_error = build_parser().error
    grid = _grid(cfg, parser_error)
    table = _get_table(cfg, max(grid))
    threads = cfg.threads or os.cpu_count() or 1
    reports = []
    for x in grid:
        record = champ_mod.find_pdc(table, x, cfg.k, mode=cfg.mode, threads=threads)
        for prof in verify.profile(record):
            reports.append(verify.verdicts(prof, slack=cfg.slack))
    if cfg.out and cfg.out.endswith(".json"):
        verify.reports_to_json(reports, cfg.out, cfg.to_dict())
        sys.stdout.write(verify.verdict_table(reports) + "\n")
    else:
        _emit(verify.verdict_table(reports), cfg.out)
    return 0 if all(r.ok for r in reports) else 3


HANDLERS = {
    "sieve": cmd_sieve,
    "gaps": cmd_gaps,
    "histogram": cmd_histogram,
    "count": cmd_count,
    "champions": cmd_champions,
    "singular": cmd_singular,
    "predict": cmd_predict,
    "moments": cmd_moments,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = config_from_args(args)
    if cfg.plot and cfg.out is None:
        parser.error("--plot requires --out")
    try:
        return HANDLERS[cfg.command](cfg)
    except (ValueError, RuntimeError, OSError, OverflowError) as exc:
        error = {"error": type(exc).__name__, "message": str(exc)}
        sys.stderr.write(json.dumps(error) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
