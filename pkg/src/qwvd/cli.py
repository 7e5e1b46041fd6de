"""``qwvd`` command-line entry point.

``qwvd <command> [suite] --config FILE`` with flags overriding config keys.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import sys
import time
from pathlib import Path

import numpy as np
from threadpoolctl import threadpool_limits

from .config import COMMANDS, JobConfig, load_config, parse_axes
from .errors import FormatError
from .generators import GENERATOR_KINDS, generate, random_smooth
from .grid import GridGeometry, read_qgrid, write_qgrid
from .imaging import export_heatmap, ingest_image
from .oracle import oracle_qft, oracle_qolct
from .qft import angular_freq_grid, qft_fast, qft_forward
from .qolct import OffsetParams, qlct_forward, qolct_fast, qolct_forward, qolct_freq_grid
from .suite import SuiteOptions, all_passed, render_reports, run_suite
from .wvd import export_wvd, wvd_qlct, wvd_qolct

__all__ = ["main", "build_parser", "resolve_config"]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qwvd", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("suite", nargs="?", help="verify: all|qft|qolct|wvd|heisenberg|poisson|lieb")
    ap.add_argument("--config", help="flat key = value job file")
    ap.add_argument("--input", help=".qgrid signal or .ppm colour image")
    ap.add_argument("--window", help="window signal for wvd (default: the input)")
    ap.add_argument("--output", help="output file (directory for wvd)")
    ap.add_argument("--transform", choices=("qft", "qolct", "qlct"))
    ap.add_argument("--p1", type=OffsetParams.parse, help='"a b c d tau eta" for the left axis')
    ap.add_argument("--p2", type=OffsetParams.parse, help='"a b c d tau eta" for the right axis')
    ap.add_argument("--axes", type=parse_axes, help='"i j" or "x,y,z x,y,z"')
    ap.add_argument("--n1", type=int)
    ap.add_argument("--n2", type=int)
    ap.add_argument("--half-width", dest="half_width", type=float)
    ap.add_argument("--kind", choices=GENERATOR_KINDS + ("random",))
    ap.add_argument("--sigma", type=float)
    ap.add_argument("--rate", type=float)
    ap.add_argument("--seed", type=int, default=0, help="seed for --kind random")
    ap.add_argument("--K", type=int, help="lattice truncation for Poisson checks")
    ap.add_argument("--seeds", type=int, help="random signals per randomised check")
    ap.add_argument("--sizes", type=int, nargs="*", help="bench grid sizes")
    ap.add_argument("--deterministic", action="store_true", default=None,
                    help="single-threaded, fixed-order reductions")
    ap.add_argument("--use-oracle", dest="use_oracle", action="store_true", default=None,
                    help="compare fast paths against the brute-force oracles")
    ap.add_argument("--heatmap", help="also write a heatmap (.pgm with sidecar, or .csv)")
    ap.add_argument("--mode", help="heatmap mode: modulus or component 0..3")
    ap.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                    help="override one verify tolerance")
    return ap


def resolve_config(args: argparse.Namespace) -> JobConfig:
    cfg = load_config(args.config) if args.config else JobConfig()
    tolerances = dict(cfg.tolerances)
    for item in args.tol:
        name, sep, value = item.partition("=")
        if not sep:
            raise FormatError(f"--tol expects NAME=VALUE, got {item!r}")
        try:
            tolerances[name.strip()] = float(value)
        except ValueError as exc:
            raise FormatError(f"bad tolerance {item!r}") from exc
    changes = {k: getattr(args, k) for k in (
        "input", "window", "output", "transform", "p1", "p2", "axes", "n1", "n2",
        "half_width", "kind", "sigma", "rate", "K", "seeds", "deterministic", "use_oracle",
        "heatmap", "mode")}
    if args.sizes is not None:
        changes["sizes"] = tuple(args.sizes)
    if args.suite is not None:
        changes["suite"] = args.suite
    return cfg.updated(command=args.command, tolerances=tolerances, **changes)


def _geometry(cfg: JobConfig) -> GridGeometry:
    return GridGeometry.centered(cfg.n1, cfg.half_width, cfg.n2)


def _load_signal(path: str):
    if path is None:
        raise FormatError("--input is required")
    if Path(path).suffix.lower() in (".ppm", ".pnm"):
        return ingest_image(path)
    return read_qgrid(path)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_generate(cfg: JobConfig, args) -> int:
    geo = _geometry(cfg)
    if cfg.kind == "random":
        sig = random_smooth(args.seed, geo)
    else:
        sig = generate(cfg.kind, geo, sigma=cfg.sigma, rate=cfg.rate)[0]
    if cfg.output is None:
        raise FormatError("--output is required")
    write_qgrid(sig, cfg.output)
    return 0


def cmd_transform(cfg: JobConfig, args) -> int:
    f = _load_signal(cfg.input)
    if cfg.transform == "qft":
        spec = qft_forward(f, cfg.axes)
    elif cfg.transform == "qolct":
        spec = qolct_forward(f, cfg.p1, cfg.p2, cfg.axes)
    else:
        spec = qlct_forward(f, cfg.p1, cfg.p2, cfg.axes)
    if cfg.output:
        write_qgrid(spec, cfg.output)
    if cfg.heatmap:
        _heatmap(spec, cfg)
    return 0


def _heatmap(grid, cfg: JobConfig) -> None:
    fmt = "csv" if cfg.heatmap.lower().endswith(".csv") else "pgm"
    export_heatmap(grid, cfg.heatmap, cfg.mode, fmt=fmt)


def cmd_wvd(cfg: JobConfig, args) -> int:
    f = _load_signal(cfg.input)
    g = _load_signal(cfg.window) if cfg.window else f
    run = wvd_qlct if cfg.transform == "qlct" else wvd_qolct
    W = run(f, g, cfg.p1, cfg.p2, cfg.axes)
    if cfg.output is None:
        raise FormatError("--output directory is required")
    export_wvd(W, cfg.output)
    if cfg.heatmap:
        n1, n2 = W.time_geometry.shape
        _heatmap(W.slice(n1 // 2, n2 // 2), cfg)
    return 0


def cmd_verify(cfg: JobConfig, args) -> int:
    opts = SuiteOptions(K=cfg.K, seeds=cfg.seeds, use_oracle=cfg.use_oracle,
                        tolerances=cfg.tolerances)
    reports = run_suite(cfg.suite, opts)
    ok = all_passed(reports)
    text = render_reports(reports)
    n_fail = sum(line.startswith("FAIL") for line in text.splitlines())
    text += f"SUMMARY checks={len(reports)} failed={n_fail} status={'ok' if ok else 'failed'}\n"
    _emit(text, cfg.output)
    return 0 if ok else 1


def cmd_bench(cfg: JobConfig, args) -> int:
    """Fast path against the literal oracle sum, one row per grid size."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["size", "direct_s", "fast_s", "max_deviation"])
    for n in cfg.sizes:
        geo = GridGeometry.centered(n, cfg.half_width)
        f = random_smooth(args.seed, geo)
        if cfg.transform == "qft":
            freq = angular_freq_grid(geo)
            direct = lambda: oracle_qft(f, freq_grid=freq)
            fast = lambda: qft_fast(f, freq)
        else:
            freq = qolct_freq_grid(geo, cfg.p1, cfg.p2)
            direct = lambda: oracle_qolct(f, cfg.p1, cfg.p2, freq_grid=freq)
            fast = lambda: qolct_fast(f, cfg.p1, cfg.p2, freq)
        t0 = time.perf_counter()
        a = direct()
        t1 = time.perf_counter()
        b = fast()
        t2 = time.perf_counter()
        dev = float(np.abs(a.values - b.values).max())
        w.writerow([n, f"{t1 - t0:.6f}", f"{t2 - t1:.6f}", repr(dev)])
    _emit(buf.getvalue(), cfg.output)
    return 0


_COMMANDS = {
    "generate": cmd_generate,
    "transform": cmd_transform,
    "wvd": cmd_wvd,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        guard = threadpool_limits(limits=1) if cfg.deterministic else contextlib.nullcontext()
        with guard:
            return _COMMANDS[cfg.command](cfg, args)
    except (FormatError, ValueError, OSError) as exc:
        print(f"qwvd: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
