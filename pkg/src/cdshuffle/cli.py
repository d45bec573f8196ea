"""Command-line front end.

    cdshuffle shuffle --input FILE [--map KIND] [--merge KIND] [--radius R] [--width W] [--seed N]
    cdshuffle repeat  --input FILE --count K [--alter full|partial] ...
    cdshuffle bench   --suite {tiny,small,medium,large,all} [--trials T] [--seed N] --out DIR
    cdshuffle spacing --dist {uniform,balanced,polacek,wigner} [--n N] [--w W] [--beta B] [--samples S]

Exit codes: 0 ok, 2 unreadable playlist, 64 usage error, 73 output error.
Playlist files hold one ``group_id<TAB>item_id`` pair per line; lines
starting with ``#`` are comments.
"""
from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from pathlib import Path

import numpy as np

from .core import ALTER_KINDS, MAP_KINDS, MERGE_KINDS, ConfigError, Playlist, ShuffleConfig, make_rng
from .pipeline import cd_shuffle, shuffle_repeat
from .stats import (
    BENCH_ALGORITHMS,
    DIST_KINDS,
    SIZE_CLASSES,
    BenchmarkSpec,
    benchmark_pairs,
    spacing_check,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_USAGE = 64
EXIT_IO = 73

CURVE_POINTS = 512


class UsageError(Exception):
    pass


class PlaylistParseError(Exception):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_playlist(text: str) -> Playlist:
    pairs = []
    seen = set()
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise PlaylistParseError(lineno, "expected 'group_id<TAB>item_id'")
        gid_text, item_id = fields
        if not gid_text.isdigit():
            raise PlaylistParseError(lineno, f"group id {gid_text!r} is not a non-negative integer")
        if not item_id:
            raise PlaylistParseError(lineno, "empty item id")
        key = (int(gid_text), item_id)
        if key in seen:
            raise PlaylistParseError(lineno, f"duplicate item {item_id!r} in group {key[0]}")
        seen.add(key)
        pairs.append(key)
    if not pairs:
        raise PlaylistParseError(0, "playlist has no items")
    return Playlist.from_pairs(pairs)


def read_playlist(path: str) -> Playlist:
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise PlaylistParseError(0, f"cannot read {path}: {exc}") from exc
    return parse_playlist(text)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _add_shuffle_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="playlist file")
    p.add_argument("--map", default="von_mises", choices=MAP_KINDS)
    p.add_argument("--merge", default="comparison", choices=MERGE_KINDS)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--width", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cdshuffle", description="Cluster-diffusing shuffles.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("shuffle", help="shuffle a playlist file once")
    _add_shuffle_flags(p)

    p = sub.add_parser("repeat", help="consecutive shuffles for shuffle + repeat play")
    _add_shuffle_flags(p)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--alter", default="partial", choices=ALTER_KINDS)

    p = sub.add_parser("bench", help="cluster benchmarks on the built-in playlists")
    p.add_argument("--suite", default="tiny", choices=SIZE_CLASSES + ("all",))
    p.add_argument("--trials", type=float, default=10_000, help="shuffle pairs per playlist (1e5 accepted)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument(
        "--algorithms",
        default=",".join(BENCH_ALGORITHMS),
        help="comma-separated subset of " + ",".join(BENCH_ALGORITHMS),
    )

    p = sub.add_parser("spacing", help="density curve and simulated histogram for a spacing distribution")
    p.add_argument("--dist", required=True, choices=("uniform", "balanced", "polacek", "wigner"))
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--w", type=float, default=1.0)
    p.add_argument("--beta", type=int, default=2)
    p.add_argument("--samples", type=float, default=100_000)
    p.add_argument("--bins", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="directory for curve.csv and histogram.csv (default: stdout)")
    return parser


def _config(args, alter: str = "full") -> ShuffleConfig:
    try:
        return ShuffleConfig(
            map_kind=args.map,
            alter_kind=alter,
            merge_kind=args.merge,
            radius_r=args.radius,
            width_w=args.width,
            seed=args.seed,
        )
    except ConfigError as exc:
        raise UsageError(str(exc)) from exc


def cmd_shuffle(args, out) -> int:
    config = _config(args)
    playlist = read_playlist(args.input)
    for item in cd_shuffle(playlist, config, rng=make_rng(config.seed)):
        out.write(item.item_id + "\n")
    return EXIT_OK


def cmd_repeat(args, out) -> int:
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    config = _config(args, alter=args.alter)
    playlist = read_playlist(args.input)
    blocks = shuffle_repeat(playlist, config, args.count, rng=make_rng(config.seed))
    for k, block in enumerate(blocks):
        if k:
            out.write("---\n")
        for item in block:
            out.write(item.item_id + "\n")
    return EXIT_OK


def _int_flag(value: float, name: str) -> int:
    if value != int(value) or value < 1:
        raise UsageError(f"{name} must be a positive integer")
    return int(value)


def worker_count() -> int:
    """Worker processes for ``bench``: ``CDSHUFFLE_THREADS`` (0 means one per CPU)."""
    raw = os.environ.get("CDSHUFFLE_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"CDSHUFFLE_THREADS must be an integer, got {raw!r}") from None
    return (os.cpu_count() or 1) if n == 0 else max(n, 1)


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def run_bench(suites, algorithms, trials: int, seed: int, workers: int = 1):
    """Benchmark rows for each suite: ``{suite: (sizes, averages, locations)}``."""
    results = {}
    for suite in suites:
        sizes, averages, locations = [], [], []
        for name in algorithms:
            for dist in DIST_KINDS:
                rep = benchmark_pairs(BenchmarkSpec(suite, dist), name, trials, seed, workers=workers)
                for size in sorted(rep.size_histogram):
                    sizes.append((name, dist, size, rep.size_histogram[size]))
                averages.append((name, dist, f"{rep.average_size:.6f}"))
                for start, count in zip(rep.bin_starts, rep.location_histogram):
                    locations.append((name, dist, f"{start:.2f}", int(count)))
        results[suite] = (sizes, averages, locations)
    return results


def cmd_bench(args, out) -> int:
    trials = _int_flag(args.trials, "--trials")
    algorithms = [a for a in args.algorithms.split(",") if a]
    unknown = [a for a in algorithms if a not in BENCH_ALGORITHMS]
    if unknown or not algorithms:
        raise UsageError(f"unknown algorithms: {unknown}")
    suites = SIZE_CLASSES if args.suite == "all" else (args.suite,)
    workers = worker_count()
    root = Path(args.out)
    # fail on an unwritable directory before spending time on the benchmark
    dirs = {s: (root / s if args.suite == "all" else root) for s in suites}
    try:
        for d in dirs.values():
            d.mkdir(parents=True, exist_ok=True)
            probe = d / ".write-test"
            probe.write_text("")
            probe.unlink()
    except OSError as exc:
        print(f"cdshuffle: cannot write to {root}: {exc}", file=sys.stderr)
        return EXIT_IO
    results = run_bench(suites, algorithms, trials, args.seed, workers)
    try:
        for suite, (sizes, averages, locations) in results.items():
            d = dirs[suite]
            _write_csv(d / "sizes.csv", ("algorithm", "dist_kind", "cluster_size", "count"), sizes)
            _write_csv(d / "averages.csv", ("algorithm", "dist_kind", "average"), averages)
            _write_csv(d / "locations.csv", ("algorithm", "dist_kind", "bin_start", "count"), locations)
    except OSError as exc:
        print(f"cdshuffle: cannot write results: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_spacing(args, out) -> int:
    samples = _int_flag(args.samples, "--samples")
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    if args.dist == "polacek" and not 0 < args.w <= 1:
        raise UsageError("--w must lie in (0, 1] for the Polacek distribution")
    if args.dist == "wigner" and args.beta != 2:
        raise UsageError("only --beta 2 can be simulated (2x2 GUE); the curve exists for 1, 2 and 4")
    if args.bins < 1:
        raise UsageError("--bins must be positive")
    check = spacing_check(args.dist, samples, make_rng(args.seed), n=args.n, w=args.w, beta=args.beta, bins=args.bins)
    lo, hi = check.edges[0], check.edges[-1]
    xs = np.linspace(lo, hi, CURVE_POINTS)
    curve = [(f"{x:.9g}", f"{y:.9g}") for x, y in zip(xs, check.pdf(xs))]
    width = check.edges[1] - check.edges[0]
    total = check.counts.sum()
    hist = [
        (f"{a:.9g}", f"{b:.9g}", int(c), f"{c / (total * width):.9g}")
        for a, b, c in zip(check.edges, check.edges[1:], check.counts)
    ]
    curve_header = ("x", "density")
    hist_header = ("bin_start", "bin_end", "count", "density")
    if args.out:
        try:
            d = Path(args.out)
            d.mkdir(parents=True, exist_ok=True)
            _write_csv(d / "curve.csv", curve_header, curve)
            _write_csv(d / "histogram.csv", hist_header, hist)
        except OSError as exc:
            print(f"cdshuffle: cannot write results: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(curve_header)
        writer.writerows(curve)
        buf.write("\n")
        writer.writerow(hist_header)
        writer.writerows(hist)
        out.write(buf.getvalue())
    print(f"tv_distance={check.tv:.6f}", file=sys.stderr)
    return EXIT_OK


COMMANDS = {"shuffle": cmd_shuffle, "repeat": cmd_repeat, "bench": cmd_bench, "spacing": cmd_spacing}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except PlaylistParseError as exc:
        print(f"cdshuffle: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
