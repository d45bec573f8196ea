"""Benchmark playlists, cluster metrics, alter metrics and spacing densities."""
from __future__ import annotations

import itertools
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import special
from scipy import stats as sps

from .alter import full_alter, partial_alter, partial_alter_batch
from .core import AlterState, Playlist, ShuffleConfig
from .pipeline import cd_shuffle
from .randmat import gue_spacings
from .reference import polacek_positions

# ---------------------------------------------------------------------------
# benchmark playlists

SIZE_CLASSES = ("tiny", "small", "medium", "large")
DIST_KINDS = ("impulse", "uniform", "binomial", "zipf")

BENCHMARK_SIZES: dict[tuple[str, str], list[int]] = {
    ("tiny", "impulse"): [2] * 5,
    ("tiny", "uniform"): [1, 2, 3, 4],
    ("tiny", "binomial"): [1, 2, 2, 3],
    ("tiny", "zipf"): [6, 3, 2],
    ("small", "impulse"): [3] * 7,
    ("small", "uniform"): list(range(1, 7)),
    ("small", "binomial"): [1] + [2] * 3 + [3] * 3 + [4],
    ("small", "zipf"): [12, 6, 4, 3],
    ("medium", "impulse"): [5] * 11,
    ("medium", "uniform"): list(range(1, 11)),
    ("medium", "binomial"): [1] + [2] * 4 + [3] * 6 + [4] * 4 + [5],
    ("medium", "zipf"): [24, 12, 8, 6],
    ("large", "impulse"): [8] * 17,
    ("large", "uniform"): list(range(1, 17)),
    ("large", "binomial"): [1] + [2] * 5 + [3] * 10 + [4] * 10 + [5] * 5 + [6],
    ("large", "zipf"): [60, 30, 20, 15, 12],
}

LOCATION_BIN_WIDTH = {"tiny": 0.05, "small": 0.02, "medium": 0.01, "large": 0.01}


@dataclass(frozen=True)
class BenchmarkSpec:
    size_class: str
    dist_kind: str

    def __post_init__(self):
        if self.size_class not in SIZE_CLASSES:
            raise ValueError(f"unknown size class {self.size_class!r}")
        if self.dist_kind not in DIST_KINDS:
            raise ValueError(f"unknown group size distribution {self.dist_kind!r}")

    @property
    def sizes(self) -> list[int]:
        return list(BENCHMARK_SIZES[self.size_class, self.dist_kind])


def generate_benchmark_playlist(spec: BenchmarkSpec) -> Playlist:
    return Playlist.from_sizes(spec.sizes)


# Shuffles compared in the cluster benchmarks, keyed by their CSV name.
BENCH_ALGORITHMS: dict[str, ShuffleConfig] = {
    "unbiased": ShuffleConfig(map_kind="unbiased"),
    "balanced": ShuffleConfig(map_kind="balanced"),
    "polacek_w1.0": ShuffleConfig(map_kind="polacek", width_w=1.0),
    "polacek_w0.5": ShuffleConfig(map_kind="polacek", width_w=0.5),
    "lattice": ShuffleConfig(map_kind="lattice"),
    "spectral": ShuffleConfig(map_kind="spectral"),
    "gaussian": ShuffleConfig(map_kind="gaussian"),
    "von_mises": ShuffleConfig(map_kind="von_mises"),
}

# ---------------------------------------------------------------------------
# clusters


@dataclass(frozen=True)
class Cluster:
    group_id: int
    start_index: int
    size: int


def find_clusters(sequence: Iterable) -> list[Cluster]:
    """Maximal runs of same-group entries, left to right.

    Entries may be :class:`~cdshuffle.core.Item` objects or bare group labels.
    """
    labels = (getattr(x, "group_id", x) for x in sequence)
    clusters = []
    start = 0
    for gid, run in itertools.groupby(labels):
        size = sum(1 for _ in run)
        clusters.append(Cluster(gid, start, size))
        start += size
    return clusters


@dataclass
class ClusterReport:
    """Cluster statistics accumulated over shuffle pairs.

    ``location_histogram`` bins the normalized midpoints of clusters of two
    or more items over ``[0, 1]``.
    """

    bin_width: float = 0.05
    size_histogram: Counter = field(default_factory=Counter)
    location_histogram: np.ndarray | None = None
    total_items: int = 0
    total_clusters: int = 0
    trials: int = 0

    def __post_init__(self):
        if self.location_histogram is None:
            self.location_histogram = np.zeros(self.n_bins, dtype=np.int64)

    @property
    def n_bins(self) -> int:
        return int(round(1.0 / self.bin_width))

    @property
    def average_size(self) -> float:
        return self.total_items / self.total_clusters

    def recomputed_average(self) -> float:
        items = sum(size * count for size, count in self.size_histogram.items())
        return items / sum(self.size_histogram.values())

    @property
    def bin_starts(self) -> np.ndarray:
        return np.arange(self.n_bins) * self.bin_width

    def add(self, sequence: Sequence) -> None:
        """Accumulate one concatenated sequence (one trial)."""
        length = len(sequence)
        clusters = find_clusters(sequence)
        for c in clusters:
            self.size_histogram[c.size] += 1
            if c.size >= 2:
                loc = (c.start_index + (c.size - 1) / 2) / length
                self.location_histogram[min(int(loc / self.bin_width), self.n_bins - 1)] += 1
        self.total_items += length
        self.total_clusters += len(clusters)
        self.trials += 1

    def merge(self, other: ClusterReport) -> ClusterReport:
        if self.n_bins != other.n_bins:
            raise ValueError("cannot merge reports with different location bins")
        return ClusterReport(
            bin_width=self.bin_width,
            size_histogram=self.size_histogram + other.size_histogram,
            location_histogram=self.location_histogram + other.location_histogram,
            total_items=self.total_items + other.total_items,
            total_clusters=self.total_clusters + other.total_clusters,
            trials=self.trials + other.trials,
        )


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, trial])


def _bench_chunk(sizes, config, bin_width, seed, first, last) -> ClusterReport:
    playlist = Playlist.from_sizes(sizes)
    report = ClusterReport(bin_width=bin_width)
    for trial in range(first, last):
        rng = _trial_rng(seed, trial)
        a = cd_shuffle(playlist, config, AlterState(), rng)
        b = cd_shuffle(playlist, config, AlterState(), rng)
        report.add([it.group_id for it in a] + [it.group_id for it in b])
    return report


def benchmark_pairs(
    spec: BenchmarkSpec,
    algorithm: str | ShuffleConfig,
    trials: int,
    seed: int = 0,
    workers: int = 1,
) -> ClusterReport:
    """Cluster statistics of ``trials`` pairs of consecutive shuffles.

    Each pair is two independent full-alter shuffles concatenated, so
    clusters straddling the seam between shuffles are counted. Trial ``t``
    draws from its own generator seeded by ``(seed, t)``, so results do not
    depend on ``workers``.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    config = BENCH_ALGORITHMS[algorithm] if isinstance(algorithm, str) else algorithm
    bin_width = LOCATION_BIN_WIDTH[spec.size_class]
    if workers <= 1:
        return _bench_chunk(spec.sizes, config, bin_width, seed, 0, trials)
    bounds = np.linspace(0, trials, workers + 1).astype(int)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_bench_chunk, spec.sizes, config, bin_width, seed, int(lo), int(hi))
            for lo, hi in zip(bounds, bounds[1:])
            if hi > lo
        ]
        reports = [f.result() for f in futures]
    out = reports[0]
    for r in reports[1:]:
        out = out.merge(r)
    return out


# ---------------------------------------------------------------------------
# alter metrics


@dataclass
class AlterBenchmark:
    """``index_counts[item, index]`` and ``delta_counts[d + n - 1]`` tallies."""

    n_group: int
    index_counts: np.ndarray
    delta_counts: np.ndarray
    trials: int

    def index_frequencies(self) -> np.ndarray:
        return self.index_counts / self.trials

    def delta_frequencies(self) -> dict[int, float]:
        total = self.delta_counts.sum()
        n = self.n_group
        return {d - n + 1: c / total for d, c in enumerate(self.delta_counts) if c}


def alter_benchmark(n_group: int, trials: int, seed: int = 0, burn_in: int = 0) -> AlterBenchmark:
    """Run ``trials`` consecutive partial alters on one group, starting from a
    full-alter seed, and tally every item's index and index change."""
    if n_group < 2:
        raise ValueError(f"group size must be at least 2, got {n_group}")
    rng = np.random.default_rng(seed)
    n = n_group
    items = np.arange(n)
    order = full_alter(range(n), rng)
    for _ in range(burn_in):
        order = partial_alter(order, rng)
    index = np.empty(n, dtype=np.int64)
    index[order] = items
    index_counts = np.zeros((n, n), dtype=np.int64)
    delta_counts = np.zeros(2 * n - 1, dtype=np.int64)
    new_index = np.empty(n, dtype=np.int64)
    for _ in range(trials):
        order = partial_alter(order, rng)
        new_index[order] = items
        index_counts[items, new_index] += 1
        delta_counts += np.bincount(new_index - index + n - 1, minlength=2 * n - 1)
        index, new_index = new_index, index
    return AlterBenchmark(n, index_counts, delta_counts, trials)


@dataclass(frozen=True)
class OccupancyTest:
    statistic: float
    dof: int
    pvalue: float
    counts: np.ndarray


def occupancy_chi_square(n_group: int, chains: int, burn_in: int = 1000, seed: int = 0) -> OccupancyTest:
    """Chi-square test that partial alters forget where items started.

    ``chains`` independent chains start from the identity ordering and each
    runs ``burn_in`` partial alters; every final arrangement adds one count
    per item to an item-by-index table (``chains * n_group`` samples).
    Under uniformity each arrangement is a uniform random permutation, for
    which Pearson's statistic scaled by ``(n - 1) / n`` is approximately
    chi-square with ``(n - 1)^2`` degrees of freedom.
    """
    n = n_group
    rng = np.random.default_rng(seed)
    orders = np.tile(np.arange(n), (chains, 1))
    for _ in range(burn_in):
        orders = partial_alter_batch(orders, rng)
    counts = np.zeros(n * n, dtype=np.int64)
    np.add.at(counts, (orders * n + np.arange(n)).ravel(), 1)
    counts = counts.reshape(n, n)
    expected = chains / n
    pearson = float(((counts - expected) ** 2).sum() / expected)
    statistic = pearson * (n - 1) / n
    dof = (n - 1) ** 2
    return OccupancyTest(statistic, dof, float(sps.chi2.sf(statistic, dof)), counts)


# ---------------------------------------------------------------------------
# spacing densities


def uniform_spacing_pdf(x, n: int):
    """Spacing density of ``n`` i.i.d. uniform keys on ``[0, 1]``."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    x = np.asarray(x, dtype=float)
    if np.any((x < 0) | (x > 1)):
        raise ValueError("x must lie in [0, 1]")
    return n * (1 - x) ** (n - 1)


def _triangle(t):
    return np.clip(1 - np.abs(t), 0.0, None)


def balanced_spacing_pdf(x, n: int):
    """Spacing density of ``n`` items, each uniform in its own width-``1/n`` slot."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("x must be non-negative")
    return n * _triangle(n * (x - 1 / n))


POLACEK_GRID_POINTS = 2**15


@lru_cache(maxsize=64)
def _polacek_wrap_term(n: int, w: float) -> tuple[np.ndarray, np.ndarray]:
    # convolution of a box of width w/n at 0 with a falling ramp of width w/n at 1/n
    a = n / w
    lo, hi = -1.0 / n, 2.0 / n
    grid, h = np.linspace(lo, hi, POLACEK_GRID_POINTS, retstep=True)
    box = a * (np.abs(a * grid) <= 0.5)
    t = a * (grid - 1 / n)
    ramp = (0.5 - t) * a * (np.abs(t) <= 0.5)
    conv = np.convolve(box, ramp) * h
    conv_grid = 2 * lo + h * np.arange(conv.size)
    return conv_grid, conv


def polacek_spacing_pdf(x, n: int, w: float):
    """Spacing density of one group under the Polacek Shuffle.

    Mixes the wrap-around spacing (weight ``1/(n-1)``, evaluated by
    discrete convolution) with the triangle density of two adjacent
    unwrapped items (weight ``(n-2)/(n-1)``).
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if not 0 < w <= 1:
        raise ValueError(f"width must lie in (0, 1], got {w}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("x must be non-negative")
    a = n / w
    conv_grid, conv = _polacek_wrap_term(n, float(w))
    wrap = 2 * np.interp(x, conv_grid, conv, left=0.0, right=0.0)
    inner = a * _triangle(a * (x - 1 / n))
    return wrap / (n - 1) + (n - 2) / (n - 1) * inner


def _surmise_constants(beta: int) -> tuple[float, float]:
    # a s^beta exp(-b s^2) with unit mass and unit mean
    g1 = special.gamma((beta + 1) / 2)
    g2 = special.gamma((beta + 2) / 2)
    b = (g2 / g1) ** 2
    a = 2 * b ** ((beta + 1) / 2) / g1
    return a, b


WIGNER_CONSTANTS = {beta: _surmise_constants(beta) for beta in (1, 2, 4)}


def wigner_surmise(s, beta: int):
    if beta not in WIGNER_CONSTANTS:
        raise ValueError(f"beta must be 1, 2 or 4, got {beta}")
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise ValueError("s must be non-negative")
    a, b = WIGNER_CONSTANTS[beta]
    return a * s**beta * np.exp(-b * s * s)


def bin_masses(edges, pdf: Callable, subdivisions: int = 64) -> np.ndarray:
    """Probability mass of ``pdf`` in each bin, by composite Simpson's rule."""
    edges = np.asarray(edges, dtype=float)
    t = np.linspace(0.0, 1.0, 2 * subdivisions + 1)
    pts = edges[:-1, None] + np.diff(edges)[:, None] * t
    weights = np.ones_like(t)
    weights[1:-1:2] = 4
    weights[2:-1:2] = 2
    return (pdf(pts) * weights).sum(axis=1) * np.diff(edges) / (6 * subdivisions)


def tv_distance(counts, edges, pdf: Callable) -> float:
    """Total variation distance between a histogram and a density.

    Density mass falling outside the binned range counts as mismatch.
    """
    counts = np.asarray(counts, dtype=float)
    edges = np.asarray(edges, dtype=float)
    total = counts.sum()
    if total <= 0:
        raise ValueError("histogram is empty")
    widths = np.diff(edges)
    if not np.allclose(widths, widths[0], rtol=1e-9, atol=0):
        raise ValueError("bins must have equal width")
    mass = bin_masses(edges, pdf)
    outside = max(0.0, 1.0 - mass.sum())
    return float(0.5 * (np.abs(counts / total - mass).sum() + outside))


# ---------------------------------------------------------------------------
# empirical spacings


def _per_group(samples: int, n: int) -> int:
    return math.ceil(samples / (n - 1))


def uniform_key_spacings(n: int, samples: int, rng: np.random.Generator) -> np.ndarray:
    """Gaps between consecutive sorted keys of ``n`` i.i.d. uniform draws."""
    keys = np.sort(rng.random((_per_group(samples, n), n)), axis=1)
    return np.diff(keys, axis=1).ravel()[:samples]


def balanced_model_spacings(n: int, samples: int, rng: np.random.Generator) -> np.ndarray:
    """Gaps for the Balanced Shuffle carried over to the reals."""
    out = [np.diff(polacek_positions(n, 1.0, rng, circular_shift=False)) for _ in range(_per_group(samples, n))]
    return np.concatenate(out)[:samples]


def polacek_model_spacings(n: int, w: float, samples: int, rng: np.random.Generator) -> np.ndarray:
    out = [np.diff(np.sort(polacek_positions(n, w, rng))) for _ in range(_per_group(samples, n))]
    return np.concatenate(out)[:samples]


@dataclass(frozen=True)
class SpacingCheck:
    edges: np.ndarray
    counts: np.ndarray
    pdf: Callable
    tv: float


def spacing_support(dist: str, n: int = 2) -> tuple[float, float]:
    if dist == "uniform":
        return 0.0, 1.0
    if dist in ("balanced", "polacek"):
        return 0.0, 2.0 / n
    if dist == "wigner":
        return 0.0, 4.0
    raise ValueError(f"unknown spacing distribution {dist!r}")


def spacing_check(
    dist: str,
    samples: int,
    rng: np.random.Generator,
    n: int = 4,
    w: float = 1.0,
    beta: int = 2,
    bins: int = 50,
) -> SpacingCheck:
    """Histogram simulated spacings and compare them with the matching density.

    ``wigner`` simulates 2x2 GUE matrices and so only supports ``beta=2``.
    """
    if dist == "uniform":
        pdf = lambda x: uniform_spacing_pdf(np.clip(x, 0, 1), n)  # noqa: E731
        s = uniform_key_spacings(n, samples, rng)
    elif dist == "balanced":
        pdf = lambda x: balanced_spacing_pdf(x, n)  # noqa: E731
        s = balanced_model_spacings(n, samples, rng)
    elif dist == "polacek":
        pdf = lambda x: polacek_spacing_pdf(x, n, w)  # noqa: E731
        s = polacek_model_spacings(n, w, samples, rng)
    elif dist == "wigner":
        if beta != 2:
            raise ValueError("only beta=2 can be simulated (2x2 GUE)")
        pdf = lambda x: wigner_surmise(x, beta)  # noqa: E731
        s = gue_spacings(samples, rng)
    else:
        raise ValueError(f"unknown spacing distribution {dist!r}")
    edges = np.linspace(*spacing_support(dist, n), bins + 1)
    counts, _ = np.histogram(s, edges)
    return SpacingCheck(edges, counts, pdf, tv_distance(counts, edges, pdf))
