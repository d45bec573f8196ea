"""
How often do same-group songs end up together?
==============================================

The benchmark playlists come in four sizes and four group-size shapes.
Each trial shuffles a playlist twice, concatenates the two orders and
measures runs of same-group songs. An average cluster size of 1 means no
two neighbours ever share a group.
"""
from cdshuffle.stats import BENCH_ALGORITHMS, DIST_KINDS, BenchmarkSpec, benchmark_pairs

trials = 2000  # the command-line bench defaults to 10^4

print(f"{'algorithm':>14} " + " ".join(f"{d:>9}" for d in DIST_KINDS))
for name in BENCH_ALGORITHMS:
    row = [benchmark_pairs(BenchmarkSpec("tiny", d), name, trials, seed=0).average_size for d in DIST_KINDS]
    print(f"{name:>14} " + " ".join(f"{v:9.4f}" for v in row))

# Exact values for the five pairs of the tiny impulse playlist:
# an unbiased shuffle leaves 17.8 clusters on average among 20 songs.
print("unbiased impulse, exact:", round(20 / 17.8, 4))

# Where do clusters form? Their midpoints, binned over the two shuffles.
rep = benchmark_pairs(BenchmarkSpec("tiny", "zipf"), "von_mises", trials, seed=0)
print("von Mises zipf cluster locations:")
for start, count in zip(rep.bin_starts, rep.location_histogram):
    print(f"  {start:.2f} {'#' * int(60 * count / rep.location_histogram.max())}")
