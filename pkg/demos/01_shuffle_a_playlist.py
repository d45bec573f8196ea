"""
Shuffling a playlist so that artists spread out
===============================================

A playlist is a set of groups (artists, albums, ...). An unbiased shuffle
often plays two songs by the same artist back to back. The cluster-diffusing
shuffles place each group's songs evenly over the playlist instead.
"""
import numpy as np

from cdshuffle import Playlist, ShuffleConfig, cd_shuffle, fisher_yates

# Three artists with 4, 2 and 1 songs.
playlist = Playlist.from_pairs(
    [(0, "abba-1"), (0, "abba-2"), (0, "abba-3"), (0, "abba-4"), (1, "bowie-1"), (1, "bowie-2"), (2, "cher-1")]
)
print("groups:", playlist.sizes)


def show(label, items):
    print(f"{label:>10}: " + " ".join(it.item_id for it in items))


# An unbiased shuffle for comparison.
rng = np.random.default_rng(1)
show("unbiased", fisher_yates(list(playlist.items()), rng))

# Each map gives the same overall pattern with a different amount of jitter.
for kind in ("lattice", "gaussian", "von_mises", "spectral"):
    show(kind, cd_shuffle(playlist, ShuffleConfig(map_kind=kind, seed=1)))

# The two comparison shuffles are available through the same call.
for kind in ("balanced", "polacek"):
    show(kind, cd_shuffle(playlist, ShuffleConfig(map_kind=kind, seed=1)))

# Same seed, same order. The merge strategy never changes the result.
a = cd_shuffle(playlist, ShuffleConfig(seed=7, merge_kind="comparison"))
b = cd_shuffle(playlist, ShuffleConfig(seed=7, merge_kind="radix"))
print("comparison and radix merges agree:", a == b)
