"""
Shuffle + repeat: keeping consecutive shuffles apart
====================================================

When a playlist repeats, a fresh shuffle may replay the last song of the
previous round first. The partial alter moves each song at most a few places
from where it played last time, pulling songs from the ends of a group
towards the middle.
"""
from collections import Counter

import numpy as np

from cdshuffle import Playlist, ShuffleConfig, compute_p_margin, partial_alter, shuffle_repeat
from cdshuffle.alter import JumpDistribution, jump_bound

# The swap probability margin: two-song groups swap half the time.
p0 = 1 - compute_p_margin()
print(f"p0 = {p0:.16f}, two-song swap probability = {p0**2 + (1 - p0) ** 2 * p0**2:.12f}")

# Jump distributions for a 9-song group: the first song tends to move back,
# the last one forward, the middle one is symmetric.
n = 9
for i in (0, n // 2, n - 1):
    dist = JumpDistribution.for_index(i, n)
    pmf = {d: round(dist.pmf(d), 3) for d in range(-dist.shift, dist.shift + 1)}
    print(f"song {i}: jump pmf {pmf}")
print("no song ever moves further than", jump_bound(n), "places")

# How far do songs travel in one partial alter of a 20-song group?
rng = np.random.default_rng(0)
moves = Counter()
for _ in range(20_000):
    out = partial_alter(list(range(20)), rng)
    moves.update(idx - item for idx, item in enumerate(out))
total = sum(moves.values())
print("displacement frequencies:", {d: round(c / total, 3) for d, c in sorted(moves.items())})

# Five consecutive shuffles of a small library.
playlist = Playlist.from_sizes([4, 3, 2])
for k, block in enumerate(shuffle_repeat(playlist, ShuffleConfig(alter_kind="partial", seed=3), 5)):
    print(f"round {k}:", " ".join(it.item_id for it in block))
