"""Comparison shuffles: Fisher-Yates, the Balanced Shuffle and the Polacek Shuffle."""
from __future__ import annotations

from typing import Sequence, TypeVar

import numpy as np

from .core import Item, Playlist, PositionedItem
from .merge import MERGES

T = TypeVar("T")


def fisher_yates(items: Sequence[T], rng: np.random.Generator) -> list[T]:
    """Uniformly random permutation of ``items`` (returns a new list).

    The index permutation comes from ``rng.permutation``, numpy's compiled
    Fisher-Yates, which costs one generator call per shuffle.
    """
    out = list(items)
    if len(out) < 2:
        return out
    return [out[k] for k in rng.permutation(len(out)).tolist()]


def interval_bounds(k: int, length: int) -> list[tuple[int, int]]:
    """Split ``range(length)`` into ``k`` contiguous intervals of near-equal width."""
    return [((j * length) // k, ((j + 1) * length) // k) for j in range(k)]


def balanced_pad(items: Sequence[T], length: int, rng: np.random.Generator) -> list[T | None]:
    """Pad a group out to ``length`` slots, ``None`` marking spacers.

    Item ``j`` lands in a uniformly chosen slot of interval ``j``.
    """
    k = len(items)
    if not 1 <= k <= length:
        raise ValueError(f"cannot pad a group of {k} items to length {length}")
    bounds = interval_bounds(k, length)
    widths = np.array([hi - lo for lo, hi in bounds])
    offsets = rng.integers(0, widths).tolist()
    slots: list[T | None] = [None] * length
    for item, (lo, _), off in zip(items, bounds, offsets):
        slots[lo + off] = item
    return slots


def balanced_shuffle(playlist: Playlist, rng: np.random.Generator) -> list[Item]:
    length = max(playlist.sizes)
    padded = [balanced_pad(fisher_yates(g.items, rng), length, rng) for g in playlist.groups]
    out: list[Item] = []
    for t in range(length):
        column = [slots[t] for slots in padded if slots[t] is not None]
        out.extend(fisher_yates(column, rng))
    return out


def polacek_positions(
    n: int, w: float, rng: np.random.Generator, circular_shift: bool = True
) -> np.ndarray:
    """Positions of one group's ``n`` items on the unit circle.

    Item ``i`` sits at ``i/n`` plus a uniform offset of total width ``w/n``.
    With ``circular_shift`` one shared uniform shift is added and everything
    is wrapped into ``[0, 1)``; without it the result is the Balanced Shuffle
    carried over to the reals (used for spacing checks).
    """
    if not 0 <= w <= 1:
        raise ValueError(f"width must lie in [0, 1], got {w}")
    half = w / (2 * n)
    pos = np.arange(n) / n + rng.uniform(-half, half, n)
    if circular_shift:
        pos = (pos + rng.uniform(0.0, 1.0)) % 1.0
    return pos


def polacek_shuffle(
    playlist: Playlist,
    w: float,
    rng: np.random.Generator,
    merge: str = "comparison",
) -> list[Item]:
    if not 0 <= w <= 1:
        raise ValueError(f"width must lie in [0, 1], got {w}")
    positioned = []
    for group in playlist.groups:
        order = fisher_yates(group.items, rng)
        pos = polacek_positions(len(order), w, rng).tolist()
        positioned.append([PositionedItem(item, x, rank) for rank, (item, x) in enumerate(zip(order, pos))])
    if merge == "kway":
        # the wrap breaks per-group monotonicity
        positioned = [sorted(g, key=lambda p: (p.position, p.rank)) for g in positioned]
    return MERGES[merge](positioned)


def unbiased_shuffle(playlist: Playlist, rng: np.random.Generator) -> list[Item]:
    return fisher_yates(playlist.items(), rng)
