"""Combine positioned groups into one playlist.

All three strategies order by ``(position, group_id, rank)`` and return
identical sequences for identical input:

* :func:`merge_comparison` - concatenate and comparison sort, O(n log n)
* :func:`merge_kway` - heap merge of presorted groups, O(n log k)
* :func:`merge_radix` - LSD radix sort on order-preserving integer keys, O(n)
"""
from __future__ import annotations

import heapq
import math
import struct
from typing import Sequence

import numpy as np

from .core import Item, PositionedItem

_SIGN = 1 << 63
_MASK64 = (1 << 64) - 1
_DOUBLE = struct.Struct("<d")
_UINT64 = struct.Struct("<Q")


def _check_finite(groups: Sequence[Sequence[PositionedItem]]) -> None:
    for group in groups:
        for p in group:
            if not math.isfinite(p.position):
                raise ValueError(f"non-finite position {p.position!r} for item {p.item.item_id!r}")


def float_key(x: float) -> int:
    """Map a finite float to a 64-bit unsigned key with the same ordering.

    Non-negative values get their sign bit set; negative values are fully
    complemented, which reverses their magnitude order. ``-0.0`` and ``0.0``
    share a key.
    """
    bits = _UINT64.unpack(_DOUBLE.pack(x + 0.0))[0]
    return (~bits & _MASK64) if bits & _SIGN else bits | _SIGN


def float_keys(positions) -> np.ndarray:
    """Vectorized :func:`float_key` over an array of positions."""
    bits = (np.asarray(positions, dtype=np.float64) + 0.0).view(np.uint64)
    return np.where(bits >> np.uint64(63), ~bits, bits | np.uint64(_SIGN))


def merge_comparison(groups: Sequence[Sequence[PositionedItem]]) -> list[Item]:
    _check_finite(groups)
    flat = [p for group in groups for p in group]
    flat.sort(key=lambda p: (p.position, p.item.group_id, p.rank))
    return [p.item for p in flat]


def merge_kway(groups: Sequence[Sequence[PositionedItem]]) -> list[Item]:
    """Heap merge; each group must already be ascending by ``(position, rank)``."""
    _check_finite(groups)
    for group in groups:
        for a, b in zip(group, group[1:]):
            if (b.position, b.rank) < (a.position, a.rank):
                raise ValueError(f"group {a.item.group_id} is not sorted by position")
    merged = heapq.merge(*groups, key=lambda p: (p.position, p.item.group_id, p.rank))
    return [p.item for p in merged]


def radix_sort_keys(keys: Sequence[int], digit_bits: int = 8, key_bits: int = 64) -> list[int]:
    """Stable LSD radix argsort of unsigned integer keys.

    Returns the permutation that sorts ``keys``. Passes whose digit is the
    same for every key are skipped.
    """
    order = list(range(len(keys)))
    radix = 1 << digit_bits
    mask = radix - 1
    n = len(keys)
    for shift in range(0, key_bits, digit_bits):
        digits = [(keys[i] >> shift) & mask for i in order]
        counts = [0] * radix
        for d in digits:
            counts[d] += 1
        if n and counts[digits[0]] == n:
            continue
        starts = [0] * radix
        total = 0
        for d in range(radix):
            starts[d] = total
            total += counts[d]
        out = [0] * n
        for i, d in zip(order, digits):
            out[starts[d]] = i
            starts[d] += 1
        order = out
    return order


def merge_radix(groups: Sequence[Sequence[PositionedItem]]) -> list[Item]:
    _check_finite(groups)
    # Ties are settled by stability, so lay items out in (group_id, rank) order first.
    flat = [
        p
        for group in sorted(groups, key=lambda g: g[0].item.group_id if g else -1)
        for p in sorted(group, key=lambda p: p.rank)
    ]
    keys = [float_key(p.position) for p in flat]
    return [flat[i].item for i in radix_sort_keys(keys)]


MERGES = {
    "comparison": merge_comparison,
    "kway": merge_kway,
    "radix": merge_radix,
}
