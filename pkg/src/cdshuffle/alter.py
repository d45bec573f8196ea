"""Within-group reordering between consecutive shuffles.

The full alter is an unbiased shuffle. The partial alter lets every item
make at most one bounded jump towards the middle of its group, so an item
heard last in one shuffle cannot open the next one.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Sequence, TypeVar

import numpy as np
from scipy.optimize import bisect

from .reference import fisher_yates

T = TypeVar("T")


def full_alter(order: Sequence[T], rng: np.random.Generator) -> list[T]:
    return fisher_yates(order, rng)


@functools.lru_cache(maxsize=None)
def compute_p_margin() -> float:
    """``1 - p0``, where ``p0`` in [0.5, 1] solves ``p0^2 + (1 - p0)^2 p0^2 = 1/2``.

    With this margin a two-item group swaps with probability exactly 1/2.
    """
    p0 = bisect(lambda p: p * p + (1 - p) ** 2 * p * p - 0.5, 0.5, 1.0, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return 1.0 - p0


def swap_probability_param(i: int, n_group: int, p_margin: float | None = None) -> float:
    """Binomial ``p`` for the item at index ``i``: falls linearly from
    ``1 - p_margin`` at the front to ``p_margin`` at the back."""
    if n_group < 2:
        raise ValueError(f"group size must be at least 2, got {n_group}")
    if not 0 <= i < n_group:
        raise IndexError(f"index {i} out of range for group of {n_group}")
    if p_margin is None:
        p_margin = compute_p_margin()
    return p_margin + (1 - 2 * p_margin) * ((n_group - 1 - i) / (n_group - 1))


def jump_bound(n_group: int) -> int:
    """Largest jump allowed in a group: ``ceil((n_group - 1) / 4)``."""
    return math.ceil((n_group - 1) / 4)


@dataclass(frozen=True)
class JumpDistribution:
    """Binomial(support_n, p) shifted left by ``shift = support_n / 2``."""

    support_n: int
    p: float

    @property
    def shift(self) -> int:
        return self.support_n // 2

    @classmethod
    def for_index(cls, i: int, n_group: int) -> JumpDistribution:
        return cls(2 * jump_bound(n_group), swap_probability_param(i, n_group))

    def pmf(self, offset: int) -> float:
        k = offset + self.shift
        if not 0 <= k <= self.support_n:
            return 0.0
        return math.comb(self.support_n, k) * self.p**k * (1 - self.p) ** (self.support_n - k)

    def sample(self, rng: np.random.Generator) -> int:
        return int(rng.binomial(self.support_n, self.p)) - self.shift


def sample_jump(i: int, n_group: int, rng: np.random.Generator) -> int:
    return JumpDistribution.for_index(i, n_group).sample(rng)


@functools.lru_cache(maxsize=256)
def _jump_params(n_group: int) -> tuple[int, np.ndarray]:
    shift = jump_bound(n_group)
    p = np.array([swap_probability_param(i, n_group) for i in range(n_group)])
    return shift, p


def partial_alter(order: Sequence[T], rng: np.random.Generator) -> list[T]:
    """One round of the single-swap protocol.

    Positions take turns in a uniformly random order. On its turn an
    unlocked occupant at index ``i`` jumps by ``d``, a draw from the jump
    distribution for ``i``:

    * ``d == 0`` locks it in place;
    * a jump onto an unlocked item swaps the two and locks both;
    * a jump out of bounds or onto a locked item does nothing, and the
      occupant stays unlocked so a later turn may still swap with it.

    Occupants that are already locked forfeit their turn. Each item moves
    at most once, so no item travels more than :func:`jump_bound` places.

    Draws: the turn order (one :func:`fisher_yates`), then one jump per
    index in index order. A jump whose turn is forfeited goes unused.
    """
    out = list(order)
    n = len(out)
    if n < 2:
        return out
    shift, p = _jump_params(n)
    turns = fisher_yates(range(n), rng)
    jumps = (rng.binomial(2 * shift, p) - shift).tolist()
    locked = [False] * n
    for pos in turns:
        if locked[pos]:
            continue
        d = jumps[pos]
        if d == 0:
            locked[pos] = True
            continue
        target = pos + d
        if 0 <= target < n and not locked[target]:
            out[pos], out[target] = out[target], out[pos]
            locked[pos] = locked[target] = True
    return out


def partial_alter_batch(orders: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Apply :func:`partial_alter` independently to every row of ``orders``.

    Same protocol, vectorized across rows; intended for running many
    independent chains in statistics code. Draws differ from the scalar
    version, distributions do not.
    """
    orders = np.asarray(orders)
    n_chains, n = orders.shape
    out = orders.copy()
    if n < 2:
        return out
    shift, p = _jump_params(n)
    turns = np.argsort(rng.random((n_chains, n)), axis=1)
    jumps = rng.binomial(2 * shift, np.broadcast_to(p, (n_chains, n))) - shift
    # work on flat views: index = row * n + column
    flat_out = out.reshape(-1)
    locked = np.zeros(n_chains * n, dtype=bool)
    base = np.arange(n_chains) * n
    turn_cols = np.ascontiguousarray(turns.T)
    flat_jumps = jumps.reshape(-1)
    for pos in turn_cols:
        here = base + pos
        d = flat_jumps[here]
        target = pos + d
        there = base + np.clip(target, 0, n - 1)
        free = ~locked[here]
        locked[here[free & (d == 0)]] = True
        ok = free & (d != 0) & (target >= 0) & (target < n) & ~locked[there]
        a, b = here[ok], there[ok]
        flat_out[a], flat_out[b] = flat_out[b], flat_out[a].copy()
        locked[a] = True
        locked[b] = True
    return out
