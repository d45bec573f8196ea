"""Domain types shared by every stage of the shuffle pipeline.

Randomness is a plain :class:`numpy.random.Generator`. Every function that
draws takes one explicitly, so a seed fully determines a shuffle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

import numpy as np

MapKind = Literal["lattice", "spectral", "gaussian", "von_mises", "balanced", "polacek", "unbiased"]
AlterKind = Literal["full", "partial"]
MergeKind = Literal["comparison", "kway", "radix"]

MAP_KINDS = ("lattice", "spectral", "gaussian", "von_mises", "balanced", "polacek", "unbiased")
CD_MAP_KINDS = ("lattice", "spectral", "gaussian", "von_mises")
REFERENCE_KINDS = ("balanced", "polacek", "unbiased")
ALTER_KINDS = ("full", "partial")
MERGE_KINDS = ("comparison", "kway", "radix")

VON_MISES_KAPPA = (2 / math.pi) ** 2


class ConfigError(ValueError):
    """Unknown pipeline stage or out-of-range shuffle parameter."""


class EmptyPlaylistError(ValueError):
    pass


def make_rng(seed: int | None = None) -> np.random.Generator:
    """Seeded PCG64 generator; the same seed always replays the same draws."""
    return np.random.default_rng(seed)


@dataclass(frozen=True, slots=True)
class Item:
    group_id: int
    item_id: str
    index_in_group: int


@dataclass(frozen=True)
class Group:
    group_id: int
    items: tuple[Item, ...]

    def __post_init__(self):
        if self.group_id < 0:
            raise ValueError(f"group_id must be non-negative, got {self.group_id}")
        if not self.items:
            raise ValueError(f"group {self.group_id} is empty")
        object.__setattr__(self, "items", tuple(self.items))
        for i, item in enumerate(self.items):
            if item.group_id != self.group_id or item.index_in_group != i:
                raise ValueError(f"item {item!r} is misplaced in group {self.group_id} at index {i}")
        ids = [item.item_id for item in self.items]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate item_id in group {self.group_id}")

    @classmethod
    def from_ids(cls, group_id: int, item_ids: Iterable[str]) -> Group:
        return cls(group_id, tuple(Item(group_id, str(x), i) for i, x in enumerate(item_ids)))

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class Playlist:
    """A set of non-empty groups, held in ascending ``group_id`` order."""

    groups: tuple[Group, ...]

    def __post_init__(self):
        groups = tuple(sorted(self.groups, key=lambda g: g.group_id))
        ids = [g.group_id for g in groups]
        if len(set(ids)) != len(ids):
            raise ValueError("group ids must be distinct")
        if not groups:
            raise EmptyPlaylistError("playlist has no items")
        object.__setattr__(self, "groups", groups)

    @classmethod
    def from_sizes(cls, sizes: Sequence[int]) -> Playlist:
        """Synthetic playlist with groups ``0..k-1`` and item ids ``"g<gid>-<i>"``."""
        return cls(tuple(Group.from_ids(g, (f"g{g}-{i}" for i in range(n))) for g, n in enumerate(sizes)))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, str]]) -> Playlist:
        """Build from ``(group_id, item_id)`` pairs; order within a group is kept."""
        buckets: dict[int, list[str]] = {}
        for gid, item_id in pairs:
            buckets.setdefault(int(gid), []).append(item_id)
        return cls(tuple(Group.from_ids(g, ids) for g, ids in buckets.items()))

    def __len__(self) -> int:
        return sum(len(g) for g in self.groups)

    @property
    def sizes(self) -> list[int]:
        return [len(g) for g in self.groups]

    def items(self) -> list[Item]:
        return [item for g in self.groups for item in g.items]


@dataclass(frozen=True)
class MapParams:
    radius_r: float = 1.0
    sigma_w: float = 0.5
    kappa: float = VON_MISES_KAPPA
    mu: float = 0.0

    def __post_init__(self):
        if not self.radius_r > 0:
            raise ConfigError(f"radius must be positive, got {self.radius_r}")
        if not self.kappa > 0:
            raise ConfigError(f"kappa must be positive, got {self.kappa}")


@dataclass(frozen=True)
class ShuffleConfig:
    """Which alter, map and merge to run, plus their parameters.

    ``width_w`` is the Polacek offset width and also the Gaussian map's
    standard deviation, both as a fraction of the even item spacing.
    """

    map_kind: MapKind = "von_mises"
    alter_kind: AlterKind = "full"
    merge_kind: MergeKind = "comparison"
    radius_r: float = 1.0
    width_w: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.map_kind not in MAP_KINDS:
            raise ConfigError(f"unknown map kind {self.map_kind!r}; expected one of {MAP_KINDS}")
        if self.alter_kind not in ALTER_KINDS:
            raise ConfigError(f"unknown alter kind {self.alter_kind!r}; expected one of {ALTER_KINDS}")
        if self.merge_kind not in MERGE_KINDS:
            raise ConfigError(f"unknown merge kind {self.merge_kind!r}; expected one of {MERGE_KINDS}")
        if not (self.radius_r > 0 and math.isfinite(self.radius_r)):
            raise ConfigError(f"radius must be positive and finite, got {self.radius_r}")
        if not 0 <= self.width_w <= 1:
            raise ConfigError(f"width must lie in [0, 1], got {self.width_w}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @property
    def map_params(self) -> MapParams:
        return MapParams(radius_r=self.radius_r, sigma_w=self.width_w)


@dataclass(frozen=True, slots=True)
class PositionedItem:
    """An item with the real-valued key assigned by a map.

    ``rank`` is the item's index in its group's current (altered) ordering
    and breaks ties together with the group id.
    """

    item: Item
    position: float
    rank: int

    @property
    def sort_key(self) -> tuple[float, int, int]:
        return (self.position, self.item.group_id, self.rank)


@dataclass
class AlterState:
    """Per-group orderings carried from one shuffle to the next.

    ``orderings[gid]`` lists the group's original item indices in their
    current order. Owned by the caller; do not share across threads.
    """

    orderings: dict[int, list[int]] = field(default_factory=dict)
    seeded: bool = False
