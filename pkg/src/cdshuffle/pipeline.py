"""Alter, map and merge composed into a cluster-diffusing shuffle.

Draw order within one call: groups in ascending ``group_id``; for each
group, the alter's draws and then the map's draws.
"""
from __future__ import annotations

import numpy as np

from .alter import full_alter, partial_alter
from .core import (
    AlterState,
    ConfigError,
    EmptyPlaylistError,
    Item,
    MapParams,
    Playlist,
    PositionedItem,
    ShuffleConfig,
    make_rng,
)
from .maps import gaussian_map, lattice_map, spectral_map, von_mises_map
from .merge import MERGES
from .reference import balanced_shuffle, polacek_shuffle, unbiased_shuffle


def map_positions(kind: str, n: int, params: MapParams, rng: np.random.Generator) -> np.ndarray:
    r = params.radius_r
    if kind == "lattice":
        return lattice_map(n, r)
    if kind == "gaussian":
        return gaussian_map(n, r, rng, sigma=params.sigma_w)
    if kind == "von_mises":
        return von_mises_map(n, r, rng, kappa=params.kappa, mu=params.mu)
    if kind == "spectral":
        return spectral_map(n, r, rng)
    raise ConfigError(f"{kind!r} is not a CD map")


def _record_appearance(playlist: Playlist, output: list[Item], state: AlterState) -> None:
    orders: dict[int, list[int]] = {g.group_id: [] for g in playlist.groups}
    for item in output:
        orders[item.group_id].append(item.index_in_group)
    state.orderings = orders
    state.seeded = True


def _check_state(playlist: Playlist, state: AlterState) -> None:
    if not state.orderings:
        return
    if set(state.orderings) != {g.group_id for g in playlist.groups}:
        raise ValueError("alter state does not cover exactly the playlist's groups")
    for g in playlist.groups:
        if sorted(state.orderings[g.group_id]) != list(range(len(g))):
            raise ValueError(f"stored ordering for group {g.group_id} is not a permutation")


def cd_shuffle(
    playlist: Playlist,
    config: ShuffleConfig,
    state: AlterState | None = None,
    rng: np.random.Generator | None = None,
) -> list[Item]:
    """Shuffle ``playlist`` once, updating ``state`` in place.

    The first call on a fresh state always runs a full alter; later calls
    use ``config.alter_kind``. The ``balanced``, ``polacek`` and ``unbiased``
    map kinds run the whole reference algorithm instead of alter/map/merge;
    ``state`` then just records the order in which each group came out.
    """
    if not isinstance(playlist, Playlist) or len(playlist) == 0:
        raise EmptyPlaylistError("cannot shuffle an empty playlist")
    if state is None:
        state = AlterState()
    if rng is None:
        rng = make_rng(config.seed)
    _check_state(playlist, state)

    kind = config.map_kind
    if kind in ("balanced", "polacek", "unbiased"):
        if kind == "balanced":
            out = balanced_shuffle(playlist, rng)
        elif kind == "polacek":
            out = polacek_shuffle(playlist, config.width_w, rng, merge=config.merge_kind)
        else:
            out = unbiased_shuffle(playlist, rng)
        _record_appearance(playlist, out, state)
        return out

    alter = full_alter if (not state.seeded or config.alter_kind == "full") else partial_alter
    params = config.map_params
    positioned = []
    new_orders = {}
    for group in playlist.groups:
        n = len(group)
        order = state.orderings.get(group.group_id) or list(range(n))
        order = alter(order, rng)
        positions = map_positions(kind, n, params, rng).tolist()
        positioned.append(
            [PositionedItem(group.items[idx], x, rank) for rank, (idx, x) in enumerate(zip(order, positions))]
        )
        new_orders[group.group_id] = order
    state.orderings = new_orders
    state.seeded = True
    return MERGES[config.merge_kind](positioned)


def shuffle_repeat(
    playlist: Playlist,
    config: ShuffleConfig,
    count: int,
    rng: np.random.Generator | None = None,
) -> list[list[Item]]:
    """``count`` consecutive shuffles for shuffle + repeat play.

    The first is seeded with a full alter, the rest use ``config.alter_kind``.
    """
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    if rng is None:
        rng = make_rng(config.seed)
    state = AlterState()
    return [cd_shuffle(playlist, config, state, rng) for _ in range(count)]
