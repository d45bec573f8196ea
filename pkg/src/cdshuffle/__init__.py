"""Cluster-diffusing shuffles: biased shuffles that spread same-group items
evenly across a playlist, plus the reference shuffles and statistics used
to compare them."""
from .alter import compute_p_margin, full_alter, partial_alter
from .core import (
    AlterState,
    ConfigError,
    EmptyPlaylistError,
    Group,
    Item,
    MapParams,
    Playlist,
    PositionedItem,
    ShuffleConfig,
    make_rng,
)
from .maps import gaussian_map, lattice_map, sample_von_mises, spectral_map, von_mises_map
from .merge import merge_comparison, merge_kway, merge_radix
from .pipeline import cd_shuffle, shuffle_repeat
from .randmat import ConvergenceError, coarse_scale, hermitian_eigenvalues, sample_gue
from .reference import balanced_shuffle, fisher_yates, polacek_shuffle

__all__ = [
    "AlterState",
    "ConfigError",
    "ConvergenceError",
    "EmptyPlaylistError",
    "Group",
    "Item",
    "MapParams",
    "Playlist",
    "PositionedItem",
    "ShuffleConfig",
    "balanced_shuffle",
    "cd_shuffle",
    "coarse_scale",
    "compute_p_margin",
    "fisher_yates",
    "full_alter",
    "gaussian_map",
    "hermitian_eigenvalues",
    "lattice_map",
    "make_rng",
    "merge_comparison",
    "merge_kway",
    "merge_radix",
    "partial_alter",
    "polacek_shuffle",
    "sample_gue",
    "sample_von_mises",
    "shuffle_repeat",
    "spectral_map",
    "von_mises_map",
]
