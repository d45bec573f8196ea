"""Maps assigning a group's ordered items to ascending positions in ``[-r, r]``.

Each map spreads ``n`` items evenly, item ``i`` centred on
``(r/n)(1 - n + 2i)``, and optionally jitters them.
"""
from __future__ import annotations

import math

import numpy as np

from .core import VON_MISES_KAPPA
from .randmat import coarse_scale, hermitian_eigenvalues, sample_gue


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"group size must be positive, got {n}")


def lattice_map(n: int, r: float = 1.0) -> np.ndarray:
    _check_n(n)
    return (r / n) * (1 - n + 2 * np.arange(n))


def gaussian_map(n: int, r: float, rng: np.random.Generator, sigma: float = 0.5) -> np.ndarray:
    """Lattice positions plus N(0, sigma) jitter in units of half the spacing.

    The jittered values can overlap, so they are sorted before being handed
    out in item order.
    """
    _check_n(n)
    raw = (r / n) * (1 - n + 2 * np.arange(n) + rng.normal(0.0, sigma, n))
    return np.sort(raw)


_SMALL_BATCH = 32


def sample_von_mises(mu: float, kappa: float, rng: np.random.Generator, size: int | None = None):
    """Draw from von Mises(mu, kappa) on ``[-pi, pi]``.

    Best & Fisher (1979) rejection sampler with a wrapped Cauchy envelope.
    Each round draws a ``(3, pending)`` block of uniforms, one column per
    value still pending, until all are accepted. Small batches run the same
    rounds in plain Python, which is faster than numpy at that size.
    """
    if not kappa > 0:
        raise ValueError(f"kappa must be positive, got {kappa}")
    count = 1 if size is None else int(size)
    tau = 1.0 + math.sqrt(1.0 + 4.0 * kappa * kappa)
    rho = (tau - math.sqrt(2.0 * tau)) / (2.0 * kappa)
    s = (1.0 + rho * rho) / (2.0 * rho)

    if count <= _SMALL_BATCH:
        out = _von_mises_small(count, kappa, s, rng)
    else:
        out = np.empty(count)
        pending = np.arange(count)
        while pending.size:
            u = rng.random((3, pending.size))
            z = np.cos(math.pi * u[0])
            f = (1.0 + s * z) / (s + z)
            c = kappa * (s - f)
            accept = (c * (2.0 - c) - u[1] > 0) | (np.log(c / u[1]) + 1.0 - c >= 0)
            theta = np.sign(u[2][accept] - 0.5) * np.arccos(np.clip(f[accept], -1.0, 1.0))
            out[pending[accept]] = theta
            pending = pending[~accept]
    out = np.mod(out + mu + math.pi, 2 * math.pi) - math.pi
    return float(out[0]) if size is None else out


def _von_mises_small(count: int, kappa: float, s: float, rng: np.random.Generator) -> np.ndarray:
    out = [0.0] * count
    pending = list(range(count))
    while pending:
        u0, u1, u2 = rng.random((3, len(pending))).tolist()
        rejected = []
        for k, idx in enumerate(pending):
            z = math.cos(math.pi * u0[k])
            f = (1.0 + s * z) / (s + z)
            c = kappa * (s - f)
            if c * (2.0 - c) - u1[k] > 0 or math.log(c / u1[k]) + 1.0 - c >= 0:
                theta = math.acos(min(1.0, max(-1.0, f)))
                # np.sign(0) is 0; keep the same convention
                sign = (u2[k] > 0.5) - (u2[k] < 0.5)
                out[idx] = sign * theta
            else:
                rejected.append(idx)
        pending = rejected
    return np.array(out)


def von_mises_map(
    n: int, r: float, rng: np.random.Generator, kappa: float = VON_MISES_KAPPA, mu: float = 0.0
) -> np.ndarray:
    """Lattice positions plus von Mises jitter squeezed to ``[-1, 1]``.

    Each item stays inside its own slot, so the output is already ascending.
    """
    _check_n(n)
    v = sample_von_mises(mu, kappa, rng, size=n)
    return (r / n) * (1 - n + 2 * np.arange(n) + v / math.pi)


def spectral_map(n: int, r: float, rng: np.random.Generator) -> np.ndarray:
    """Ascending eigenvalues of a coarse-scaled ``n x n`` GUE matrix."""
    _check_n(n)
    return hermitian_eigenvalues(coarse_scale(sample_gue(n, rng), r))
