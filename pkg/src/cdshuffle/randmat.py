"""GUE sampling and a dense Hermitian eigenvalue solver.

The solver reduces the matrix to real symmetric tridiagonal form with
Householder reflections, then finds the eigenvalues with implicitly shifted
QL sweeps. O(n^3) time, O(n^2) space, eigenvalues only.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

HERMITIAN_RTOL = 1e-12
SWEEPS_PER_EIGENVALUE = 30


class ConvergenceError(ArithmeticError):
    pass


@lru_cache(maxsize=128)
def _triu(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, 1)


def sample_gue(n: int, rng: np.random.Generator) -> np.ndarray:
    """An ``n x n`` GUE matrix.

    Diagonal entries are N(0, 1); above the diagonal the real and imaginary
    parts are independent N(0, 1/2). Draw order: diagonal, then the real
    parts, then the imaginary parts of the upper triangle in row-major order.
    """
    if n < 1:
        raise ValueError(f"matrix dimension must be positive, got {n}")
    diag = rng.standard_normal(n)
    m = n * (n - 1) // 2
    scale = math.sqrt(0.5)
    re = rng.normal(0.0, scale, m)
    im = rng.normal(0.0, scale, m)
    h = np.zeros((n, n), dtype=np.complex128)
    rows, cols = _triu(n)
    h[rows, cols] = re + 1j * im
    h[cols, rows] = re - 1j * im
    h.flat[:: n + 1] = diag
    return h


def coarse_scale(h: np.ndarray, r: float) -> np.ndarray:
    """Scale by ``r / (2 sqrt(n))`` so the GUE spectrum sits roughly in ``[-r, r]``."""
    n = h.shape[0]
    return h * (r / (2.0 * math.sqrt(n)))


def check_hermitian(h: np.ndarray, rtol: float = HERMITIAN_RTOL) -> np.ndarray:
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1] or h.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {h.shape}")
    if not np.all(np.isfinite(h)):
        raise ValueError("matrix has non-finite entries")
    scale = np.abs(h).max()
    if np.abs(h - h.conj().T).max() > rtol * scale:
        raise ValueError("matrix is not Hermitian")
    return h


def tridiagonalize(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Householder reduction of a Hermitian matrix.

    Returns ``(d, e)``: the real diagonal and the non-negative real
    off-diagonal of a symmetric tridiagonal matrix with the same spectrum.
    Complex off-diagonal phases are dropped, which is a diagonal unitary
    similarity.
    """
    a = np.array(h, dtype=np.complex128)
    n = a.shape[0]
    for k in range(n - 2):
        x = a[k + 1 :, k]
        norm = np.linalg.norm(x)
        if norm == 0.0:
            continue
        x0 = x[0]
        phase = x0 / abs(x0) if x0 != 0 else 1.0
        alpha = -phase * norm
        v = x.copy()
        v[0] -= alpha
        v /= np.linalg.norm(v)
        sub = a[k + 1 :, k + 1 :]
        p = sub @ v
        c = np.vdot(v, p).real
        q = 2.0 * (p - c * v)
        sub -= np.outer(v, q.conj()) + np.outer(q, v.conj())
        a[k + 1, k] = alpha
        a[k, k + 1] = np.conj(alpha)
        a[k + 2 :, k] = 0.0
        a[k, k + 2 :] = 0.0
    d = a.diagonal().real.copy()
    e = np.abs(a.diagonal(-1))
    return d, e


def tridiagonal_eigenvalues(d, e, max_sweeps: int | None = None) -> np.ndarray:
    """Eigenvalues of the symmetric tridiagonal matrix with diagonal ``d``
    and off-diagonal ``e`` by implicit QL with Wilkinson-style shifts.

    Raises :class:`ConvergenceError` once more than ``max_sweeps`` sweeps
    (default ``30 n``) have been spent.
    """
    d = [float(x) for x in d]
    n = len(d)
    e = [float(x) for x in e] + [0.0]
    if len(e) != n:
        raise ValueError("off-diagonal must have length n - 1")
    if max_sweeps is None:
        max_sweeps = SWEEPS_PER_EIGENVALUE * n
    eps = np.finfo(float).eps
    sweeps = 0
    for l in range(n):
        while True:
            m = l
            while m < n - 1:
                if abs(e[m]) <= eps * (abs(d[m]) + abs(d[m + 1])):
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > max_sweeps:
                raise ConvergenceError(f"no convergence after {max_sweeps} QL sweeps")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            deflated = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    # underflow: split here and restart the sweep
                    d[i + 1] -= p
                    e[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return np.sort(np.array(d))


def hermitian_eigenvalues(h: np.ndarray) -> np.ndarray:
    """Ascending real eigenvalues of a dense Hermitian matrix."""
    h = check_hermitian(h)
    if h.shape[0] == 1:
        return np.array([h[0, 0].real])
    d, e = tridiagonalize(h)
    return tridiagonal_eigenvalues(d, e)


def gue_spacings(samples: int, rng: np.random.Generator) -> np.ndarray:
    """Eigenvalue spacings of ``samples`` independent 2x2 GUE matrices,
    normalized to unit mean."""
    s = np.empty(samples)
    for k in range(samples):
        lo, hi = hermitian_eigenvalues(sample_gue(2, rng))
        s[k] = hi - lo
    return s / s.mean()
