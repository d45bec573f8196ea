"""
Random Hermitian matrices and their eigenvalues
===============================================

The spectral map places a group's songs at the eigenvalues of a random
GUE matrix. Eigenvalues of such matrices repel each other, so the songs
rarely bunch up.
"""
import numpy as np

from cdshuffle import coarse_scale, hermitian_eigenvalues, sample_gue, spectral_map

rng = np.random.default_rng(0)

h = sample_gue(4, rng)
print("a 4x4 GUE matrix:\n", np.round(h, 3))
lam = hermitian_eigenvalues(h)
print("eigenvalues:", np.round(lam, 6))
print("max difference from LAPACK:", np.abs(lam - np.linalg.eigvalsh(h)).max())

# The trace and the squared Frobenius norm are the sum of eigenvalues and the
# sum of their squares.
print("trace check:", np.trace(h).real, lam.sum())
print("Frobenius check:", np.linalg.norm(h) ** 2, (lam**2).sum())

# After scaling by r / (2 sqrt(n)) the spectrum fills roughly [-r, r].
n, r = 50, 1.0
spread = [hermitian_eigenvalues(coarse_scale(sample_gue(n, rng), r))[[0, -1]] for _ in range(20)]
print("mean extreme eigenvalues:", np.round(np.mean(spread, axis=0), 3))

# Spectral positions against an even lattice for a 10-song group.
print("spectral map:", np.round(spectral_map(10, 1.0, rng), 3))
print("lattice     :", np.round((1 / 10) * (1 - 10 + 2 * np.arange(10)), 3))

# Neighbouring eigenvalues repel: small gaps are rare compared with uniform points.
gaps = np.concatenate([np.diff(hermitian_eigenvalues(sample_gue(20, rng)))[5:15] for _ in range(300)])
gaps /= gaps.mean()
pts = np.diff(np.sort(rng.random((300, 20)), axis=1))[:, 5:15].ravel()
pts /= pts.mean()
print(f"share of gaps below 0.25 x mean: GUE {np.mean(gaps < 0.25):.3f}, uniform points {np.mean(pts < 0.25):.3f}")
