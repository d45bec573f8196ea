"""
Spacing between songs of one group
==================================

Comparing simulated gaps between same-group songs with closed-form
densities. Uniform keys give a decaying density with many tiny gaps; the
Balanced and Polacek shuffles keep gaps near 1/n.
"""
import numpy as np

from cdshuffle.stats import spacing_check

rng = np.random.default_rng(0)
n = 4


def sketch(check, width=50):
    """Text histogram with the density drawn as a '|' mark."""
    bw = check.edges[1] - check.edges[0]
    dens = check.counts / (check.counts.sum() * bw)
    mids = 0.5 * (check.edges[1:] + check.edges[:-1])
    curve = check.pdf(mids)
    top = max(dens.max(), curve.max())
    for x, d, c in zip(mids[::2], dens[::2], curve[::2]):
        bar = list("#" * int(width * d / top) + " " * width)
        bar[min(int(width * c / top), width)] = "|"
        print(f"  {x:5.3f} {''.join(bar)}")


for dist, kwargs in [("uniform", {}), ("balanced", {}), ("polacek", {"w": 0.75}), ("polacek", {"w": 1.0})]:
    check = spacing_check(dist, 100_000, rng, n=n, **kwargs)
    print(f"{dist} {kwargs}: total variation distance {check.tv:.4f}")
    sketch(check)

# Eigenvalue spacings of 2x2 GUE matrices follow the Wigner surmise.
check = spacing_check("wigner", 50_000, rng, bins=40)
print(f"wigner: total variation distance {check.tv:.4f}")
sketch(check)
