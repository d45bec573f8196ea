"""Acceptance criteria. Each test prints one PASS/FAIL line, repeated in the
terminal summary."""
import math
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from oracles import charpoly_leibniz, exact_partial_alter

from cdshuffle.alter import compute_p_margin, jump_bound, partial_alter
from cdshuffle.core import Item, PositionedItem
from cdshuffle.merge import merge_comparison, merge_kway, merge_radix
from cdshuffle.randmat import hermitian_eigenvalues, sample_gue
from cdshuffle.stats import (
    BENCH_ALGORITHMS,
    DIST_KINDS,
    SIZE_CLASSES,
    BenchmarkSpec,
    benchmark_pairs,
    occupancy_chi_square,
    spacing_check,
)

pytestmark = pytest.mark.slow

SEED = 0

TINY_IMPULSE = {
    "unbiased": 1.1238,
    "balanced": 1.0310,
    "polacek_w1.0": 1.0424,
    "polacek_w0.5": 1.0117,
    "gaussian": 1.0331,
    "von_mises": 1.0309,
    "spectral": 1.0259,
}


def test_tiny_suite_reproduction(criterion):
    trials = 10_000
    averages = {}
    elapsed = {}
    for name in BENCH_ALGORITHMS:
        start = time.perf_counter()
        for dist in DIST_KINDS:
            rep = benchmark_pairs(BenchmarkSpec("tiny", dist), name, trials, seed=SEED)
            averages[name, dist] = rep.average_size
        elapsed[name] = time.perf_counter() - start
    without_spectral = sum(t for name, t in elapsed.items() if name != "spectral")
    total = sum(elapsed.values())
    errors = {name: abs(averages[name, "impulse"] - ref) for name, ref in TINY_IMPULSE.items()}
    ok = (
        all(e <= 0.02 for e in errors.values())
        and averages["lattice", "impulse"] == 1.0
        and without_spectral < 60
        and total < 300
    )
    detail = (
        f"max |avg - ref| = {max(errors.values()):.4f} (tol 0.02), lattice = {averages['lattice', 'impulse']:.4f}, "
        f"time {without_spectral:.1f}s w/o spectral, {total:.1f}s total"
    )
    criterion("1 tiny-suite averages", ok, detail)
    for name, e in errors.items():
        assert e <= 0.02, (name, averages[name, "impulse"])
    assert averages["lattice", "impulse"] == 1.0
    assert without_spectral < 60 and total < 300


def test_medium_large_spot_checks(criterion):
    trials = 10_000
    vm = {
        size: benchmark_pairs(BenchmarkSpec(size, "zipf"), "von_mises", trials, seed=SEED).average_size
        for size in ("medium", "large")
    }
    lattice = {
        size: benchmark_pairs(BenchmarkSpec(size, "impulse"), "lattice", trials, seed=SEED).average_size
        for size in SIZE_CLASSES
    }
    ok = abs(vm["medium"] - 1.1671) <= 0.02 and abs(vm["large"] - 1.1266) <= 0.02 and all(v == 1.0 for v in lattice.values())
    criterion(
        "2 medium/large spot checks",
        ok,
        f"von Mises zipf medium {vm['medium']:.4f} (1.1671), large {vm['large']:.4f} (1.1266); "
        f"lattice impulse {sorted(set(lattice.values()))}",
    )
    assert abs(vm["medium"] - 1.1671) <= 0.02
    assert abs(vm["large"] - 1.1266) <= 0.02
    assert all(v == 1.0 for v in lattice.values())


def test_two_item_swap_probability(criterion):
    exact = exact_partial_alter(2)[(1, 0)]
    pm = compute_p_margin()
    p0 = 1 - pm
    # either turn order: the first mover jumps inwards, or it jumps out of
    # bounds (staying unlocked) and the second mover jumps inwards
    closed = p0**2 + (1 - p0) ** 2 * p0**2
    rng = np.random.default_rng(SEED)
    alters = 100_000
    swaps = sum(partial_alter((0, 1), rng)[0] == 1 for _ in range(alters))
    mc = swaps / alters
    ok = abs(exact - 0.5) <= 1e-10 and abs(closed - 0.5) <= 1e-10 and abs(mc - 0.5) <= 0.005
    criterion("3 two-item swap probability", ok, f"enumerated {exact:.12f}, Monte Carlo {mc:.4f} over {alters} alters")
    assert abs(exact - 0.5) <= 1e-10
    assert abs(closed - 0.5) <= 1e-10
    assert abs(mc - 0.5) <= 0.005


def test_displacement_bound(criterion):
    rng = np.random.default_rng(SEED)
    violations = 0
    for n in range(2, 129):
        bound = jump_bound(n)
        order = list(range(n))
        for _ in range(1000):
            new = partial_alter(order, rng)
            where = {item: idx for idx, item in enumerate(order)}
            violations += sum(abs(where[item] - idx) > bound for idx, item in enumerate(new))
            order = new
    criterion("4 displacement bound", violations == 0, f"{violations} violations over n = 2..128, 1000 alters each")
    assert violations == 0


@pytest.mark.parametrize("n_group", [10, 100])
def test_occupancy_uniformity(n_group, criterion):
    samples = 100_000
    res = occupancy_chi_square(n_group, chains=samples // n_group, burn_in=1000, seed=SEED)
    criterion(
        f"5 occupancy chi-square n={n_group}",
        res.pvalue > 0.001,
        f"stat {res.statistic:.1f} on {res.dof} dof, p = {res.pvalue:.4f}",
    )
    assert res.pvalue > 0.001


def test_spacing_densities(criterion):
    rng = np.random.default_rng(SEED)
    samples = 100_000
    tvs = {
        "uniform": spacing_check("uniform", samples, rng, n=4).tv,
        "balanced": spacing_check("balanced", samples, rng, n=4).tv,
        "polacek w=0.75": spacing_check("polacek", samples, rng, n=4, w=0.75).tv,
        "polacek w=1.0": spacing_check("polacek", samples, rng, n=4, w=1.0).tv,
    }
    ok = all(tv < 0.03 for tv in tvs.values())
    criterion("6 spacing densities", ok, ", ".join(f"{k} TV {v:.4f}" for k, v in tvs.items()))
    for name, tv in tvs.items():
        assert tv < 0.03, name


def test_random_matrix_suite(criterion):
    rng = np.random.default_rng(SEED)
    wigner_tv = spacing_check("wigner", 1_000_000, rng).tv

    worst_identity = 0.0
    for n in (2, 5, 10, 20):
        for _ in range(1000):
            h = sample_gue(n, rng)
            lam = hermitian_eigenvalues(h)
            fro = np.linalg.norm(h)
            trace_err = abs(lam.sum() - np.trace(h).real) / (n * fro)
            fro_err = abs((lam**2).sum() - fro**2) / (n * fro**2)
            worst_identity = max(worst_identity, trace_err, fro_err)

    worst_poly = 0.0
    for n in (2, 3, 4, 5):
        for _ in range(200):
            h = sample_gue(n, rng)
            lam = hermitian_eigenvalues(h)
            scale = max(1.0, np.linalg.norm(h))
            ref = charpoly_leibniz(h)
            got = np.poly(lam)[::-1]
            # coefficient of x^k scales like ||h||^(n-k)
            err = np.abs(got - ref) / scale ** (n - np.arange(n + 1))
            worst_poly = max(worst_poly, float(err.max()))

    ok = wigner_tv < 0.02 and worst_identity <= 1e-9 and worst_poly <= 1e-8
    criterion(
        "7 random-matrix suite",
        ok,
        f"Wigner TV {wigner_tv:.4f}, worst trace/Frobenius rel err {worst_identity:.1e}, "
        f"worst char-poly err {worst_poly:.1e}",
    )
    assert wigner_tv < 0.02
    assert worst_identity <= 1e-9
    assert worst_poly <= 1e-8


def _random_merge_input(rng):
    k = int(rng.integers(1, 7))
    pool = np.array([-2.0, -1.0, -0.5, -0.0, 0.0, 0.5, 1.0, 2.0])
    groups = []
    for gid in rng.choice(50, k, replace=False):
        n = int(rng.integers(1, 10))
        if rng.random() < 0.5:
            pos = np.sort(rng.choice(pool, n))
        else:
            pos = np.sort(rng.uniform(-5, 5, n))
        items = [Item(int(gid), f"{gid}:{i}", i) for i in range(n)]
        groups.append([PositionedItem(items[i], float(pos[i]), i) for i in range(n)])
    return groups


def test_merge_equivalence(criterion):
    rng = np.random.default_rng(SEED)
    mismatches = 0
    ties = negatives = 0
    for _ in range(1000):
        groups = _random_merge_input(rng)
        positions = [p.position for g in groups for p in g]
        ties += len(positions) != len(set(positions))
        negatives += min(positions) < 0
        outs = [
            "\n".join(it.item_id for it in merge(groups)).encode()
            for merge in (merge_comparison, merge_kway, merge_radix)
        ]
        mismatches += not (outs[0] == outs[1] == outs[2])
    criterion(
        "8 merge equivalence",
        mismatches == 0,
        f"{mismatches} mismatches in 1000 inputs ({ties} with ties, {negatives} with negative positions)",
    )
    assert ties > 0 and negatives > 0
    assert mismatches == 0


def _cli(args, cwd):
    return subprocess.run([sys.executable, "-m", "cdshuffle", *args], capture_output=True, cwd=cwd, check=True)


def _tree_bytes(root: Path) -> dict:
    return {str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()}


def test_cli_determinism(tmp_path, criterion):
    playlist = tmp_path / "list.tsv"
    rows = [f"{g}\t{g}-{i}" for g, n in enumerate([5, 3, 2, 1, 4]) for i in range(n)]
    playlist.write_text("\n".join(rows) + "\n")
    commands = [
        ["shuffle", "--input", str(playlist), "--map", kind, "--seed", "42"]
        for kind in ("lattice", "gaussian", "von_mises", "spectral", "balanced", "polacek", "unbiased")
    ]
    commands += [
        ["repeat", "--input", str(playlist), "--count", "5", "--seed", "42"],
        ["repeat", "--input", str(playlist), "--count", "5", "--alter", "full", "--merge", "radix", "--seed", "42"],
        ["spacing", "--dist", "polacek", "--w", "0.75", "--samples", "5000", "--seed", "42"],
        ["spacing", "--dist", "wigner", "--samples", "2000", "--seed", "42"],
    ]
    differing = []
    for cmd in commands:
        a, b = _cli(cmd, tmp_path), _cli(cmd, tmp_path)
        if a.stdout != b.stdout or a.stderr != b.stderr:
            differing.append(cmd[0])
    for run in ("a", "b"):
        _cli(["bench", "--suite", "tiny", "--trials", "30", "--seed", "42", "--out", str(tmp_path / f"bench_{run}")], tmp_path)
        _cli(["spacing", "--dist", "uniform", "--samples", "3000", "--seed", "42", "--out", str(tmp_path / f"sp_{run}")], tmp_path)
    for prefix in ("bench", "sp"):
        if _tree_bytes(tmp_path / f"{prefix}_a") != _tree_bytes(tmp_path / f"{prefix}_b"):
            differing.append(prefix)
    total = len(commands) + 2
    criterion("9 CLI determinism", not differing, f"{total - len(differing)}/{total} commands byte-identical")
    assert not differing
