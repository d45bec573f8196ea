import csv
import io
import os
import subprocess
import sys

import pytest

from cdshuffle.cli import EXIT_IO, EXIT_PARSE, EXIT_USAGE, main, parse_playlist, PlaylistParseError

PLAYLIST = "0\ta1\n0\ta2\n0\ta3\n1\tb1\n1\tb2\n2\tc1\n"


@pytest.fixture
def playlist_file(tmp_path):
    path = tmp_path / "songs.tsv"
    path.write_text(PLAYLIST)
    return str(path)


def run(argv):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


def test_parse_playlist_skips_comments_and_blanks():
    pl = parse_playlist("# header\n\n3\tx\r\n1\ty\n")
    assert [(g.group_id, [it.item_id for it in g.items]) for g in pl.groups] == [(1, ["y"]), (3, ["x"])]


@pytest.mark.parametrize(
    "text,line",
    [("0\ta\n0 b\n", 2), ("-1\ta\n", 1), ("x\ta\n", 1), ("0\ta\n0\ta\n", 2), ("0\t\n", 1), ("0\ta\tb\n", 1)],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(PlaylistParseError) as info:
        parse_playlist(text)
    assert info.value.line == line


def test_shuffle_prints_permutation(playlist_file):
    code, out = run(["shuffle", "--input", playlist_file, "--seed", "3"])
    assert code == 0
    assert sorted(out.split()) == ["a1", "a2", "a3", "b1", "b2", "c1"]


@pytest.mark.parametrize("kind", ["lattice", "gaussian", "von_mises", "spectral", "balanced", "polacek", "unbiased"])
def test_shuffle_every_map(playlist_file, kind):
    code, out = run(["shuffle", "--input", playlist_file, "--map", kind, "--merge", "radix"])
    assert code == 0 and len(out.split()) == 6


def test_repeat_blocks(playlist_file):
    code, out = run(["repeat", "--input", playlist_file, "--count", "3"])
    assert code == 0
    blocks = out.strip().split("\n---\n")
    assert len(blocks) == 3
    assert all(sorted(b.split()) == ["a1", "a2", "a3", "b1", "b2", "c1"] for b in blocks)


def test_parse_failure_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.tsv"
    bad.write_text("0\tok\nnot a line\n")
    code, _ = run(["shuffle", "--input", str(bad)])
    assert code == EXIT_PARSE
    assert "line 2" in capsys.readouterr().err


def test_missing_input_is_parse_failure(tmp_path):
    assert run(["shuffle", "--input", str(tmp_path / "nope.tsv")])[0] == EXIT_PARSE


@pytest.mark.parametrize(
    "argv",
    [
        ["shuffle"],
        ["shuffle", "--input", "x", "--map", "hexagonal"],
        ["shuffle", "--input", "x", "--width", "2"],
        ["shuffle", "--input", "x", "--radius", "0"],
        ["repeat", "--input", "x", "--count", "0"],
        ["bench", "--out", "d", "--trials", "0"],
        ["bench", "--out", "d", "--trials", "2.5"],
        ["bench", "--out", "d", "--algorithms", "quicksort"],
        ["spacing", "--dist", "wigner", "--beta", "1"],
        ["spacing", "--dist", "polacek", "--w", "0"],
        ["spacing", "--dist", "uniform", "--n", "1"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors(argv):
    assert run(argv)[0] == EXIT_USAGE


def test_bench_writes_csvs(tmp_path):
    out = tmp_path / "bench"
    code, _ = run(["bench", "--suite", "tiny", "--trials", "20", "--out", str(out), "--algorithms", "lattice,unbiased"])
    assert code == 0
    with open(out / "averages.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 8
    lattice = {r["dist_kind"]: float(r["average"]) for r in rows if r["algorithm"] == "lattice"}
    assert lattice["impulse"] == 1.0
    with open(out / "locations.csv") as fh:
        assert len(list(csv.DictReader(fh))) == 2 * 4 * 20
    assert (out / "sizes.csv").exists()


def test_bench_all_suites(tmp_path):
    code, _ = run(["bench", "--suite", "all", "--trials", "2", "--out", str(tmp_path), "--algorithms", "lattice"])
    assert code == 0
    assert all((tmp_path / s / "averages.csv").exists() for s in ("tiny", "small", "medium", "large"))


@pytest.mark.skipif(os.geteuid() == 0, reason="root can write anywhere")
def test_bench_unwritable_dir(tmp_path):
    locked = tmp_path / "locked"
    locked.mkdir()
    locked.chmod(0o500)
    assert run(["bench", "--trials", "1", "--out", str(locked / "x")])[0] == EXIT_IO


def test_bench_output_is_a_file(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert run(["bench", "--trials", "1", "--out", str(blocker)])[0] == EXIT_IO


def test_spacing_stdout(capsys):
    code, out = run(["spacing", "--dist", "balanced", "--samples", "2000", "--bins", "10"])
    assert code == 0
    curve, hist = out.split("\n\n")
    assert len(curve.splitlines()) == 513
    assert len(hist.strip().splitlines()) == 11
    assert "tv_distance=" in capsys.readouterr().err


def test_spacing_to_directory(tmp_path):
    code, out = run(["spacing", "--dist", "wigner", "--samples", "500", "--out", str(tmp_path)])
    assert code == 0 and out == ""
    assert (tmp_path / "curve.csv").exists() and (tmp_path / "histogram.csv").exists()


def test_module_entry_point(playlist_file):
    cmd = [sys.executable, "-m", "cdshuffle", "shuffle", "--input", playlist_file, "--seed", "1"]
    a = subprocess.run(cmd, capture_output=True, check=True)
    b = subprocess.run(cmd, capture_output=True, check=True)
    assert a.stdout == b.stdout and len(a.stdout.split()) == 6
    bad = subprocess.run([sys.executable, "-m", "cdshuffle", "nope"], capture_output=True)
    assert bad.returncode == EXIT_USAGE


def test_single_item_file(tmp_path):
    f = tmp_path / "one.tsv"
    f.write_text("4\tonly\n")
    assert run(["shuffle", "--input", str(f)]) == (0, "only\n")


def test_lattice_two_equal_groups_alternate(tmp_path):
    f = tmp_path / "two.tsv"
    f.write_text("".join(f"{g}\t{g}-{i}\n" for g in (0, 1) for i in range(5)))
    for seed in range(5):
        _, out = run(["shuffle", "--input", str(f), "--map", "lattice", "--seed", str(seed)])
        assert [line[0] for line in out.split()] == ["0", "1"] * 5


def test_repeat_single_block(playlist_file):
    code, out = run(["repeat", "--input", playlist_file, "--count", "1"])
    assert code == 0 and "---" not in out


def test_repeat_hundred_item_group(tmp_path):
    f = tmp_path / "big.tsv"
    f.write_text("".join(f"0\ts{i:03d}\n" for i in range(100)))
    for seed in range(5):
        _, out = run(["repeat", "--input", str(f), "--count", "2", "--alter", "partial", "--seed", str(seed)])
        first, second = (b.split() for b in out.split("---\n"))
        where = {s: k for k, s in enumerate(first)}
        assert max(abs(where[s] - k) for k, s in enumerate(second)) <= 25


def test_bench_conservation(tmp_path):
    from cdshuffle.stats import BenchmarkSpec

    trials = 15
    run(["bench", "--suite", "small", "--trials", str(trials), "--out", str(tmp_path), "--algorithms", "gaussian,balanced"])
    totals = {}
    with open(tmp_path / "sizes.csv") as fh:
        for row in csv.DictReader(fh):
            key = (row["algorithm"], row["dist_kind"])
            totals[key] = totals.get(key, 0) + int(row["cluster_size"]) * int(row["count"])
    assert len(totals) == 8
    for (_, dist), total in totals.items():
        assert total == 2 * sum(BenchmarkSpec("small", dist).sizes) * trials


def test_spacing_curve_examples(tmp_path):
    run(["spacing", "--dist", "uniform", "--n", "2", "--samples", "100", "--out", str(tmp_path / "u")])
    with open(tmp_path / "u" / "curve.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 512
    assert float(rows[0]["x"]) == 0 and float(rows[0]["density"]) == 2

    run(["spacing", "--dist", "balanced", "--n", "3", "--samples", "100", "--out", str(tmp_path / "b")])
    with open(tmp_path / "b" / "curve.csv") as fh:
        rows = [(float(r["x"]), float(r["density"])) for r in csv.DictReader(fh)]
    step = rows[1][0] - rows[0][0]
    x, y = max(rows, key=lambda r: r[1])
    assert abs(x - 1 / 3) <= step and abs(y - 3) <= 9 * step


@pytest.mark.slow
def test_spacing_wigner_reports_tv(capsys):
    code, _ = run(["spacing", "--dist", "wigner", "--samples", "1e6"])
    assert code == 0
    tv = float(capsys.readouterr().err.split("tv_distance=")[1])
    assert tv < 0.02
