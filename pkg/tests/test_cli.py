import json
import subprocess
import sys

import pytest

from dpcolor.cli import main
from dpcolor.formats import cover_from_json, read_cover


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize(
    "argv, golden, code",
    [
        (["chi-dp", "c4.txt"], "c4_chi_dp.json", 0),
        (["bounds", "k33.json"], "k33_bounds.json", 0),
        (["construct-hard", "--n", "6", "--refute"], "hard6_report.json", 1),
        (["solve", "hard6_cover.json"], "hard6_solve.json", 1),
    ],
)
def test_golden_reports(capsys, data_dir, argv, golden, code):
    args = [data_dir / a if a.endswith((".txt", ".json")) else a for a in argv]
    got, out, _ = run(capsys, *args)
    assert got == code
    assert out == (data_dir / golden).read_text()


def test_sidecars_match_golden(tmp_path, capsys, data_dir):
    cover, labels = tmp_path / "c.json", tmp_path / "l.json"
    code, _, _ = run(capsys, "construct-hard", "--n", 6, "--cover-out", cover, "--labels-out", labels)
    assert code == 0
    assert cover.read_text() == (data_dir / "hard6_cover.json").read_text()
    assert labels.read_text() == (data_dir / "hard6_labels.json").read_text()
    names = json.loads(labels.read_text())
    assert names["0"] == ["x", 0, 0] and names["31"] == ["a1", 1, 1]


def test_out_flag(tmp_path, capsys, data_dir):
    out = tmp_path / "r.json"
    code, stdout, _ = run(capsys, "chi-dp", data_dir / "c4.txt", "--out", out)
    assert code == 0 and stdout == ""
    assert json.loads(out.read_text()) == {"chi_dp": 3}


def test_solve_sat(tmp_path, capsys):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"base": {"n": 2, "edges": [[0, 1]]}, "lists": [[0, 1], [2, 3]], "h_edges": [[0, 2], [1, 3]]}))
    code, out, _ = run(capsys, "solve", p)
    report = json.loads(out)
    assert code == 0 and report["status"] == "sat"
    c = read_cover(p)
    assert len(report["witness"]) == 2 and report["witness"][1] not in c.h_adj[report["witness"][0]]


def test_verify_cover(tmp_path, capsys):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"base": {"n": 2, "edges": [[0, 1]]}, "lists": [[0, 1], [2, 3]], "h_edges": [[0, 2], [0, 3]]}))
    code, out, _ = run(capsys, "verify-cover", p)
    assert code == 1
    assert [v["axiom"] for v in json.loads(out)["violations"]] == ["cross-matching"]


def test_reduce_list(tmp_path, capsys, data_dir):
    lists = tmp_path / "l.json"
    lists.write_text(json.dumps([[1, 2]] * 4))
    code, out, _ = run(capsys, "reduce-list", data_dir / "c4.txt", lists, "--solve")
    report = json.loads(out)
    assert code == 0
    colors = report["coloring"]
    assert all(colors[u] != colors[v] for u, v in [(0, 1), (1, 2), (2, 3), (0, 3)])
    cover_from_json(report["cover"])
    lists.write_text(json.dumps([[1]] * 4))
    code, out, _ = run(capsys, "reduce-list", data_dir / "c4.txt", lists, "--solve")
    assert code == 1 and json.loads(out)["coloring"] is None


def test_z_dp(capsys, data_dir):
    code, out, _ = run(capsys, "z-dp", data_dir / "c4.txt", "--s-max", 2)
    assert code == 0 and json.loads(out)["z_dp"] == 1
    code, out, _ = run(capsys, "z-dp", data_dir / "c4.txt", "--s-max", 0)
    assert code == 1 and json.loads(out)["z_dp"] is None


@pytest.mark.parametrize(
    "sizes, extra, code, sigma",
    [
        ("20", ["--a-list-min", "20"], 0, 12),
        ("19", ["--a-list-min", "19"], 1, 12),
        ("20,20,20,20,20,20", ["--a-list-min", "20"], 0, 12),
    ],
)
def test_sigma(capsys, data_dir, sizes, extra, code, sigma):
    a_size = "18" if sizes.startswith("20") else "17"
    got, out, _ = run(capsys, "sigma", data_dir / "k33.json", "--a-size", a_size, "--list-sizes", sizes, *extra)
    assert got == code and json.loads(out)["sigma"] == sigma


def test_guarantee(capsys):
    assert run(capsys, "guarantee", "--n", 100, "--r", 99)[0] == 0
    assert run(capsys, "guarantee", "--n", 100, "--r", 90)[0] == 1


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["construct-hard", "--n", "5"], "even"),
        (["sigma", "k33.json", "--a-size", "1", "--list-sizes", "3,3"], "expected 1 or 6"),
        (["chi-dp", "missing.txt"], "missing.txt"),
    ],
)
def test_errors_exit_two(capsys, data_dir, argv, fragment):
    args = [data_dir / a if a.endswith((".txt", ".json")) else a for a in argv]
    code, _, err = run(capsys, *args)
    assert code == 2 and fragment in err


def test_parse_diagnostic(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("3 2\n0 1\n1 9\n")
    code, _, err = run(capsys, "chi-dp", p)
    assert code == 2 and "line 3" in err


def test_node_cap_is_resource_error(capsys):
    code, _, err = run(capsys, "construct-hard", "--n", 6, "--refute", "--node-cap", 3)
    assert code == 2 and "exceeded" in err


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["chi-dp"], ["guarantee", "--n", "3", "--r", "2", "--bogus"]])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_version_via_module():
    out = subprocess.run([sys.executable, "-m", "dpcolor", "--version"], capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "dpcolor 0.1.0 (schema 1)"
