import json

import pytest

from thetapairs.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_pair_command(capsys):
    code, out, _ = run(capsys, "pair", "1", "0")
    assert code == 0
    data = json.loads(out)
    assert data["schema"].startswith("thetapairs-report/")
    assert data["group"] == "S3"
    assert data["S1"] == ["(1,3,2)", "(1,3)", "(1,2,3)"]


def test_pair_a5(capsys):
    code, out, _ = run(capsys, "pair", "2", "0")
    assert code == 0
    assert json.loads(out)["num_cayley_vertices"] == 60


def test_wilson_exception_exit_code(capsys):
    code, _, err = run(capsys, "pair", "2", "1")
    assert code == 2
    assert "Wilson" in err


def test_mixed_class_exit_code(capsys):
    code, _, err = run(capsys, "pair", "1", "1")
    assert code == 2


def test_resource_cap_exit_code(capsys):
    code, _, err = run(capsys, "verify", "1", "8", "--cap-elements", "1000")
    assert code == 3
    assert "cap" in err


def test_walk_csv_matches_reference_table(capsys, tmp_path):
    code, _, _ = run(capsys, "walk", "1", "0", "--T", "5",
                     "--format", "csv", "--out", str(tmp_path))
    assert code == 0
    mu1 = (tmp_path / "mu1.csv").read_text().splitlines()
    assert mu1[3] == "2,3/9,1/9,1/9,0/9,2/9,2/9"
    assert mu1[6] == "5,30/243,46/243,46/243,51/243,35/243,35/243"
    tv = (tmp_path / "tv.csv").read_text().splitlines()
    assert all(line.endswith("True") for line in tv[1:])


def test_verify_all_pass(capsys):
    code, out, _ = run(capsys, "verify", "1", "0", "--trunc", "8")
    assert code == 0
    data = json.loads(out)
    assert data["all_pass"]
    assert {c["check"] for c in data["checks"]} == {
        "walk-distance-equality", "spectra-product", "spectra-reflection",
        "non-isomorphism", "zeta-L-factorization",
    }


def test_spectra_command(capsys):
    code, out, _ = run(capsys, "spectra", "1", "0")
    assert code == 0
    data = json.loads(out)
    assert data["charpolys"]["Z"] == [0, 0, -3, 1]


def test_export_dot_and_json(capsys, tmp_path):
    code, _, _ = run(capsys, "export", "1", "0",
                     "--format", "dot", "json", "--out", str(tmp_path))
    assert code == 0
    for name in ("X1.dot", "X2.dot", "Y.dot", "Z.dot", "rhopsi.dot",
                 "theta.dot", "pair.json", "phi.json"):
        assert (tmp_path / name).exists()
    assert (tmp_path / "X1.dot").read_text().startswith("digraph")
    phi = json.loads((tmp_path / "phi.json").read_text())
    assert len(phi["elements"]) == 6


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
