import json
import os
import shutil
import subprocess
import sys

import pytest

from fnconf.cli import cell_count, main, parse_range, UsageError
from fnconf.foxneuwirth import enumerate_cells
from fnconf.golden import GOLDEN_DIR


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_range():
    assert parse_range("1..3", "n") == [1, 2, 3]
    assert parse_range("2,5", "n") == [2, 5]
    with pytest.raises(UsageError):
        parse_range("3..1", "n")
    with pytest.raises(UsageError):
        parse_range("x", "n")


def test_cell_count_matches_enumeration():
    for n in range(1, 5):
        for m in range(0, 4):
            assert cell_count(n, m) == sum(len(enumerate_cells(n, m, d)) for d in range(n, 2 * n + 1))


def test_charsum_rows(capsys):
    code, out, _ = run(["charsum", "--q", "3", "--n", "1..2", "--m", "1..2", "--order", "2"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1
    assert len(doc["rows"]) == 4 and all(r["within_bound"] for r in doc["rows"])


def test_charsum_rejections(capsys):
    assert run(["charsum", "--q", "3", "--n", "1", "--m", "1", "--order", "1"], capsys)[0] == 2
    assert run(["charsum", "--q", "6", "--n", "1", "--m", "1"], capsys)[0] == 2
    assert run(["charsum", "--q", "7", "--n", "1", "--m", "1", "--order", "4"], capsys)[0] == 2
    code, _, err = run(["charsum", "--q", "9", "--n", "4", "--m", "4", "--budget", "1000"], capsys)
    assert code == 3 and "43046721" in err
    assert run(["charsum", "--bogus"], capsys)[0] == 2


def test_charsum_csv(capsys, tmp_path):
    path = tmp_path / "out.csv"
    code, _, _ = run(["charsum", "--q", "5", "--n", "1", "--m", "1..2", "--order", "2,4", "--format", "csv", "-o", str(path)], capsys)
    lines = path.read_text().splitlines()
    assert code == 0 and len(lines) == 5 and lines[0].startswith("bound,d,")


def test_homology_quadratic(capsys):
    code, out, _ = run(["homology", "--n", "3", "--m", "2", "--p-order", "2"], capsys)
    row = json.loads(out)["rows"][0]
    assert code == 0
    assert row["engines_agree"] and row["matrices_equal"] and row["matches_prediction"]
    assert row["D"]["conf_dims"] == row["F"]["conf_dims"] == {"0": 0, "1": 0, "2": 1, "3": 2}


def test_homology_untwisted_torsion(capsys):
    code, out, _ = run(["homology", "--n", "4", "--m", "0", "--p-order", "1", "--q-order", "1"], capsys)
    row = json.loads(out)["rows"][0]
    assert code == 0 and row["D"]["scalar"] == "Z"
    assert row["D"]["conf_torsion"]["2"] == [2]


def test_homology_classical(capsys):
    code, out, _ = run(["homology", "--n", "2", "--m", "0"], capsys)
    row = json.loads(out)["rows"][0]
    assert code == 0 and row["F"] is None
    assert row["D"]["conf_dims"] == {"0": 1, "1": 1, "2": 0}


def test_homology_refusal(capsys):
    code, _, err = run(["homology", "--n", "6", "--m", "3"], capsys)
    assert code == 3 and "cells" in err


def test_emit_matrices(capsys, tmp_path):
    code, out, _ = run(["homology", "--n", "2", "--m", "1", "--p-order", "3", "--emit-matrices", str(tmp_path)], capsys)
    files = json.loads(out)["rows"][0]["matrix_files"]
    assert code == 0 and files and all((tmp_path / f).exists() for f in files)
    assert (tmp_path / files[0]).read_text().split("\n")[0].endswith(" 3")


def test_json_deterministic_across_threads(capsys):
    args = ["homology", "--n", "1..3", "--m", "0..2", "--p-order", "4"]
    _, a, _ = run(args + ["--threads", "1"], capsys)
    _, b, _ = run(args + ["--threads", "3"], capsys)
    assert a == b


def test_verify_and_predict(capsys):
    assert run(["verify", "--n", "1..3", "--m", "1..2", "--p-order", "3"], capsys)[0] == 0
    code, out, _ = run(["predict", "--n", "2", "--m", "3", "--p-order", "3", "--q", "9", "--order", "2,4"], capsys)
    row = json.loads(out)["rows"][0]
    assert code == 0 and row["prediction"]["dims"]["2"] == 3
    assert row["charsum_bounds"]["2"]["vanishing_threshold"] == 1


def test_selftest_corrupted_golden(capsys, tmp_path):
    gdir = tmp_path / "golden"
    shutil.copytree(GOLDEN_DIR, gdir)
    victim = "D_n2_m1_p3_d3.txt"
    text = (gdir / victim).read_text().splitlines()
    text[1] = text[1].rsplit(" ", 1)[0] + " 7"
    (gdir / victim).write_text("\n".join(text) + "\n")
    os.remove(gdir / "D_n1_m0_Z_d2.txt")
    code, out, _ = run(["selftest", "--fast", "--golden-dir", str(gdir)], capsys)
    assert code == 1
    line = next(l for l in out.splitlines() if "golden" in l)
    assert line.startswith("[FAIL]") and victim in line and "D_n1_m0_Z_d2.txt" in line


def test_write_golden_round_trip(capsys, tmp_path):
    code, out, err = run(["selftest", "--write-golden", "--golden-dir", str(tmp_path)], capsys)
    assert code == 0, err
    assert sorted(os.listdir(tmp_path)) == sorted(f for f in os.listdir(GOLDEN_DIR) if f.endswith(".txt"))


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "fnconf", "predict", "--n", "2", "--m", "2", "--p-order", "2"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["schema"] == 1
