import csv
import io
import json
import math
import subprocess
import sys

import pytest

from ghbounds.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return json.loads(out)


VG4 = ("--family", "vg", "--r", "4", "--theta", "1", "--sigma", "1")


def test_mode_example():
    rec = call_json("mode", *VG4, "--format", "json")
    assert rec["command"] == "mode"
    assert abs(rec["results"]["mode"] - 1.70711) < 1e-5
    assert rec["results"]["method"] == "closed_form"
    assert rec["inputs"]["r"] == 4.0


def test_mckay_domain_exit():
    code, out, err = call("mode", "--family", "mckay", "--m", "-0.7", "--b", "1", "--c", "2")
    assert code == 2 and "requires m > -1/2" in err


def test_table_text():
    code, out, err = call("table", "--which", "1", "--format", "text")
    assert code == 0
    assert "9.001" in out and "0.00582" in out


def test_table_json_within_tolerance():
    rec = call_json("table", "--which", "2")
    assert rec["results"]["max_abs_diff"] <= 0.0015


@pytest.mark.parametrize("argv", [
    ("mode", *VG4, "--bogus", "1"),
    ("mode", *VG4, "--c", "2"),
    ("mode", "--family", "mckay", "--m", "1", "--b", "1", "--phi", "1", "--c", "2"),
    ("frobnicate",),
    ("mode", "--family", "cauchy"),
])
def test_usage_errors_exit_64(argv):
    code, _, err = call(*argv)
    assert code == 64 and err


def test_convergence_exit_3():
    code, _, err = call("median", *VG4, "--tol", "1e-20")
    assert code == 3 and "achieved" in err


def test_gh_domain_message():
    code, _, err = call("pdf", "--family", "gh", "--lambda", "1", "--alpha", "1", "--beta", "2",
                        "--delta", "1", "--x", "0")
    assert code == 2 and "requires |beta| <= alpha" in err


def test_achieved_tol_on_every_command():
    for argv in (("pdf", *VG4, "--x", "1"), ("cdf", *VG4, "--x", "1"), ("mean", *VG4),
                 ("mode", *VG4), ("median", *VG4),
                 ("median", "--family", "gamma", "--shape", "2", "--rate", "1")):
        rec = call_json(*argv)
        assert "achieved_tol" in rec["results"], argv
        assert rec["results"]["achieved_tol"] <= rec["results"].get("requested_tol", math.inf)


def test_median_matches_library():
    from ghbounds.distributions import VGParams
    from ghbounds.median import median
    rec = call_json("median", *VG4)
    assert rec["results"]["median"] == median(VGParams(4.0, 1.0, 1.0)).median


def test_conjectured_block_is_separate():
    rec = call_json("median-bounds", *VG4)
    res = rec["results"]
    assert all(not e["kind"].startswith("conjectured") for e in res["proven"])
    assert res["conjectured"] and all(e["kind"].startswith("conjectured") for e in res["conjectured"])
    assert any("CONJECTURED" in w for w in rec["warnings"])
    code, out, _ = call("median-bounds", *VG4, "--format", "text")
    proven, conj = out.split("[conjectured]")
    assert "c3." not in proven and "c3.lower" in conj


def test_mode_bounds_gh():
    rec = call_json("mode-bounds", "--family", "gh", "--lambda", "2", "--alpha", "2",
                    "--beta", "1", "--delta", "1")
    names = {e["name"] for e in rec["results"]["mode_bounds"]}
    assert {"mode1.lower", "mode1.upper", "mode29"} <= names


def test_vg2_and_vg_are_distinct_families():
    a = call_json("mean", "--family", "vg2", "--lambda", "3", "--alpha", "2", "--beta", "0.5")
    assert a["inputs"]["family"] == "vg2"
    code, _, _ = call("mean", "--family", "vg2", "--r", "3", "--alpha", "2", "--beta", "0.5")
    assert code == 64


def test_csv_output():
    code, out, _ = call("cdf", "--family", "gamma", "--shape", "1", "--rate", "1", "--x", "1",
                        "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["key", "value"]
    vals = dict(rows[1:])
    assert abs(float(vals["cdf"]) - (1 - math.exp(-1))) < 1e-10


def test_sweep_json_and_csv():
    rec = call_json("sweep", "--conjecture", "C4", "--m", "0", "--grid-min", "1.01",
                    "--grid-max", "16", "--points", "20")
    assert rec["results"]["verdict"] == "monotone_consistent"
    assert len(rec["results"]["grid"]) == 20
    code, out, _ = call("sweep", "--conjecture", "C3", "--r", "5", "--grid-min", "0.1",
                        "--grid-max", "30", "--points", "20", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and len(rows) == 21


def test_schur_check_command():
    rec = call_json("schur-check", "--r", "1", "--pairs", "1,1:0.5,1.5", "--t", "1,6")
    items = rec["results"]["checks"]
    assert [i["regime"] for i in items] == ["convex", "concave"]
    assert all(i["ok"] for i in items)


def test_out_file(tmp_path):
    path = tmp_path / "mode.json"
    code, out, _ = call("mode", *VG4, "--out", str(path))
    assert code == 0
    assert json.loads(path.read_text())["results"]["mode"] == pytest.approx(1.7071067811865475)


def test_deterministic_output():
    argv = ("sweep", "--conjecture", "C1", "--r", "1", "--grid-min", "0.1", "--grid-max", "0.9",
            "--points", "20", "--seed", "3")
    assert call(*argv)[1] == call(*argv)[1]


def test_json_round_trip_is_lossless():
    code, out, _ = call("mode", "--family", "gh", "--lambda", "3", "--alpha", "2", "--beta", "1",
                        "--delta", "1")
    rec = json.loads(out)
    assert json.dumps(rec) == out.strip()
    from ghbounds.distributions import GHParams
    from ghbounds.mode import gh_mode
    assert rec["results"]["mode"] == gh_mode(GHParams(3.0, 2.0, 1.0, 1.0)).mode


def test_version_and_module_entry():
    rec = call_json("version")
    assert rec["results"]["version"] == "0.1.0"
    p = subprocess.run([sys.executable, "-m", "ghbounds", "mode", *VG4], capture_output=True,
                       text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["results"]["method"] == "closed_form"
    p = subprocess.run([sys.executable, "-m", "ghbounds", "mode", *VG4, "--nope"],
                       capture_output=True, text=True)
    assert p.returncode == 64
