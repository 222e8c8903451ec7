import json

import numpy as np
import pytest

from heishardy.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out) if out.strip().startswith("{") else None


def test_dist_gauge_halfspace(capsys):
    code, doc = run_json(
        capsys, "dist", "--domain", "halfspace", "--metric", "gauge", "--point", "1,0,3", "--n", "1"
    )
    assert code == 0
    rec = doc["records"][0]
    assert abs(rec["distance"] - 1.189207115002721) <= 1e-12
    assert rec["multiplicity_tag"] == "unique"


def test_dist_torus_core_circle(capsys):
    code, doc = run_json(
        capsys,
        "dist", "--domain", "torus", "--R", "10", "--rho", "1",
        "--metric", "euclidean", "--point", "r=10,t=0",
    )
    assert code == 0
    rec = doc["records"][0]
    assert rec["distance"] == 1.0
    assert rec["multiplicity_tag"] == "circle"


def test_dist_cc_axis(capsys):
    code, doc = run_json(
        capsys, "dist", "--domain", "halfspace", "--metric", "cc", "--point", "0,0,0.6366198"
    )
    assert code == 0
    assert abs(doc["records"][0]["distance"] - 1.0) <= 1e-6


def test_dist_bad_point_exits_2(capsys):
    code, _ = run(capsys, "dist", "--domain", "halfspace", "--point", "1,2", "--n", "1")
    assert code == 2


def test_dist_unsupported_exits_3(capsys):
    code, _ = run(
        capsys, "dist", "--domain", "torus", "--metric", "cc", "--point", "r=10,t=0"
    )
    assert code == 3


def test_beta_cases(capsys):
    code, doc = run_json(capsys, "beta", "--p", "2", "--n", "1")
    assert code == 0 and doc["records"][0]["beta"] == 2.0
    assert doc["records"][0]["case"] == "p=2"
    code, doc = run_json(capsys, "beta", "--p", "3", "--n", "1")
    assert code == 0 and abs(doc["records"][0]["beta"] - 3.0) <= 1e-14
    assert doc["records"][0]["case"] == "p>=threshold"
    assert abs(doc["records"][0]["threshold"] - 2.25) <= 1e-15
    code, doc = run_json(capsys, "beta", "--p", "1.5", "--n", "1")
    assert code == 0 and abs(doc["records"][0]["beta"] - 3.0) <= 1e-14
    code, _ = run(capsys, "beta", "--p", "0.5", "--n", "1")
    assert code == 2


def test_verify_torus_pass_and_fail(capsys):
    code, doc = run_json(
        capsys, "verify", "--domain", "torus", "--p", "2", "--n", "1",
        "--R", "10", "--rho", "1", "--grid", "120",
    )
    assert code == 0 and doc["records"][0]["passed"]
    code, doc = run_json(
        capsys, "verify", "--domain", "torus", "--p", "2", "--n", "1",
        "--R", "1.5", "--rho", "1", "--grid", "60",
    )
    assert code == 1
    assert "condition (ii)" in doc["records"][0]["reason"]


def test_verify_halfspace_scans(capsys):
    code, doc = run_json(
        capsys, "verify", "--domain", "halfspace", "--metric", "gauge",
        "--p", "2.5", "--n", "2", "--grid", "120",
    )
    assert code == 0 and doc["records"][0]["passed"]
    code, doc = run_json(
        capsys, "verify", "--domain", "halfspace", "--metric", "cc", "--n", "1", "--grid", "80"
    )
    assert code == 0 and doc["records"][0]["passed"]


def test_quotient_rows(capsys):
    code, doc = run_json(
        capsys, "quotient", "--domain", "halfspace", "--metric", "gauge",
        "--p", "2", "--eps", "0.2,0.1,0.05", "--grid", "24,24",
    )
    assert code == 0
    rows = doc["records"]
    assert len(rows) == 3
    qs = [r["quotient"] for r in rows]
    assert all(q >= 0.25 - 1e-3 for q in qs)
    assert qs[0] > qs[1] > qs[2]
    assert all(r["target"] == 0.25 for r in rows)


def test_quotient_uncertainty_variant(capsys):
    code, doc = run_json(
        capsys, "quotient", "--domain", "halfspace", "--metric", "cc",
        "--check", "uncertainty", "--eps", "0.1", "--grid", "24,24",
    )
    assert code == 0
    assert doc["records"][0]["ratio"] >= 1.0 - 1e-3


def test_hconcavity_modes(capsys):
    code, doc = run_json(capsys, "hconcavity", "--mode", "cube", "--samples", "5000")
    assert code == 0 and doc["records"][0]["violations"] == 0
    code, doc = run_json(capsys, "hconcavity", "--mode", "counterexample", "--t-scale", "1e-3")
    assert code == 0 and doc["records"][0]["found"]


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"p": 2.0, "n": 2}))
    code, doc = run_json(capsys, "beta", "--config", str(cfg))
    assert code == 0 and doc["records"][0]["beta"] == 4.0  # from file: 2n with n=2
    code, doc = run_json(capsys, "beta", "--config", str(cfg), "--n", "3")
    assert code == 0 and doc["records"][0]["beta"] == 6.0  # flag wins
    assert doc["config"]["n"] == 3


def test_missing_config_file_exits_2(capsys):
    code, _ = run(capsys, "beta", "--config", "/nonexistent/x.json")
    assert code == 2


def test_csv_full_precision(tmp_path):
    out = tmp_path / "dist.csv"
    main(["dist", "--domain", "halfspace", "--metric", "gauge", "--point", "1,0,3",
          "--format", "csv", "--out", str(out)])
    lines = [l for l in out.read_text().splitlines() if not l.startswith("#")]
    header = lines[0].split(",")
    value = lines[1].split(",")[header.index("distance")]
    assert float(value) == 2.0**0.25  # 17 significant digits round-trip


def test_determinism_across_threads_and_runs(tmp_path):
    args = ["quotient", "--domain", "torus", "--metric", "euclidean", "--p", "2",
            "--eps", "0.1", "--grid", "16,16", "--format", "csv", "--seed", "11"]
    paths = []
    for i, threads in enumerate((1, 4, 16, 1)):
        p = tmp_path / f"out{i}.csv"
        assert main(args + ["--threads", str(threads), "--out", str(p)]) == 0
        paths.append(p.read_bytes())
    assert all(b == paths[0] for b in paths[1:])
