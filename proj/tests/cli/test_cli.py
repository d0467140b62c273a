import json
import os
import subprocess
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[2]
CLI = os.environ.get("JETLC_CLI", str(ROOT / "build" / "tools" / "jetlc"))
DEFAULT = ROOT / "configs" / "default.json"
GOLDEN = ROOT / "tests" / "golden" / "p1_witness_n2.json"


def run(*args, cwd=None):
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, cwd=cwd)


def write_json(path, value):
    path.write_text(json.dumps(value))
    return path


@pytest.fixture(scope="module")
def default_n2(tmp_path_factory):
    out = tmp_path_factory.mktemp("n2") / "report.json"
    proc = run("verify", "--config", DEFAULT, "--dim", 2, "--out", out)
    return proc, out


def test_verify_default_n2_passes(default_n2):
    proc, out = default_n2
    assert proc.returncode == 0, proc.stdout + proc.stderr
    report = json.loads(out.read_text())
    assert report["status"] == "pass"
    assert out.with_suffix(".md").read_text().startswith("# Verification report")


def test_verify_reports_are_byte_identical(default_n2, tmp_path):
    _, first = default_n2
    second = tmp_path / "report.json"
    assert run("verify", "--config", DEFAULT, "--dim", 2, "--out", second).returncode == 0
    assert first.read_bytes() == second.read_bytes()
    assert first.with_suffix(".md").read_bytes() == second.with_suffix(".md").read_bytes()


def test_verify_fractions_are_num_over_den(default_n2):
    _, out = default_n2
    report = json.loads(out.read_text())
    witness = next(c for c in report["checks"] if "stored witness" in c["name"])["witness"]
    assert witness["value"] == "-1/2"
    assert all("/" in v for v in witness["point"]["coordinates"].values())


def test_verify_corrupt_hook_fails_with_witness(tmp_path):
    proc = run("verify", "--config", ROOT / "tests" / "data" / "corrupt_christoffel.json", "--out", tmp_path / "r.json")
    assert proc.returncode == 1
    assert "[FAIL]" in proc.stdout
    assert "witness:" in proc.stderr
    report = json.loads((tmp_path / "r.json").read_text())
    failed = [c for c in report["checks"] if c["status"] == "fail"]
    assert failed and all(c["witness"] is not None for c in failed if c["suite"] == "geometry")


def test_verify_missing_config_exits_2(tmp_path):
    assert run("verify", "--config", tmp_path / "absent.json").returncode == 2


@pytest.mark.parametrize(
    "text",
    ["{not json", "[1, 2]", '{"seed": -3}', '{"dimensions": [5]}', '{"mode": "fast"}', '{"unknown_key": 1}',
     '{"metrics": [{"dimension": 2, "entries": [[{"0,0": "1"}]]}]}'],
)
def test_verify_malformed_config_exits_2(tmp_path, text):
    path = tmp_path / "bad.json"
    path.write_text(text)
    proc = run("verify", "--config", path)
    assert proc.returncode == 2, proc.stdout + proc.stderr
    assert "error" in proc.stderr


def test_verify_without_config_exits_2():
    assert run("verify").returncode == 2


def test_verify_bad_dim_exits_2():
    assert run("verify", "--config", DEFAULT, "--dim", 5).returncode == 2


def test_eval_omega_at_normal_point(tmp_path):
    point = write_json(tmp_path / "p.json", {"dimension": 2})
    vectors = write_json(tmp_path / "v.json", [{"y11": "1"}])
    proc = run("eval", "omega", "--point", point, "--vectors", vectors)
    assert proc.returncode == 0, proc.stderr
    out = json.loads(proc.stdout)
    assert out["value"] == [["1/2", "0/1"], ["0/1", "0/1"]]


def test_eval_theta_vanishes_on_holonomic_direction(tmp_path):
    point = write_json(tmp_path / "p.json", {"dimension": 2, "coordinates": {"y11,1": "3"}})
    # d/dx1 + 3 d/dy11 is tangent to a holonomic lift
    vectors = write_json(tmp_path / "v.json", [{"x1": "1", "y11": "3"}])
    out = json.loads(run("eval", "theta", "--point", point, "--vectors", vectors).stdout)
    assert out["value"] == [["0/1", "0/1"], ["0/1", "0/1"]]


def test_eval_p1_matches_golden_witness(tmp_path):
    golden = json.loads(GOLDEN.read_text())
    point = write_json(tmp_path / "p.json", golden["point"])
    vectors = write_json(tmp_path / "v.json", golden["vectors"])
    proc = run("eval", "p_1", "--point", point, "--vectors", vectors)
    assert proc.returncode == 0, proc.stderr
    out = json.loads(proc.stdout)
    assert out["value"] == golden["p_1"]["value"]
    assert out["brute_force"] == golden["p_1"]["value"]
    assert out["two_pi_power"] == golden["p_1"]["two_pi_power"]


def test_eval_euler_pf_reports_normalization(tmp_path):
    point = write_json(tmp_path / "p.json", {"dimension": 2})
    vectors = write_json(tmp_path / "v.json", [{"y11,2": "1"}, {"x2": "1"}])
    out = json.loads(run("eval", "euler_pf", "--point", point, "--vectors", vectors).stdout)
    assert out["two_pi_power"] == -1
    assert out["det_g"] == "1/1"


@pytest.mark.parametrize(
    "form,vectors",
    [("omega", [{"y11": "1"}, {"y22": "1"}]), ("zeta", [{"y11": "1"}]), ("p_1", [{"x1": "1"}]),
     ("omega", [{"y33": "1"}])],
)
def test_eval_bad_input_exits_2(tmp_path, form, vectors):
    point = write_json(tmp_path / "p.json", {"dimension": 2})
    vs = write_json(tmp_path / "v.json", vectors)
    assert run("eval", form, "--point", point, "--vectors", vs).returncode == 2


def test_eval_non_positive_definite_point_exits_2(tmp_path):
    point = write_json(tmp_path / "p.json", {"dimension": 2, "coordinates": {"y11": "-1"}})
    vs = write_json(tmp_path / "v.json", [{"y11": "1"}])
    assert run("eval", "omega", "--point", point, "--vectors", vs).returncode == 2


@pytest.mark.parametrize("n", [2, 3, 4])
def test_invariants_o(n):
    proc = run("invariants", "--dim", n, "--group", "O")
    assert proc.returncode == 0, proc.stderr
    out = json.loads(proc.stdout)
    assert out["invariants"]["invariant_dimension"] == 2
    assert out["basis_match"]["ok"] is True


def test_invariants_so4():
    out = json.loads(run("invariants", "--dim", 4, "--group", "SO").stdout)
    assert out["invariants"]["invariant_dimension"] == 2


def test_invariants_v3_is_zero():
    out = json.loads(run("invariants", "--dim", 3, "--group", "O", "--space", "V3").stdout)
    assert out["invariants"]["invariant_dimension"] == 0


def test_invariants_bad_group_exits_2():
    assert run("invariants", "--dim", 3, "--group", "U").returncode == 2
