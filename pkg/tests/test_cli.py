import csv
import io
import json
import shutil
import subprocess

import numpy as np
import pytest

from orbitkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_filter(capsys):
    code, out, _ = run(capsys, "verify", "--filter", "jacobi")
    doc = json.loads(out)
    assert code == 0
    assert doc["schema"] == 1
    assert doc["checks"] and all("jacobi" in name for name in doc["checks"])


@pytest.mark.parametrize("fault", ["action", "algebra"])
def test_verify_fault_fails(capsys, fault):
    code, out, _ = run(capsys, "verify", "--filter", "jacobi" if fault == "algebra" else "coadjoint.flow",
                       "--inject-fault", fault)
    assert code == 1
    assert any(c["status"] == "fail" for c in json.loads(out)["checks"].values())


def test_verify_is_byte_identical(capsys):
    first = run(capsys, "--seed", "5", "verify", "--filter", "groups")[1]
    second = run(capsys, "verify", "--filter", "groups", "--seed", "5")[1]
    assert first == second
    assert json.loads(first)["environment"]["seed"] == 5


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--group", "poincare", "--point", '{"coords": {"h": 5, "p1": 3, "p2": 4}}')
    assert code == 0
    assert json.loads(out)["stratum"] == ["massless"]


def test_classify_bad_json(capsys):
    code, _, err = run(capsys, "classify", "--group", "poincare", "--point", "{h: 1}")
    assert code == 2
    assert "JSON" in err


def test_classify_unknown_coordinate(capsys):
    assert run(capsys, "classify", "--group", "poincare", "--point", '{"coords": {"m": 1}}')[0] == 2


def test_simulate_gm_csv(capsys):
    code, out, _ = run(capsys, "simulate", "--group", "galilei_maxwell_ext",
                       "--labels", '{"m": 1, "kappa": 0.5, "beta": 1, "C1": 0.3, "C2": 0.4}',
                       "--x0", '{"e1": 1}', "--t", "2", "--dt-out", "0.5")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:7] == ["t", "e1", "e2", "p1", "p2", "k1", "k2"]
    assert all(h.startswith("drift_") for h in rows[0][7:])
    last = [float(v) for v in rows[-1]]
    assert last[0] == 2.0
    assert last[3] == pytest.approx(-2.0, abs=1e-9)
    assert last[5] == pytest.approx(-2.0, abs=1e-9)  # k1 = -e t^2 / 2


def test_simulate_free_poincare_json(capsys):
    code, out, _ = run(capsys, "simulate", "--group", "poincare", "--labels", '{"m": 1, "s": 0.5}',
                       "--x0", '{"p1": 0.5, "k2": 1}', "--t", "4", "--dt-out", "1", "--format", "json")
    doc = json.loads(out)
    y = np.array(doc["y"])
    assert code == 0
    assert np.allclose(y[:, 2], 0.5 * np.array(doc["t"]), atol=1e-8)


def test_simulate_minimal_cyclotron(capsys):
    code, out, _ = run(capsys, "simulate", "--group", "galilei_maxwell_ext", "--picture", "minimal",
                       "--labels", '{"m": 1, "beta": 1}', "--x0", '{"pi1": 1}', "--t", "6.25", "--dt-out", "0.25",
                       "--format", "json")
    doc = json.loads(out)
    r = np.array(doc["y"])[:, 2:]
    # pi0 = (1, 0), r0 = 0: circle about (0, 1) of radius 1
    assert code == 0
    assert np.allclose(np.linalg.norm(r - [0, 1], axis=1), 1.0, atol=1e-9)


def test_simulate_domain_error(capsys):
    code, _, err = run(capsys, "simulate", "--group", "poincare_maxwell",
                       "--labels", '{"C0": 0.5, "C1": 0.3, "C2": 0.4}', "--x0", '{"e1": 0.1}',
                       "--t", "1", "--dt-out", "0.5")
    assert code == 1
    assert "e^2 > C0" in err


def test_simulate_missing_label(capsys):
    code, _, err = run(capsys, "simulate", "--group", "poincare", "--labels", '{"s": 1}', "--x0", "{}",
                       "--t", "1", "--dt-out", "0.5")
    assert code == 1
    assert "'m'" in err


def test_contract(capsys):
    code, out, _ = run(capsys, "contract", "--epsilons", "1e-1", "1e-2", "1e-3", "1e-4")
    doc = json.loads(out)
    assert code == 0
    assert doc["slope"] == pytest.approx(2.0, abs=0.05)
    assert set(doc["per_commutator"]) >= {"[K1'',K2'']", "[P1'',K1'']"}


def test_contract_single_commutator(capsys):
    code, out, _ = run(capsys, "contract", "--commutator", "K2,K1", "--epsilons", "1", "0.1", "0.01")
    doc = json.loads(out)
    assert doc["per_commutator"] == {"[K1'',K2'']": pytest.approx([1.0, 1e-2, 1e-4])}


def test_contract_needs_three_epsilons(capsys):
    assert run(capsys, "contract", "--epsilons", "0.1", "0.01")[0] == 2


def test_reps_check(capsys):
    code, out, _ = run(capsys, "reps-check", "--group", "poincare", "--labels", '{"m": 1, "s": 0.5}')
    doc = json.loads(out)
    assert code == 0
    assert doc["lambda"] == {"re": 0.0, "im": 1.0}
    assert max(doc["pair_residuals"].values()) <= 1e-6
    assert doc["casimir_residuals"]["pauli_lubanski"] <= 1e-6


def test_algebra_dump(capsys):
    code, out, _ = run(capsys, "algebra", "dump", "poincare")
    doc = json.loads(out)
    assert code == 0
    assert doc["basis"] == ["H", "P1", "P2", "K1", "K2", "J"]
    assert [0, 1, 3, 1.0] in doc["c"] or [0, 1, 3, -1.0] in doc["c"]


def test_algebra_dump_unknown(capsys):
    assert run(capsys, "algebra", "dump", "sl2")[0] == 2


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "verify", "--inject-fault", "everything")[0] == 2


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"command": "verify", "filter": "central", "seed": 9}))
    code, out, _ = run(capsys, "--config", str(cfg))
    doc = json.loads(out)
    assert code == 0
    assert list(doc["checks"]) == ["groups.central_elements"]
    assert doc["environment"]["seed"] == 9
    # flags on the command line override the file
    assert json.loads(run(capsys, "verify", "--config", str(cfg), "--seed", "1")[1])["environment"]["seed"] == 1


def test_bad_config(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"command": "verify", "colour": "blue"}))
    assert run(capsys, "--config", str(cfg))[0] == 2
    assert run(capsys, "verify", "--config", str(tmp_path / "missing.json"))[0] == 2


def test_output_file(tmp_path, capsys):
    path = tmp_path / "alg.json"
    assert run(capsys, "algebra", "dump", "galilei_ext", "-o", str(path))[0] == 0
    assert json.loads(path.read_text())["dim"] == 8


@pytest.mark.skipif(shutil.which("orbitkit") is None, reason="console script not installed")
def test_console_script():
    out = subprocess.run(["orbitkit", "verify", "--filter", "cli.exit"], capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["checks"]["cli.exit_codes"]["status"] == "pass"
