import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from symmetra.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_characters_csv(capsys):
    code, out, _ = call(capsys, "characters", "--group", "s3")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["irrep", "dim", "(1,1,1) [1]", "(2,1) [3]", "(3) [2]"]
    assert rows[3] == ["(2,1)", "2", "2", "0", "-1"]


def test_characters_json_product(capsys):
    code, out, _ = call(capsys, "characters", "--group", "s3xz2", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["irreps"]) == 6


def test_qct_json(capsys):
    code, out, _ = call(capsys, "qct", "--group", "z8")
    data = json.loads(out)
    assert code == 0 and data["n_anc"] == 3
    M = np.array([[complex(*z) for z in row] for row in data["matrix"]])
    np.testing.assert_allclose(M.conj().T @ M, np.eye(8), atol=1e-12)


def test_unknown_group_is_usage_error(capsys):
    code, _, err = call(capsys, "characters", "--group", "q3")
    assert code == 2 and "usage error" in err


def test_too_large_group_is_usage_error(capsys):
    assert call(capsys, "characters", "--group", "s7")[0] == 2


def test_missing_argument_exits_2():
    with pytest.raises(SystemExit) as exc:
        run(["project", "--rep", "perm:3:1"])
    assert exc.value.code == 2


def test_project_symmetric_state(capsys):
    code, out, _ = call(capsys, "project", "--rep", "perm:3:1", "--irrep", "(3)", "--state", "0")
    data = json.loads(out)
    assert code == 0 and data["probability"] == pytest.approx(1)


def test_project_zero_probability_is_invariant_failure(capsys):
    code, _, err = call(capsys, "project", "--rep", "perm:3:1", "--irrep", "(1,1,1)", "--state", "0")
    assert code == 1 and "invariant" in err


def test_tgsa_is_deterministic(capsys):
    a = call(capsys, "tgsa", "--rep", "perm:3:1", "--seed", "7")[1]
    b = call(capsys, "tgsa", "--rep", "perm:3:1", "--seed", "7")[1]
    c = call(capsys, "tgsa", "--rep", "perm:3:1", "--seed", "8")[1]
    assert a == b and a != c


def test_tgsa_branch_sum_bounded(capsys):
    data = json.loads(call(capsys, "tgsa", "--rep", "ising:4", "--state", "0b1100")[1])
    assert sum(br["probability"] for br in data["branches"]) == pytest.approx(1, abs=1e-10)


def test_sqpe_h2_csv(capsys):
    code, out, _ = call(capsys, "sqpe", "--model", "h2", "--n", "4")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert set(rows[0]) == {"statistics", "spin", "u", "probability", "energy"}
    assert sum(float(r["probability"]) for r in rows) == pytest.approx(1, abs=1e-8)


def test_sqpe_harper(capsys):
    code, out, _ = call(capsys, "sqpe", "--model", "harper", "--m", "2", "--b", "1/2", "--n", "3", "--state", "5")
    assert code == 0
    assert out.splitlines()[0] == "irrep_label,u,probability,energy"


def test_model_ising_and_h2(capsys):
    code, out, _ = call(capsys, "model", "ising", "--n", "4")
    assert code == 0 and len(out.splitlines()) == 17
    code, out, _ = call(capsys, "model", "h2")
    assert code == 0 and len(out.splitlines()) == 17


def test_model_harper_sweep(capsys):
    code, out, _ = call(capsys, "model", "harper", "--m", "2", "--sweep", "q<=4")
    assert code == 0
    assert len(out.splitlines()) == 1 + 7 * 16


def test_resources_formats(capsys):
    code, out, _ = call(capsys, "resources", "--m-max", "3", "--scheme", "incrementer", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and [r["select_applications"] for r in rows] == [1, 3, 7]
    code, out, _ = call(capsys, "resources", "--unary", "3", "3")
    assert code == 0 and "32" in out.splitlines()[1]


def test_bad_config_path(capsys):
    assert call(capsys, "model", "h2", "--config", "/nonexistent.json")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "symmetra", "characters", "--group", "s2"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.startswith("irrep,dim")


def test_selftest_corruption_fails(capsys):
    from symmetra import acceptance

    res = acceptance.criterion_1(corrupt=True)
    assert not res.passed
