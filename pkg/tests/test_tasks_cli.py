import json
import subprocess
import sys

import pytest

from qgrass.cli import main
from qgrass.tasks import TASKS, VerifyTask, run_task


def test_unknown_task_rejected():
    with pytest.raises(ValueError):
        VerifyTask("nope")


@pytest.mark.parametrize("name", TASKS)
def test_every_task_passes_at_n2(name):
    assert run_task(VerifyTask(name, n=2, r=1)).passed


def test_examples_from_contract():
    assert run_task(VerifyTask("manin-confluence", n=3)).passed
    rep = run_task(VerifyTask("poisson-table", n=3))
    assert rep.passed and "discrepancy flag: True" in rep.notes
    assert run_task(VerifyTask("main-theorem", n=2, r=1, N=3, D=3)).passed


def test_json_is_deterministic():
    t = VerifyTask("poisson-table", n=2, seed=7)
    a, b = run_task(t).to_json(), run_task(t).to_json()
    assert a == b
    assert "wall_time" not in json.loads(a)
    assert "wall_time" in json.loads(run_task(t).to_json(timing=True))


@pytest.mark.parametrize("name", ["manin-confluence", "qdet-central", "coaction", "big-cell", "coideal"])
def test_inverted_convention_structural_checks(name):
    n, r = (3, 1) if name != "big-cell" else (3, 2)
    assert run_task(VerifyTask(name, n=n, r=r, q_conv="inverted")).passed


def test_inverted_convention_limits():
    assert run_task(VerifyTask("vee-limit", n=2, q_conv="inverted")).passed
    assert run_task(VerifyTask("poisson-table", n=2, q_conv="inverted")).passed


def test_cli_exit_codes(capsys):
    assert main(["nf", "x[1,2]*x[1,1]"]) == 0
    assert capsys.readouterr().out.strip() == "(q^-1)*x[1,1]*x[1,2]"
    assert main(["nf", "x[9,9]"]) == 2
    assert main(["verify", "coaction", "--n", "3", "--r", "2"]) == 0
    assert main(["verify", "vee-limit", "--n", "3"]) == 1
    assert main(["poisson", "--n", "2", "x[1,1]", "x[1,2]"]) == 0
    assert capsys.readouterr().out.strip().endswith("x[1,1]*x[1,2]")


def test_cli_json(capsys):
    assert main(["qdet", "--n", "2", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["qdet"] == "x[1,1]*x[2,2] + (-q)*x[1,2]*x[2,1]"
    assert main(["minor", "1,2", "1,2", "--n", "3", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["minor"] == payload["qdet"]


def test_console_script_byte_stable():
    cmd = [sys.executable, "-m", "qgrass.cli", "verify", "all", "--n", "2", "--json"]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == 0 and a.stdout == b.stdout
    assert json.loads(a.stdout)["passed"] is True
