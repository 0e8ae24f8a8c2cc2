import json
import shutil

from biliaison.cli import main
from biliaison.suite import EXPERIMENTS, golden_dir, paper_suite, run_experiment


def test_goldens_exist_for_every_experiment():
    assert {f.stem for f in golden_dir().glob("*.json")} == set(EXPERIMENTS)


def test_goldens_hold_no_witnesses():
    for f in golden_dir().glob("*.json"):
        assert set(json.loads(f.read_text())) == {"data", "verdicts"}


def test_perturbed_golden_is_a_named_diff(tmp_path):
    shutil.copytree(golden_dir(), tmp_path, dirs_exist_ok=True)
    path = tmp_path / "subcanonical.json"
    g = json.loads(path.read_text())
    g["data"]["ci22"] = 7
    path.write_text(json.dumps(g))
    r = run_experiment("subcanonical", goldens=tmp_path)
    assert r["status"] == "FAIL"
    assert r["golden_diff"] == ["data.ci22: expected 7, got 0"]


def test_seed_change_keeps_verdicts():
    names = ["subcanonical", "non_minimal", "residual", "annihilation"]
    a = paper_suite(seed=0, only=names)
    b = paper_suite(seed=11, only=names)
    for x, y in zip(a["experiments"], b["experiments"]):
        assert x["status"] == y["status"] == "PASS"
        assert x["data"] == y["data"]


def test_cli_paper_suite_single(capsys):
    assert main(["paper-suite", "--only", "residual"]) == 0
    assert "status: PASS" in capsys.readouterr().out
