import copy
import json

import pytest

from fsemcalc.cli import main
from fsemcalc.suites import builtin_catalogue_config, run_config

SIGMA_DESC = {"space": "sigma_rho", "rho": 0.5}


def frechet_entry(name="q2", candidate=None, epsilon=0.1):
    params = {"J": [1], "epsilon": epsilon, "n_samples": 60}
    if candidate:
        params["candidate"] = candidate
    return {
        "name": name,
        "kind": "frechet",
        "operator": {
            "kind": "power",
            "params": {"m": 2},
            "domain": SIGMA_DESC,
            "codomain": SIGMA_DESC,
        },
        "point": {"prefix": [1], "tail": 0},
        "params": params,
    }


def write_config(tmp_path, config, name="config.json"):
    p = tmp_path / name
    p.write_text(json.dumps(config))
    return str(p)


def test_exit_zero_on_pass(tmp_path, capsys):
    cfg = write_config(tmp_path, {"seed": 42, "suites": [frechet_entry()]})
    out = tmp_path / "report.json"
    assert main(["frechet", "--config", cfg, "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["schema"] == "fsemcalc/1"
    assert report["summary"] == {"total": 1, "passed": 1, "failed": 0}
    w = report["suites"][0]["witness"]
    assert w["recipe"] == "power-sigma" and w["passed"]


def test_exit_two_on_wrong_candidate(tmp_path):
    entry = frechet_entry("q2-wrong", candidate={"form": "diagonal", "prefix": [3], "tail": 0})
    cfg = write_config(tmp_path, {"seed": 42, "suites": [entry]})
    out = tmp_path / "report.json"
    assert main(["frechet", "--config", cfg, "--out", str(out)]) == 2
    report = json.loads(out.read_text())
    assert report["summary"]["failed"] == 1
    assert report["suites"][0]["witness"]["dr_samples"]  # stored counterexamples


def test_exit_one_on_malformed_config(tmp_path):
    cfg = write_config(tmp_path, {"suites": [frechet_entry()]})  # no seed
    assert main(["suite", "--config", cfg]) == 1
    cfg = write_config(tmp_path, {"seed": 1, "suites": [{"name": "x", "kind": "bogus"}]})
    assert main(["suite", "--config", cfg]) == 1
    assert main(["suite", "--config", str(tmp_path / "missing.json")]) == 1


def test_empty_suites_ok(tmp_path):
    cfg = write_config(tmp_path, {"seed": 1, "suites": []})
    out = tmp_path / "r.json"
    assert main(["suite", "--config", cfg, "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["summary"]["total"] == 0


def test_list_and_filter(tmp_path, capsys):
    cfg = write_config(tmp_path, {"seed": 1, "suites": [frechet_entry("a"), frechet_entry("b")]})
    assert main(["frechet", "--config", cfg, "--list"]) == 0
    listed = capsys.readouterr().out
    assert "a  [frechet]" in listed and "b  [frechet]" in listed
    out = tmp_path / "r.json"
    assert main(["frechet", "--config", cfg, "--suite", "b", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert [s["name"] for s in report["suites"]] == ["b"]


def test_order_case_config(tmp_path):
    entries = [
        {
            "name": "square-increasing",
            "kind": "order",
            "operator": {"kind": "power", "params": {"m": 2}, "domain": SIGMA_DESC, "codomain": SIGMA_DESC},
            "point": {"prefix": [], "tail": 0},
            "claim": "increasing",
            "budget": 40,
        },
        {
            "name": "cube-credit-at-origin",
            "kind": "order",
            "operator": {"kind": "power", "params": {"m": 3}, "domain": {"space": "s"}, "codomain": {"space": "s"}},
            "point": {"prefix": [], "tail": 0},
            "claim": "credit",
            "directions": [{"prefix": [], "tail": 1}],
        },
        {
            "name": "cube-not-max-at-origin",
            "kind": "order",
            "operator": {"kind": "power", "params": {"m": 3}, "domain": {"space": "s"}, "codomain": {"space": "s"}},
            "point": {"prefix": [], "tail": 0},
            "claim": "max",
            "directions": [{"prefix": [], "tail": 1}],
        },
    ]
    cfg = write_config(tmp_path, {"seed": 5, "suites": entries})
    out = tmp_path / "r.json"
    assert main(["order", "--config", cfg, "--out", str(out)]) == 2  # the refuted max
    report = json.loads(out.read_text())
    by_name = {s["name"]: s["passed"] for s in report["suites"]}
    assert by_name["square-increasing"] and by_name["cube-credit-at-origin"]
    assert not by_name["cube-not-max-at-origin"]


def test_kind_filter_excludes_other_kinds(tmp_path):
    cfg = write_config(
        tmp_path,
        {"seed": 3, "suites": [frechet_entry("f"), {"name": "o", "kind": "order", "params": {"budget": 20}}]},
    )
    out = tmp_path / "r.json"
    assert main(["order", "--config", cfg, "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert [s["name"] for s in report["suites"]] == ["o"]


def _strip_timing(doc):
    doc = copy.deepcopy(doc)
    doc.pop("wall_clock_s", None)
    for s in doc["suites"]:
        s.pop("wall_clock_s", None)
    return doc


def test_determinism_same_seed():
    cfg = {"seed": 42, "suites": [frechet_entry()]}
    r1 = run_config(cfg)
    r2 = run_config(cfg)
    assert json.dumps(_strip_timing(r1), default=str) == json.dumps(_strip_timing(r2), default=str)


def test_seed_override_changes_samples():
    cfg = {"seed": 42, "suites": [frechet_entry()]}
    r1 = run_config(cfg)
    r2 = run_config(cfg, seed_override=7)
    assert r1["seed"] != r2["seed"]


def test_builtin_config_is_valid():
    cfg = builtin_catalogue_config()
    assert cfg["seed"] == 42
    names = [e["name"] for e in cfg["suites"]]
    assert len(names) == len(set(names))
    kinds = {e["kind"] for e in cfg["suites"]}
    assert kinds >= {"identity", "axioms", "frechet", "continuity", "gateaux", "order"}


@pytest.mark.slow
def test_builtin_catalogue_suite_passes():
    report = run_config(builtin_catalogue_config())
    failed = [s["name"] for s in report["suites"] if not s["passed"]]
    assert not failed, failed
