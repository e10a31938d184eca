from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from jaffine.cli import main
from jaffine.harness import ConfigError, run_search, strip_timing, validate_report

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def _run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_binary_grid20(capsys, tmp_path):
    code, out, _ = _run(["construct", CONFIGS / "grid20_euclid_binary.json", "--cache-dir", tmp_path], capsys)
    assert code == 0
    rep = json.loads(out)
    validate_report(rep)
    sp = rep["stabilizer"][0]
    assert (sp["n"], sp["k"], sp["d_low"], sp["d_exact"], sp["q"]) == (20, 4, 4, 4, 2)
    assert rep["checks"]["self_orthogonal"] and rep["checks"]["cyclotomic_condition"]
    assert rep["discrepancies"] == []


def test_out_flag_writes_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = _run(["construct", CONFIGS / "grid20_euclid_binary.json", "--no-cache", "--out", target], capsys)
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["stabilizer"][0]["k"] == 4


def _write(tmp_path, cfg):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    return path


BASE = {"construction": "euclid-full", "p": 2, "field_degree": 4, "N": [4, 6], "J": [2]}


def test_precondition_failure_exits_2(capsys, tmp_path):
    # {1, 14} pairs with itself: 1 + 14 = 15 = 0 mod 15
    cfg = dict(BASE, N=[16], J=[1], deltas=[[1, 14]])
    code, _, err = _run(["construct", _write(tmp_path, cfg), "--no-cache"], capsys)
    assert code == 2
    assert "self-orthogonality condition failed" in err


def test_divisibility_error_exits_1(capsys, tmp_path):
    cfg = dict(BASE, N=[4, 7], deltas=[[[0, 1]]])
    code, _, err = _run(["construct", _write(tmp_path, cfg), "--no-cache"], capsys)
    assert code == 1
    assert "N_2" in err


@pytest.mark.parametrize(
    "cfg,needle",
    [
        (dict(BASE, construction="herm-full", field_degree=3, N=[8], J=[1], deltas=[[1]]), "even"),
        (dict(BASE, construction="euclid-subfield", subfield_degree=3, deltas=[[[0, 1]]]), "divide"),
        (dict(BASE, deltas=[[[9, 9]]]), "outside"),
        (dict(BASE, deltas=[[[0, 1]]], extra=1), "extra"),
        (dict(BASE, m=3, deltas=[[[0, 1]]]), "m = 3"),
    ],
)
def test_validation_errors_exit_1(capsys, tmp_path, cfg, needle):
    code, _, err = _run(["construct", _write(tmp_path, cfg), "--no-cache"], capsys)
    assert code == 1
    assert needle in err


def test_malformed_json_and_missing_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert _run(["construct", bad], capsys)[0] == 1
    assert _run(["construct", tmp_path / "missing.json"], capsys)[0] == 1


def test_unknown_table_exits_1(capsys):
    code, _, err = _run(["reproduce", "--table", "17"], capsys)
    assert code == 1 and "table" in err


def test_gv_check(capsys):
    code, out, _ = _run(["gv-check", 5, 1, 3, 2], capsys)
    assert code == 0 and json.loads(out)["gv"] is True
    code, out, _ = _run(["gv-check", 20, 2, 2, 2], capsys)
    assert json.loads(out)["gv"] is False
    assert _run(["gv-check", 5, 1, 3, 2, "--predicate", "other"], capsys)[0] == 1


def test_reproduce_rows_by_label(capsys, tmp_path):
    code, out, _ = _run(["reproduce", "--table", "tabla10", "--rows", "C1", "--cache-dir", tmp_path], capsys)
    assert code == 0
    rep = json.loads(out)
    (row,) = rep["rows"]
    sp = row["computed"]
    assert (sp["n"], sp["k"], sp["d_low"], sp["q"]) == (40, 32, 4, 3)
    assert rep["discrepancies"] == []


def test_search_zero_budget_is_empty(capsys):
    code, out, _ = _run(["search", CONFIGS / "search_grid20.json", "--budget", 0, "--no-cache"], capsys)
    assert code == 0
    assert json.loads(out)["stabilizer"] == []


def test_search_finds_known_grid20_codes(tmp_path):
    rep = run_search(CONFIGS / "search_grid20.json", "euclid", 10, 60, cache_dir=tmp_path)
    hits = [r for r in rep["stabilizer"] if (r["k"], r["d_low"]) == (4, 4)]
    assert any(sorted(map(tuple, r["sets"])) == [(0, 1), (1, 2)] for r in hits)
    herm = dict(json.loads((CONFIGS / "search_grid20.json").read_text()), subfield_degree=2)
    rep = run_search(herm, "herm", 60, 120, cache_dir=tmp_path)
    hits = [r for r in rep["stabilizer"] if (r["k"], r["d_low"]) == (8, 3)]
    assert any(sorted(map(tuple, r["sets"])) == [(0, 1), (0, 2), (2, 1)] for r in hits)


def test_report_is_deterministic_across_threads(tmp_path):
    outs = []
    for threads in (1, 2):
        path = tmp_path / f"r{threads}.json"
        subprocess.run(
            [sys.executable, "-m", "jaffine.cli", "construct", str(CONFIGS / "grid20_herm_binary.json"), "--no-cache",
             "--threads", str(threads), "--out", str(path)],
            check=True,
        )
        outs.append(strip_timing(json.loads(path.read_text())))
    assert outs[0] == outs[1]


def test_config_error_is_value_error():
    assert issubclass(ConfigError, ValueError)
