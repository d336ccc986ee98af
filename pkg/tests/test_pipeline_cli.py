import json
import subprocess
import sys
from pathlib import Path

import pytest

from toric_nccr.cli import main
from toric_nccr.pipeline import (
    PipelineConfig,
    dumps,
    parse_batch_file,
    parse_config_file,
    random_effective_weights,
    run_batch,
    run_pipeline,
)
from toric_nccr.weights import WeightData, check_effectiveness

GOLDEN = Path(__file__).parent / "golden" / "conifold.json"


def test_golden_conifold_bytes(tmp_path):
    out = tmp_path / "c.json"
    code = main(["analyze", "--weights", "1,1,-1,-1", "--truncation", "12", "--no-timing", "--out", str(out)])
    assert code == 0
    assert out.read_bytes() == GOLDEN.read_bytes()


def test_golden_content():
    r = json.loads(GOLDEN.read_text())
    res = r["results"]
    assert r["exit_status"] == 0 and r["stability"]["stable"]
    assert set(r["status"].values()) == {"pass"}
    assert res["checks"]["L"] == [0, 1]
    assert res["nccr"]["vertices"] == [0, 1]
    assert len(res["presentation"]["arrows"]) == 4
    assert res["presentation"]["relation_dims"]["3"] == 4
    assert res["resolution"]["lambda0_betti"] == [[0, 0], [-1] * 4, [-3] * 4, [-4, -4]]
    assert all(v == 0 for k, v in res["tilting"]["ext"]["totals"].items() if k != "0")
    assert res["end"]["dimension"] == 4 and res["end"]["diagonal"]


def test_validation_exit(capsys):
    assert main(["analyze", "--weights", "1,-1,0", "--no-timing"]) == 2
    r = json.loads(capsys.readouterr().out)
    assert r["error"]["code"] == "validation" and r["error"]["condition"] == "(1)"
    assert main(["analyze", "--weights", "2,2,-2,-2", "--tasks", "checks"]) == 2
    capsys.readouterr()
    assert main(["analyze", "--weights", "1,1,-1,-1", "--finite", "2:1,0,0,0"]) == 2
    r = json.loads(capsys.readouterr().out)
    assert r["error"]["condition"] == "unimodular"
    assert main(["analyze", "--weights", "1,1,-1,-1", "--truncation", "5"]) == 2
    capsys.readouterr()
    assert main(["analyze"]) == 2


def test_task_subset_and_dependencies():
    report, code = run_pipeline(PipelineConfig("1,1,-1,-1", tasks=("tilting",), timing=False))
    assert code == 0
    assert report["tasks_run"] == ["nccr", "resolution", "tilting"]
    with pytest.raises(Exception):
        PipelineConfig("1,1,-1,-1", tasks=("bogus",)).resolved_tasks()


def test_group_pipeline():
    report, code = run_pipeline(PipelineConfig("1,1,-1,-1", finite="2:1,1,1,1", tasks=("checks", "tilting"), timing=False))
    assert code == 0
    assert report["results"]["tilting"]["ext"]["vanishes_off_zero"]


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[pipeline]\nweights = 1,1,-1,-1\ntruncation = 12\ntasks = checks,nccr\n")
    c = parse_config_file(cfg)
    assert c.truncation == 12 and c.tasks == ("checks", "nccr")
    assert main(["analyze", "--config", str(cfg), "--no-timing"]) == 0
    r = json.loads(capsys.readouterr().out)
    assert r["config"]["truncation"] == 12 and "timing" not in r


def test_batch_empty_and_duplicates(tmp_path, capsys):
    assert run_batch([]) == []
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing here\n\n")
    assert main(["batch", "--input", str(empty)]) == 0
    assert json.loads(capsys.readouterr().out) == {"items": []}
    items = tmp_path / "items.txt"
    items.write_text("1,1,-1,-1 tasks=tilting\n1,1,-1,-1 tasks=tilting\n1,-1,0\n")
    configs = parse_batch_file(items)
    assert len(configs) == 3
    rows = run_batch(configs, workers=2)
    assert json.dumps(rows[0], sort_keys=True) == json.dumps(rows[1], sort_keys=True)
    assert rows[0]["ext_vanishes_off_zero"] and rows[2]["exit_status"] == 2


def test_batch_row_matches_golden(tmp_path, capsys):
    items = tmp_path / "items.txt"
    items.write_text("1,1,-1,-1 truncation=12\n")
    assert main(["batch", "--input", str(items)]) == 0
    row = json.loads(capsys.readouterr().out)["items"][0]
    gold = json.loads(GOLDEN.read_text())["results"]
    assert row["ext_totals"] == gold["tilting"]["ext"]["totals"]
    assert row["end_dimension"] == gold["end"]["dimension"]
    assert row["m"] == gold["tilting"]["m"]


def test_random_weights_are_effective():
    ws = random_effective_weights(30, seed=1)
    assert ws == random_effective_weights(30, seed=1)
    for s in ws:
        chi = tuple(int(x) for x in s.split(","))
        assert 4 <= len(chi) <= 6
        assert check_effectiveness(WeightData(chi)).effective


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'


def test_console_entry_point(tmp_path):
    out = subprocess.run(
        [sys.executable, "-m", "toric_nccr.cli", "analyze", "--weights", "1,1,-1,-1", "--tasks", "checks", "--no-timing"],
        capture_output=True, text=True,
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["status"] == {"checks": "pass"}


@pytest.mark.parametrize("finite,predicted,finite_seen", [("2:1,1,1,1", False, False), ("3:1,2,0,0", True, True)])
def test_quotient_prediction_group(finite, predicted, finite_seen):
    report, code = run_pipeline(PipelineConfig("1,1,-1,-1", finite=finite, tasks=("nccr",), timing=False))
    q = report["results"]["nccr"]["quotient_by_idempotent"]
    assert code == 0 and report["stability"]["stable"]
    assert q["predicted_finite"] is predicted and q["finite_at_truncation"] is finite_seen
