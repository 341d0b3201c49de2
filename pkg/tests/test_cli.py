"""Command-line front end: golden reports, exit codes, determinism."""

import io
import json
import subprocess
import sys
from contextlib import redirect_stdout
from pathlib import Path

import pytest

from redsep import __version__, canonical_json
from redsep.cli import main

HERE = Path(__file__).resolve().parent
ROOT = HERE.parent
GOLDEN = HERE / "golden"
CORPUS = ROOT / "corpus"
INSTANCES = ROOT / "instances" / "transfer"

UNION2 = {"alphabet": 2, "branches": [[0], [1]], "mode": "range"}
AOP22 = {
    "alphabet": 2,
    "branches": [[0, 0], [0, 1], [1, 0], [1, 1]],
    "mode": "range",
}
CONNECTED3 = {"n": 3, "subbasis": [[1], [2], [1, 2]]}


def run_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def write_instance(tmp_path, doc, name="instance.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.mark.parametrize(
    "name, command, expected_code",
    [
        ("reduction-five-opens", "check-reduction", 1),
        ("sierpinski-zeros", "space", 0),
        ("sierpinski-square", "space", 0),
    ],
)
def test_golden_reports_are_reproduced_byte_for_byte(name, command, expected_code):
    code, out = run_cli([command, str(GOLDEN / f"{name}-instance.json")])
    assert code == expected_code
    assert out == (GOLDEN / f"{name}-report.json").read_text()


def test_eval_reports_the_value(tmp_path):
    inst = write_instance(
        tmp_path,
        {
            "base": UNION2,
            "family": {
                "universe": 2,
                "mode": "range",
                "assignments": {"0": [0], "1": [1]},
            },
        },
    )
    code, out = run_cli(["eval", inst])
    report = json.loads(out)
    assert code == 0
    assert report["command"] == "eval" and report["version"] == __version__
    assert report["value"] == [0, 1] and report["dual"] is False
    assert report["timing"] is None and report["seed"] == 0

    code, out = run_cli(["eval", "--seed", "7", "--timing", inst])
    report = json.loads(out)
    assert report["seed"] == 7 and isinstance(report["timing"], float)


def test_eval_dual_and_prefix_modes(tmp_path):
    inst = write_instance(
        tmp_path,
        {
            "base": AOP22,
            "family": {
                "universe": 2,
                "mode": "range",
                "assignments": {"0": [], "1": []},
            },
            "dual": True,
        },
    )
    code, out = run_cli(["eval", inst])
    assert code == 0 and json.loads(out)["value"] == []

    inst = write_instance(
        tmp_path,
        {
            "base": {"alphabet": 1, "branches": [[0, 0]], "mode": "prefix"},
            "family": {
                "universe": 2,
                "mode": "prefix",
                "assignments": {"0": [0, 1], "0,0": [1]},
            },
        },
        name="prefix.json",
    )
    code, out = run_cli(["eval", inst])
    assert code == 0 and json.loads(out)["value"] == [1]


def test_eval_reads_stdin(tmp_path, monkeypatch):
    doc = {
        "base": UNION2,
        "family": {"universe": 1, "mode": "range", "assignments": {"0": [], "1": [0]}},
    }
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(doc)))
    code, out = run_cli(["eval", "-"])
    assert code == 0 and json.loads(out)["value"] == [0]


def test_generate_lists_the_outcome_class(tmp_path):
    inst = write_instance(
        tmp_path,
        {
            "base": AOP22,
            "generators": {"universe": 3, "members": [[0, 1], [1, 2]]},
            "mode": "prefix",
        },
    )
    code, out = run_cli(["generate", inst])
    report = json.loads(out)
    assert code == 0 and report["count"] == 4
    assert report["members"] == [[1], [0, 1], [1, 2], [0, 1, 2]]

    inst = write_instance(tmp_path, {
        "base": AOP22,
        "generators": {"universe": 3, "members": [[0, 1], [1, 2]]},
    }, name="range.json")
    report = json.loads(run_cli(["generate", inst])[1])
    assert report["mode"] == "range" and report["count"] == 3


def test_check_reduction_on_an_inline_class(tmp_path):
    inst = write_instance(
        tmp_path,
        {"class": {"universe": 2, "members": [[], [0], [1], [0, 1]]}},
    )
    code, out = run_cli(["check-reduction", inst])
    report = json.loads(out)
    assert code == 0 and report["verdict"] is True
    assert report["witness_count"] == 16 and len(report["witnesses"]) == 16
    first = report["witnesses"][0]
    assert set(first) == {"a", "b", "c", "d"}


def test_check_separation_reports_the_failing_pair(tmp_path):
    inst = write_instance(
        tmp_path,
        {"class": {"universe": 3, "members": [[], [0], [1], [0, 1, 2]]}},
    )
    code, out = run_cli(["check-separation", inst])
    report = json.loads(out)
    assert code == 1
    assert report["verdict"] is False
    assert report["failing_pair"] == [[0], [1]]
    assert report["witnesses"] is None


def test_transfer_runs_the_shipped_instances():
    code, out = run_cli(["transfer", str(INSTANCES / "12-merge32-union-reduction.json")])
    report = json.loads(out)
    assert code == 0 and report["verdict"] is True
    assert report["pairs_checked"] == report["pairs_valid"] == 16
    assert all(h["holds"] for h in report["hypotheses"])
    assert all(t["valid"] for t in report["traces"])

    code, out = run_cli(
        ["transfer", str(INSTANCES / "24-merge32-unsaturated-generators.json")]
    )
    report = json.loads(out)
    assert code == 1 and "domain-generators-saturated" in report["failure"]

    code, out = run_cli(
        ["transfer", str(INSTANCES / "25-identity-fiveopen-no-codomain-reduction.json")]
    )
    report = json.loads(out)
    assert code == 1
    bad = {h["name"]: h for h in report["hypotheses"]}["codomain-class-has-reduction"]
    assert bad["offending"] == [[[0, 1], [1, 2]]]


def test_zero_gap_flags_the_connected_carrier(tmp_path):
    inst = write_instance(tmp_path, {"space": CONNECTED3, "carrier": [1, 2]})
    code, out = run_cli(["zero-gap", inst])
    report = json.loads(out)
    assert code == 1 and report["verdict"] is False
    assert report["gap"] == [[0], [1]]
    assert report["subspace_points"] == [1, 2]

    inst = write_instance(tmp_path, {"space": CONNECTED3}, name="full.json")
    code, out = run_cli(["zero-gap", inst])
    report = json.loads(out)
    assert code == 0 and report["gap"] == []


def test_space_respects_the_point_cap(tmp_path):
    inst = write_instance(tmp_path, {"product": [CONNECTED3, CONNECTED3]})
    code, out = run_cli(["space", "--max-points", "4", inst])
    assert code == 2 and out == ""
    code, out = run_cli(["space", "--max-points", "12", inst])
    assert code == 0 and json.loads(out)["n"] == 9


def test_replay_accepts_the_shipped_corpus():
    code, out = run_cli(["replay", "--corpus-dir", str(CORPUS)])
    report = json.loads(out)
    assert code == 0 and report["verdict"] is True
    assert report["replayed"] == report["retriggered"] >= 4
    assert all(f["retriggered"] for f in report["findings"])


def test_replay_rejects_a_tampered_finding(tmp_path):
    doc = json.loads((CORPUS / "image-necessity-f638e7342c50.json").read_text())
    doc["instance"]["family"]["assignments"]["0,0"] = [0]
    path = tmp_path / "tampered.json"
    path.write_text(canonical_json(doc))
    code, out = run_cli(["replay", str(path)])
    report = json.loads(out)
    assert code == 1 and report["retriggered"] == 0

    code, out = run_cli(["replay", str(path), "--corpus-dir", str(CORPUS)])
    report = json.loads(out)
    assert code == 1 and report["retriggered"] == report["replayed"] - 1


def test_fuzz_writes_a_deterministic_content_addressed_corpus(tmp_path):
    first = tmp_path / "one"
    second = tmp_path / "two"
    args = ["fuzz", "image-necessity", "--max-points", "2", "--budget", "8"]
    code1, out1 = run_cli([*args, "--corpus-dir", str(first)])
    code2, out2 = run_cli([*args, "--corpus-dir", str(second)])
    assert code1 == code2 == 0
    rep = json.loads(out1)
    assert rep["verdict"] is True and rep["witnesses"] > 0
    assert out1 == out2
    names1 = sorted(p.name for p in first.glob("*.json"))
    names2 = sorted(p.name for p in second.glob("*.json"))
    assert names1 == names2 == rep["written"]
    for name in names1:
        assert (first / name).read_text() == (second / name).read_text()

    code, out = run_cli(["replay", "--corpus-dir", str(first)])
    assert code == 0 and json.loads(out)["verdict"] is True


def test_fuzz_exit_reflects_the_suite_verdict(tmp_path):
    code, out = run_cli(["fuzz", "image-necessity", "--max-points", "1"])
    report = json.loads(out)
    assert code == 1 and report["verdict"] is False
    assert report["expects_witnesses"] is True and report["witnesses"] == 0


def test_malformed_input_exits_2_with_a_diagnostic(tmp_path, capsys):
    code, out = run_cli(["eval", str(tmp_path / "missing.json")])
    assert code == 2 and out == ""
    assert "error: cannot read instance" in capsys.readouterr().err

    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    code, _ = run_cli(["eval", str(bad)])
    assert code == 2
    assert "is not valid JSON" in capsys.readouterr().err

    arr = tmp_path / "arr.json"
    arr.write_text("[1, 2]")
    code, _ = run_cli(["eval", str(arr)])
    assert code == 2
    assert "must hold one JSON object" in capsys.readouterr().err


def test_missing_fields_name_their_instance_path(tmp_path, capsys):
    inst = write_instance(
        tmp_path,
        {
            "map": {"dom": CONNECTED3, "cod": CONNECTED3},
            "base": UNION2,
            "which": "reduction",
            "dom_generators": "opens",
            "cod_generators": "opens",
        },
    )
    code, _ = run_cli(["transfer", inst])
    assert code == 2
    assert capsys.readouterr().err == "error: missing field instance.map.table\n"


def test_mode_mismatch_and_bad_budget_exit_2(tmp_path, capsys):
    inst = write_instance(
        tmp_path,
        {
            "base": UNION2,
            "family": {"universe": 2, "mode": "range", "assignments": {"0": [], "1": []}},
            "mode": "prefix",
        },
    )
    code, _ = run_cli(["eval", inst])
    assert code == 2
    assert "prefix" in capsys.readouterr().err

    code, _ = run_cli(["fuzz", "image-necessity", "--budget", "0"])
    assert code == 2
    assert "--budget must be positive" in capsys.readouterr().err

    code, _ = run_cli(["fuzz", "no-such-suite"])
    assert code == 2
    assert "unknown suite" in capsys.readouterr().err

    code, _ = run_cli(["replay"])
    assert code == 2
    assert "nothing to replay" in capsys.readouterr().err


def test_text_format_renders_sorted_key_value_lines(tmp_path):
    inst = write_instance(
        tmp_path,
        {
            "base": UNION2,
            "family": {"universe": 1, "mode": "range", "assignments": {"0": [0], "1": []}},
        },
    )
    code, out = run_cli(["eval", "--format", "text", inst])
    assert code == 0
    lines = out.splitlines()
    assert lines == sorted(lines)
    assert "command: eval" in lines
    assert "value: [0]" in lines


def test_module_entry_point_reports_the_version():
    proc = subprocess.run(
        [sys.executable, "-m", "redsep", "--version"],
        capture_output=True,
        text=True,
        cwd=str(ROOT),
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == f"redsep {__version__}"
