"""Command-line interface: argument handling, outputs, exit codes."""

import csv
import json

import pytest

from profitcover.cli import main
from profitcover.errors import ParseError
from profitcover.cli import _parse_gen, _parse_rules

KARATE = "data/instances/karate.edges"


def run_cli(*argv):
    return main(list(argv))


# ---------------------------------------------------------------------------
# argument parsing helpers


def test_parse_gen_er():
    kind, params = _parse_gen("er:n=10,p=0.3,seed=4")
    assert kind == "er" and params == {"n": 10, "p": 0.3, "seed": 4}


def test_parse_gen_regular_default_seed():
    kind, params = _parse_gen("regular:n=8,d=3")
    assert kind == "regular" and params["seed"] == 0


@pytest.mark.parametrize("spec", [
    "grid:n=3",            # unknown generator
    "er:n=10",             # missing p
    "er:n=ten,p=0.3",      # non-numeric
    "er:n10,p=0.3",        # not key=value
])
def test_parse_gen_errors(spec):
    with pytest.raises(ParseError):
        _parse_gen(spec)


def test_parse_rules():
    assert _parse_rules("pr,sr") == ("pr", "sr")
    with pytest.raises(ParseError):
        _parse_rules("pr,warp")


# ---------------------------------------------------------------------------
# run subcommand


def test_run_stdout_json(capsys):
    code = run_cli("run", "--gen", "er:n=8,p=0.5,seed=1", "--solver", "exact")
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["solution"]["feasible"] is True
    assert doc["config"]["solver"] == "exact"


def test_run_json_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = run_cli("run", "--input", KARATE, "--problem", "maxis",
                   "--solver", "exact", "--out", str(out))
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["solution"]["size"] == 20
    assert doc["name"] == "karate"


def test_run_csv_file(tmp_path):
    out = tmp_path / "r.csv"
    code = run_cli("run", "--gen", "regular:n=8,d=3,seed=2",
                   "--solver", "exact", "--out", str(out))
    assert code == 0
    rows = list(csv.DictReader(out.read_text().splitlines()))
    assert len(rows) == 1
    assert rows[0]["status"] in ("solver", "solved_by_preprocessing")
    assert rows[0]["error"] == ""


def test_run_emits_kernel_and_distribution(tmp_path):
    kern = tmp_path / "kernel.json"
    dist = tmp_path / "dist.json"
    code = run_cli("run", "--gen", "er:n=10,p=0.7,seed=3",
                   "--skip-preprocess", "--layers", "1",
                   "--shots", "2000",
                   "--out", str(tmp_path / "r.json"),
                   "--emit-kernel", str(kern),
                   "--emit-distribution", str(dist))
    assert code == 0
    kdoc = json.loads(kern.read_text())
    assert kdoc["solved"] is False  # skip-preprocess keeps the graph
    ddoc = json.loads(dist.read_text())
    assert sum(ddoc["distribution"]["counts"].values()) == 2000


def test_run_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ("run", "--gen", "er:n=9,p=0.6,seed=8", "--layers", "2",
            "--shots", "10000", "--seed", "12")
    assert run_cli(*args, "--out", str(a)) == 0
    assert run_cli(*args, "--out", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()


def test_run_name_override(tmp_path, capsys):
    code = run_cli("run", "--input", KARATE, "--solver", "exact",
                   "--name", "zachary")
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["name"] == "zachary"


# ---------------------------------------------------------------------------
# exit codes


def test_exit_2_on_bad_gen(capsys):
    assert run_cli("run", "--gen", "er:n=10") == 2


def test_exit_2_on_missing_file(capsys):
    assert run_cli("run", "--input", "/no/such/file.edges") == 2


def test_exit_2_on_malformed_file(tmp_path, capsys):
    f = tmp_path / "bad.edges"
    f.write_text("1 2\nbroken\n")
    assert run_cli("run", "--input", str(f)) == 2


def test_exit_3_on_capacity(capsys):
    code = run_cli("run", "--gen", "er:n=28,p=0.2,seed=1",
                   "--skip-preprocess")
    assert code == 3


def test_exit_2_on_unknown_rule(capsys):
    assert run_cli("run", "--gen", "er:n=6,p=0.5,seed=1",
                   "--rules", "pr,bogus") == 2


# ---------------------------------------------------------------------------
# batch subcommand


def _write_manifest(tmp_path, entries):
    f = tmp_path / "jobs.json"
    f.write_text(json.dumps(entries))
    return str(f)


def test_batch_json_output(tmp_path, capsys):
    manifest = _write_manifest(tmp_path, [
        {"gen": "er:n=8,p=0.5,seed=1", "solver": "exact"},
        {"input": KARATE, "problem": "maxis", "solver": "exact"},
    ])
    out = tmp_path / "table.json"
    assert run_cli("batch", "--manifest", manifest, "--out", str(out)) == 0
    docs = json.loads(out.read_text())
    assert len(docs) == 2
    assert docs[1]["solution"]["size"] == 20


def test_batch_csv_output(tmp_path, capsys):
    manifest = _write_manifest(tmp_path, [
        {"gen": "regular:n=8,d=3,seed=1", "solver": "exact"},
        {"gen": "er:n=30,p=0.2,seed=1", "skip_preprocess": True},
    ])
    out = tmp_path / "table.csv"
    assert run_cli("batch", "--manifest", manifest, "--out", str(out)) == 0
    rows = list(csv.DictReader(out.read_text().splitlines()))
    assert len(rows) == 2
    assert rows[0]["error"] == ""
    assert "CapacityError" in rows[1]["error"]


def test_batch_empty_manifest(tmp_path, capsys):
    manifest = _write_manifest(tmp_path, [])
    out = tmp_path / "t.json"
    assert run_cli("batch", "--manifest", manifest, "--out", str(out)) == 0
    assert json.loads(out.read_text()) == []


def test_batch_stdout(tmp_path, capsys):
    manifest = _write_manifest(tmp_path, [
        {"gen": "er:n=6,p=0.6,seed=2", "solver": "exact"},
    ])
    assert run_cli("batch", "--manifest", manifest) == 0
    docs = json.loads(capsys.readouterr().out)
    assert len(docs) == 1


def test_batch_bad_manifest(tmp_path, capsys):
    f = tmp_path / "broken.json"
    f.write_text("{not json")
    assert run_cli("batch", "--manifest", str(f)) == 2
    f.write_text(json.dumps({"not": "a list"}))
    assert run_cli("batch", "--manifest", str(f)) == 2
    f.write_text(json.dumps([{"gen": "er:n=6,p=0.5", "input": "x"}]))
    assert run_cli("batch", "--manifest", str(f)) == 2


def test_batch_missing_manifest(capsys):
    assert run_cli("batch", "--manifest", "/no/such/manifest.json") == 2
