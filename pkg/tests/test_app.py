import json

import pytest

import qmknot_app
from application_util import records
from application_util.config import RunConfig, parse_ranks
from qmknot import laurent
from qmknot.algebra_data import make_spec

TREFOIL_PD = [[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]

KNOTS = "# name\tstrands\tword\nunknot\t1\t\nhopf\t2\t1 1\ntrefoil\t2\t1 1 1\n"


def run(capsys, *argv):
    status = qmknot_app.main(["--quiet"] + list(argv))
    return status, capsys.readouterr().out


def test_verify_exit_status(capsys):
    status, out = run(capsys, "verify", "--family", "B", "--ranks", "1..2")
    assert status == 0
    assert out.splitlines() == ["B1: pass", "B2: pass"]

    status, out = run(capsys, "verify", "--family", "B", "--ranks", "1", "--tamper")
    assert status == 1
    assert "B1: FAIL skein" in out


def test_verify_jsonl(capsys):
    status, out = run(capsys, "--format", "jsonl", "verify", "--family", "c", "--ranks", "1..2")
    assert status == 0
    reports = [json.loads(line) for line in out.splitlines()]
    assert [r["spec"] for r in reports] == ["C1", "C2"]


def test_usage_errors(capsys):
    assert run(capsys, "verify", "--family", "B", "--ranks", "two")[0] == 2
    assert run(capsys, "verify", "--family", "D", "--ranks", "1")[0] == 2
    assert run(capsys, "invariant", "--family", "B", "--rank", "0",
               "--braid", "1", "--strands", "2")[0] == 2
    with pytest.raises(SystemExit):
        qmknot_app.main(["invariant", "--family", "B", "--rank", "1", "--braid", "1"])


def test_malformed_input_exit_status(capsys, tmp_path):
    assert run(capsys, "invariant", "--family", "B", "--rank", "1",
               "--braid", "1 x", "--strands", "2")[0] == 3
    assert run(capsys, "compare", "--family", "B", "--rank", "1",
               "--braid", "3", "--strands", "2")[0] == 3
    pd_file = tmp_path / "bad.json"
    pd_file.write_text("[[1, 2, 3]]")
    assert run(capsys, "oracle", "--family", "B", "--rank", "1",
               "--pd", str(pd_file))[0] == 3


def test_invariant_of_a_curl(capsys):
    spec = make_spec("B", 1)
    status, out = run(capsys, "invariant", "--family", "B", "--rank", "1",
                      "--braid", "1", "--strands", "2")
    assert status == 0
    lines = dict(line.split(": ", 1) for line in out.splitlines())
    assert lines["writhe"] == "1"
    assert lines["raw"] == laurent.render(spec.alpha * spec.delta)
    assert lines["normalized"] == laurent.render(spec.delta)


def test_invariant_from_tape(capsys, tmp_path):
    tape = tmp_path / "unknot.tape"
    tape.write_text("cup 0\ncap 0\n")
    status, out = run(capsys, "--format", "json", "invariant", "--family", "D",
                      "--rank", "3", "--tape", str(tape))
    assert status == 0
    record = json.loads(out)
    assert laurent.from_json(record["raw"]) == make_spec("D", 3).delta


def test_compare_and_oracle(capsys, tmp_path):
    status, out = run(capsys, "compare", "--family", "C", "--rank", "2",
                      "--braid", "1 -2 1 -2", "--strands", "3")
    assert status == 0
    assert "verdict: equal" in out

    pd_file = tmp_path / "trefoil.json"
    pd_file.write_text(json.dumps(TREFOIL_PD))
    status, out = run(capsys, "--format", "json", "oracle", "--family", "B",
                      "--rank", "1", "--pd", str(pd_file), "--no-memo")
    assert status == 0
    assert json.loads(out)["crossings"] == 3


def test_compare_hopf_and_unknot(capsys):
    status, out = run(capsys, "--format", "json", "compare", "--family", "D", "--rank", "3",
                      "--braid", "1 1", "--strands", "2")
    assert status == 0
    record = json.loads(out)
    assert record["verdict"] == "equal" and record["tensor"] == record["oracle"]

    status, out = run(capsys, "invariant", "--family", "B", "--rank", "1",
                      "--braid", "", "--strands", "1")
    assert status == 0
    assert "raw: " + laurent.render(make_spec("B", 1).delta) in out.splitlines()


def test_oracle_recursion_limit(capsys):
    status, _ = run(capsys, "oracle", "--family", "B", "--rank", "1",
                    "--braid", "1 1 1", "--strands", "2", "--recursion-limit", "1")
    assert status == 1


def test_tabulate_appends_once(capsys, tmp_path):
    table = tmp_path / "knots.tsv"
    table.write_text(KNOTS + "broken\t2\t1 x\nworse\ttwo\t1\n")
    out = tmp_path / "knots.jsonl"
    argv = ["--out", str(out), "tabulate", "--family", "B", "--rank", "1",
            "--input", str(table)]

    assert run(capsys, *argv)[0] == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 3
    written = {json.loads(line)["name"]: json.loads(line) for line in lines}
    assert set(written) == {"unknot", "hopf", "trefoil"}
    assert written["trefoil"]["writhe"] == 3
    spec = make_spec("B", 1)
    assert laurent.from_json(written["unknot"]["normalized"]) == spec.delta

    assert run(capsys, *argv)[0] == 0
    assert out.read_text().splitlines() == lines


def test_tabulate_needs_out(capsys, tmp_path):
    table = tmp_path / "knots.tsv"
    table.write_text(KNOTS)
    assert run(capsys, "tabulate", "--family", "B", "--rank", "1",
               "--input", str(table))[0] == 2


def test_thimble_csv(capsys):
    status, out = run(capsys, "thimble", "--b", "1", "--a-values", "0.5", "--dt", "0.002")
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "a,connected,plus_sectors,minus_sectors,max_drift,flipped"
    assert lines[1].startswith("0.5,False,")


def test_read_knot_table(tmp_path):
    path = tmp_path / "knots.tsv"
    path.write_text(KNOTS)
    table = records.read_knot_table(str(path))
    assert list(table["name"]) == ["unknot", "hopf", "trefoil"]
    assert list(table["word"]) == ["", "1 1", "1 1 1"]


def test_jsonl_appender_reloads_keys(tmp_path):
    path = str(tmp_path / "out.jsonl")
    appender = records.JsonlAppender(path)
    record = {"name": "hopf", "family": "B", "rank": 1, "writhe": 2}
    assert appender.append(record)
    assert not appender.append(dict(record, writhe=5))
    assert record in records.JsonlAppender(path)


def test_run_config_precedence(tmp_path):
    ini = tmp_path / "qmknot.ini"
    ini.write_text("[oracle]\nrecursion_limit = 5\nstrategy = last\n")
    base = ["--config", str(ini), "oracle", "--family", "B", "--rank", "1",
            "--braid", "1", "--strands", "2"]

    config = RunConfig(qmknot_app.parse_args(base), environ={})
    assert config.recursion_limit == 5 and config.strategy == "last"

    config = RunConfig(qmknot_app.parse_args(base), environ={"QS_RECURSION_LIMIT": "7"})
    assert config.recursion_limit == 7

    args = qmknot_app.parse_args(base + ["--recursion-limit", "9", "--strategy", "first"])
    config = RunConfig(args, environ={"QS_RECURSION_LIMIT": "7"})
    assert config.recursion_limit == 9 and config.strategy == "first"
    assert config.flow.dt == pytest.approx(1e-3)


def test_bad_config_is_a_usage_error(capsys, tmp_path):
    ini = tmp_path / "bad.ini"
    ini.write_text("[oracle]\nstrategy = middle\n")
    assert run(capsys, "--config", str(ini), "oracle", "--family", "B", "--rank", "1",
               "--braid", "1", "--strands", "2")[0] == 2
    assert run(capsys, "--config", str(tmp_path / "missing.ini"), "verify",
               "--family", "B", "--ranks", "1")[0] == 2


def test_parse_ranks():
    assert parse_ranks("3") == [3]
    assert parse_ranks("1..3") == [1, 2, 3]
    for text in ("3..1", "a", "1..b"):
        with pytest.raises(ValueError):
            parse_ranks(text)
