import json
import subprocess
import sys

import pytest

from graydist.cli import ScenarioError, emit_presentation, load_scenario, main, resolve, run_suite
from graydist.twocat import Presentation


def run(*args, env=None):
    return subprocess.run([sys.executable, "-m", "graydist", *args], capture_output=True, text=True,
                          env=env)


def test_acceptance_scenario_passes(tmp_path):
    out = tmp_path / "report.json"
    assert main(["check", "--scenario", "acceptance", "--report", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["suite"] == "acceptance"
    tags = [i["tag"] for i in report["instances"]]
    assert tags == sorted(tags)
    assert all(i["pass"] for i in report["instances"])


def test_negative_scenario_names_associativity(tmp_path):
    out = tmp_path / "report.json"
    assert main(["check", "--scenario", "negative", "--report", str(out)]) == 1
    report = json.loads(out.read_text())
    failed = {i["tag"]: i for i in report["instances"] if not i["pass"]}
    assoc = [t for t in failed if t.endswith("monad.assoc")]
    assert assoc
    assert failed[assoc[0]]["witness"]["shape"] == [1, 1, 1]


def test_empty_scenario(tmp_path):
    out = tmp_path / "report.json"
    assert main(["check", "--scenario", "empty", "--report", str(out)]) == 0
    assert json.loads(out.read_text())["instances"] == []


def test_reports_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["check", "--scenario", "negative", "--report", str(a)])
    main(["check", "--scenario", "negative", "--report", str(b)])
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("text", ["{bad", "[]", '{"max_set_size": 0}',
                                  '{"suites": [{"kind": "monad", "target": "nope"}]}',
                                  '{"suites": [{"kind": "juggle"}]}',
                                  '{"monoids": {"M": {"size": 2, "unit": 0, "table": [[1, 1], [1, 1]]}}}'])
def test_bad_scenarios_exit_with_two(tmp_path, text):
    path = tmp_path / "s.json"
    path.write_text(text)
    assert main(["check", "--scenario", str(path)]) == 2


def test_missing_file_exits_with_two():
    assert main(["check", "--scenario", "/nonexistent/s.json"]) == 2


def test_max_set_size_override():
    sc = load_scenario("negative")
    rep = run_suite(sc, max_set_size=1)
    assert not rep.passed
    with pytest.raises(ScenarioError):
        run_suite(sc, max_set_size=0)


def test_list_form_of_monads_and_explicit_nfold():
    sc = resolve({
        "monoids": {"Z2": {"cyclic": 2}},
        "monads": [{"kind": "maybe", "name": "E"}, {"kind": "writer", "param": "Z2", "name": "W"},
                   {"kind": "reader", "param": 2, "name": "R"}],
        "laws": {"a": {"kind": "deither", "param": 1, "monad": "W"},
                 "b": {"kind": "deither", "param": 1, "monad": "R"},
                 "c": {"kind": "dwriter", "param": "Z2", "monad": "R"}},
        "nfold": {"S": {"monads": ["E", "W", "R"], "laws": {"1,2": "a", "1,3": "b", "2,3": "c"}}},
        "suites": [{"kind": "nfold", "target": "S"}],
    })
    assert run_suite(sc).passed


def test_emit_presentations():
    walking = emit_presentation("walking_monad", "pretty")
    assert "objects (1)" in walking and "1-generators (1)" in walking
    assert "2-generators (2)" in walking and "relations (3)" in walking
    P = Presentation.loads(emit_presentation("mnd_power(2)"))
    assert P.counts()["one_cells"] == 2
    pretty3 = emit_presentation("mnd_power(3)", "pretty")
    assert sum("[yang-baxter(" in line for line in pretty3.splitlines()) == 1
    with pytest.raises(ScenarioError):
        emit_presentation("mnd_power(5)")
    with pytest.raises(ScenarioError):
        emit_presentation("spiral")


def test_command_line_entry_point():
    res = run("emit", "--presentation", "mnd_power(5)")
    assert res.returncode == 2
    res = run("emit", "--presentation", "walking_monad", "--pretty")
    assert res.returncode == 0 and "monad.assoc" in res.stdout
    res = run("hat-table", "--format", "json")
    rows = json.loads(res.stdout)
    assert {"m": 4, "n": 4, "count": 35} in rows
    res = run("hat-table")
    assert res.stdout.splitlines()[-1].split() == ["4", "0", "1", "5", "15", "35"]
    assert run("frobnicate").returncode == 2


def test_thread_count_comes_from_the_environment(monkeypatch):
    from graydist import cli

    monkeypatch.setenv("GRAYDIST_THREADS", "3")
    assert cli._threads() == 3
    monkeypatch.setenv("GRAYDIST_THREADS", "0")
    assert cli._threads() >= 1
