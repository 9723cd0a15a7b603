import json

from graydist.report import CheckReport


def make():
    rep = CheckReport("demo")
    rep.add("b.second", "second", True)
    rep.add("a.first", "first", False, {"shape": [1]})
    return rep


def test_reports_sort_and_serialize():
    rep = make()
    data = json.loads(rep.dumps())
    assert data["suite"] == "demo"
    assert [i["tag"] for i in data["instances"]] == ["a.first", "b.second"]
    assert data["instances"][0] == {"tag": "a.first", "pass": False, "witness": {"shape": [1]}}
    assert rep.dumps() == make().dumps()


def test_verdicts_and_lookup():
    rep = make()
    assert not rep and not rep.passed
    assert rep.failed_tags() == ["a.first"]
    assert rep.get("b.second").passed
    assert CheckReport("empty").passed
    assert rep.summary().splitlines()[-1] == "demo: 1/2 passed"


def test_extend_prefixes_tags():
    out = CheckReport("all").extend(make(), prefix="x:")
    assert out.tags() == ["x:a.first", "x:b.second"]
