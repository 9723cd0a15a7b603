"""Pass/fail records shared by every checker."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Instance:
    tag: str
    description: str
    passed: bool
    witness: dict | None = None

    def to_json(self):
        return {"tag": self.tag, "pass": self.passed, "witness": self.witness}


@dataclass
class CheckReport:
    suite: str
    instances: list = field(default_factory=list)

    @property
    def passed(self):
        return all(i.passed for i in self.instances)

    def add(self, tag, description, passed, witness=None):
        self.instances.append(Instance(tag, description, bool(passed), witness))

    def extend(self, other, prefix=""):
        for i in other.instances:
            self.instances.append(
                Instance(prefix + i.tag, i.description, i.passed, i.witness))
        return self

    def failed_tags(self):
        return sorted(i.tag for i in self.instances if not i.passed)

    def tags(self):
        return sorted(i.tag for i in self.instances)

    def get(self, tag):
        for i in self.instances:
            if i.tag == tag:
                return i
        raise KeyError(tag)

    def sorted(self):
        return CheckReport(self.suite, sorted(self.instances, key=lambda i: i.tag))

    def to_json(self):
        return {"suite": self.suite,
                "instances": [i.to_json() for i in self.sorted().instances]}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, indent=2, default=str)

    def summary(self):
        lines = []
        for i in self.sorted().instances:
            lines.append(f"{'PASS' if i.passed else 'FAIL'}  {i.tag}")
        n = len(self.instances)
        bad = len(self.failed_tags())
        lines.append(f"{self.suite}: {n - bad}/{n} passed")
        return "\n".join(lines)

    def __bool__(self):
        return self.passed
