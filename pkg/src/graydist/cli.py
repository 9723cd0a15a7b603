"""Command line front-end.

``graydist check --scenario FILE`` resolves a JSON scenario, runs the
suites it lists and writes a sorted JSON report.  ``graydist emit`` prints
a presentation and ``graydist hat-table`` the hom-set sizes of hat(1).

Exit status: 0 when every instance passes, 1 when some check fails and 2
when the scenario cannot be parsed or resolved.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

from . import container as C
from .classifier import hom_count_table
from .gray import encode_pdist, mnd_power, terminal, walking_monad
from .laws import (
    NFoldSystem,
    check_dist_law,
    check_monad_in_mnd,
    check_nfold,
    compose_via_law,
    composite_action_matches,
    encode_as_monad_in_mnd,
)
from .parametric import (
    canonical_triple,
    deither,
    dwriter,
    either_law_coherence,
    lift_coslice,
    lift_writer_modules,
    modules_coslice_iso,
    unique_cocartesian_monoid,
    writer_law_coherence,
)
from .report import CheckReport
from .twocat import check_relations

MAX_POWER = 4


class ScenarioError(ValueError):
    """The scenario does not parse or does not resolve."""


@dataclass
class Scenario:
    name: str = "scenario"
    monoids: dict = field(default_factory=dict)
    sets: dict = field(default_factory=dict)
    monads: dict = field(default_factory=dict)
    laws: dict = field(default_factory=dict)
    nfold: dict = field(default_factory=dict)
    suites: list = field(default_factory=list)
    max_set_size: int = 3
    oracle: bool = True
    report: str | None = None


# ------------------------------------------------------------ resolution


def _monoid(entry, name):
    if "cyclic" in entry:
        M = C.cyclic(int(entry["cyclic"]))
    elif entry.get("boolean_and"):
        M = C.boolean_and()
    else:
        M = C.MonoidTable(int(entry["size"]), int(entry["unit"]), entry["table"], name=name)
    return M


def _lookup(table, key, what):
    if key not in table:
        raise ScenarioError(f"unknown {what} {key!r}")
    return table[key]


def _set_size(sc, ref):
    if isinstance(ref, int):
        return ref
    return _lookup(sc.sets, ref, "set")


def _monad(sc, entry):
    kind = entry["kind"]
    param = entry.get("param")
    if kind == "writer-raw":
        return C.raw_writer(int(entry["size"]), int(entry["unit"]), entry["table"],
                            entry.get("name", "raw"))
    if kind == "writer":
        return C.writer(_lookup(sc.monoids, param, "monoid"))
    if kind in ("either", "reader", "state"):
        return C.builtin(kind, _set_size(sc, param))
    return C.builtin(kind, param)


def _monad_ref(sc, ref):
    if isinstance(ref, dict):
        return _monad(sc, ref)
    if ref in sc.monads:
        return sc.monads[ref]
    if ref in ("maybe", "identity"):
        return C.builtin(ref)
    raise ScenarioError(f"unknown monad {ref!r}")


def _law(sc, entry):
    kind = entry["kind"]
    T = _monad_ref(sc, entry["monad"])
    if kind == "dwriter":
        return dwriter(_lookup(sc.monoids, entry["param"], "monoid"), T)
    if kind == "deither":
        return deither(_set_size(sc, entry["param"]), T)
    raise ScenarioError(f"unknown law kind {kind!r}")


def _nfold(sc, entry):
    if entry.get("kind") == "canonical":
        return canonical_triple(_set_size(sc, entry["either"]),
                                _lookup(sc.monoids, entry["monoid"], "monoid"),
                                _monad_ref(sc, entry["monad"]))
    monads = [_monad_ref(sc, m) for m in entry["monads"]]
    laws = {}
    for key, ref in entry["laws"].items():
        i, j = (int(x) for x in key.split(","))
        laws[(i, j)] = _lookup(sc.laws, ref, "law")
    return NFoldSystem(tuple(monads), laws)


def resolve(data):
    """Build a Scenario from parsed JSON."""
    if not isinstance(data, dict):
        raise ScenarioError("a scenario is a JSON object")
    sc = Scenario(name=data.get("name", "scenario"),
                  max_set_size=int(data.get("max_set_size", 3)),
                  oracle=bool(data.get("oracle", True)),
                  report=data.get("report"))
    if sc.max_set_size < 1:
        raise ScenarioError("max_set_size must be >= 1")
    try:
        for name, entry in data.get("monoids", {}).items():
            sc.monoids[name] = _monoid(entry, name)
        for name, size in data.get("sets", {}).items():
            sc.sets[name] = int(size)
        monads = data.get("monads", {})
        if isinstance(monads, list):
            monads = {m.get("name", f"{m['kind']}({m.get('param', '')})"): m for m in monads}
        for name, entry in monads.items():
            sc.monads[name] = _monad(sc, entry)
        for name, entry in data.get("laws", {}).items():
            sc.laws[name] = _law(sc, entry)
        for name, entry in data.get("nfold", {}).items():
            sc.nfold[name] = _nfold(sc, entry)
        suites = data.get("suites", [])
        for s in suites:
            _suite_job(sc, s)
        sc.suites = list(suites)
    except ScenarioError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(f"cannot resolve scenario: {exc!r}") from exc
    return sc


# ----------------------------------------------------------------- suites


def _suite_job(sc, s):
    """Return (label, thunk) for one suite entry; resolution errors surface here."""
    kind = s["kind"]
    n, orc = sc.max_set_size, sc.oracle
    target = s.get("target")
    if kind == "monad":
        M = _monad_ref(sc, target)
        return target, lambda: C.check_monad(M, orc, n)
    if kind == "strength":
        M = _monad_ref(sc, target)
        return target, lambda: C.strength_enrichment_roundtrip(M.functor, n)
    if kind in ("dist", "composite", "mnd"):
        D = _lookup(sc.laws, target, "law")
        if kind == "dist":
            return target, lambda: check_dist_law(D, orc, n)
        if kind == "composite":
            def composite():
                rep = C.check_monad(compose_via_law(D), orc, n)
                return rep.extend(composite_action_matches(D, n))
            return target, composite
        return target, lambda: check_monad_in_mnd(encode_as_monad_in_mnd(D), orc, n)
    if kind in ("nfold", "relations"):
        S = _lookup(sc.nfold, target, "n-fold system")
        if kind == "nfold":
            return target, lambda: check_nfold(S, orc, min(n, 2))
        if S.n > MAX_POWER:
            raise ScenarioError(f"relations need at most {MAX_POWER} monads")
        return target, lambda: check_relations(encode_pdist(S), oracle=orc, max_size=min(n, 2))
    if kind == "writer-lift":
        M = _lookup(sc.monoids, s["monoid"], "monoid")
        T = _monad_ref(sc, s["monad"])
        label = f"{s['monoid']}/{s['monad']}"
        return label, lambda: lift_writer_modules(M, T).extend(writer_law_coherence(M, T, n))
    if kind == "coslice-lift":
        a = _set_size(sc, s["set"])
        T = _monad_ref(sc, s["monad"])
        label = f"{s['set']}/{s['monad']}"
        return label, lambda: lift_coslice(a, T.functor, T.unit, mult=T.mult).extend(
            either_law_coherence(a, T, n))
    if kind == "cocartesian":
        a = _set_size(sc, s["set"])
        return str(s["set"]), lambda: unique_cocartesian_monoid(a)[1]
    if kind == "modules-coslice":
        a = _set_size(sc, s["set"])
        bound = int(s.get("bound", 2))
        return str(s["set"]), lambda: modules_coslice_iso(a, bound)
    raise ScenarioError(f"unknown suite kind {kind!r}")


def _threads():
    raw = os.environ.get("GRAYDIST_THREADS", "0")
    try:
        k = int(raw)
    except ValueError:
        k = 0
    return k if k > 0 else min(8, os.cpu_count() or 1)


def run_suite(sc, max_set_size=None):
    """Run every suite of the scenario; the merged report is sorted by tag."""
    if max_set_size is not None:
        if max_set_size < 1:
            raise ScenarioError("max_set_size must be >= 1")
        sc.max_set_size = max_set_size
    jobs = [_suite_job(sc, s) for s in sc.suites]
    kinds = [s["kind"] for s in sc.suites]
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        reports = list(pool.map(lambda job: job[1](), jobs))
    out = CheckReport(sc.name)
    for kind, (label, _), rep in zip(kinds, jobs, reports):
        out.extend(rep, prefix=f"{kind}[{label}]:")
    return out.sorted()


def load_scenario(path):
    """Read a scenario from a path, or from the bundled set by bare name."""
    try:
        if not os.path.exists(path):
            folder = resources.files("graydist") / "scenarios"
            for name in (path, path + ".json"):
                if (folder / name).is_file():
                    return resolve(json.loads((folder / name).read_text()))
        with open(path) as fh:
            return resolve(json.load(fh))
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: {exc}") from exc
    except OSError as exc:
        raise ScenarioError(str(exc)) from exc


# ------------------------------------------------------------- commands


def emit_presentation(name, fmt="json"):
    m = re.fullmatch(r"mnd_power\((\d+)\)", name)
    if name == "walking_monad":
        P = walking_monad()
    elif m:
        n = int(m.group(1))
        if n > MAX_POWER:
            raise ScenarioError(f"mnd_power supports n <= {MAX_POWER}, got {n}")
        P = mnd_power(terminal(), n)
    else:
        raise ScenarioError(f"unknown presentation {name!r}")
    return P.pretty() if fmt == "pretty" else P.dumps()


def hat_table_text(max_m=4, max_n=4):
    table = hom_count_table(max_m, max_n)
    width = max(len(str(v)) for v in table.values()) + 1
    head = "m\\n" + "".join(f"{n:>{width}}" for n in range(max_n + 1))
    rows = [head]
    for m in range(max_m + 1):
        rows.append(f"{m:>3}" + "".join(f"{table[(m, n)]:>{width}}" for n in range(max_n + 1)))
    return "\n".join(rows)


def hat_table_json(max_m=4, max_n=4):
    table = hom_count_table(max_m, max_n)
    return json.dumps([{"m": m, "n": n, "count": c} for (m, n), c in sorted(table.items())],
                      indent=2)


def _cmd_check(args):
    try:
        sc = load_scenario(args.scenario)
        rep = run_suite(sc, args.max_set_size)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    path = args.report or sc.report
    if path:
        with open(path, "w") as fh:
            fh.write(rep.dumps() + "\n")
    print(rep.summary())
    return 0 if rep.passed else 1


def _cmd_emit(args):
    fmt = "pretty" if args.pretty else args.format
    try:
        print(emit_presentation(args.presentation, fmt))
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def _cmd_hat_table(args):
    if args.format == "json":
        print(hat_table_json(args.max, args.max))
    else:
        print(hat_table_text(args.max, args.max))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="graydist", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", help="run the suites of a JSON scenario")
    c.add_argument("--scenario", required=True,
                   help="scenario file, or the name of a bundled scenario")
    c.add_argument("--max-set-size", type=int, default=None)
    c.add_argument("--report", default=None, help="where to write the JSON report")
    c.set_defaults(func=_cmd_check)
    e = sub.add_parser("emit", help="print a presentation")
    e.add_argument("--presentation", required=True, help="walking_monad or mnd_power(n)")
    e.add_argument("--format", choices=("json", "pretty"), default="json")
    e.add_argument("--pretty", action="store_true", help="same as --format pretty")
    e.set_defaults(func=_cmd_emit)
    h = sub.add_parser("hat-table", help="hom-set sizes of hat(1)")
    h.add_argument("--max", type=int, default=4)
    h.add_argument("--format", choices=("text", "json"), default="text")
    h.set_defaults(func=_cmd_hat_table)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
