"""Finitely presented strict 2-categories and formal pasting terms.

1-cells are words of generators in composition order: the leftmost
generator is applied last, so ``Word("x", "y", ("t", "s"))`` is t∘s.
2-cell terms are trees over generators, identities and the two
compositions; they are only ever compared after interpretation into a
concrete 2-category.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .container import (
    BoundaryMismatch,
    compose_containers,
    hcomp,
    identity_container,
    identity_morphism,
    law_instance,
    vcomp,
)
from .report import CheckReport


class UnknownGenerator(KeyError):
    pass


@dataclass(frozen=True)
class Word:
    src: str
    tgt: str
    gens: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))

    def __str__(self):
        return "·".join(self.gens) if self.gens else f"1_{self.src}"

    def then(self, other):
        """``other`` after ``self``."""
        if other.src != self.tgt:
            raise BoundaryMismatch(f"{other} cannot follow {self}")
        return Word(self.src, other.tgt, other.gens + self.gens)

    def to_json(self):
        return {"src": self.src, "tgt": self.tgt, "gens": list(self.gens)}

    @staticmethod
    def from_json(d):
        return Word(d["src"], d["tgt"], d["gens"])


def identity_word(obj):
    return Word(obj, obj, ())


@dataclass(frozen=True)
class OneGen:
    name: str
    src: str
    tgt: str
    factor: int | None = None


@dataclass(frozen=True)
class TwoGen:
    """A generating 2-cell.

    ``role`` is "unit", "mult" or "crossing" for cells produced by the
    monad constructions; ``factor`` is the 1-based factor index (a pair for
    crossings).  ``crosses`` names the two 1-generators of a crossing.
    """
    name: str
    src: Word
    tgt: Word
    role: str | None = None
    factor: object = None
    crosses: tuple | None = None


# ------------------------------------------------------------------ terms


class Term:
    def to_json(self):
        raise NotImplementedError


@dataclass(frozen=True)
class Gen(Term):
    name: str

    def to_json(self):
        return ["gen", self.name]

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Id(Term):
    word: Word

    def to_json(self):
        return ["id", self.word.to_json()]

    def __str__(self):
        return f"id[{self.word}]"


@dataclass(frozen=True)
class V(Term):
    """t2 ∘ t1."""
    t2: Term
    t1: Term

    def to_json(self):
        return ["v", self.t2.to_json(), self.t1.to_json()]

    def __str__(self):
        return f"({self.t2} ∘ {self.t1})"


@dataclass(frozen=True)
class H(Term):
    """t2 · t1, with t1 on the inner (earlier) side."""
    t2: Term
    t1: Term

    def to_json(self):
        return ["h", self.t2.to_json(), self.t1.to_json()]

    def __str__(self):
        return f"({self.t2} · {self.t1})"


def term_from_json(x):
    kind = x[0]
    if kind == "gen":
        return Gen(x[1])
    if kind == "id":
        return Id(Word.from_json(x[1]))
    if kind == "v":
        return V(term_from_json(x[1]), term_from_json(x[2]))
    if kind == "h":
        return H(term_from_json(x[1]), term_from_json(x[2]))
    raise ValueError(f"unknown term constructor {kind!r}")


def vseq(*terms):
    """t_1 ∘ t_2 ∘ … ∘ t_k, right-nested in the order given."""
    out = terms[-1]
    for t in reversed(terms[:-1]):
        out = V(t, out)
    return out


def hseq(*terms):
    out = terms[-1]
    for t in reversed(terms[:-1]):
        out = H(t, out)
    return out


@dataclass(frozen=True)
class Relation:
    lhs: Term
    rhs: Term
    tag: str


# ----------------------------------------------------------- presentations


@dataclass
class Presentation:
    name: str = "P"
    objects: tuple = ()
    one_cells: dict = field(default_factory=dict)
    two_cells: dict = field(default_factory=dict)
    relations: list = field(default_factory=list)
    factors: int = 0

    def add_object(self, name):
        self.objects = tuple(self.objects) + (name,)

    def add_one(self, g):
        self.one_cells[g.name] = g

    def add_two(self, g):
        self.two_cells[g.name] = g

    def add_relation(self, lhs, rhs, tag):
        self.relations.append(Relation(lhs, rhs, tag))

    def word(self, *gens, obj=None):
        if not gens:
            return identity_word(obj if obj is not None else self.objects[0])
        return Word(self.one_cells[gens[-1]].src, self.one_cells[gens[0]].tgt, gens)

    def check_word(self, w):
        cur = w.src
        for g in reversed(w.gens):
            if g not in self.one_cells:
                raise UnknownGenerator(g)
            one = self.one_cells[g]
            if one.src != cur:
                raise BoundaryMismatch(f"{g} does not start at {cur} in {w}")
            cur = one.tgt
        if cur != w.tgt or w.src not in self.objects:
            raise BoundaryMismatch(f"word {w} has wrong endpoints")

    def validate(self):
        for w in (w for g in self.two_cells.values() for w in (g.src, g.tgt)):
            self.check_word(w)
        for r in self.relations:
            if typecheck_term(self, r.lhs) != typecheck_term(self, r.rhs):
                raise BoundaryMismatch(f"relation {r.tag} has sides of different type")
        return self

    def counts(self):
        return {"objects": len(self.objects), "one_cells": len(self.one_cells),
                "two_cells": len(self.two_cells), "relations": len(self.relations)}

    def relations_tagged(self, prefix):
        return [r for r in self.relations if r.tag.startswith(prefix)]

    # serialization

    def to_json(self):
        return {
            "name": self.name,
            "factors": self.factors,
            "objects": list(self.objects),
            "one_cells": [{"name": g.name, "src": g.src, "tgt": g.tgt, "factor": g.factor}
                          for g in self.one_cells.values()],
            "two_cells": [{"name": g.name, "src": g.src.to_json(), "tgt": g.tgt.to_json(),
                           "role": g.role,
                           "factor": list(g.factor) if isinstance(g.factor, tuple) else g.factor,
                           "crosses": list(g.crosses) if g.crosses else None}
                          for g in self.two_cells.values()],
            "relations": [{"tag": r.tag, "lhs": r.lhs.to_json(), "rhs": r.rhs.to_json()}
                          for r in self.relations],
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)

    @staticmethod
    def from_json(d):
        P = Presentation(d.get("name", "P"), tuple(d["objects"]), factors=d.get("factors", 0))
        for g in d["one_cells"]:
            P.add_one(OneGen(g["name"], g["src"], g["tgt"], g.get("factor")))
        for g in d["two_cells"]:
            fac = g.get("factor")
            P.add_two(TwoGen(g["name"], Word.from_json(g["src"]), Word.from_json(g["tgt"]),
                             g.get("role"), tuple(fac) if isinstance(fac, list) else fac,
                             tuple(g["crosses"]) if g.get("crosses") else None))
        for r in d["relations"]:
            P.add_relation(term_from_json(r["lhs"]), term_from_json(r["rhs"]), r["tag"])
        return P.validate()

    @staticmethod
    def loads(text):
        return Presentation.from_json(json.loads(text))

    def __eq__(self, other):
        return isinstance(other, Presentation) and self.to_json() == other.to_json()

    def pretty(self):
        lines = [f"presentation {self.name}"]
        lines.append(f"  objects ({len(self.objects)}): {', '.join(self.objects)}")
        lines.append(f"  1-generators ({len(self.one_cells)}):")
        for g in self.one_cells.values():
            lines.append(f"    {g.name} : {g.src} -> {g.tgt}")
        lines.append(f"  2-generators ({len(self.two_cells)}):")
        for g in self.two_cells.values():
            lines.append(f"    {g.name} : {g.src} => {g.tgt}")
        lines.append(f"  relations ({len(self.relations)}):")
        for r in self.relations:
            lines.append(f"    [{r.tag}] {r.lhs} = {r.rhs}")
        return "\n".join(lines)


def typecheck_term(P, t):
    """Boundary words (src, tgt) of a term."""
    if isinstance(t, Gen):
        if t.name not in P.two_cells:
            raise UnknownGenerator(t.name)
        g = P.two_cells[t.name]
        return g.src, g.tgt
    if isinstance(t, Id):
        P.check_word(t.word)
        return t.word, t.word
    if isinstance(t, V):
        s2, g2 = typecheck_term(P, t.t2)
        s1, g1 = typecheck_term(P, t.t1)
        if g1 != s2:
            raise BoundaryMismatch(f"in {t}: {g1} is not {s2}")
        return s1, g2
    if isinstance(t, H):
        s2, g2 = typecheck_term(P, t.t2)
        s1, g1 = typecheck_term(P, t.t1)
        if s1.tgt != s2.src:
            raise BoundaryMismatch(f"in {t}: objects {s1.tgt} and {s2.src} differ")
        return s1.then(s2), g1.then(g2)
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------- concrete 2-categories


class ContainerTwoCat:
    """Finite containers with one object: the target of every interpretation here."""

    OBJECT = "*"

    def identity_1(self, obj):
        return identity_container()

    def compose_1(self, g, f):
        """g after f."""
        return compose_containers(g, f)

    def identity_2(self, F):
        return identity_morphism(F)

    def vcomp(self, b, a):
        return vcomp(b, a)

    def hcomp(self, b, a):
        return hcomp(b, a)

    def boundary(self, a):
        return a.src, a.tgt

    def record(self, report, tag, description, lhs, rhs, oracle=False, max_size=2):
        return law_instance(report, tag, description, lhs, rhs, oracle, max_size)


CONTAINERS = ContainerTwoCat()


@dataclass(eq=False)
class Interpretation:
    presentation: Presentation
    objects: dict
    one_cells: dict
    two_cells: dict
    target: ContainerTwoCat = CONTAINERS

    def __post_init__(self):
        P = self.presentation
        missing = (set(P.objects) - set(self.objects)) | (set(P.one_cells) - set(self.one_cells)) \
            | (set(P.two_cells) - set(self.two_cells))
        if missing:
            raise UnknownGenerator(f"no image for {sorted(missing)}")
        for name, g in P.two_cells.items():
            src, tgt = self.target.boundary(self.two_cells[name])
            if src != eval_word(self, g.src) or tgt != eval_word(self, g.tgt):
                raise BoundaryMismatch(f"image of {name} has the wrong boundary")

    def __eq__(self, other):
        return (isinstance(other, Interpretation)
                and self.presentation == other.presentation
                and self.objects == other.objects
                and self.one_cells == other.one_cells
                and self.two_cells.keys() == other.two_cells.keys()
                and all(self.two_cells[k] is other.two_cells[k] for k in self.two_cells))


def eval_word(I, w):
    out = I.target.identity_1(I.objects[w.src])
    for g in reversed(w.gens):
        out = I.target.compose_1(I.one_cells[g], out)
    return out


def eval_term(I, t):
    if isinstance(t, Gen):
        return I.two_cells[t.name]
    if isinstance(t, Id):
        return I.target.identity_2(eval_word(I, t.word))
    if isinstance(t, V):
        return I.target.vcomp(eval_term(I, t.t2), eval_term(I, t.t1))
    if isinstance(t, H):
        return I.target.hcomp(eval_term(I, t.t2), eval_term(I, t.t1))
    raise TypeError(f"not a term: {t!r}")


def check_relations(I, P=None, oracle=False, max_size=2, executor=None):
    P = P or I.presentation
    rep = CheckReport(f"relations[{P.name}]")

    def one(r):
        sub = CheckReport(r.tag)
        I.target.record(sub, r.tag, f"{r.lhs} = {r.rhs}", eval_term(I, r.lhs), eval_term(I, r.rhs),
                        oracle, max_size)
        return sub

    subs = list(executor.map(one, P.relations)) if executor else [one(r) for r in P.relations]
    for sub in subs:
        rep.extend(sub)
    return rep
