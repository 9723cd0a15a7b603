"""Distributive laws between container monads and the checks around them.

Slot convention: a ``DistLawData`` with ``first`` = t₁ and ``second`` = t₂
carries ``law : t₂·t₁ ⇒ t₁·t₂``.  Seen as a monad in the 2-category of
monads, ``second`` is the base monad and ``(first, law)`` the carrier
1-cell.

Monad morphisms go the way of the 1-cells of that 2-category: a morphism
from (X, tˣ) to (Y, tʸ) is ``f`` with ``φ : tʸ·f ⇒ f·tˣ``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .container import (
    BoundaryMismatch,
    Container,
    ContainerMorphism,
    FinSet,
    MonadData,
    compose_containers,
    eval_on_set,
    from_tables,
    hcomp,
    identity_container,
    identity_morphism,
    law_instance,
    check_monad,
    vchain,
    vcomp,
    whisker,
)
from .report import CheckReport

DIST_AXIOMS = ("dist.unit-first", "dist.unit-second", "dist.mult-first", "dist.mult-second")


@dataclass(frozen=True, eq=False)
class DistLawData:
    first: MonadData
    second: MonadData
    law: ContainerMorphism
    name: str = "law"

    def __post_init__(self):
        t1, t2 = self.first.functor, self.second.functor
        if self.law.src != compose_containers(t2, t1) or self.law.tgt != compose_containers(t1, t2):
            raise BoundaryMismatch(
                f"{self.name}: law must be {t2.name}·{t1.name} => {t1.name}·{t2.name}")

    def __eq__(self, other):
        return (isinstance(other, DistLawData) and self.first == other.first
                and self.second == other.second and self.law is other.law)

    def __hash__(self):
        return hash((self.first, self.second, id(self.law)))

    def __repr__(self):
        return f"DistLawData({self.name}: {self.second.name} over {self.first.name})"

    def with_law(self, law, name=None):
        return DistLawData(self.first, self.second, law, name or self.name)


def dist_axiom_sides(D):
    """The four axioms as (tag, description, lhs, rhs)."""
    t1, t2 = D.first.functor, D.second.functor
    e1, e2, m1, m2 = D.first.unit, D.second.unit, D.first.mult, D.second.mult
    g = D.law
    return [
        ("dist.unit-first", "γ∘(t₂·η₁) = η₁·t₂",
         vcomp(g, whisker(t2, e1)), whisker(e1, t2)),
        ("dist.unit-second", "γ∘(η₂·t₁) = t₁·η₂",
         vcomp(g, whisker(e2, t1)), whisker(t1, e2)),
        ("dist.mult-first", "γ∘(t₂·μ₁) = (μ₁·t₂)∘(t₁·γ)∘(γ·t₁)",
         vcomp(g, whisker(t2, m1)), vchain(whisker(m1, t2), whisker(t1, g), whisker(g, t1))),
        ("dist.mult-second", "γ∘(μ₂·t₁) = (t₁·μ₂)∘(γ·t₂)∘(t₂·γ)",
         vcomp(g, whisker(m2, t1)), vchain(whisker(t1, m2), whisker(g, t2), whisker(t2, g))),
    ]


def check_dist_law(D, oracle=True, max_size=3):
    rep = CheckReport(f"dist[{D.name}]")
    for tag, desc, lhs, rhs in dist_axiom_sides(D):
        law_instance(rep, tag, desc, lhs, rhs, oracle, max_size)
    return rep


def compose_via_law(D):
    t1, t2 = D.first, D.second
    F = compose_containers(t1.functor, t2.functor)
    unit = hcomp(t1.unit, t2.unit)
    swap = whisker(t1.functor, D.law, t2.functor)
    mult = vcomp(hcomp(t1.mult, t2.mult), swap)
    return MonadData(F, unit, mult, f"{t1.name}∘{t2.name}")


def composite_action_matches(D, max_size=3):
    """|(t₁∘t₂)(X)| = |t₁(t₂(X))| computed as iterated set evaluation."""
    C = compose_via_law(D)
    rep = CheckReport(f"composite-action[{D.name}]")
    for n in range(max_size + 1):
        inner = eval_on_set(D.second.functor, FinSet(n))
        outer = eval_on_set(D.first.functor, inner)
        rep.add(f"composite.action(|X|={n})", "carrier of the composite",
                eval_on_set(C.functor, FinSet(n)) == outer)
    return rep


# ---------------------------------------------------------- monad morphisms


@dataclass(frozen=True, eq=False)
class MonadMorphismData:
    """``f`` with ``component : tʸ·f ⇒ f·tˣ``.

    ``point`` is an optional ``Id ⇒ f`` used by the Either construction.
    """
    carrier: Container
    component: ContainerMorphism
    point: ContainerMorphism | None = None
    name: str = "m"

    def __post_init__(self):
        if self.point is None and self.carrier == identity_container():
            object.__setattr__(self, "point", identity_morphism(self.carrier))

    def __eq__(self, other):
        return (isinstance(other, MonadMorphismData) and self.carrier == other.carrier
                and self.component is other.component)

    def __hash__(self):
        return hash((self.carrier, id(self.component)))

    def __repr__(self):
        return f"MonadMorphismData({self.name} on {self.carrier.name})"

    def boundary_ok(self, source, target):
        f = self.carrier
        return (self.component.src == compose_containers(target.functor, f)
                and self.component.tgt == compose_containers(f, source.functor))


def identity_monad_morphism(T):
    return MonadMorphismData(identity_container(), identity_morphism(T.functor), name=f"id[{T.name}]")


def compose_monad_morphisms(m2, m1):
    """m2 after m1: (f₂·f₁, (f₂·φ₁)∘(φ₂·f₁))."""
    comp = vcomp(whisker(m2.carrier, m1.component), whisker(m2.component, m1.carrier))
    point = None
    if m1.point is not None and m2.point is not None:
        point = hcomp(m2.point, m1.point)
    return MonadMorphismData(compose_containers(m2.carrier, m1.carrier), comp, point,
                             f"{m2.name}∘{m1.name}")


def monad_morphism_sides(source, target, m, prefix="mnd"):
    f, phi = m.carrier, m.component
    tx, ty = source.functor, target.functor
    return [
        (f"{prefix}.unit", "φ∘(ηʸ·f) = f·ηˣ",
         vcomp(phi, whisker(target.unit, f)), whisker(f, source.unit)),
        (f"{prefix}.mult", "φ∘(μʸ·f) = (f·μˣ)∘(φ·tˣ)∘(tʸ·φ)",
         vcomp(phi, whisker(target.mult, f)),
         vchain(whisker(f, source.mult), whisker(phi, tx), whisker(ty, phi))),
    ]


def check_monad_morphism(source, target, m, oracle=False, max_size=3):
    if not m.boundary_ok(source, target):
        raise BoundaryMismatch(f"{m!r} is not a morphism {source.name} -> {target.name}")
    rep = CheckReport(f"monad-morphism[{m.name}]")
    for tag, desc, lhs, rhs in monad_morphism_sides(source, target, m):
        law_instance(rep, tag, desc, lhs, rhs, oracle, max_size)
    return rep


# ------------------------------------------------ monads in the monad 2-category


@dataclass(frozen=True, eq=False)
class MonadInMnd:
    """A monad on the object (X, base) of Mnd: carrier 1-cell (c, λ) and 2-cells."""
    base: MonadData
    carrier: MonadMorphismData
    unit: ContainerMorphism
    mult: ContainerMorphism
    carrier_name: str = "c"
    name: str = "law"


def encode_as_monad_in_mnd(D):
    carrier = MonadMorphismData(D.first.functor, D.law, name=f"({D.first.name}, {D.name})")
    return MonadInMnd(D.second, carrier, D.first.unit, D.first.mult, D.first.name, D.name)


def decode_from_monad_in_mnd(E):
    first = MonadData(E.carrier.carrier, E.unit, E.mult, E.carrier_name)
    return DistLawData(first, E.base, E.carrier.component, E.name)


def check_monad_in_mnd(E, oracle=False, max_size=3):
    """Every cell condition of a monad in Mnd, tagged separately.

    * ``mnd-1cell.unit`` / ``mnd-1cell.mult``: (c, λ) is a monad morphism;
    * ``mnd-2cell.unit`` / ``mnd-2cell.mult``: η and μ are 2-cells of Mnd;
    * ``base.*`` / ``carrier.*``: the monad laws downstairs.
    """
    b = E.base
    c, lam = E.carrier.carrier, E.carrier.component
    rep = CheckReport(f"mnd-monad[{E.name}]")
    for tag, desc, lhs, rhs in monad_morphism_sides(b, b, E.carrier, prefix="mnd-1cell"):
        law_instance(rep, tag, desc, lhs, rhs, oracle, max_size)
    B = b.functor
    law_instance(rep, "mnd-2cell.unit", "(η·b)∘id = λ∘(b·η)",
                 whisker(E.unit, B), vcomp(lam, whisker(B, E.unit)), oracle, max_size)
    law_instance(rep, "mnd-2cell.mult", "(μ·b)∘(c·λ)∘(λ·c) = λ∘(b·μ)",
                 vchain(whisker(E.mult, B), whisker(c, lam), whisker(lam, c)),
                 vcomp(lam, whisker(B, E.mult)), oracle, max_size)
    rep.extend(check_monad(b), prefix="base.")
    cm = MonadData(c, E.unit, E.mult, E.carrier_name)
    rep.extend(check_monad(cm), prefix="carrier.")
    return rep


# The Mnd(Mnd) condition that each distributive-law axiom becomes.
AXIOM_TO_MND = {
    "dist.unit-first": "mnd-2cell.unit",
    "dist.unit-second": "mnd-1cell.unit",
    "dist.mult-first": "mnd-2cell.mult",
    "dist.mult-second": "mnd-1cell.mult",
}


def law_mutations(D, budget=200):
    """Table perturbations of the law that change a single source shape."""
    src, tgt = D.law.src, D.law.tgt
    smap = list(D.law.shape_map.values)
    pmaps = [list(p.values) for p in D.law.position_maps]
    count = 0
    for s in range(src.shape_count):
        npos = src.positions(s).size
        for t in range(tgt.shape_count):
            k = tgt.positions(t).size
            if k and not npos:
                continue
            options = []
            if t != smap[s]:
                options.append([min(q, npos - 1) for q in range(k)] if npos else [])
            elif k > 1 and npos > 1:
                options.append(pmaps[s][1:] + pmaps[s][:1])
                options.append([pmaps[s][0]] * k)
            for pm in options:
                if t == smap[s] and pm == pmaps[s]:
                    continue
                new_s = smap[:]
                new_p = [p[:] for p in pmaps]
                new_s[s], new_p[s] = t, pm
                yield D.with_law(from_tables(src, tgt, new_s, new_p, f"{D.law.label()}~{s}"),
                                 f"{D.name}~{s}->{t}")
                count += 1
                if count >= budget:
                    return


def single_axiom_mutations(D, budget=200):
    """Mutations failing exactly one distributive-law axiom, by axiom tag."""
    found = {}
    for Dm in law_mutations(D, budget):
        failed = check_dist_law(Dm, oracle=False).failed_tags()
        if len(failed) == 1 and failed[0] not in found:
            found[failed[0]] = Dm
            if len(found) == len(DIST_AXIOMS):
                break
    return found


# ----------------------------------------------------- morphisms of laws


@dataclass(frozen=True, eq=False)
class DistMorphismData:
    """``f`` with φ : b'·f ⇒ f·b (base parts) and ψ : c'·f ⇒ f·c (carriers)."""
    carrier: Container
    phi: ContainerMorphism
    psi: ContainerMorphism
    name: str = "m"

    @property
    def base_part(self):
        return MonadMorphismData(self.carrier, self.phi, name=f"{self.name}.φ")

    @property
    def carrier_part(self):
        return MonadMorphismData(self.carrier, self.psi, name=f"{self.name}.ψ")


def identity_dist_morphism(D):
    Id = identity_container()
    return DistMorphismData(Id, identity_morphism(D.second.functor),
                            identity_morphism(D.first.functor), f"id[{D.name}]")


def compose_dist_morphisms(m2, m1):
    base = compose_monad_morphisms(m2.base_part, m1.base_part)
    carr = compose_monad_morphisms(m2.carrier_part, m1.carrier_part)
    return DistMorphismData(base.carrier, base.component, carr.component, f"{m2.name}∘{m1.name}")


def check_dist_morphism(srcD, tgtD, m, oracle=False, max_size=3):
    rep = CheckReport(f"dist-morphism[{m.name}]")
    for tag, desc, lhs, rhs in monad_morphism_sides(srcD.second, tgtD.second, m.base_part,
                                                    prefix="dist-morphism.base"):
        law_instance(rep, tag, desc, lhs, rhs, oracle, max_size)
    for tag, desc, lhs, rhs in monad_morphism_sides(srcD.first, tgtD.first, m.carrier_part,
                                                    prefix="dist-morphism.carrier"):
        law_instance(rep, tag, desc, lhs, rhs, oracle, max_size)
    f = m.carrier
    b, c = srcD.second.functor, srcD.first.functor
    b2, c2 = tgtD.second.functor, tgtD.first.functor
    lhs = vchain(whisker(m.psi, b), whisker(c2, m.phi), whisker(tgtD.law, f))
    rhs = vchain(whisker(f, srcD.law), whisker(m.phi, c), whisker(b2, m.psi))
    law_instance(rep, "dist-morphism.hexagon", "(ψ·b)∘(c'·φ)∘(λ'·f) = (f·λ)∘(φ·c)∘(b'·ψ)",
                 lhs, rhs, oracle, max_size)
    return rep


def dist_projections(D, which):
    if which == "u1":
        return D.second
    if which == "u2":
        return D.first
    if which == "c":
        return compose_via_law(D)
    raise ValueError(f"unknown projection {which!r}")


def dist_projections_on_morphism(m, which, srcD=None, tgtD=None):
    if which == "u1":
        return m.base_part
    if which == "u2":
        return m.carrier_part
    if which == "c":
        if srcD is None or tgtD is None:
            raise ValueError("the c projection needs both laws")
        # (ψ·b)∘(c'·φ) : c'·b'·f ⇒ f·c·b
        comp = vcomp(whisker(m.psi, srcD.second.functor), whisker(tgtD.first.functor, m.phi))
        return MonadMorphismData(m.carrier, comp, name=f"C({m.name})")
    raise ValueError(f"unknown projection {which!r}")


# ------------------------------------------------------------- Yang–Baxter


def yang_baxter_sides(l12, l13, l23, T1, T2, T3):
    """λᵢⱼ : Tᵢ·Tⱼ ⇒ Tⱼ·Tᵢ; both sides go T₁T₂T₃ ⇒ T₃T₂T₁."""
    F1, F2, F3 = T1.functor, T2.functor, T3.functor
    for lam, (a, b) in ((l12, (F1, F2)), (l13, (F1, F3)), (l23, (F2, F3))):
        if lam.src != compose_containers(a, b) or lam.tgt != compose_containers(b, a):
            raise BoundaryMismatch(f"{lam!r} does not swap {a.name} and {b.name}")
    lhs = vchain(whisker(F3, l12), whisker(l13, F2), whisker(F1, l23))
    rhs = vchain(whisker(l23, F1), whisker(F2, l13), whisker(l12, F3))
    return lhs, rhs


def check_yang_baxter(l12, l13, l23, T1, T2, T3, indices=(1, 2, 3), oracle=False, max_size=2):
    i, j, k = indices
    rep = CheckReport(f"yang-baxter[{T1.name},{T2.name},{T3.name}]")
    lhs, rhs = yang_baxter_sides(l12, l13, l23, T1, T2, T3)
    law_instance(rep, f"yang-baxter({i},{j},{k})",
                 "(T₃·λ₁₂)∘(λ₁₃·T₂)∘(T₁·λ₂₃) = (λ₂₃·T₁)∘(T₂·λ₁₃)∘(λ₁₂·T₃)",
                 lhs, rhs, oracle, max_size)
    return rep


@dataclass(frozen=True, eq=False)
class NFoldSystem:
    """Monads T₁..Tₙ and laws (i, j) ↦ Tᵢ·Tⱼ ⇒ Tⱼ·Tᵢ for i < j (1-based).

    The law at (i, j) is stored as a DistLawData with first = Tⱼ and
    second = Tᵢ.
    """
    monads: tuple
    laws: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "monads", tuple(self.monads))
        n = len(self.monads)
        if n < 1:
            raise ValueError("an n-fold system needs n >= 1")
        keys = {(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
        if set(self.laws) != keys:
            raise BoundaryMismatch(f"laws must be given exactly at {sorted(keys)}")
        for (i, j), D in self.laws.items():
            if D.first != self.monads[j - 1] or D.second != self.monads[i - 1]:
                raise BoundaryMismatch(f"law ({i},{j}) has the wrong monads")

    @property
    def n(self):
        return len(self.monads)

    def law(self, i, j):
        return self.laws[(i, j)]

    def __eq__(self, other):
        return (isinstance(other, NFoldSystem) and self.monads == other.monads
                and self.laws == other.laws)

    def __hash__(self):
        return hash(self.monads)

    def replace_law(self, i, j, law):
        laws = dict(self.laws)
        laws[(i, j)] = self.laws[(i, j)].with_law(law)
        return NFoldSystem(self.monads, laws)


def _retag(report, old, new):
    out = CheckReport(report.suite)
    for inst in report.instances:
        out.add(new + inst.tag[len(old):], inst.description, inst.passed, inst.witness)
    return out


def check_nfold(S, oracle=False, max_size=2):
    rep = CheckReport(f"nfold[{S.n}]")
    for i, T in enumerate(S.monads, start=1):
        rep.extend(_retag(check_monad(T, oracle, max_size), "monad.", f"monad[{i}]."))
    for (i, j), D in sorted(S.laws.items()):
        rep.extend(_retag(check_dist_law(D, oracle, max_size), "dist.", f"dist({i},{j})."))
    for i, j, k in itertools.combinations(range(1, S.n + 1), 3):
        rep.extend(check_yang_baxter(S.law(i, j).law, S.law(i, k).law, S.law(j, k).law,
                                     S.monads[i - 1], S.monads[j - 1], S.monads[k - 1],
                                     (i, j, k), oracle, max_size))
    return rep


def tags_touching(S, i, j):
    """Tags of check_nfold that involve the law (i, j)."""
    tags = {f"dist({i},{j}).{a[len('dist.'):]}" for a in DIST_AXIOMS}
    for tri in itertools.combinations(range(1, S.n + 1), 3):
        if i in tri and j in tri:
            tags.add("yang-baxter({},{},{})".format(*tri))
    return tags
