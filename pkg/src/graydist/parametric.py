"""The Writer and Either parametric distributive laws, their action on
monad morphisms, and the module and coslice lifts they correspond to.

Both constructions put the parameter monad T in the ``first`` slot, so the
laws read Writer·T ⇒ T·Writer and Either·T ⇒ T·Either.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .container import (
    FinFunction,
    FinSet,
    Insert,
    InvalidParameter,
    MonoidTable,
    Out,
    apply,
    atom_container,
    compose_containers,
    concrete,
    either,
    either_atom,
    eval_functor_on_function,
    eval_morphism_on_set,
    eval_on_set,
    from_rule,
    identity_morphism,
    morphism_equal,
    strength,
    strength_morphism,
    writer,
)
from .laws import (
    DistLawData,
    DistMorphismData,
    NFoldSystem,
    check_dist_morphism,
    compose_dist_morphisms,
    compose_monad_morphisms,
)
from .report import CheckReport


def dwriter(M, T):
    W = writer(M)
    if not T.functor.atoms:
        law = identity_morphism(W.functor)
    else:
        law = strength_morphism(M, T.functor)
    return DistLawData(T, W, law, f"dwriter({M.name})({T.name})")


def point_swap(n, F, u):
    """⟨u∘ℓ, F(r)⟩ : Either(n)·F ⇒ F·Either(n) for a point u : Id ⇒ F."""
    E = atom_container(either_atom(n))
    if not F.atoms:
        return identity_morphism(E)

    def rule(ctx, node):
        v = node.force(ctx)
        if concrete(v.coords[0]) == "L":
            return apply(u, Out(v.coords, ()))
        return Insert(v.children[0], len(F), ("R",))

    return from_rule(compose_containers(E, F), compose_containers(F, E), rule,
                     f"swap[{n},{F.name}]")


def deither(A, T):
    n = A.size if isinstance(A, FinSet) else int(A)
    E = either(n)
    return DistLawData(T, E, point_swap(n, T.functor, T.unit), f"deither({n})({T.name})")


def canonical_triple(A, M, T):
    """The 3-fold system (Either(A), Writer(M), T) with the parametric laws."""
    E, W = either(A), writer(M)
    laws = {(1, 2): deither(A, W), (1, 3): deither(A, T), (2, 3): dwriter(M, T)}
    return NFoldSystem((E, W, T), laws)


# ------------------------------------------------------------ on 1-cells


def dwriter_on_morphism(M, m):
    """The image of a monad morphism (Φ, φ): base part is Φ's strength."""
    phi = strength_morphism(M, m.carrier) if m.carrier.atoms else identity_morphism(
        writer(M).functor)
    return DistMorphismData(m.carrier, phi, m.component, f"DWriter({m.name})")


def deither_on_morphism(A, m):
    n = A.size if isinstance(A, FinSet) else int(A)
    if m.point is None:
        raise InvalidParameter(f"{m.name} has no point")
    return DistMorphismData(m.carrier, point_swap(n, m.carrier, m.point), m.component,
                            f"DEither({m.name})")


def _image(kind, param, m):
    if kind == "dwriter":
        return dwriter_on_morphism(param, m)
    if kind == "deither":
        return deither_on_morphism(param, m)
    raise ValueError(kind)


def _law(kind, param, T):
    return dwriter(param, T) if kind == "dwriter" else deither(param, T)


def check_parametric_functoriality(kind, param, source, target, m, then=None):
    """Run check_dist_morphism on the image of ``m : source -> target``.

    ``then`` is an optional ``(m2, target2)``; the image of ``m2∘m`` is
    compared with the composite of the images.
    """
    rep = CheckReport(f"{kind}-functoriality[{m.name}]")
    img = _image(kind, param, m)
    rep.extend(check_dist_morphism(_law(kind, param, source), _law(kind, param, target), img))
    if then is not None:
        m2, target2 = then
        img2 = _image(kind, param, m2)
        rep.extend(check_dist_morphism(_law(kind, param, target), _law(kind, param, target2), img2),
                   prefix="second.")
        whole = _image(kind, param, compose_monad_morphisms(m2, m))
        parts = compose_dist_morphisms(img2, img)
        rep.add("functor.composition.base", "image of composite, base part",
                morphism_equal(whole.phi, parts.phi))
        rep.add("functor.composition.carrier", "image of composite, carrier part",
                morphism_equal(whole.psi, parts.psi))
    return rep


# ---------------------------------------------------------- writer modules


@dataclass(frozen=True)
class WriterModule:
    """An M-module: action M × A → A indexed ``m·|A| + a``."""
    monoid: MonoidTable
    carrier: FinSet
    action: FinFunction

    def __post_init__(self):
        M, A = self.monoid, self.carrier
        act = self.action
        if act.dom.size != M.size * A.size or act.cod != A:
            raise InvalidParameter("action must be M × A -> A")
        for a in range(A.size):
            if act(M.unit * A.size + a) != a:
                raise InvalidParameter(f"unit fails at {a}")
        for m, k, a in itertools.product(range(M.size), range(M.size), range(A.size)):
            if act(m * A.size + act(k * A.size + a)) != act(M.mul(m, k) * A.size + a):
                raise InvalidParameter(f"action is not associative at {(m, k, a)}")


def free_module(M, A):
    X = FinSet(M.size * A.size)
    vals = [M.mul(m, k) * A.size + a for m in range(M.size) for k in range(M.size) for a in range(A.size)]
    return WriterModule(M, X, FinFunction(FinSet(M.size * X.size), X, vals))


def all_modules(M, size):
    A = FinSet(size)
    dom = FinSet(M.size * size)
    for vals in itertools.product(range(size), repeat=dom.size):
        try:
            yield WriterModule(M, A, FinFunction(dom, A, vals))
        except InvalidParameter:
            continue


def default_writer_samples(M):
    out = [free_module(M, FinSet(n)) for n in range(3)]
    for n in range(3):
        out += list(all_modules(M, n))
    return out


def lifted_action(T, mod):
    """T(φ)∘str : M × T(A) → T(A)."""
    M, A = mod.monoid, mod.carrier
    st = strength(T.functor)(M.carrier, A)
    return st.then(eval_functor_on_function(T.functor, mod.action))


def _module_laws(M, carrier, act):
    n = carrier.size
    unit = all(act(M.unit * n + y) == y for y in range(n))
    assoc = all(act(m * n + act(k * n + y)) == act(M.mul(m, k) * n + y)
                for m, k, y in itertools.product(range(M.size), range(M.size), range(n)))
    return unit and assoc


def lift_writer_modules(M, T, samples=None):
    samples = default_writer_samples(M) if samples is None else samples
    rep = CheckReport(f"writer-lift[{M.name},{T.name}]")
    F = T.functor
    law = dwriter(M, T).law
    for idx, mod in enumerate(samples):
        A = mod.carrier
        TA = eval_on_set(F, A)
        act = lifted_action(T, mod)
        tag = f"lift[{idx}](|A|={A.size})"
        rep.add(f"{tag}.module", "lifted action is a module", _module_laws(M, TA, act))
        rep.add(f"{tag}.carrier", "U∘T̂ = T∘U on carriers", act.cod == TA)
        eta = eval_morphism_on_set(T.unit, A)
        rep.add(f"{tag}.unit", "η is a module map",
                all(eta(mod.action(m * A.size + a)) == act(m * TA.size + eta(a))
                    for m in range(M.size) for a in range(A.size)))
        mu = eval_morphism_on_set(T.mult, A)
        try:
            act2 = lifted_action(T, WriterModule(M, TA, act))
        except InvalidParameter:
            rep.add(f"{tag}.mult", "μ is a module map", False, {"reason": "lift is not a module"})
        else:
            TTA = eval_on_set(F, TA)
            rep.add(f"{tag}.mult", "μ is a module map",
                    all(mu(act2(m * TTA.size + z)) == act(m * TA.size + mu(z))
                        for m in range(M.size) for z in range(TTA.size)))
        # the lift read off the law: T(φ)∘law_A
        via_law = eval_morphism_on_set(law, A).then(eval_functor_on_function(F, mod.action))
        rep.add(f"{tag}.law-coherence", "T(φ)∘law = T(φ)∘str", via_law == act)
    return rep


# --------------------------------------------------------------- coslices


@dataclass(frozen=True)
class CosliceObject:
    """An object of A ↓ FinSet: a point φ : A → X."""
    base: FinSet
    point: FinFunction

    def __post_init__(self):
        if self.point.dom != self.base:
            raise InvalidParameter("point must start at the base set")

    @property
    def carrier(self):
        return self.point.cod


def coslice_objects(A, size):
    X = FinSet(size)
    for vals in itertools.product(range(size), repeat=A.size):
        yield CosliceObject(A, FinFunction(A, X, vals))


def is_coslice_morphism(h, src, tgt):
    return h.dom == src.carrier and h.cod == tgt.carrier and src.point.then(h) == tgt.point


def coslice_morphisms(src, tgt):
    for vals in itertools.product(range(tgt.carrier.size), repeat=src.carrier.size):
        h = FinFunction(src.carrier, tgt.carrier, vals)
        if is_coslice_morphism(h, src, tgt):
            yield h


def lift_pointed(F, u, obj):
    """F̂(X, φ) = (F X, F(φ)∘u_A)."""
    uA = eval_morphism_on_set(u, obj.base)
    return CosliceObject(obj.base, uA.then(eval_functor_on_function(F, obj.point)))


def lift_coslice(A, F, u, samples=None, mult=None, bound=2):
    """Check the lift of the pointed endofunctor (F, u) to A ↓ FinSet.

    With ``mult`` (making (F, u, mult) a monad) the lifted multiplication is
    checked as well.
    """
    A = A if isinstance(A, FinSet) else FinSet(A)
    if samples is None:
        samples = [o for n in range(bound + 1) for o in coslice_objects(A, n)]
    rep = CheckReport(f"coslice-lift[{A.size},{F.name}]")
    for idx, obj in enumerate(samples):
        X = obj.carrier
        lifted = lift_pointed(F, u, obj)
        tag = f"lift[{idx}](|X|={X.size})"
        uX = eval_morphism_on_set(u, X)
        rep.add(f"{tag}.point", "u_X is a coslice map (X,φ) -> F̂(X,φ)",
                is_coslice_morphism(uX, obj, lifted))
        if mult is not None:
            twice = lift_pointed(F, u, lifted)
            muX = eval_morphism_on_set(mult, X)
            rep.add(f"{tag}.mult", "μ_X is a coslice map", is_coslice_morphism(muX, twice, lifted))
        ok = True
        for other in samples:
            for h in coslice_morphisms(obj, other):
                Fh = eval_functor_on_function(F, h)
                ok &= is_coslice_morphism(Fh, lifted, lift_pointed(F, u, other))
        rep.add(f"{tag}.functor", "F(h) is a coslice map for every coslice map h", ok)
        ident = eval_functor_on_function(F, FinFunction.identity(X))
        rep.add(f"{tag}.identity", "F preserves identities", ident == FinFunction.identity(eval_on_set(F, X)))
    return rep


def either_law_coherence(A, T, max_size=3):
    """On (X, φ): T(⟨φ,id⟩)∘law_X∘ℓ = T(φ)∘u_A and T(⟨φ,id⟩)∘law_X∘r = id."""
    A = A if isinstance(A, FinSet) else FinSet(A)
    n = A.size
    law = deither(A, T).law
    F = T.functor
    rep = CheckReport(f"either-coherence[{n},{T.name}]")
    for size in range(max_size + 1):
        X = FinSet(size)
        lawX = eval_morphism_on_set(law, X)
        FX = eval_on_set(F, X)
        ell = FinFunction(A, eval_on_set(either(n).functor, FX), range(n))
        r = FinFunction(FX, ell.cod, [n + y for y in range(FX.size)])
        ok = True
        for obj in coslice_objects(A, size):
            copair = FinFunction(FinSet(n + size), X, list(obj.point.values) + list(range(size)))
            back = lawX.then(eval_functor_on_function(F, copair))
            ok &= ell.then(back) == lift_pointed(F, T.unit, obj).point
            ok &= r.then(back) == FinFunction.identity(FX)
        rep.add(f"coherence(|X|={size})", "lift read off the law", ok)
    return rep


def writer_law_coherence(M, T, max_size=3):
    """The dwriter law at A is the canonical strength M × T(A) → T(M × A)."""
    law = dwriter(M, T).law
    st = strength(T.functor)
    rep = CheckReport(f"writer-coherence[{M.name},{T.name}]")
    for size in range(max_size + 1):
        A = FinSet(size)
        rep.add(f"coherence(|A|={size})", "law = strength", eval_morphism_on_set(law, A) == st(M.carrier, A))
    return rep


# ----------------------------------------------- cocartesian structure


@dataclass(frozen=True)
class CocartesianMonoid:
    """A monoid (A, ε, m) for the coproduct: m : A + A → A, the unit is empty."""
    carrier: FinSet
    mult: FinFunction


def _monoid_laws(n, m):
    # A+A indexed by side·n + a
    unit = all(m[a] == a and m[n + a] == a for a in range(n))
    if not unit:
        return False
    # (A+A)+A vs A+(A+A): an element is (side, a) with side in 0..2
    for side in range(3):
        for a in range(n):
            left = m[m[a] + n] if side == 2 else m[m[side * n + a]]
            right = m[a] if side == 0 else m[n + m[(side - 1) * n + a]]
            if left != right:
                return False
    return True


def unique_cocartesian_monoid(A):
    n = A.size if isinstance(A, FinSet) else int(A)
    if n > 3:
        raise InvalidParameter("exhaustive search is limited to |A| <= 3")
    A = FinSet(n)
    found = [m for m in itertools.product(range(n), repeat=2 * n) if _monoid_laws(n, m)]
    rep = CheckReport(f"cocartesian-monoid[{n}]")
    codiag = tuple(list(range(n)) * 2)
    rep.add("monoid.count", f"{len(found)} monoid structures", len(found) == 1, {"found": len(found)})
    rep.add("monoid.codiagonal", "the structure is ⟨id,id⟩", found == [codiag])
    return CocartesianMonoid(A, FinFunction(FinSet(2 * n), A, codiag)), rep


def _action_laws(a, x, s):
    """Module laws for s : A + X → X (indexed i or a + z) over ⟨id,id⟩."""
    if any(s[a + z] != z for z in range(x)):
        return False
    # A + A + X: compare s∘(m + X) with s∘(A + s) on both copies of A
    for side in range(2):
        for i in range(a):
            right = s[i] if side == 0 else s[a + s[i]]
            if s[i] != right:
                return False
    return True


def modules_coslice_iso(A, bound=2):
    n = A.size if isinstance(A, FinSet) else int(A)
    if bound > 3:
        raise InvalidParameter("bound must be <= 3")
    A = FinSet(n)
    rep = CheckReport(f"modules-coslice[{n}]")
    modules = {}
    for x in range(bound + 1):
        acts = [s for s in itertools.product(range(x), repeat=n + x) if _action_laws(n, x, s)]
        objs = list(coslice_objects(A, x))
        as_pairs = all(s[n:] == tuple(range(x)) for s in acts)
        to_coslice = sorted(s[:n] for s in acts)
        rep.add(f"iso.objects(|X|={x})", f"{len(acts)} modules, {len(objs)} coslice objects",
                len(acts) == len(objs) and as_pairs
                and to_coslice == sorted(o.point.values for o in objs),
                {"modules": len(acts), "coslice": len(objs)})
        modules[x] = acts
    for x, y in itertools.product(range(bound + 1), repeat=2):
        mod_count = cos_count = 0
        same = True
        for s in modules[x]:
            for t in modules[y]:
                src = CosliceObject(A, FinFunction(A, FinSet(x), s[:n]))
                tgt = CosliceObject(A, FinFunction(A, FinSet(y), t[:n]))
                for vals in itertools.product(range(y), repeat=x):
                    # module map: h∘s = t∘(A + h)
                    is_mod = all(vals[s[i]] == t[i] for i in range(n)) and all(
                        vals[s[n + z]] == t[n + vals[z]] for z in range(x))
                    is_cos = is_coslice_morphism(FinFunction(FinSet(x), FinSet(y), vals), src, tgt)
                    mod_count += is_mod
                    cos_count += is_cos
                    same &= is_mod == is_cos
        rep.add(f"iso.morphisms({x},{y})", f"{mod_count} module maps, {cos_count} coslice maps",
                same and mod_count == cos_count, {"modules": mod_count, "coslice": cos_count})
    return rep
