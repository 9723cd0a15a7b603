"""The walking monad, lax Gray tensor products of presentations, and the
iterated powers whose strict functors are n-fold distributive laws.

Crossings are stored only on pairs of generating 1-cells.  Crossings on
words are terms built by the ladder formulas, and an empty word on either
side gives an identity.  Naturality of crossings is instantiated on
generating 2-cells and identities only.
"""

from __future__ import annotations

import itertools

from .container import MonadData
from .laws import DistLawData, NFoldSystem
from .report import CheckReport
from .twocat import (
    CONTAINERS,
    Gen,
    H,
    Id,
    Interpretation,
    OneGen,
    Presentation,
    TwoGen,
    V,
    Word,
    eval_term,
    hseq,
    typecheck_term,
)

OBJECT = "*"


def terminal():
    return Presentation("1", (OBJECT,))


def walking_monad(index=None):
    """One object, t : * → *, η : Id ⇒ t, μ : t·t ⇒ t and the three laws."""
    sfx = "" if index is None else str(index)
    tag = "monad." if index is None else f"monad[{index}]."
    t, eta, mu = f"t{sfx}", f"eta{sfx}", f"mu{sfx}"
    P = Presentation(f"mnd{sfx}" if sfx else "walking_monad", (OBJECT,), factors=1)
    P.add_one(OneGen(t, OBJECT, OBJECT, 1))
    w0, w1, w2, w3 = (Word(OBJECT, OBJECT, (t,) * k) for k in range(4))
    P.add_two(TwoGen(eta, w0, w1, "unit", 1))
    P.add_two(TwoGen(mu, w2, w1, "mult", 1))
    idt = Id(w1)
    P.add_relation(V(Gen(mu), H(Gen(eta), idt)), idt, tag + "unit-left")
    P.add_relation(V(Gen(mu), H(idt, Gen(eta))), idt, tag + "unit-right")
    P.add_relation(V(Gen(mu), H(Gen(mu), idt)), V(Gen(mu), H(idt, Gen(mu))), tag + "assoc")
    return P.validate()


# -------------------------------------------------------------- Gray tensor


class _Lift:
    """Renaming of one factor's cells into the tensor."""

    def __init__(self, objs, others, offset, is_left, taken):
        self.objs = objs
        self.others = others
        self.offset = offset
        self.is_left = is_left
        self.names = {}
        self.taken = taken

    def obj(self, own, other):
        return _pair(own, other, self.is_left, self.objs, self.others)

    def name(self, gen, other):
        key = (gen, other)
        if key not in self.names:
            base = gen if len(self.others) == 1 else f"{gen}@{other}"
            name, k = base, 1
            while name in self.taken:
                k += 1
                name = f"{base}'{k}" if k > 2 else f"{base}'"
            self.taken.add(name)
            self.names[key] = name
        return self.names[key]

    def word(self, w, other):
        return Word(self.obj(w.src, other), self.obj(w.tgt, other),
                    tuple(self.name(g, other) for g in w.gens))

    def term(self, t, other, two_names):
        if isinstance(t, Gen):
            return Gen(two_names[(t.name, other)])
        if isinstance(t, Id):
            return Id(self.word(t.word, other))
        if isinstance(t, V):
            return V(self.term(t.t2, other, two_names), self.term(t.t1, other, two_names))
        return H(self.term(t.t2, other, two_names), self.term(t.t1, other, two_names))

    def factor(self, f):
        if f is None:
            return None
        if isinstance(f, tuple):
            return tuple(x + self.offset for x in f)
        return f + self.offset


def _pair(own, other, is_left, objs, others):
    p, q = (own, other) if is_left else (other, own)
    left, right = (objs, others) if is_left else (others, objs)
    if len(right) == 1:
        return p
    if len(left) == 1:
        return q
    return f"{p}⊗{q}"


def crossing_term(T, v, w, crossings, lp, lq):
    """γ_{v,w} : (v@q₂)(w@p₁) ⇒ (w@p₂)(v@q₁) as a ladder of generator crossings.

    ``v`` is a word of the left factor, ``w`` of the right one;
    ``crossings[(f, g)]`` names the generator crossing.
    """
    p1, p2, q1, q2 = v.src, v.tgt, w.src, w.tgt
    if not v.gens:
        return Id(lq.word(w, p1))
    if not w.gens:
        return Id(lp.word(v, q1))
    if len(v.gens) > 1:
        # γ_{f·v', w} = (γ_{f,w}·v'@q₁) ∘ (f@q₂·γ_{v',w})
        f, rest = v.gens[0], Word(v.src, T.left.one_cells[v.gens[1]].tgt, v.gens[1:])
        fw = Word(rest.tgt, v.tgt, (f,))
        top = H(crossing_term(T, fw, w, crossings, lp, lq), Id(lp.word(rest, q1)))
        bottom = H(Id(lp.word(fw, q2)), crossing_term(T, rest, w, crossings, lp, lq))
        return V(top, bottom)
    if len(w.gens) > 1:
        # γ_{v, g·w'} = (g@p₂·γ_{v,w'}) ∘ (γ_{v,g}·w'@p₁)
        g, rest = w.gens[0], Word(w.src, T.right.one_cells[w.gens[1]].tgt, w.gens[1:])
        gw = Word(rest.tgt, w.tgt, (g,))
        top = H(Id(lq.word(gw, p2)), crossing_term(T, v, rest, crossings, lp, lq))
        bottom = H(crossing_term(T, v, gw, crossings, lp, lq), Id(lq.word(rest, p1)))
        return V(top, bottom)
    return Gen(crossings[(v.gens[0], w.gens[0])])


class _Tensor:
    def __init__(self, left, right):
        self.left = left
        self.right = right


def _cell_choices(P):
    """2-generators together with identities on 1-generators."""
    out = [(name, g.src, g.tgt, Gen(name), g) for name, g in P.two_cells.items()]
    for name, g in P.one_cells.items():
        w = Word(g.src, g.tgt, (name,))
        out.append((f"id[{name}]", w, w, None, None))
    return out


def gray_tensor(P, Q):
    taken = set()
    lp = _Lift(P.objects, Q.objects, 0, True, taken)
    lq = _Lift(Q.objects, P.objects, P.factors, False, taken)
    T = _Tensor(P, Q)
    name = P.name if not Q.one_cells and len(Q.objects) == 1 else (
        Q.name if not P.one_cells and len(P.objects) == 1 else f"{P.name}⊗{Q.name}")
    R = Presentation(name, factors=P.factors + Q.factors)
    for p, q in itertools.product(P.objects, Q.objects):
        R.add_object(lp.obj(p, q))

    for q in Q.objects:
        for g in P.one_cells.values():
            R.add_one(OneGen(lp.name(g.name, q), lp.obj(g.src, q), lp.obj(g.tgt, q), lp.factor(g.factor)))
    for p in P.objects:
        for g in Q.one_cells.values():
            R.add_one(OneGen(lq.name(g.name, p), lq.obj(g.src, p), lq.obj(g.tgt, p), lq.factor(g.factor)))

    two_p, two_q = {}, {}
    for q in Q.objects:
        for g in P.two_cells.values():
            nm = lp.name(g.name, q)
            two_p[(g.name, q)] = nm
            R.add_two(TwoGen(nm, lp.word(g.src, q), lp.word(g.tgt, q), g.role, lp.factor(g.factor),
                             tuple(lp.name(c, q) for c in g.crosses) if g.crosses else None))
    for p in P.objects:
        for g in Q.two_cells.values():
            nm = lq.name(g.name, p)
            two_q[(g.name, p)] = nm
            R.add_two(TwoGen(nm, lq.word(g.src, p), lq.word(g.tgt, p), g.role, lq.factor(g.factor),
                             tuple(lq.name(c, p) for c in g.crosses) if g.crosses else None))

    crossings = {}
    for f in P.one_cells.values():
        for g in Q.one_cells.values():
            nm = f"gamma[{lp.name(f.name, g.tgt)},{lq.name(g.name, f.src)}]"
            while nm in taken:
                nm += "'"
            taken.add(nm)
            crossings[(f.name, g.name)] = nm
            src = Word(lp.obj(f.src, g.src), lp.obj(f.tgt, g.tgt),
                       (lp.name(f.name, g.tgt), lq.name(g.name, f.src)))
            tgt = Word(lp.obj(f.src, g.src), lp.obj(f.tgt, g.tgt),
                       (lq.name(g.name, f.tgt), lp.name(f.name, g.src)))
            fi, gj = lp.factor(f.factor), lq.factor(g.factor)
            R.add_two(TwoGen(nm, src, tgt, "crossing",
                             (fi, gj) if fi is not None and gj is not None else None,
                             (src.gens[0], src.gens[1])))

    for q in Q.objects:
        for r in P.relations:
            tag = r.tag if len(Q.objects) == 1 else f"{r.tag}@{q}"
            R.add_relation(lp.term(r.lhs, q, two_p), lp.term(r.rhs, q, two_p), tag)
    for p in P.objects:
        for r in Q.relations:
            tag = r.tag if len(P.objects) == 1 else f"{r.tag}@{p}"
            R.add_relation(lq.term(r.lhs, p, two_q), lq.term(r.rhs, p, two_q), tag)

    # naturality of crossings in generating 2-cells and identities
    for (pn, v1, v2, pterm, pgen), (qn, w1, w2, qterm, qgen) in itertools.product(
            _cell_choices(P), _cell_choices(Q)):
        if pgen is None and qgen is None:
            continue
        p1, p2, q1, q2 = v1.src, v1.tgt, w1.src, w1.tgt
        phi_q2 = lp.term(pterm, q2, two_p) if pterm else Id(lp.word(v1, q2))
        phi_q1 = lp.term(pterm, q1, two_p) if pterm else Id(lp.word(v1, q1))
        psi_p1 = lq.term(qterm, p1, two_q) if qterm else Id(lq.word(w1, p1))
        psi_p2 = lq.term(qterm, p2, two_q) if qterm else Id(lq.word(w1, p2))
        lhs = V(crossing_term(T, v2, w2, crossings, lp, lq), H(phi_q2, psi_p1))
        rhs = V(H(psi_p2, phi_q1), crossing_term(T, v1, w1, crossings, lp, lq))
        tag, swap = _classify(pgen, qgen, P, Q, v1, w1, lp, lq)
        if tag is None:
            tag = f"gray.nat({pn},{qn})"
        if swap:
            lhs, rhs = rhs, lhs
        R.add_relation(lhs, rhs, tag)
    return R.validate()


def _classify(pgen, qgen, P, Q, v, w, lp, lq):
    def fac_p():
        return lp.factor(P.one_cells[v.gens[0]].factor)

    def fac_q():
        return lq.factor(Q.one_cells[w.gens[0]].factor)

    if pgen is not None and qgen is not None:
        return None, False
    if qgen is None and pgen.role in ("unit", "mult"):
        return f"dist({lp.factor(pgen.factor)},{fac_q()}).{pgen.role}-second", False
    if pgen is None and qgen.role in ("unit", "mult"):
        return f"dist({fac_p()},{lq.factor(qgen.factor)}).{qgen.role}-first", False
    if qgen is None and pgen.role == "crossing" and pgen.factor is not None:
        i, j = lp.factor(pgen.factor)
        return f"yang-baxter({i},{j},{fac_q()})", True
    if pgen is None and qgen.role == "crossing" and qgen.factor is not None:
        j, k = lq.factor(qgen.factor)
        return f"yang-baxter({fac_p()},{j},{k})", False
    return None, False


def mnd_power(P, n):
    """P ⊗ mnd ⊗ … ⊗ mnd with n walking-monad factors."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out = P
    for _ in range(n):
        out = gray_tensor(out, walking_monad(out.factors + 1))
    if n:
        out.name = f"mnd^{n}({P.name})"
    return out


def yang_baxter_relations(P):
    return P.relations_tagged("yang-baxter(")


def crossing_name(i, j):
    return f"gamma[t{i},t{j}]"


# ------------------------------------------------------- encode / decode


def encode_pdist(S):
    """The interpretation of mnd_power(terminal, n) given by an n-fold system."""
    n = S.n
    P = mnd_power(terminal(), n)
    ones, twos = {}, {}
    for i, T in enumerate(S.monads, start=1):
        ones[f"t{i}"] = T.functor
        twos[f"eta{i}"] = T.unit
        twos[f"mu{i}"] = T.mult
    for (i, j), D in S.laws.items():
        twos[crossing_name(i, j)] = D.law
    return Interpretation(P, {OBJECT: CONTAINERS.OBJECT}, ones, twos)


def decode_pdist(I):
    P = I.presentation
    n = P.factors
    monads = []
    for i in range(1, n + 1):
        monads.append(MonadData(I.one_cells[f"t{i}"], I.two_cells[f"eta{i}"], I.two_cells[f"mu{i}"],
                                f"T{i}"))
    laws = {}
    for i, j in itertools.combinations(range(1, n + 1), 2):
        laws[(i, j)] = DistLawData(monads[j - 1], monads[i - 1], I.two_cells[crossing_name(i, j)],
                                   f"law({i},{j})")
    return NFoldSystem(tuple(monads), laws)


def extend_crossing(I, i, word_i, j, word_j):
    """γ on the words word_i (factor i) and word_j (factor j), i < j."""
    if not i < j:
        raise ValueError("crossings need i < j")
    P = I.presentation
    crossings = {(f"t{i}", f"t{j}"): crossing_name(i, j)}
    for g in tuple(word_i) + tuple(word_j):
        if g not in P.one_cells:
            raise KeyError(g)
    if any(g != f"t{i}" for g in word_i) or any(g != f"t{j}" for g in word_j):
        raise ValueError("words must consist of the factor's generator")
    ident = _Identity()
    T = _Tensor(P, P)
    term = crossing_term(T, Word(OBJECT, OBJECT, tuple(word_i)), Word(OBJECT, OBJECT, tuple(word_j)),
                         crossings, ident, ident)
    typecheck_term(P, term)
    return eval_term(I, term)


class _Identity:
    """A lift that renames nothing (single-object presentations)."""

    def word(self, w, other):
        return w


# ------------------------------------------- naturality on composite cells


def _composite_cells(i, max_len):
    t = f"t{i}"
    pieces = [(Gen(f"eta{i}"), 0, 1), (Gen(f"mu{i}"), 2, 1), (Id(Word(OBJECT, OBJECT, (t,))), 1, 1)]
    out = []
    for k in range(1, max_len + 1):
        for combo in itertools.product(pieces, repeat=k):
            s = sum(c[1] for c in combo)
            g = sum(c[2] for c in combo)
            if s <= max_len and g <= max_len and not all(c[0] == pieces[2][0] for c in combo):
                out.append((hseq(*[c[0] for c in combo]), s, g))
    return out


def check_naturality_on_words(I, max_len=2):
    """Naturality of every crossing against horizontal composites of
    η, μ and identities whose boundary words have length ≤ max_len."""
    P = I.presentation
    n = P.factors
    rep = CheckReport("crossing-naturality")
    for i, j in itertools.combinations(range(1, n + 1), 2):
        for phi, s1, g1 in _composite_cells(i, max_len) + [(Id(Word(OBJECT, OBJECT, (f"t{i}",))), 1, 1)]:
            for psi, s2, g2 in _composite_cells(j, max_len) + [(Id(Word(OBJECT, OBJECT, (f"t{j}",))), 1, 1)]:
                if isinstance(phi, Id) and isinstance(psi, Id):
                    continue
                vi = lambda k: [f"t{i}"] * k  # noqa: E731
                vj = lambda k: [f"t{j}"] * k  # noqa: E731
                lhs = I.target.vcomp(extend_crossing(I, i, vi(g1), j, vj(g2)),
                                     I.target.hcomp(eval_term(I, phi), eval_term(I, psi)))
                rhs = I.target.vcomp(I.target.hcomp(eval_term(I, psi), eval_term(I, phi)),
                                     extend_crossing(I, i, vi(s1), j, vj(s2)))
                I.target.record(rep, f"nat({i},{j})[{phi} | {psi}]", "naturality on words", lhs, rhs)
    return rep
