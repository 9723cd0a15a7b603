import pytest
from hypothesis import given
from hypothesis import strategies as st

from graydist.container import (
    BoundaryMismatch,
    cyclic,
    maybe,
    morphism_equal,
    reader,
    state,
    writer,
)
from graydist.gray import OBJECT, walking_monad
from graydist.twocat import (
    CONTAINERS,
    Gen,
    H,
    Id,
    Interpretation,
    Presentation,
    UnknownGenerator,
    V,
    Word,
    check_relations,
    eval_term,
    eval_word,
    hseq,
    term_from_json,
    typecheck_term,
    vseq,
)

P = walking_monad()
MONADS = [maybe(), writer(cyclic(2)), reader(2), state(2)]
# state(2)·…·state(2) grows exponentially with depth; random terms stay with one-level shapes
LIGHT = MONADS[:3]


def interpret(M, P=P):
    return Interpretation(P, {OBJECT: CONTAINERS.OBJECT}, {"t": M.functor},
                          {"eta": M.unit, "mu": M.mult})


def word(k):
    return Word(OBJECT, OBJECT, ("t",) * k)


# pieces of a horizontal layer: (term, source length, target length)
PIECES = [(Gen("eta"), 0, 1), (Gen("mu"), 2, 1), (Id(word(1)), 1, 1)]


@st.composite
def layers(draw, max_pieces=3):
    picks = draw(st.lists(st.sampled_from(PIECES), min_size=1, max_size=max_pieces))
    return picks


def layer_term(picks):
    return hseq(*[p[0] for p in picks])


def ends(picks):
    return sum(p[1] for p in picks), sum(p[2] for p in picks)


def test_words_compose_in_application_order():
    s = Word("a", "b", ("f",))
    t = Word("b", "c", ("g",))
    assert s.then(t).gens == ("g", "f")
    with pytest.raises(BoundaryMismatch):
        t.then(t)
    assert str(Word("x", "x")) == "1_x"


def test_presentation_json_round_trip():
    text = P.dumps()
    assert Presentation.loads(text) == P
    assert Presentation.loads(text).dumps() == text
    assert P.counts() == {"objects": 1, "one_cells": 1, "two_cells": 2, "relations": 3}


def test_term_json_round_trip():
    t = V(Gen("mu"), H(Id(word(1)), Gen("eta")))
    assert term_from_json(t.to_json()) == t
    with pytest.raises(ValueError):
        term_from_json(["x"])


def test_typechecking_reports_errors():
    assert typecheck_term(P, V(Gen("mu"), H(Gen("eta"), Id(word(1))))) == (word(1), word(1))
    with pytest.raises(UnknownGenerator):
        typecheck_term(P, Gen("delta"))
    with pytest.raises(BoundaryMismatch):
        typecheck_term(P, V(Gen("mu"), Gen("mu")))
    with pytest.raises(UnknownGenerator):
        P.check_word(Word(OBJECT, OBJECT, ("s",)))


def test_interpretations_check_images():
    M = maybe()
    with pytest.raises(UnknownGenerator):
        Interpretation(P, {OBJECT: "*"}, {"t": M.functor}, {"eta": M.unit})
    with pytest.raises(BoundaryMismatch):
        Interpretation(P, {OBJECT: "*"}, {"t": M.functor}, {"eta": M.mult, "mu": M.mult})
    assert interpret(M) == interpret(M)


@pytest.mark.parametrize("M", MONADS, ids=lambda M: M.name)
def test_monads_satisfy_the_walking_monad(M):
    rep = check_relations(interpret(M), oracle=M is not state(2))
    assert rep.passed
    assert rep.tags() == ["monad.assoc", "monad.unit-left", "monad.unit-right"]


@given(st.sampled_from(LIGHT), layers(), layers(), layers())
def test_horizontal_composition_is_associative(M, a, b, c):
    I = interpret(M)
    x, y, z = layer_term(a), layer_term(b), layer_term(c)
    assert morphism_equal(eval_term(I, H(H(x, y), z)), eval_term(I, H(x, H(y, z))))
    assert eval_word(I, word(0)) == CONTAINERS.identity_1(OBJECT)


@given(st.sampled_from(LIGHT), layers(), st.data())
def test_interchange_on_random_layers(M, bottom, data):
    """Stacking piecewise equals stacking layers: (t₁·t₂)∘(b₁·b₂) = (t₁∘b₁)·(t₂∘b₂)."""
    I = interpret(M)
    tops = []
    for piece in bottom:
        g = piece[2]
        fits = [p for p in PIECES if p[1] == g]
        tops.append(data.draw(st.sampled_from(fits)))
    layered = V(layer_term(tops), layer_term(bottom))
    piecewise = hseq(*[V(t[0], b[0]) for t, b in zip(tops, bottom)])
    assert typecheck_term(P, layered) == typecheck_term(P, piecewise)
    assert morphism_equal(eval_term(I, layered), eval_term(I, piecewise))


@given(st.sampled_from(LIGHT), layers())
def test_identities_are_units(M, picks):
    I = interpret(M)
    s, g = ends(picks)
    t = layer_term(picks)
    for expr in (V(Id(word(g)), t), V(t, Id(word(s))), H(Id(word(0)), t), vseq(t)):
        assert morphism_equal(eval_term(I, expr), eval_term(I, t))


def test_relations_can_run_on_an_executor():
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(2) as pool:
        rep = check_relations(interpret(state(2)), executor=pool)
    assert rep.passed and len(rep.instances) == 3


def test_interchange_for_state_on_a_fixed_layer():
    I = interpret(state(2))
    t = Id(word(1))
    p1 = V(Gen("mu"), H(Gen("eta"), t))
    layered = V(H(p1, t), H(Gen("eta"), Gen("mu")))
    piecewise = H(V(p1, Gen("eta")), V(t, Gen("mu")))
    assert typecheck_term(P, layered) == typecheck_term(P, piecewise)
    assert morphism_equal(eval_term(I, layered), eval_term(I, piecewise))
