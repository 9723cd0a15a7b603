import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graydist.container import (
    BoundaryMismatch,
    FinFunction,
    FinSet,
    InvalidParameter,
    MonoidTable,
    boolean_and,
    builtin,
    check_monad,
    compose_containers,
    cyclic,
    either,
    element_at,
    element_index,
    eval_functor_on_function,
    eval_morphism_on_set,
    eval_on_set,
    find_difference,
    from_tables,
    identity_container,
    identity_monad,
    identity_morphism,
    maybe,
    morphism_equal,
    pointwise_difference,
    raw_writer,
    reader,
    state,
    strength,
    strength_enrichment_roundtrip,
    vcomp,
    whisker,
    writer,
)

MONADS = {
    "writer(Z2)": writer(cyclic(2)),
    "writer(Z3)": writer(cyclic(3)),
    "writer(AND)": writer(boolean_and()),
    "either(1)": either(1),
    "either(2)": either(2),
    "maybe": maybe(),
    "reader(2)": reader(2),
    "state(2)": state(2),
    "identity": identity_monad(),
}
SMALL = {k: v for k, v in MONADS.items() if k != "state(2)"}


def a_plus_2b():
    return raw_writer(3, 0, [[(a + 2 * b) % 3 for b in range(3)] for a in range(3)], "a+2b")


@st.composite
def functions(draw, max_size=3):
    a = draw(st.integers(0, max_size))
    b = draw(st.integers(1 if a else 0, max_size))
    vals = draw(st.lists(st.integers(0, b - 1), min_size=a, max_size=a)) if b else []
    return FinFunction(FinSet(a), FinSet(b), vals)


def test_monoid_tables_are_validated():
    with pytest.raises(InvalidParameter):
        MonoidTable(2, 0, [[1, 1], [1, 1]])
    with pytest.raises(InvalidParameter):
        MonoidTable(3, 0, [[(a + 2 * b) % 3 for b in range(3)] for a in range(3)])
    with pytest.raises(InvalidParameter):
        MonoidTable(2, 0, [[0, 1]])


@pytest.mark.parametrize("name", sorted(MONADS))
def test_builtins_are_monads(name):
    rep = check_monad(MONADS[name], oracle=name in SMALL)
    assert rep.passed, rep.summary()
    assert rep.tags() == ["monad.assoc", "monad.unit-left", "monad.unit-right"]


def test_builtin_constructors_are_cached():
    assert writer(cyclic(2)) == writer(cyclic(2))
    assert either(FinSet(2)) == either(2)
    assert builtin("reader", 2) == reader(FinSet(2))
    with pytest.raises(InvalidParameter):
        builtin("list")


def test_a_plus_2b_fails_associativity_at_one_one_one():
    rep = check_monad(a_plus_2b(), oracle=True)
    assert "monad.assoc" in rep.failed_tags()
    assert rep.get("monad.assoc").witness["shape"] == [1, 1, 1]
    # 0 + 2b ≠ b as well, so the left unit law fails too
    assert rep.failed_tags() == ["monad.assoc", "monad.unit-left"]


@pytest.mark.parametrize("f,g", list(itertools.product(["writer(Z2)", "maybe", "reader(2)", "state(2)"], repeat=2)))
def test_composite_containers_count_elements(f, g):
    F, G = MONADS[f].functor, MONADS[g].functor
    for n in range(4):
        X = FinSet(n)
        assert eval_on_set(compose_containers(F, G), X) == eval_on_set(F, eval_on_set(G, X))


@pytest.mark.parametrize("name", ["writer(Z3)", "either(2)", "reader(2)", "state(2)"])
def test_element_indexing_round_trips(name):
    F = MONADS[name].functor
    for n in range(3):
        X = FinSet(n)
        for z in range(eval_on_set(F, X).size):
            tree, vals = element_at(F, X, z)
            assert element_index(F, X, tree, vals) == z


@pytest.mark.parametrize("name", sorted(SMALL))
@given(f=functions())
def test_oracle_is_natural(name, f):
    M = MONADS[name]
    for alpha in (M.unit, M.mult):
        F, G = alpha.src, alpha.tgt
        left = eval_functor_on_function(F, f).then(eval_morphism_on_set(alpha, f.cod))
        right = eval_morphism_on_set(alpha, f.dom).then(eval_functor_on_function(G, f))
        assert left == right


@given(f=functions(), data=st.data())
def test_functor_action_is_functorial(f, data):
    g = data.draw(functions().filter(lambda g: g.dom == f.cod))
    for F in (MONADS["state(2)"].functor, compose_containers(MONADS["maybe"].functor, MONADS["reader(2)"].functor)):
        assert eval_functor_on_function(F, f.then(g)) == \
            eval_functor_on_function(F, f).then(eval_functor_on_function(F, g))
        X = f.dom
        assert eval_functor_on_function(F, FinFunction.identity(X)) == FinFunction.identity(eval_on_set(F, X))


@pytest.mark.parametrize("name", sorted(SMALL))
def test_symbolic_and_table_equality_agree(name):
    M = MONADS[name]
    F = M.functor
    lhs = vcomp(M.mult, whisker(M.mult, F))
    rhs = vcomp(M.mult, whisker(F, M.mult))
    assert morphism_equal(lhs, rhs) == morphism_equal(lhs, rhs, method="tables") is True
    bad = a_plus_2b()
    lhs = vcomp(bad.mult, whisker(bad.mult, bad.functor))
    rhs = vcomp(bad.mult, whisker(bad.functor, bad.mult))
    assert morphism_equal(lhs, rhs) is morphism_equal(lhs, rhs, method="tables") is False


def test_symbolic_and_pointwise_difference_agree_on_tables():
    F = MONADS["reader(2)"].functor
    FF = compose_containers(F, F)
    mu = MONADS["reader(2)"].mult
    # the "other diagonal" is also natural but is not μ
    other = from_tables(FF, F, [0], [(3, 0)], "anti")
    assert find_difference(other, mu) is not None
    assert pointwise_difference(other, mu, 2) is not None
    assert find_difference(identity_morphism(FF), identity_morphism(FF)) is None


def test_boundaries_are_checked():
    M = MONADS["maybe"]
    with pytest.raises(BoundaryMismatch):
        vcomp(M.unit, M.unit)
    with pytest.raises(BoundaryMismatch):
        find_difference(M.unit, M.mult)
    with pytest.raises(InvalidParameter):
        from_tables(identity_container(), M.functor, [5], [(0,)])


@pytest.mark.parametrize("name", sorted(MONADS))
def test_strength_enrichment_round_trip(name):
    rep = strength_enrichment_roundtrip(MONADS[name].functor)
    assert rep.passed, rep.failed_tags()


@pytest.mark.parametrize("name", ["maybe", "reader(2)", "state(2)", "writer(Z2)"])
def test_strength_unit_and_associativity(name):
    F = MONADS[name].functor
    st_ = strength(F)
    one = FinSet(1)
    for b in range(3):
        B = FinSet(b)
        assert st_(one, B).values == tuple(range(eval_on_set(F, B).size))
        # (A × A') × F(B) → F(A × A' × B) two ways
        A, A2 = FinSet(2), FinSet(2)
        AA = FinSet(4)
        FB = eval_on_set(F, B).size
        inner = st_(A2, B)
        outer = st_(A, FinSet(A2.size * b))
        direct = st_(AA, B)
        for a, a2, y in itertools.product(range(2), range(2), range(FB)):
            two_step = outer(a * inner.cod.size + inner(a2 * FB + y))
            assert two_step == direct((a * 2 + a2) * FB + y)
