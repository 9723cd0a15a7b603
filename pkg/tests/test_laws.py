import pytest

from graydist.container import (
    BoundaryMismatch,
    check_monad,
    compose_containers,
    cyclic,
    either,
    from_tables,
    identity_container,
    identity_monad,
    maybe,
    morphism_equal,
    reader,
    state,
    writer,
)
from graydist.laws import (
    AXIOM_TO_MND,
    DIST_AXIOMS,
    DistLawData,
    MonadMorphismData,
    NFoldSystem,
    check_dist_law,
    check_dist_morphism,
    check_monad_in_mnd,
    check_monad_morphism,
    check_nfold,
    check_yang_baxter,
    compose_dist_morphisms,
    compose_monad_morphisms,
    compose_via_law,
    composite_action_matches,
    decode_from_monad_in_mnd,
    dist_projections,
    dist_projections_on_morphism,
    encode_as_monad_in_mnd,
    identity_dist_morphism,
    identity_monad_morphism,
    law_mutations,
    single_axiom_mutations,
    tags_touching,
)
from graydist.parametric import canonical_triple, deither, dwriter

LAWS = {
    "dwriter(Z2)(maybe)": dwriter(cyclic(2), maybe()),
    "dwriter(Z3)(reader(2))": dwriter(cyclic(3), reader(2)),
    "dwriter(Z2)(state(2))": dwriter(cyclic(2), state(2)),
    "deither(2)(writer(Z3))": deither(2, writer(cyclic(3))),
    "deither(1)(reader(2))": deither(1, reader(2)),
}


def monoid_map(target_n, source_n):
    """Writer(Z_target) -> Writer(Z_source) induced by reduction mod source_n."""
    tgt, src = writer(cyclic(target_n)), writer(cyclic(source_n))
    comp = from_tables(tgt.functor, src.functor, [m % source_n for m in range(target_n)],
                       [(0,)] * target_n, f"mod{source_n}")
    return src, tgt, MonadMorphismData(identity_container(), comp, name=f"mod{source_n}")


@pytest.mark.parametrize("name", sorted(LAWS))
def test_parametric_laws_are_distributive(name):
    rep = check_dist_law(LAWS[name], oracle=True, max_size=2)
    assert rep.passed, rep.failed_tags()
    assert rep.tags() == sorted(DIST_AXIOMS)


@pytest.mark.parametrize("name", sorted(LAWS))
def test_composite_is_a_monad(name):
    D = LAWS[name]
    assert check_monad(compose_via_law(D)).passed
    assert composite_action_matches(D).passed


def test_law_boundaries_are_checked():
    with pytest.raises(BoundaryMismatch):
        DistLawData(maybe(), reader(2), LAWS["dwriter(Z2)(maybe)"].law)


@pytest.mark.parametrize("name", sorted(LAWS))
def test_encode_decode_round_trip(name):
    D = LAWS[name]
    E = encode_as_monad_in_mnd(D)
    assert decode_from_monad_in_mnd(E) == D
    assert check_monad_in_mnd(E).passed


def test_single_axiom_mutations_fail_the_matching_mnd_condition():
    seen = set()
    for D in (dwriter(cyclic(2), writer(cyclic(2))), deither(1, maybe())):
        for axiom, Dm in single_axiom_mutations(D, budget=60).items():
            seen.add(axiom)
            failed = check_monad_in_mnd(encode_as_monad_in_mnd(Dm)).failed_tags()
            assert failed == [AXIOM_TO_MND[axiom]]
    assert seen == set(DIST_AXIOMS)


def test_mutations_stay_inside_the_budget():
    D = LAWS["dwriter(Z2)(maybe)"]
    muts = list(law_mutations(D, budget=5))
    assert 0 < len(muts) <= 5
    assert all(not morphism_equal(m.law, D.law) for m in muts)


def test_unit_is_a_monad_morphism_from_maybe_to_identity():
    M = maybe()
    eta = MonadMorphismData(identity_container(), M.unit, name="η")
    assert check_monad_morphism(M, identity_monad(), eta, oracle=True).passed
    with pytest.raises(BoundaryMismatch):
        check_monad_morphism(identity_monad(), M, eta)


def test_monoid_homomorphisms_give_monad_morphisms():
    src, tgt, m = monoid_map(4, 2)
    assert check_monad_morphism(src, tgt, m).passed
    # a map that is not a homomorphism
    bad = from_tables(writer(cyclic(3)).functor, src.functor, [0, 1, 1], [(0,)] * 3, "bad")
    rep = check_monad_morphism(src, writer(cyclic(3)),
                               MonadMorphismData(identity_container(), bad))
    assert rep.failed_tags() == ["mnd.mult"]


def test_monad_morphisms_compose():
    s2, t4, m1 = monoid_map(4, 2)
    _, t8, m2 = monoid_map(8, 4)
    whole = compose_monad_morphisms(m2, m1)
    assert check_monad_morphism(s2, t8, whole).passed
    ident = identity_monad_morphism(t4)
    assert morphism_equal(compose_monad_morphisms(ident, m1).component, m1.component)


def test_identity_and_composite_dist_morphisms():
    D = LAWS["dwriter(Z2)(maybe)"]
    ident = identity_dist_morphism(D)
    assert check_dist_morphism(D, D, ident).passed
    both = compose_dist_morphisms(ident, ident)
    assert check_dist_morphism(D, D, both).passed


def test_projections_on_objects_and_morphisms():
    D = LAWS["deither(1)(reader(2))"]
    assert dist_projections(D, "u1") == D.second
    assert dist_projections(D, "u2") == D.first
    C = dist_projections(D, "c")
    assert C.functor == compose_containers(D.first.functor, D.second.functor)
    ident = identity_dist_morphism(D)
    cm = dist_projections_on_morphism(ident, "c", D, D)
    assert check_monad_morphism(C, C, cm).passed
    with pytest.raises(ValueError):
        dist_projections_on_morphism(ident, "c")


@pytest.mark.parametrize("T", [maybe(), reader(2)], ids=["maybe", "reader(2)"])
def test_canonical_triple_satisfies_yang_baxter(T):
    S = canonical_triple(1, cyclic(2), T)
    rep = check_yang_baxter(S.law(1, 2).law, S.law(1, 3).law, S.law(2, 3).law, *S.monads)
    assert rep.passed
    assert check_nfold(S).passed


@pytest.mark.parametrize("ij", [(1, 2), (1, 3), (2, 3)])
def test_one_corrupt_crossing_fails_only_its_suites(ij):
    S = canonical_triple(1, cyclic(2), maybe())
    D = S.law(*ij)
    bad = next(m for m in law_mutations(D, budget=40) if not check_dist_law(m, oracle=False).passed)
    rep = check_nfold(S.replace_law(*ij, bad.law), oracle=False)
    failed = set(rep.failed_tags())
    assert failed and failed <= tags_touching(S, *ij)


def test_nfold_systems_need_every_pair():
    S = canonical_triple(1, cyclic(2), maybe())
    with pytest.raises(BoundaryMismatch):
        NFoldSystem(S.monads, {(1, 2): S.law(1, 2)})
    with pytest.raises(BoundaryMismatch):
        NFoldSystem(S.monads[:2], {(1, 2): S.law(2, 3)})
    assert NFoldSystem((either(1),)).n == 1
