import pytest

from graydist.container import (
    FinSet,
    InvalidParameter,
    boolean_and,
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
from graydist.laws import MonadMorphismData, check_dist_law
from graydist.parametric import (
    WriterModule,
    all_modules,
    canonical_triple,
    check_parametric_functoriality,
    coslice_morphisms,
    coslice_objects,
    deither,
    deither_on_morphism,
    default_writer_samples,
    dwriter,
    either_law_coherence,
    free_module,
    lift_coslice,
    lift_writer_modules,
    modules_coslice_iso,
    unique_cocartesian_monoid,
    writer_law_coherence,
)

MONOIDS = [cyclic(2), cyclic(3), boolean_and()]
TARGETS = [maybe(), either(2), reader(2), state(2), writer(cyclic(2))]


def eta(M):
    return MonadMorphismData(identity_container(), M.unit, name=f"η[{M.name}]")


def either_inclusion():
    """either(2) -> either(1), whose component sends L0 to L0 and R to R."""
    comp = from_tables(either(1).functor, either(2).functor, [0, 2], [(), (0,)], "incl")
    return MonadMorphismData(identity_container(), comp, name="incl")


@pytest.mark.parametrize("T", [maybe(), state(2)], ids=lambda T: T.name)
def test_identity_target_gives_identity_law(T):
    D = dwriter(cyclic(2), identity_monad())
    assert check_dist_law(D).passed
    assert check_dist_law(deither(1, identity_monad())).passed


@pytest.mark.parametrize("kind,param", [("dwriter", cyclic(2)), ("dwriter", boolean_and()),
                                        ("deither", 1), ("deither", 2)])
def test_functoriality_on_a_composable_pair(kind, param):
    rep = check_parametric_functoriality(kind, param, either(2), either(1), either_inclusion(),
                                         then=(eta(maybe()), identity_monad()))
    assert rep.passed, rep.failed_tags()
    assert "functor.composition.carrier" in rep.tags()


def test_deither_needs_a_point():
    m = MonadMorphismData(reader(2).functor, from_tables(
        reader(2).functor, reader(2).functor, [0], [(0, 1)]), name="no-point")
    with pytest.raises(InvalidParameter):
        deither_on_morphism(1, m)


def test_writer_modules_are_validated():
    M = cyclic(2)
    assert len(list(all_modules(M, 2))) == 2  # trivial action and the swap
    assert free_module(M, FinSet(1)).carrier.size == 2
    with pytest.raises(InvalidParameter):
        WriterModule(M, FinSet(1), free_module(M, FinSet(1)).action)


@pytest.mark.parametrize("M", MONOIDS, ids=lambda M: M.name)
@pytest.mark.parametrize("T", TARGETS, ids=lambda T: T.name)
def test_writer_lift_and_coherence(M, T):
    rep = lift_writer_modules(M, T)
    assert rep.passed, rep.failed_tags()
    assert len({t.split(".")[0] for t in rep.tags()}) == len(default_writer_samples(M))
    assert writer_law_coherence(M, T).passed


@pytest.mark.parametrize("a", [0, 1, 2])
@pytest.mark.parametrize("T", [writer(cyclic(3)), maybe(), reader(2), state(2)], ids=lambda T: T.name)
def test_coslice_lift_and_coherence(a, T):
    rep = lift_coslice(a, T.functor, T.unit, mult=T.mult)
    assert rep.passed, rep.failed_tags()
    assert either_law_coherence(a, T).passed


def test_coslice_morphisms_respect_points():
    A = FinSet(1)
    objs = list(coslice_objects(A, 2))
    assert len(objs) == 2
    assert [h.values for h in coslice_morphisms(objs[0], objs[1])] == [(1, 0), (1, 1)]


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_cocartesian_monoid_is_unique(n):
    monoid, rep = unique_cocartesian_monoid(n)
    assert rep.passed
    assert monoid.mult.values == tuple(range(n)) * 2


def test_cocartesian_search_is_bounded():
    with pytest.raises(InvalidParameter):
        unique_cocartesian_monoid(4)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_modules_match_coslices(n):
    rep = modules_coslice_iso(n, bound=2)
    assert rep.passed, rep.failed_tags()


@pytest.mark.parametrize("T", [maybe(), reader(2)], ids=lambda T: T.name)
def test_triple_laws_are_the_parametric_ones(T):
    S = canonical_triple(2, cyclic(3), T)
    for got, want in ((S.law(1, 2), deither(2, writer(cyclic(3)))), (S.law(2, 3), dwriter(cyclic(3), T))):
        assert (got.first, got.second) == (want.first, want.second)
        assert morphism_equal(got.law, want.law)
