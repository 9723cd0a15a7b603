import itertools
import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graydist.classifier import (
    CONTAINERS,
    HatOneCell,
    HatTwoCell,
    check_hat_functorial,
    classified_cell,
    hat_horizontal,
    hat_identity,
    hat_of_monad,
    hat_terminal_hom,
    hat_vertical,
    hom_count_table,
    interchange_holds,
    mu_tree,
    tilde_of_assignment,
)
from graydist.container import (
    BoundaryMismatch,
    cyclic,
    identity_monad,
    maybe,
    morphism_equal,
    state,
    writer,
)
from graydist.ordinals import IntervalMap, MonotoneMap, Ordinal, compose, hom, identity, ordinal_sum


@pytest.mark.parametrize("m,n", list(itertools.product(range(5), repeat=2)))
def test_hom_counts(m, n):
    expected = comb(m + n - 1, m) if (m or n) else 1
    assert len(hat_terminal_hom(m, n)) == expected
    assert hom_count_table()[(m, n)] == expected


def test_vertical_composition_transports_to_composition():
    for l, m, n in itertools.product(range(5), repeat=3):
        for f in hom(l, m):
            for g in hom(m, n):
                assert hat_vertical(classified_cell(g), classified_cell(f)) == classified_cell(compose(g, f))


def test_horizontal_composition_transports_to_ordinal_sum():
    for a, b, c, d in itertools.product(range(4), repeat=4):
        for f in hom(a, b):
            for g in hom(c, d):
                # dualizing counts from the top, so g's block is the first arrow
                assert hat_horizontal(classified_cell(f), classified_cell(g)) == \
                    classified_cell(ordinal_sum(f, g))


def test_identities():
    for k in range(4):
        c = HatOneCell((None,) * k)
        assert hat_identity(c) == classified_cell(identity(k))
        for x in hat_terminal_hom(k, 2):
            assert hat_vertical(hat_identity(x.tgt), x) == x == hat_vertical(x, hat_identity(x.src))


def test_interchange():
    assert interchange_holds(max_len=2)


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.data())
def test_vertical_composition_is_associative(a, b, c, data):
    d = data.draw(st.integers(0, 3))
    pick = lambda m, n: data.draw(st.sampled_from(hat_terminal_hom(m, n))) if hat_terminal_hom(m, n) else None  # noqa: E731
    x, y, z = pick(a, b), pick(b, c), pick(c, d)
    if None in (x, y, z):
        return
    assert hat_vertical(z, hat_vertical(y, x)) == hat_vertical(hat_vertical(z, y), x)


@pytest.mark.parametrize("M", [writer(cyclic(2)), maybe(), identity_monad()], ids=lambda M: M.name)
def test_tilde_of_hat_is_the_monad(M):
    back = tilde_of_assignment(hat_of_monad(M))
    assert back == M
    assert back.unit is M.unit and back.mult is M.mult


def test_mu_trees():
    M = maybe()
    assert mu_tree(M, 0) is M.unit and mu_tree(M, 2) is M.mult
    three = mu_tree(M, 3)
    assert three.src.atoms == (M.functor.atoms * 3)


def random_pairs(count, seed=0, bound=4):
    rng = random.Random(seed)
    pairs = []
    while len(pairs) < count:
        a, b, c = (rng.randint(0, bound) for _ in range(3))
        fs, gs = list(hom(a, b)), list(hom(b, c))
        if fs and gs:
            pairs.append((rng.choice(gs), rng.choice(fs)))
    return pairs


@pytest.mark.parametrize("M", [maybe(), writer(cyclic(3)), state(2)], ids=lambda M: M.name)
def test_hat_of_monad_is_functorial(M):
    assert all(check_hat_functorial(hat_of_monad(M), random_pairs(30)))


def test_container_cells_check_boundaries():
    M = maybe()
    T = M.functor
    one = HatOneCell((T,), CONTAINERS)
    zero = HatOneCell((), CONTAINERS)
    unit_cell = HatTwoCell(zero, one, IntervalMap(MonotoneMap(Ordinal(2), Ordinal(1), (0, 0))), (M.unit,))
    assert unit_cell.reindex.values == (0, 0)
    with pytest.raises(BoundaryMismatch):
        HatTwoCell(zero, one, unit_cell.reindex, (M.mult,))
    two = HatOneCell((T, T), CONTAINERS)
    mult_cell = HatTwoCell(two, one, IntervalMap(MonotoneMap(Ordinal(2), Ordinal(3), (0, 2))), (M.mult,))
    # the first arrow of the path is the inner layer: μ ∘ (t · η)
    left = hat_vertical(mult_cell, hat_horizontal(hat_identity(one), unit_cell))
    assert morphism_equal(left.components[0], hat_identity(one).components[0])
