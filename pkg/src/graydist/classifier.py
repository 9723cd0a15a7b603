"""The lax functor classifier restricted to strict bases and path 1-cells.

A 1-cell of length k is a composable path of k 1-cells of the base.  A
2-cell from a length-m cell F to a length-n cell G is an interval map
α : [n] → [m] (chains with n + 1 and m + 1 elements) with one component
per arrow i → i+1 of [n], going from the composite of F over
α(i) → α(i+1) to the i-th arrow of G.

Two bases are provided: the terminal 2-category, whose cells carry no
data, and finite containers, where components are container morphisms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .container import (
    BoundaryMismatch,
    MonadData,
    compose_containers,
    hcomp,
    identity_container,
    identity_morphism,
    morphism_equal,
    vcomp,
    whisker,
)
from .ordinals import (
    IntervalMap,
    MonotoneMap,
    Ordinal,
    compose,
    dualize,
    empty_map,
    fiber_profile,
    identity,
    interval_hom,
    sigma,
)


class TerminalBase:
    """The terminal 2-category: one object, one 1-cell, one 2-cell."""

    def path_composite(self, path):
        return None

    def hcomp(self, b, a):
        return None

    def vcomp(self, b, a):
        return None

    def identity(self, cell):
        return None

    def boundary(self, c):
        return None, None

    def equal(self, a, b):
        return True


class ContainerBase:
    """Finite containers with one object; paths compose outermost-last."""

    def path_composite(self, path):
        out = identity_container()
        for F in path:
            out = compose_containers(F, out)
        return out

    def hcomp(self, b, a):
        return hcomp(b, a)

    def vcomp(self, b, a):
        return vcomp(b, a)

    def identity(self, cell):
        return identity_morphism(cell)

    def boundary(self, c):
        return c.src, c.tgt

    def equal(self, a, b):
        return morphism_equal(a, b)


TERMINAL = TerminalBase()
CONTAINERS = ContainerBase()


@dataclass(frozen=True)
class HatOneCell:
    """A path of base 1-cells, first arrow first."""
    path: tuple
    base: object = TERMINAL

    def __post_init__(self):
        object.__setattr__(self, "path", tuple(self.path))

    @property
    def length(self):
        return len(self.path)

    def segment(self, a, b):
        """Composite of the arrows a → b of the chain."""
        return self.base.path_composite(self.path[a:b])


def terminal_one_cell(k):
    return HatOneCell((None,) * k, TERMINAL)


@dataclass(frozen=True, eq=False)
class HatTwoCell:
    src: HatOneCell
    tgt: HatOneCell
    reindex: IntervalMap
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        m, n = self.src.length, self.tgt.length
        if self.reindex.dom.size != n + 1 or self.reindex.cod.size != m + 1:
            raise BoundaryMismatch(f"reindexing must go [{n}] -> [{m}]")
        if len(self.components) != n:
            raise BoundaryMismatch("one component per arrow of the target")
        base = self.src.base
        if isinstance(base, ContainerBase):
            a = self.reindex.values
            for i, c in enumerate(self.components):
                want = (self.src.segment(a[i], a[i + 1]), self.tgt.path[i])
                if base.boundary(c) != want:
                    raise BoundaryMismatch(f"component {i} has the wrong boundary")

    def __eq__(self, other):
        if not isinstance(other, HatTwoCell):
            return NotImplemented
        return (self.src == other.src and self.tgt == other.tgt and self.reindex == other.reindex
                and all(self.src.base.equal(a, b) for a, b in zip(self.components, other.components)))

    def __hash__(self):
        return hash((self.src, self.tgt, self.reindex))


def hat_identity(c):
    k = c.length
    comps = [c.base.identity(F) for F in c.path]
    return HatTwoCell(c, c, IntervalMap(identity(k + 1)), comps)


def hat_vertical(c2, c1):
    """c2 ∘ c1: reindex α∘β, components φᵢ ∘ (horizontal composite of ψ over β(i)..β(i+1))."""
    if c1.tgt != c2.src:
        raise BoundaryMismatch("vertical composite of non-matching cells")
    alpha, beta = c1.reindex, c2.reindex
    base = c1.src.base
    comps = []
    for i, phi in enumerate(c2.components):
        lo, hi = beta.values[i], beta.values[i + 1]
        inner = None
        for k in range(lo, hi):
            # later arrows compose on the outside
            inner = c1.components[k] if inner is None else base.hcomp(c1.components[k], inner)
        if inner is None:
            inner = base.identity(c1.src.segment(alpha.values[lo], alpha.values[lo]))
        comps.append(base.vcomp(phi, inner))
    reindex = IntervalMap(compose(alpha.underlying, beta.underlying))
    return HatTwoCell(c1.src, c2.tgt, reindex, comps)


def interval_join(alpha, beta):
    """α ∨ β: glue the top of α's chains to the bottom of β's."""
    n1, m1 = alpha.dom.size - 1, alpha.cod.size - 1
    n2, m2 = beta.dom.size - 1, beta.cod.size - 1
    vals = list(alpha.values) + [v + m1 for v in beta.values[1:]]
    return IntervalMap(MonotoneMap(Ordinal(n1 + n2 + 1), Ordinal(m1 + m2 + 1), vals))


def hat_horizontal(c2, c1):
    """c2 · c1: c1's path first, then c2's; reindex α₁ ∨ α₂."""
    base = c1.src.base
    src = HatOneCell(c1.src.path + c2.src.path, base)
    tgt = HatOneCell(c1.tgt.path + c2.tgt.path, base)
    return HatTwoCell(src, tgt, interval_join(c1.reindex, c2.reindex),
                      c1.components + c2.components)


def hat_terminal_hom(m, n):
    """All 2-cells of hat(1) from the length-m to the length-n 1-cell."""
    src, tgt = terminal_one_cell(m), terminal_one_cell(n)
    return [HatTwoCell(src, tgt, a, (None,) * n) for a in interval_hom(n + 1, m + 1)]


def classified_cell(f):
    """The hat(1) cell whose reindexing is the dual of the monotone map f.

    Dualizing counts from the top of each chain, so vertical composition
    matches composition in Δ₊ while the ordinal sum f ⊕ g lands on
    ``hat_horizontal(classified_cell(f), classified_cell(g))``: g's block
    comes first in the path.
    """
    m, n = f.dom.size, f.cod.size
    return HatTwoCell(terminal_one_cell(m), terminal_one_cell(n), dualize(f), (None,) * n)


def hom_count_table(max_m=4, max_n=4):
    return {(m, n): len(hat_terminal_hom(m, n)) for m in range(max_m + 1) for n in range(max_n + 1)}


# ------------------------------------------------------------- monads


def mu_tree(M, k):
    """t^k ⇒ t, left-nested: μ∘(μ·t)∘…; η for k = 0 and the identity for k = 1."""
    t = M.functor
    if k == 0:
        return M.unit
    if k == 1:
        return identity_morphism(t)
    if k == 2:
        return M.mult
    return vcomp(M.mult, whisker(mu_tree(M, k - 1), t))


class HatAssignment:
    """The strict assignment Δ₊ → cells of the base classified by a monad."""

    def __init__(self, M):
        self.monad = M
        self.carrier = M.functor

    def __call__(self, f):
        prof = fiber_profile(f)
        if prof == (0,):
            return self.monad.unit
        if prof == (2,):
            return self.monad.mult
        if not prof:
            return identity_morphism(identity_container())
        return whisker(*[mu_tree(self.monad, k) for k in prof])


def hat_of_monad(M):
    return HatAssignment(M)


def tilde_of_assignment(h, name=None):
    carrier = h(identity(1)).src
    M = getattr(h, "monad", None)
    return MonadData(carrier, h(empty_map(1)), h(sigma(0, 0)),
                     name or (M.name if M is not None else "T"))


def check_hat_functorial(h, pairs):
    """h(g∘f) = h(g)∘h(f) for each composable (g, f)."""
    return [morphism_equal(h(compose(g, f)), vcomp(h(g), h(f))) for g, f in pairs]


def interchange_holds(max_len=2):
    """Both interchange composites agree for all small cells of hat(1)."""
    cells = {(m, n): hat_terminal_hom(m, n) for m in range(max_len + 1) for n in range(max_len + 1)}
    lengths = range(max_len + 1)
    for a, b, c in itertools.product(lengths, repeat=3):
        for x, y, z in itertools.product(lengths, repeat=3):
            for s1, s2 in itertools.product(cells[(a, b)], cells[(b, c)]):
                for t1, t2 in itertools.product(cells[(x, y)], cells[(y, z)]):
                    left = hat_horizontal(hat_vertical(t2, t1), hat_vertical(s2, s1))
                    right = hat_vertical(hat_horizontal(t2, s2), hat_horizontal(t1, s1))
                    if left != right:
                        return False
    return True
