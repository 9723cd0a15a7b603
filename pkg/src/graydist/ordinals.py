"""The augmented simplex category Δ₊ and the interval category I₊.

Ordinals are stored by their number of elements, so the ordinal written
[n] in the usual notation has size n + 1 and the empty ordinal has size 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


class DomainMismatch(ValueError):
    pass


class IndexOutOfRange(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Ordinal:
    size: int

    def __post_init__(self):
        if self.size < 0:
            raise IndexOutOfRange(f"negative ordinal size {self.size}")

    def __str__(self):
        return f"[{self.size - 1}]"


@dataclass(frozen=True)
class MonotoneMap:
    dom: Ordinal
    cod: Ordinal
    values: tuple

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != self.dom.size:
            raise DomainMismatch("one value per domain element")
        if any(not 0 <= v < self.cod.size for v in vals):
            raise IndexOutOfRange(f"values {vals} outside {self.cod}")
        if any(a > b for a, b in zip(vals, vals[1:])):
            raise ValueError(f"{vals} is not monotone")

    def __call__(self, i):
        return self.values[i]

    def __str__(self):
        return f"{self.dom}->{self.cod}: ({','.join(map(str, self.values))})"

    @property
    def is_injective(self):
        return len(set(self.values)) == len(self.values)

    @property
    def is_surjective(self):
        return set(self.values) == set(range(self.cod.size))


@dataclass(frozen=True)
class IntervalMap:
    """A monotone map between non-empty ordinals keeping bottom and top."""
    underlying: MonotoneMap

    def __post_init__(self):
        f = self.underlying
        if f.dom.size < 1 or f.cod.size < 1:
            raise ValueError("intervals are non-empty")
        if f.values[0] != 0 or f.values[-1] != f.cod.size - 1:
            raise ValueError(f"{f.values} does not preserve endpoints")

    @property
    def dom(self):
        return self.underlying.dom

    @property
    def cod(self):
        return self.underlying.cod

    @property
    def values(self):
        return self.underlying.values

    def __str__(self):
        return f"I{self.underlying}"


def ordinal(n):
    return Ordinal(n) if isinstance(n, int) else n


def identity(n):
    n = ordinal(n)
    return MonotoneMap(n, n, range(n.size))


def empty_map(n):
    """The unique map from the empty ordinal."""
    return MonotoneMap(Ordinal(0), ordinal(n), ())


def generator(kind, n, k):
    """δⁿₖ : [n−1] → [n] skips k; σⁿₖ : [n+1] → [n] repeats k."""
    if n < 0 or not 0 <= k <= n:
        raise IndexOutOfRange(f"{kind}({n},{k})")
    if kind == "delta":
        return MonotoneMap(Ordinal(n), Ordinal(n + 1), [i if i < k else i + 1 for i in range(n)])
    if kind == "sigma":
        return MonotoneMap(Ordinal(n + 2), Ordinal(n + 1), [i if i <= k else i - 1 for i in range(n + 2)])
    raise ValueError(f"unknown generator kind {kind!r}")


def delta(n, k):
    return generator("delta", n, k)


def sigma(n, k):
    return generator("sigma", n, k)


def compose(g, f):
    """g ∘ f."""
    if f.cod != g.dom:
        raise DomainMismatch(f"cannot compose {g} after {f}")
    return MonotoneMap(f.dom, g.cod, [g.values[v] for v in f.values])


def compose_interval(g, f):
    return IntervalMap(compose(g.underlying, f.underlying))


def ordinal_sum(f, g):
    """f ⊕ g: f on the first block, g shifted past f's codomain on the second."""
    shift = f.cod.size
    return MonotoneMap(Ordinal(f.dom.size + g.dom.size), Ordinal(f.cod.size + g.cod.size),
                       list(f.values) + [v + shift for v in g.values])


def hom(m, n):
    """All monotone maps between ordinals of sizes m and n."""
    for vals in itertools.combinations_with_replacement(range(n), m):
        yield MonotoneMap(Ordinal(m), Ordinal(n), vals)


def interval_hom(m, n):
    """All interval maps from the m-element chain to the n-element chain."""
    if m < 1 or n < 1:
        return
    for f in hom(m, n):
        if f.values[0] == 0 and f.values[-1] == n - 1:
            yield IntervalMap(f)


def dualize(f):
    """Precomposition with f on maps into [1].

    A monotone map k-chain → [1] is determined by how many elements it
    sends to 1, so Δ₊[k, [1]] is a chain with k + 1 elements.  The map
    χ ↦ χ∘f sends the characteristic map of the top i elements of the
    codomain to the one counting #{x : f(x) ≥ n − i}.
    """
    m, n = f.dom.size, f.cod.size
    vals = [sum(1 for x in f.values if x >= n - i) for i in range(n + 1)]
    return IntervalMap(MonotoneMap(Ordinal(n + 1), Ordinal(m + 1), vals))


def undualize(a):
    """Inverse of dualize."""
    n, m = a.dom.size - 1, a.cod.size - 1
    vals = []
    for x in range(m):
        # f(x) ≥ n − i iff x is among the top a(i) elements
        j = min(i for i in range(n + 1) if a.values[i] >= m - x)
        vals.append(n - j)
    return MonotoneMap(Ordinal(m), Ordinal(n), vals)


def fiber_profile(f):
    counts = [0] * f.cod.size
    for v in f.values:
        counts[v] += 1
    return tuple(counts)


def from_profile(profile):
    """The monotone map with the given fiber sizes."""
    vals = [j for j, k in enumerate(profile) for _ in range(k)]
    return MonotoneMap(Ordinal(len(vals)), Ordinal(len(profile)), vals)
