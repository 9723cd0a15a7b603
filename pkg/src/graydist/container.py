"""Finite containers (polynomial endofunctors of finite sets) and their
natural transformations.

A 1-cell is a word of atoms.  Composition concatenates words, so it is
strictly associative and unital (the empty word is the identity functor).
A shape of a word is a tree: a shape of the head atom together with one
tail shape per position.  Trees are written ``(j, (kid, ...))`` with ``j``
an index into the atom's shape list, and ``()`` for the empty word.

Natural transformations are kept as expressions over rules.  A rule looks
at the top layers of a lazily explored generic element and builds the top
layers of the result; everything below is passed through untouched.  This
gives two independent decision routes:

* ``morphism_equal`` explores generic elements symbolically, splitting on a
  shape coordinate only when some rule or the final comparison needs its
  value.  Monoid labels of writer layers stay symbolic words.
* ``shape_map``/``position_maps`` tabulate by running the rules on every
  concrete shape, and ``eval_morphism_on_set`` evaluates pointwise from the
  tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cache, cached_property, lru_cache

import numpy as np

from .report import CheckReport

TABLE_LIMIT = 250_000


class BoundaryMismatch(ValueError):
    pass


class InvalidParameter(ValueError):
    pass


# ---------------------------------------------------------------- finite sets


@dataclass(frozen=True)
class FinSet:
    size: int

    def __post_init__(self):
        if self.size < 0:
            raise InvalidParameter(f"negative set size {self.size}")

    def __iter__(self):
        return iter(range(self.size))

    def __len__(self):
        return self.size


@dataclass(frozen=True)
class FinFunction:
    dom: FinSet
    cod: FinSet
    values: tuple

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != self.dom.size:
            raise InvalidParameter("function is not total")
        for v in vals:
            if not 0 <= v < self.cod.size:
                raise InvalidParameter(f"value {v} outside codomain of size {self.cod.size}")

    def __call__(self, i):
        return self.values[i]

    @staticmethod
    def identity(X):
        return FinFunction(X, X, range(X.size))

    def then(self, g):
        """g after self."""
        if g.dom != self.cod:
            raise BoundaryMismatch("functions do not compose")
        return FinFunction(self.dom, g.cod, [g.values[v] for v in self.values])


def all_functions(X, Y):
    for vals in itertools.product(range(Y.size), repeat=X.size):
        yield FinFunction(X, Y, vals)


# -------------------------------------------------------------------- monoids


@dataclass(frozen=True)
class MonoidTable:
    size: int
    unit: int
    table: tuple
    name: str = field(default="M", compare=False)

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", table)
        n = self.size
        if n < 1 or len(table) != n or any(len(r) != n for r in table):
            raise InvalidParameter("monoid table must be square and non-empty")
        if not 0 <= self.unit < n:
            raise InvalidParameter("unit outside carrier")
        for a in range(n):
            if table[self.unit][a] != a or table[a][self.unit] != a:
                raise InvalidParameter(f"unit law fails at {a}")
            for b in range(n):
                if not 0 <= table[a][b] < n:
                    raise InvalidParameter("table entry outside carrier")
        for a, b, c in itertools.product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise InvalidParameter(f"associativity fails at {(a, b, c)}")

    @property
    def carrier(self):
        return FinSet(self.size)

    def mul(self, a, b):
        return self.table[a][b]


def cyclic(n):
    return MonoidTable(n, 0, [[(a + b) % n for b in range(n)] for a in range(n)], name=f"Z{n}")


def boolean_and():
    return MonoidTable(2, 1, [[0, 0], [0, 1]], name="AND")


# ----------------------------------------------------------- symbolic values


@dataclass(frozen=True)
class Var:
    """An unexplored coordinate of the input node at ``path``."""
    path: tuple
    k: int


@dataclass(frozen=True)
class Prod:
    """A product in a monoid whose factors are not all known yet."""
    monoid: MonoidTable
    items: tuple


class Need(Exception):
    def __init__(self, path, k):
        super().__init__(path, k)
        self.path = path
        self.k = k


class Mismatch(Exception):
    pass


def concrete(x):
    if isinstance(x, Var):
        raise Need(x.path, x.k)
    if isinstance(x, Prod):
        v = _first_var(x)
        raise Need(v.path, v.k)
    return x


def _first_var(x):
    if isinstance(x, Var):
        return x
    if isinstance(x, Prod):
        for it in x.items:
            if isinstance(it, Var):
                return it
    return None


def mul_sym(M, x, y):
    """Product in M, kept as a normalised word while factors are unknown."""
    if not isinstance(x, (Var, Prod)) and not isinstance(y, (Var, Prod)):
        return M.mul(x, y)
    items = []
    for part in (x, y):
        seq = part.items if isinstance(part, Prod) else (part,)
        for it in seq:
            if isinstance(it, Var):
                items.append(it)
                continue
            if it == M.unit:
                continue
            if items and not isinstance(items[-1], Var):
                items[-1] = M.mul(items[-1], it)
                if items[-1] == M.unit:
                    items.pop()
            else:
                items.append(it)
    if not items:
        return M.unit
    if len(items) == 1:
        return items[0]
    return Prod(M, tuple(items))


def _sym_eq(x, y):
    """True, False, or a Var whose value would settle the question."""
    if x == y:
        return True
    v = _first_var(x) or _first_var(y)
    return False if v is None else v


# ------------------------------------------------------------ atoms and words


@dataclass(frozen=True)
class Atom:
    """A container given by an explicit shape list.

    Shapes are tuples of coordinates; lazy exploration may learn a shape one
    coordinate at a time.
    """
    name: str
    shapes: tuple
    arities: tuple

    def __post_init__(self):
        object.__setattr__(self, "shapes", tuple(tuple(s) for s in self.shapes))
        object.__setattr__(self, "arities", tuple(int(a) for a in self.arities))
        if len(self.shapes) != len(self.arities):
            raise InvalidParameter("one arity per shape")
        if len(set(self.shapes)) != len(self.shapes):
            raise InvalidParameter("duplicate shapes")
        if any(a < 0 for a in self.arities):
            raise InvalidParameter("negative arity")

    @cached_property
    def index(self):
        return {s: j for j, s in enumerate(self.shapes)}

    @cached_property
    def width(self):
        return max((len(s) for s in self.shapes), default=0)

    def __repr__(self):
        return self.name


@lru_cache(maxsize=None)
def _count(atoms):
    if not atoms:
        return 1
    tail = _count(atoms[1:])
    return sum(tail ** a for a in atoms[0].arities)


@lru_cache(maxsize=None)
def _offsets(atoms):
    tail = _count(atoms[1:])
    offs, acc = [], 0
    for a in atoms[0].arities:
        offs.append(acc)
        acc += tail ** a
    return tuple(offs)


def _tree_index(atoms, tree):
    if not atoms:
        return 0
    j, kids = tree
    tail = _count(atoms[1:])
    v = 0
    for kid in kids:
        v = v * tail + _tree_index(atoms[1:], kid)
    return _offsets(atoms)[j] + v


def _tree_at(atoms, idx):
    if not atoms:
        return ()
    tail = _count(atoms[1:])
    for j, a in enumerate(atoms[0].arities):
        block = tail ** a
        if idx < block:
            digits = []
            for _ in range(a):
                idx, d = divmod(idx, tail)
                digits.append(d)
            return (j, tuple(_tree_at(atoms[1:], d) for d in reversed(digits)))
        idx -= block
    raise IndexError("shape index out of range")


def _iter_trees(atoms):
    if not atoms:
        yield ()
        return
    sub = list(_iter_trees(atoms[1:]))
    for j, a in enumerate(atoms[0].arities):
        for kids in itertools.product(sub, repeat=a):
            yield (j, kids)


def _tree_positions(atoms, tree):
    if not atoms:
        return [()]
    _, kids = tree
    return [(p,) + q for p, kid in enumerate(kids) for q in _tree_positions(atoms[1:], kid)]


def _tree_paths(atoms, tree, path=()):
    """Internal node paths of a tree, preorder, with their atom shape index."""
    if not atoms:
        return []
    j, kids = tree
    out = [(path, j)]
    for p, kid in enumerate(kids):
        out += _tree_paths(atoms[1:], kid, path + (p,))
    return out


def _label(shape):
    return shape[0] if len(shape) == 1 else shape


@dataclass(frozen=True)
class Container:
    """A word of atoms, outermost first: ``Container((F, G))`` is F∘G."""
    atoms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))

    @property
    def name(self):
        return "·".join(a.name for a in self.atoms) if self.atoms else "Id"

    def __repr__(self):
        return f"Container({self.name})"

    def __len__(self):
        return len(self.atoms)

    @property
    def shape_count(self):
        return _count(self.atoms)

    @property
    def shapes(self):
        return FinSet(self.shape_count)

    def shape(self, s):
        return _tree_at(self.atoms, s)

    def shape_index(self, tree):
        return _tree_index(self.atoms, tree)

    def trees(self):
        return _iter_trees(self.atoms)

    def positions(self, s):
        tree = self.shape(s) if isinstance(s, int) else s
        return FinSet(len(_tree_positions(self.atoms, tree)))

    def labels(self, tree):
        return tuple(_label(self.atoms[len(p)].shapes[j]) for p, j in _tree_paths(self.atoms, tree))


def atom_container(atom):
    return Container((atom,))


def identity_container():
    return Container(())


def compose_containers(F, G):
    return Container(F.atoms + G.atoms)


# --------------------------------------------------------- lazy element trees


class View:
    __slots__ = ("coords", "children", "leaf")

    def __init__(self, coords, children, leaf=None):
        self.coords = coords
        self.children = children
        self.leaf = leaf


class Ctx:
    """Knowledge about the generic input element during one exploration."""

    def __init__(self, atoms, assign=None, fixed=None):
        self.atoms = atoms
        self.depth = len(atoms)
        self.assign = assign or {}
        self.fixed = fixed
        self._cands = {}

    @classmethod
    def of_tree(cls, atoms, tree):
        return cls(atoms, fixed=dict(_tree_paths(atoms, tree)))

    def candidates(self, path):
        c = self._cands.get(path)
        if c is None:
            atom = self.atoms[len(path)]
            if self.fixed is not None:
                c = (self.fixed[path],)
            else:
                known = [(k, v) for (p, k), v in self.assign.items() if p == path]
                c = tuple(j for j, s in enumerate(atom.shapes)
                          if all((s[k] if k < len(s) else None) == v for k, v in known))
            self._cands[path] = c
        return c

    def _coord(self, path, j, k):
        s = self.atoms[len(path)].shapes[j]
        return s[k] if k < len(s) else None

    def split_coord(self, path):
        cands = self.candidates(path)
        for k in range(self.atoms[len(path)].width):
            if len({self._coord(path, j, k) for j in cands}) > 1:
                return k
        raise AssertionError("no coordinate separates the candidates")

    def values(self, path, k):
        atom = self.atoms[len(path)]
        seen = []
        for j in self.candidates(path):
            v = self._coord(path, j, k)
            if v not in seen:
                seen.append(v)
        zero = atom.shapes[0][k] if k < len(atom.shapes[0]) else None
        # the index-0 shape is the neutral one for every builtin; trying it
        # last makes reported witnesses non-degenerate
        return [v for v in seen if v != zero] + [v for v in seen if v == zero]

    def completed_tree(self, path=()):
        if len(path) == self.depth:
            return ()
        cands = self.candidates(path)
        atom = self.atoms[len(path)]
        pref = [j for j in cands if j != 0] + [j for j in cands if j == 0]
        j = pref[0]
        return (j, tuple(self.completed_tree(path + (p,)) for p in range(atom.arities[j])))


class Node:
    __slots__ = ("_view",)
    key = None

    def force(self, ctx):
        raise NotImplementedError


class In(Node):
    __slots__ = ("path", "key")

    def __init__(self, path):
        self._view = None
        self.path = path
        self.key = ("in", path)

    def force(self, ctx):
        if self._view is not None:
            return self._view
        path = self.path
        if len(path) == ctx.depth:
            v = View(None, None, path)
        else:
            atom = ctx.atoms[len(path)]
            cands = ctx.candidates(path)
            first = atom.shapes[cands[0]]
            ar = atom.arities[cands[0]]
            if len(cands) == 1:
                coords = first
            else:
                if any(atom.arities[j] != ar or len(atom.shapes[j]) != len(first) for j in cands):
                    raise Need(path, ctx.split_coord(path))
                coords = tuple(
                    first[k] if all(atom.shapes[j][k] == first[k] for j in cands) else Var(path, k)
                    for k in range(len(first)))
            v = View(coords, tuple(In(path + (p,)) for p in range(ar)))
        self._view = v
        return v


class Out(Node):
    __slots__ = ("coords", "children")

    def __init__(self, coords, children):
        self._view = None
        self.coords = tuple(coords)
        self.children = tuple(children)

    def force(self, ctx):
        return View(self.coords, self.children)


class Ap(Node):
    __slots__ = ("m", "node", "key")

    def __init__(self, m, node):
        self._view = None
        self.m = m
        self.node = node
        self.key = None if node.key is None else ("ap", id(m), node.key)

    def force(self, ctx):
        if self._view is None:
            m = self.m
            if isinstance(m, _Atomic):
                self._view = m.rule(ctx, self.node).force(ctx)
            else:
                inner = _map_at(self.node, len(m.beta.src), m.alpha)
                self._view = apply(m.beta, inner).force(ctx)
        return self._view


class MapAt(Node):
    """``node`` with ``m`` applied to every subtree at depth ``d``."""
    __slots__ = ("node", "d", "m", "key")

    def __init__(self, node, d, m):
        self._view = None
        self.node = node
        self.d = d
        self.m = m
        self.key = None if node.key is None else ("map", d, id(m), node.key)

    def force(self, ctx):
        if self._view is None:
            v = self.node.force(ctx)
            self._view = View(v.coords, tuple(_map_at(c, self.d - 1, self.m) for c in v.children))
        return self._view


class Insert(Node):
    """``node`` with a new one-position layer of shape ``coords`` at depth ``d``."""
    __slots__ = ("node", "d", "coords", "key")

    def __init__(self, node, d, coords):
        self._view = None
        self.node = node
        self.d = d
        self.coords = tuple(coords)
        self.key = None if node.key is None else ("ins", d, self.coords, node.key)

    def force(self, ctx):
        if self._view is None:
            if self.d == 0:
                self._view = View(self.coords, (self.node,))
            else:
                v = self.node.force(ctx)
                self._view = View(v.coords, tuple(Insert(c, self.d - 1, self.coords) for c in v.children))
        return self._view


def _map_at(node, d, m):
    if isinstance(m, _Identity):
        return node
    if d == 0:
        return apply(m, node)
    return MapAt(node, d, m)


def apply(m, node):
    if isinstance(m, _Identity):
        return node
    if isinstance(m, _Vertical):
        return apply(m.beta, apply(m.alpha, node))
    return Ap(m, node)


def read_tree(ctx, node, atoms):
    """Force ``len(atoms)`` layers: returns (tree, leaf nodes in position order)."""
    leaves = []

    def go(n, d):
        if d == len(atoms):
            leaves.append(n)
            return ()
        v = n.force(ctx)
        atom = atoms[d]
        key = tuple(concrete(c) for c in v.coords)
        j = atom.index[key]
        if atom.arities[j] != len(v.children):
            raise AssertionError(f"{atom.name}: shape {key} built with wrong arity")
        return (j, tuple(go(c, d + 1) for c in v.children))

    return go(node, 0), leaves


def build_tree(atoms, tree, leaves):
    it = iter(leaves)

    def go(d, t):
        if d == len(atoms):
            return next(it)
        j, kids = t
        return Out(atoms[d].shapes[j], [go(d + 1, k) for k in kids])

    return go(0, tree)


# -------------------------------------------------------------- morphisms


class ContainerMorphism:
    """A natural transformation between two containers."""

    def __init__(self, src, tgt, name=None):
        self.src = src
        self.tgt = tgt
        self.name = name

    def __repr__(self):
        return f"<{self.label()} : {self.src.name} => {self.tgt.name}>"

    def label(self):
        return self.name or type(self).__name__.strip("_").lower()

    @cached_property
    def _tables(self):
        return tabulate(self)

    @property
    def shape_map(self):
        return self._tables[0]

    @property
    def position_maps(self):
        return self._tables[1]


class _Atomic(ContainerMorphism):
    def __init__(self, src, tgt, rule, name=None):
        super().__init__(src, tgt, name)
        self.rule = rule


class _Identity(ContainerMorphism):
    pass


class _Vertical(ContainerMorphism):
    def __init__(self, beta, alpha):
        super().__init__(alpha.src, beta.tgt)
        self.beta = beta
        self.alpha = alpha

    def label(self):
        return f"({self.beta.label()} ∘ {self.alpha.label()})"


class _Horizontal(ContainerMorphism):
    def __init__(self, beta, alpha):
        super().__init__(compose_containers(beta.src, alpha.src), compose_containers(beta.tgt, alpha.tgt))
        self.beta = beta
        self.alpha = alpha

    def label(self):
        return f"({self.beta.label()} · {self.alpha.label()})"


_ID_CACHE = {}


def identity_morphism(F):
    m = _ID_CACHE.get(F)
    if m is None:
        m = _ID_CACHE[F] = _Identity(F, F, name=f"id[{F.name}]")
    return m


def is_identity(m):
    return isinstance(m, _Identity)


def vcomp(beta, alpha):
    """beta ∘ alpha."""
    if alpha.tgt != beta.src:
        raise BoundaryMismatch(f"cannot compose {beta!r} after {alpha!r}")
    if is_identity(alpha):
        return beta
    if is_identity(beta):
        return alpha
    return _Vertical(beta, alpha)


def vchain(*ms):
    """Left-nested vertical composite, outermost first."""
    out = ms[-1]
    for m in reversed(ms[:-1]):
        out = vcomp(m, out)
    return out


def hcomp(beta, alpha):
    """beta · alpha (alpha acts on the inner layers)."""
    if is_identity(beta) and is_identity(alpha):
        return identity_morphism(compose_containers(beta.src, alpha.src))
    return _Horizontal(beta, alpha)


def whisker(*parts):
    """Horizontal composite of containers and morphisms, e.g. ``whisker(F, mu, G)``."""
    ms = [identity_morphism(p) if isinstance(p, Container) else p for p in parts]
    out = ms[-1]
    for m in reversed(ms[:-1]):
        out = hcomp(m, out)
    return out


def from_rule(src, tgt, rule, name=None):
    return _Atomic(src, tgt, rule, name)


def from_tables(src, tgt, shape_map, position_maps, name=None):
    smap = tuple(int(v) for v in (shape_map.values if isinstance(shape_map, FinFunction) else shape_map))
    pmaps = tuple(tuple(int(v) for v in (p.values if isinstance(p, FinFunction) else p))
                  for p in position_maps)
    if len(smap) != src.shape_count or len(pmaps) != len(smap):
        raise InvalidParameter("tables must cover every source shape")
    for s, (t, pm) in enumerate(zip(smap, pmaps)):
        if not 0 <= t < tgt.shape_count:
            raise InvalidParameter(f"shape {s} mapped outside target")
        if len(pm) != tgt.positions(t).size or any(not 0 <= q < src.positions(s).size for q in pm):
            raise InvalidParameter(f"position map of shape {s} is not fibred")

    def rule(ctx, node):
        tree, leaves = read_tree(ctx, node, src.atoms)
        s = _tree_index(src.atoms, tree)
        return build_tree(tgt.atoms, _tree_at(tgt.atoms, smap[s]), [leaves[q] for q in pmaps[s]])

    m = _Atomic(src, tgt, rule, name)
    m._tables_given = (smap, pmaps)
    return m


def tabulate(m):
    """Shape map and position maps by running ``m`` on every concrete shape."""
    given = getattr(m, "_tables_given", None)
    src, tgt = m.src, m.tgt
    if given is not None:
        smap, pmaps = given
    else:
        if src.shape_count > TABLE_LIMIT:
            raise InvalidParameter(f"{src.shape_count} shapes is too many to tabulate")
        smap, pmaps = [], []
        for tree in src.trees():
            t, pm = _run_concrete(m, tree)
            smap.append(t)
            pmaps.append(pm)
    shape_map = FinFunction(src.shapes, tgt.shapes, smap)
    position_maps = tuple(
        FinFunction(tgt.positions(t), src.positions(s), pm)
        for s, (t, pm) in enumerate(zip(smap, pmaps)))
    return shape_map, position_maps


def _run_concrete(m, tree):
    atoms = m.src.atoms
    ctx = Ctx.of_tree(atoms, tree)
    otree, leaves = read_tree(ctx, apply(m, In(())), m.tgt.atoms)
    where = {p: i for i, p in enumerate(_tree_positions(atoms, tree))}
    pm = tuple(where[leaf.force(ctx).leaf] for leaf in leaves)
    return _tree_index(m.tgt.atoms, otree), pm


# ----------------------------------------------------------------- equality


def _compare(a, b, ctx):
    if a.key is not None and a.key == b.key:
        return
    va, vb = a.force(ctx), b.force(ctx)
    if va.leaf is not None or vb.leaf is not None:
        if va.leaf != vb.leaf:
            raise Mismatch()
        return
    for x, y in zip(va.coords, vb.coords):
        r = _sym_eq(x, y)
        if r is False:
            raise Mismatch()
        if r is not True:
            raise Need(r.path, r.k)
    if len(va.coords) != len(vb.coords) or len(va.children) != len(vb.children):
        raise Mismatch()
    for c, d in zip(va.children, vb.children):
        _compare(c, d, ctx)


def find_difference(alpha, beta):
    """A source shape (tree) on which the morphisms differ, or None."""
    if alpha.src != beta.src or alpha.tgt != beta.tgt:
        raise BoundaryMismatch(f"{alpha!r} and {beta!r} have different boundaries")
    if alpha is beta:
        return None
    atoms = alpha.src.atoms
    stack = [{}]
    while stack:
        assign = stack.pop()
        ctx = Ctx(atoms, assign=assign)
        try:
            _compare(apply(alpha, In(())), apply(beta, In(())), ctx)
        except Need as e:
            for v in reversed(ctx.values(e.path, e.k)):
                stack.append({**assign, (e.path, e.k): v})
        except Mismatch:
            return ctx.completed_tree()
    return None


def morphism_equal(alpha, beta, method="symbolic"):
    if method == "symbolic":
        return find_difference(alpha, beta) is None
    if method == "tables":
        if alpha.src != beta.src or alpha.tgt != beta.tgt:
            raise BoundaryMismatch("different boundaries")
        return alpha.shape_map == beta.shape_map and alpha.position_maps == beta.position_maps
    raise ValueError(method)


# ----------------------------------------------------------- pointwise oracle


@lru_cache(maxsize=None)
def _size_on(atoms, x):
    if not atoms:
        return x
    tail = _size_on(atoms[1:], x)
    return sum(tail ** a for a in atoms[0].arities)


def _affine(atoms, tree, x):
    """Index of the element of F(X) with shape ``tree`` is base + Σ w_q·v_q."""
    if not atoms:
        return 0, [1]
    j, kids = tree
    tail = _size_on(atoms[1:], x)
    base = sum(tail ** a for a in atoms[0].arities[:j])
    weights = []
    n = len(kids)
    for p, kid in enumerate(kids):
        b, w = _affine(atoms[1:], kid, x)
        scale = tail ** (n - 1 - p)
        base += b * scale
        weights += [c * scale for c in w]
    return base, weights


def eval_on_set(F, X):
    return FinSet(_size_on(F.atoms, X.size))


def element_index(F, X, tree, values):
    base, w = _affine(F.atoms, tree, X.size)
    return base + sum(a * b for a, b in zip(w, values))


def element_at(F, X, idx):
    """Decode an element of F(X) into (tree, leaf values)."""
    atoms = F.atoms

    def go(d, i):
        if d == len(atoms):
            return (), [i]
        tail = _size_on(atoms[d + 1:], X.size)
        for j, a in enumerate(atoms[d].arities):
            block = tail ** a
            if i < block:
                digits = []
                for _ in range(a):
                    i, r = divmod(i, tail)
                    digits.append(r)
                kids, vals = [], []
                for r in reversed(digits):
                    t, v = go(d + 1, r)
                    kids.append(t)
                    vals += v
                return (j, tuple(kids)), vals
            i -= block
        raise IndexError("element index out of range")

    return go(0, idx)


def _assignments(x, a):
    if a == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((x,) * a).reshape(a, -1).T
    return grids.astype(np.int64)


def eval_morphism_on_set(alpha, X):
    """α_X as a function F(X) → G(X), computed from the tables."""
    F, G = alpha.src, alpha.tgt
    dom, cod = eval_on_set(F, X), eval_on_set(G, X)
    out = np.zeros(dom.size, dtype=np.int64)
    smap, pmaps = alpha.shape_map, alpha.position_maps
    for s, tree in enumerate(F.trees()):
        base, w = _affine(F.atoms, tree, X.size)
        t = smap(s)
        tbase, tw = _affine(G.atoms, G.shape(t), X.size)
        V = _assignments(X.size, len(w))
        if V.shape[0] == 0:
            continue
        src_idx = base + V @ np.array(w, dtype=np.int64)
        pm = np.array(pmaps[s].values, dtype=np.int64)
        tgt_idx = tbase + (V[:, pm] @ np.array(tw, dtype=np.int64) if len(pm) else 0)
        out[src_idx] = tgt_idx
    return FinFunction(dom, cod, out.tolist())


def eval_functor_on_function(F, f):
    """F(f) for a FinFunction f: X → Y."""
    X, Y = f.dom, f.cod
    dom, cod = eval_on_set(F, X), eval_on_set(F, Y)
    out = np.zeros(dom.size, dtype=np.int64)
    fv = np.array(f.values, dtype=np.int64)
    for tree in F.trees():
        base, w = _affine(F.atoms, tree, X.size)
        ybase, yw = _affine(F.atoms, tree, Y.size)
        V = _assignments(X.size, len(w))
        if V.shape[0] == 0:
            continue
        src_idx = base + V @ np.array(w, dtype=np.int64)
        tgt_idx = ybase + (fv[V] @ np.array(yw, dtype=np.int64) if len(w) else 0)
        out[src_idx] = tgt_idx
    return FinFunction(dom, cod, out.tolist())


ORACLE_BUDGET = 2_000_000
ORACLE_SAMPLES = 3000


def eval_element(alpha, X, tree, values):
    """α_X on the single element (tree, values).

    Uses the tables when the source is small enough to tabulate and runs
    the morphism on this one shape otherwise.
    """
    F, G = alpha.src, alpha.tgt
    if F.shape_count <= TABLE_LIMIT:
        s = F.shape_index(tree)
        t = alpha.shape_map(s)
        pm = alpha.position_maps[s].values
    else:
        t, pm = _run_concrete(alpha, tree)
    return element_index(G, X, G.shape(t), [values[q] for q in pm])


def pointwise_difference(alpha, beta, max_size=3, budget=ORACLE_BUDGET, seed=0):
    """First (|X|, element) where α_X and β_X differ, or None.

    Sets whose F(X) exceeds ``budget`` elements, and sources with too many
    shapes to tabulate, are sampled instead of enumerated.
    """
    rng = np.random.default_rng(seed)
    F = alpha.src
    for n in range(max_size + 1):
        X = FinSet(n)
        if F.shape_count <= TABLE_LIMIT and eval_on_set(F, X).size <= budget:
            a, b = eval_morphism_on_set(alpha, X), eval_morphism_on_set(beta, X)
            for i, (u, v) in enumerate(zip(a.values, b.values)):
                if u != v:
                    return {"set_size": n, "element": i, "lhs": u, "rhs": v}
            continue
        for _ in range(ORACLE_SAMPLES):
            tree = F.shape(int(rng.integers(F.shape_count)))
            k = F.positions(tree).size
            if k and not n:
                continue
            vals = [int(v) for v in rng.integers(n, size=k)] if k else []
            u, v = eval_element(alpha, X, tree, vals), eval_element(beta, X, tree, vals)
            if u != v:
                return {"set_size": n, "element": element_index(F, X, tree, vals), "lhs": u, "rhs": v}
    return None


def pointwise_at_shape(alpha, beta, tree):
    """Evaluate both sides on the generic element of shape ``tree``."""
    X = FinSet(len(_tree_positions(alpha.src.atoms, tree)))
    elem = element_index(alpha.src, X, tree, range(X.size))
    outs = []
    for m in (alpha, beta):
        t, pm = _run_concrete(m, tree)
        outs.append(element_index(m.tgt, X, m.tgt.shape(t), pm))
    return {"set_size": X.size, "element": elem, "lhs": outs[0], "rhs": outs[1]}


# ------------------------------------------------------------------ monads


@dataclass(frozen=True, eq=False)
class MonadData:
    functor: Container
    unit: ContainerMorphism
    mult: ContainerMorphism
    name: str = "T"

    def __post_init__(self):
        F = self.functor
        if self.unit.src != identity_container() or self.unit.tgt != F:
            raise BoundaryMismatch(f"{self.name}: unit must be Id => {F.name}")
        if self.mult.src != compose_containers(F, F) or self.mult.tgt != F:
            raise BoundaryMismatch(f"{self.name}: mult must be {F.name}·{F.name} => {F.name}")

    def __eq__(self, other):
        return (isinstance(other, MonadData) and self.functor == other.functor
                and self.unit is other.unit and self.mult is other.mult)

    def __hash__(self):
        return hash((self.functor, id(self.unit), id(self.mult)))

    def __repr__(self):
        return f"MonadData({self.name} on {self.functor.name})"


def _monad(name, atom, unit_rule, mult_rule):
    F = atom_container(atom)
    Id = identity_container()
    return MonadData(F, from_rule(Id, F, unit_rule, f"η[{name}]"),
                     from_rule(compose_containers(F, F), F, mult_rule, f"μ[{name}]"), name)


def writer_atom(M):
    return Atom(f"Writer({M.name})", [(m,) for m in range(M.size)], [1] * M.size)


@cache
def writer(M):
    def unit(ctx, node):
        return Out((M.unit,), (node,))

    def mult(ctx, node):
        v = node.force(ctx)
        w = v.children[0].force(ctx)
        return Out((mul_sym(M, v.coords[0], w.coords[0]),), w.children)

    return _monad(f"writer({M.name})", writer_atom(M), unit, mult)


def raw_writer(size, unit, table, name="raw"):
    """Writer-shaped monad from an unchecked table (for negative tests)."""
    atom = Atom(f"Writer({name})", [(m,) for m in range(size)], [1] * size)
    F = atom_container(atom)
    FF = compose_containers(F, F)
    smap = [table[a][b] for a in range(size) for b in range(size)]
    mult = from_tables(FF, F, smap, [(0,)] * len(smap), f"μ[{name}]")
    unit_m = from_tables(identity_container(), F, [unit], [(0,)], f"η[{name}]")
    return MonadData(F, unit_m, mult, name)


def either_atom(n):
    return Atom(f"Either({n})", [("L", a) for a in range(n)] + [("R",)], [0] * n + [1])


def either(A):
    n = A.size if isinstance(A, FinSet) else int(A)
    if n < 0:
        raise InvalidParameter("negative set size")
    return _either(n)


@cache
def _either(n):

    def unit(ctx, node):
        return Out(("R",), (node,))

    def mult(ctx, node):
        v = node.force(ctx)
        if concrete(v.coords[0]) == "L":
            return Out(v.coords, ())
        return v.children[0]

    return _monad(f"either({n})", either_atom(n), unit, mult)


@cache
def maybe():
    m = either(1)
    return MonadData(m.functor, m.unit, m.mult, "maybe")


def reader(R):
    r = R.size if isinstance(R, FinSet) else int(R)
    if r < 0:
        raise InvalidParameter("negative set size")
    return _reader(r)


@cache
def _reader(r):
    atom = Atom(f"Reader({r})", [()], [r])

    def unit(ctx, node):
        return Out((), (node,) * r)

    def mult(ctx, node):
        v = node.force(ctx)
        return Out((), tuple(v.children[i].force(ctx).children[i] for i in range(r)))

    return _monad(f"reader({r})", atom, unit, mult)


def state_atom(s):
    return Atom(f"State({s})", list(itertools.product(range(s), repeat=s)), [s] * s ** s)


def state(S):
    s = S.size if isinstance(S, FinSet) else int(S)
    if s < 1:
        raise InvalidParameter("state needs a non-empty set")
    return _state(s)


@cache
def _state(s):

    def unit(ctx, node):
        return Out(tuple(range(s)), (node,) * s)

    def mult(ctx, node):
        # run position x at the state f(x) it produced
        v = node.force(ctx)
        coords, kids = [], []
        for x in range(s):
            fx = concrete(v.coords[x])
            w = v.children[x].force(ctx)
            coords.append(w.coords[fx])
            kids.append(w.children[fx])
        return Out(tuple(coords), tuple(kids))

    return _monad(f"state({s})", state_atom(s), unit, mult)


@cache
def identity_monad():
    Id = identity_container()
    return MonadData(Id, identity_morphism(Id), identity_morphism(Id), "identity")


def builtin(kind, param=None):
    if kind == "writer":
        if not isinstance(param, MonoidTable):
            raise InvalidParameter("writer needs a MonoidTable")
        return writer(param)
    if kind == "either":
        return either(param)
    if kind == "maybe":
        return maybe()
    if kind == "reader":
        return reader(param)
    if kind == "state":
        return state(param)
    if kind == "identity":
        return identity_monad()
    raise InvalidParameter(f"unknown builtin {kind!r}")


# ---------------------------------------------------------------- strength


def functor_on_element(F, f, z):
    """F(f)(z) for one element z of F(f.dom)."""
    tree, vals = element_at(F, f.dom, z)
    return element_index(F, f.cod, tree, [f(v) for v in vals])


def strength_at(F):
    """The canonical strength one element at a time: (A, B, a, y) ↦ str(a, y)."""
    def at(A, B, a, y):
        tree, leaves = element_at(F, B, y)
        return element_index(F, FinSet(A.size * B.size), tree, [a * B.size + b for b in leaves])

    return at


def strength(F):
    """The canonical strength of F as a family str(A, B): A × F(B) → F(A × B).

    Elements of A × F(B) are indexed ``a·|F(B)| + y``; elements of A × B are
    indexed ``a·|B| + b``.
    """
    at = strength_at(F)

    def family(A, B):
        FB = eval_on_set(F, B)
        vals = [at(A, B, a, y) for a in range(A.size) for y in range(FB.size)]
        return FinFunction(FinSet(A.size * FB.size), eval_on_set(F, FinSet(A.size * B.size)), vals)

    return family


def strength_morphism(M, F):
    """Writer(M)·F ⇒ F·Writer(M): the strength as a container morphism."""
    W = atom_container(writer_atom(M))

    def rule(ctx, node):
        v = node.force(ctx)
        return Insert(v.children[0], len(F), v.coords)

    return from_rule(compose_containers(W, F), compose_containers(F, W), rule,
                     f"str[{M.name},{F.name}]")


def _homs(A, B):
    return [FinFunction(A, B, v) for v in itertools.product(range(B.size), repeat=A.size)]


def _hom_index(h):
    i = 0
    for v in h.values:
        i = i * h.cod.size + v
    return i


def enrichment_at(F, st_at):
    """F_{A,B}(h)(x) = F(ev)(str_{[A,B],A}(h, x)), one element at a time."""
    def at(A, B, h, x):
        H = FinSet(B.size ** A.size)
        z = st_at(H, A, _hom_index(h), x)
        tree, leaves = element_at(F, FinSet(H.size * A.size), z)
        return element_index(F, B, tree, [h(p % A.size) for p in leaves])

    return at


def strength_from_enrichment_at(F, enr_at):
    """str(a, y) = F_{B,A×B}(b ↦ (a, b))(y)."""
    def at(A, B, a, y):
        AB = FinSet(A.size * B.size)
        pair = FinFunction(B, AB, [a * B.size + b for b in range(B.size)])
        return enr_at(B, AB, pair, y)

    return at


def enrichment(F):
    """F_{A,B}: [A,B] → [F A, F B] built from the strength and evaluation.

    Returns (A, B) -> list, indexed like ``all_functions(A, B)``, of
    FinFunction F(A) → F(B).
    """
    at = enrichment_at(F, strength_at(F))

    def family(A, B):
        FA, FB = eval_on_set(F, A), eval_on_set(F, B)
        return [FinFunction(FA, FB, [at(A, B, h, x) for x in range(FA.size)]) for h in _homs(A, B)]

    return family


def strength_enrichment_roundtrip(F, max_size=3):
    rep = CheckReport(f"strength-enrichment[{F.name}]")
    st = strength_at(F)
    enr = enrichment_at(F, st)
    st2 = strength_from_enrichment_at(F, enr)
    enr2 = enrichment_at(F, st2)
    for a, b in itertools.product(range(max_size + 1), repeat=2):
        A, B = FinSet(a), FinSet(b)
        FA, FB = eval_on_set(F, A).size, eval_on_set(F, B).size
        ok = all(st(A, B, i, y) == st2(A, B, i, y) for i in range(a) for y in range(FB))
        rep.add(f"strength-roundtrip({a},{b})", "str -> enr -> str", ok)
        ok = True
        for h in _homs(A, B):
            Fh = eval_functor_on_function(F, h)
            ok &= all(Fh(x) == enr(A, B, h, x) == enr2(A, B, h, x) for x in range(FA))
        rep.add(f"enrichment-roundtrip({a},{b})", "enr -> str -> enr, and enr(h) = F(h)", ok)
    return rep


# ------------------------------------------------------------- monad checks


def law_instance(report, tag, description, lhs, rhs, oracle=False, max_size=3):
    """Compare two 2-cells, record the verdict, and attach witnesses on failure.

    With ``oracle`` the verdict is cross-checked against the pointwise
    evaluation on all sets up to ``max_size``.
    """
    diff = find_difference(lhs, rhs)
    witness = None
    ok = diff is None
    if not ok:
        witness = {"shape": list(lhs.src.labels(diff)),
                   "pointwise": pointwise_at_shape(lhs, rhs, diff)}
    if oracle:
        pw = pointwise_difference(lhs, rhs, max_size)
        agree = (pw is None) == ok
        if not agree:
            witness = dict(witness or {}, oracle_disagrees=pw)
        ok = ok and agree
        if pw is not None:
            witness = dict(witness or {}, oracle=pw)
    report.add(tag, description, ok, witness)
    return ok


def check_monad(M, oracle=False, max_size=3):
    F = M.functor
    rep = CheckReport(f"monad[{M.name}]")
    mu, eta = M.mult, M.unit
    idF = identity_morphism(F)
    law_instance(rep, "monad.unit-left", "μ∘(η·t) = t",
                 vcomp(mu, whisker(eta, F)), idF, oracle, max_size)
    law_instance(rep, "monad.unit-right", "μ∘(t·η) = t",
                 vcomp(mu, whisker(F, eta)), idF, oracle, max_size)
    law_instance(rep, "monad.assoc", "μ∘(μ·t) = μ∘(t·μ)",
                 vcomp(mu, whisker(mu, F)), vcomp(mu, whisker(F, mu)), oracle, max_size)
    return rep
