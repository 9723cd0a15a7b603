"""Monad laws on finite containers, and what a broken one looks like.

Run with ``python3 demos/01_monads.py``.
"""

from graydist.container import (
    FinSet,
    check_monad,
    cyclic,
    eval_morphism_on_set,
    eval_on_set,
    raw_writer,
    state,
    writer,
)

# Writer over Z3 is a container with three shapes and one position each.
W = writer(cyclic(3))
print(W, "has", W.functor.shape_count, "shapes")
print("|W(X)| for |X| = 0..3:", [eval_on_set(W.functor, FinSet(n)).size for n in range(4)])
print(check_monad(W, oracle=True).summary())

# State(2) is the heavy one: W·W·W has many shapes, yet the symbolic check is instant.
print(check_monad(state(2)).summary())

# Replace a+b by a+2b: still a table, no longer a monoid.
bad = raw_writer(3, 0, [[(a + 2 * b) % 3 for b in range(3)] for a in range(3)], "a+2b")
rep = check_monad(bad, oracle=True)
print(rep.summary())
print("assoc witness:", rep.get("monad.assoc").witness)

# The multiplication itself, as a plain function on W(W(X)) for |X| = 1.
mu = eval_morphism_on_set(W.mult, FinSet(1))
print("μ on W(W(1)):", mu.values)
