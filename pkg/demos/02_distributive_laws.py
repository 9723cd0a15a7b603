"""Parametric distributive laws, the composite monad, and broken laws.

Run with ``python3 demos/02_distributive_laws.py``.
"""

from graydist.container import FinSet, check_monad, cyclic, eval_on_set, maybe, reader, writer
from graydist.laws import (
    check_dist_law,
    check_monad_in_mnd,
    compose_via_law,
    encode_as_monad_in_mnd,
    single_axiom_mutations,
)
from graydist.parametric import deither, dwriter

# Writing a Z2 log through a Reader(2) computation.
D = dwriter(cyclic(2), reader(2))
print(D)
print(check_dist_law(D).summary())

C = compose_via_law(D)
print(C.name, "is a monad:", check_monad(C).passed)
print("|C(X)|:", [eval_on_set(C.functor, FinSet(n)).size for n in range(4)])

# Exceptions can be swapped past any pointed monad.
E = deither(1, maybe())
print(check_dist_law(E).summary())

# A law is the same thing as a monad in the 2-category of monads.
# Breaking one axiom breaks exactly one condition there.
for law in (E, dwriter(cyclic(2), writer(cyclic(2)))):
    for axiom, broken in sorted(single_axiom_mutations(law, budget=60).items()):
        failed = check_monad_in_mnd(encode_as_monad_in_mnd(broken)).failed_tags()
        print(f"{law.name:28} {axiom:18} -> {failed}")
