"""The interval category and the monad classifier.

Run with ``python3 demos/04_classifier.py``.
"""

from graydist.classifier import classified_cell, hat_of_monad, hat_vertical, tilde_of_assignment
from graydist.cli import hat_table_text
from graydist.container import cyclic, writer
from graydist.ordinals import compose, dualize, hom, sigma

print(hat_table_text())

# Monotone maps [1] -> [1] and their duals.
for f in hom(2, 2):
    print(f, " dual:", dualize(f))

# Composition survives dualizing.
f, g = sigma(0, 0), sigma(1, 0)
assert hat_vertical(classified_cell(f), classified_cell(g)) == classified_cell(compose(f, g))

# A monad is a functor out of the classifier; recover it from its values.
M = writer(cyclic(2))
h = hat_of_monad(M)
print("h(σ) is μ:", h(sigma(0, 0)) is M.mult)
print("round trip:", tilde_of_assignment(h) == M)
