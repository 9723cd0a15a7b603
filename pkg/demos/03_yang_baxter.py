"""Three monads, three laws, one Yang-Baxter hexagon.

Run with ``python3 demos/03_yang_baxter.py``.
"""

from graydist.container import cyclic, maybe
from graydist.gray import encode_pdist, mnd_power, terminal
from graydist.laws import check_dist_law, check_nfold, law_mutations
from graydist.parametric import canonical_triple
from graydist.twocat import check_relations

P = mnd_power(terminal(), 3)
print(P.counts())
print("\n".join(line for line in P.pretty().splitlines() if "yang-baxter" in line))

S = canonical_triple(1, cyclic(2), maybe())
print("check_nfold:", check_nfold(S).passed)
print("relations of mnd^3 under the encoding:", check_relations(encode_pdist(S)).passed)

# Break the law between factors 1 and 3 and see who complains.
D = S.law(1, 3)
wrong = next(m for m in law_mutations(D) if not check_dist_law(m, oracle=False).passed)
S2 = S.replace_law(1, 3, wrong.law)
print("failing after corrupting (1,3):", check_nfold(S2, oracle=False).failed_tags())
