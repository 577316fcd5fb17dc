"""
Ambiguity from misreading
=========================

Any coherent misreading yields a concave capacity, so the agent dislikes
hedging.  Its dual reading yields a convex one and the opposite taste.
"""

import random

from heu import Act, dualize, enumerate_coherent, hedging_check, is_concave, is_convex
from heu.interpretation import compose_capacity
from heu.theorems import random_act, random_measure

rng = random.Random(1)

# pick a coherent map on three states that merges states 0 and 1
pi = next(p for p in enumerate_coherent(3) if p(0b001) == 0b011 and p(0) == 0)
mu = random_measure(rng, 3)

nu = compose_capacity(mu, pi)
print("concave:", is_concave(nu).holds, " convex:", is_convex(nu).holds)

# hedging two acts never beats the better of them
f, g = random_act(rng, 3), random_act(rng, 3)
rep = hedging_check(mu, pi, f, g)
print(f"V(f)={rep.value_f}  V(g)={rep.value_g}  V(mix)={rep.value_mix}  aversion={rep.aversion}")

# the dual map prices the same bets from below
dual = dualize(pi)
print("dual images:", [format(dual(h), "03b")[::-1] for h in range(8)])
rep = hedging_check(mu, dual, Act.bet(3, 0b001), Act.bet(3, 0b010))
print(f"dual: V(mix)={rep.value_mix} >= min leg {min(rep.value_f, rep.value_g)}: {rep.preference}")
