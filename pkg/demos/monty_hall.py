"""
Monty Hall with a confused contestant
=====================================

The contestant reads "door 2 was opened" as "the prize is not behind
door 2".  Under that reading switching looks pointless, and a bet that
hedges the two possible openings looks worse than either leg.
"""

import warnings
from fractions import Fraction

from heu import Act, check_properties, conditional_heu, heu_value, mix
from heu.scenarios import monty_hall

sc = monty_hall()
ev, mu = sc.named_events, sc.mu

# the textbook answer: stick wins 1/3, switch wins 2/3
print("identity  P1|O2 =", conditional_heu(ev["P1"], ev["O2"], mu, sc.pi_rational))
print("identity  P3|O2 =", conditional_heu(ev["P3"], ev["O2"], mu, sc.pi_rational))

# the contestant's reading makes both doors look even
print("confused  P1|O2 =", conditional_heu(ev["P1"], ev["O2"], mu, sc.pi_behavioral))
print("confused  P3|O2 =", conditional_heu(ev["P3"], ev["O2"], mu, sc.pi_behavioral))

# taken literally the reading is not monotone; here is the offending pair
print("monotone witness:", check_properties(sc.pi_behavioral).monotone.witness)

# betting on each opening is worth 2/3, the even hedge only 1/2
legs = [Act.bet(4, ev["O2"]), Act.bet(4, ev["O3"])]
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    print("legs:", ", ".join(str(heu_value(f, mu, sc.pi_behavioral)) for f in legs))
    print("hedge:", heu_value(mix(*legs, Fraction(1, 2)), mu, sc.pi_behavioral))

print()
print(sc.table())
