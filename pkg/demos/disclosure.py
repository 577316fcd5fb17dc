"""
Silence is not news
===================

Sellers of every quality but the lowest always disclose.  A rational
buyer hearing nothing infers the lowest quality; a buyer who reads
silence as uninformative keeps the prior 1/n on the top quality.
"""

from heu import conditional_heu
from heu.scenarios import disclosure

for n in (2, 3, 4, 5):
    sc = disclosure(n, (0,) + (1,) * (n - 1))
    ev = sc.named_events
    naive = conditional_heu(ev[f"V{n}"], ev["R0"], sc.mu, sc.pi_behavioral, variant="payoff")
    rational = conditional_heu(ev[f"V{n}"], ev["R0"], sc.mu, sc.pi_rational)
    print(f"n={n}:  top quality after silence  naive {naive}  rational {rational}")

# conditioning on the interpreted top-quality event gives 1, since that
# event touches silence and is read as the whole space
sc = disclosure()
print("interpreted form:", conditional_heu(sc.named_events["V5"], sc.named_events["R0"],
                                          sc.mu, sc.pi_behavioral))
