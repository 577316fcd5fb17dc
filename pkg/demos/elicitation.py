"""
Reading beliefs off bets
========================

A juror ignores whether her vote is pivotal.  Only her prices for bets
are observed; from them we rebuild both how she reads evidence and the
probabilities she holds.
"""

from heu import compose_capacity, recover_representation, verify_representation
from heu.elicitation import implication_from_capacity
from heu.scenarios import pivotal_voting

sc = pivotal_voting()

# the prices she would pay for every bet
nu = compose_capacity(sc.mu, sc.pi_behavioral)

# indifference between betting on G and on G or H means she thinks H implies G
rel = implication_from_capacity(nu)
b_r_p = sc.space.mask(["B,r,p"])
b_r_np = sc.space.mask(["B,r,np"])
print("B,r,p implies B,r,np:", rel.implies(b_r_p, b_r_np))

# recover the interpretation and the measure on the blocks she can tell apart
rep = recover_representation(nu)
print("recovered map matches:", rep.pi == sc.pi_behavioral)
for atom, mass in zip(rep.atoms, rep.atom_masses):
    print(f"  {[sc.space.labels[i] for i in range(8) if atom >> i & 1]}  {mass}")

# only whole blocks are pinned down; the split inside a block is a convention
print("states with identified mass:", sum(rep.identified))
print("verified:", verify_representation(nu, rep).ok)
