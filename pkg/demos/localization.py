"""
Pulling back along a Galois pair
================================

Ideals of Z/nZ against ideals of its localisation Z/p^kZ. Contraction preserves
meets and extension undoes it, so strong irreducibility moves across.
"""

from strongirr import divisor_lattice
from strongirr.transfer import localization_correspondence, localization_model, random_transfer_sweep

m = localization_model(12, 2)
print("p-part:", m.p_part)
for b, c in enumerate(m.contraction):
    print(f"ideal {m.Lp.labels[b]} of Z/4 contracts to {m.L.labels[c]} in Z/12")

r = localization_correspondence(m)
for row in r.rows:
    print(row)
print("SI matches on every ideal:", r.si_correspondence, " passed:", r.passed)

# strongly hollow does not transfer the same way
for n, p in [(12, 3), (49, 7)]:
    rep = localization_correspondence(localization_model(n, p))
    print(n, p, "SH transfers:", rep.sh_transfer, rep.sh_counterexamples)

# seeded random pairs between small divisor lattices
lats = [divisor_lattice(n) for n in (6, 12, 30, 36)]
print(random_transfer_sweep(lats, count=200, seed=1))
