"""
Strongly irreducible divisors
=============================

Walk through the divisors of 12 and 60, see which ones are strongly
irreducible, and look at how each one earns that status.
"""

from strongirr import classify_all, divisor_lattice, si_elements, structure_dichotomy
from strongirr.lattice import is_distributive

L = divisor_lattice(12)
print(L)

# one row per divisor: irreducible, strongly irreducible, hollow, strongly hollow
for row in classify_all(L):
    print(f"{row.label:>3}  irr={row.irreducible!s:5}  si={row.strongly_irreducible!s:5}"
          f"  hollow={row.hollow!s:5}  sh={row.strongly_hollow!s:5}")

# divisor lattices are distributive, so irreducible and strongly irreducible coincide
print("distributive:", is_distributive(L))

# every SI divisor is either a waist or comes with a uniform witness interval
for p in si_elements(L):
    d = structure_dichotomy(L, p)
    if d.kind == "waist":
        print(f"{L.labels[p]} is comparable to everything")
    else:
        print(f"{L.labels[p]} is the pseudo-complement of {L.labels[d.q]} above {L.labels[d.p_prime]}")

# the same picture for 60 = 2^2 * 3 * 5: the SI divisors are 60 and 60 / q^k for a single prime q
L60 = divisor_lattice(60)
print("SI divisors of 60:", [L60.labels[p] for p in si_elements(L60)])
