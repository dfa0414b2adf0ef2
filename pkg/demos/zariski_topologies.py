"""
Topologies on the spectrum
==========================

Closed sets V(a) live on the strongly irreducible elements below top, open
sets on the strongly hollow elements above bottom. Both families are checked
against the basis laws over every ordered pair.
"""

import warnings

from strongirr import chain, diamond, divisor_lattice
from strongirr.errors import EmptySpectrum
from strongirr.topology import closed_basis, open_basis

L = divisor_lattice(60)
V = closed_basis(L)
print("spectrum:", [L.labels[p] for p in V.spectrum])
print("V(4)  =", [L.labels[p] for p in V.members(L.index("4"))])
print("V(20) =", [L.labels[p] for p in V.members(L.index("20"))])
print("pairs checked:", V.verification.pair_checks, "passed:", V.verification.passed)

chi = open_basis(L)
print("χ(12) =", [L.labels[p] for p in chi.members(L.index("12"))])

# a chain is its own spectrum
C = chain(4)
print(closed_basis(C).to_dict())

# in M3 nothing above bottom is strongly hollow, so the open topology is on the empty set
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    print(open_basis(diamond(3)).to_dict())
print([w.category.__name__ for w in caught if issubclass(w.category, EmptySpectrum)])
