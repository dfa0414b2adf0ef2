"""
Strongly hollow subgroups
=========================

A nonzero subgroup P of a finite abelian group is strongly hollow exactly when
it is a p-group and the p-component is cyclic. Here that description is compared
against the subgroup lattice itself.
"""

from strongirr.abelian import (
    FiniteAbelianGroup,
    abelian_groups_up_to,
    hollow_subgroups,
    stephenson_check,
    strongly_hollow_subgroups,
    subgroup_lattice,
)

A = FiniteAbelianGroup.parse("4x9")
print(A, "invariant factors", A.invariant_factors)
print("strongly hollow:", [P.label for P in strongly_hollow_subgroups(A).nonzero])
print("hollow:", [P.label for P in hollow_subgroups(A)])

# with both components at the same prime nothing survives
print("4x8:", strongly_hollow_subgroups(FiniteAbelianGroup.parse("4x8")).nonzero)

# the subgroup lattice of Z2 x Z2 is the diamond M3
SL = subgroup_lattice(FiniteAbelianGroup.parse("2x2"))
print(SL.lattice.labels)

# a line in Z2 x Z2 is not strongly hollow and the Hom test sees it
V = FiniteAbelianGroup.parse("2x2")
line = V.subgroup([(1, 0)])
print(stephenson_check(V, line, require=False))

# every group up to order 60, both descriptions
routes = [strongly_hollow_subgroups(G).route for G in abelian_groups_up_to(60)]
print(len(routes), "groups agree;", routes.count("table"), "through full lattices")
