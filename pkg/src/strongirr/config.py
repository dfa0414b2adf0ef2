"""Size limits and search bounds. Override the lattice limit with STRONGIRR_MAX_SIZE."""
import os

MAX_LATTICE_SIZE = int(os.environ.get("STRONGIRR_MAX_SIZE", "4096"))
MAX_GROUP_ORDER = 10000
MAX_DIVISOR_ARG = 10**12

# antichain size used to cross-check complete (strong) irreducibility
COMPLETE_SUBSET_BOUND = 3

DEFAULT_REP_SIZE = 8
MAX_REP_SIZE = 16

# subgroup lattices up to this many elements are classified through full tables
SUBGROUP_TABLE_ROUTE_MAX = 400
