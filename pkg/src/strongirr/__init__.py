"""Strongly irreducible and strongly hollow elements of finite lattices."""
from .builders import boolean, chain, corpus, diamond, divisor_lattice, from_spec, pentagon, product, subspace_lattice
from .classify import (
    characterization_report,
    classify_all,
    is_hollow,
    is_irreducible,
    is_strongly_hollow,
    is_strongly_irreducible,
    sh_elements,
    si_elements,
    structure_dichotomy,
)
from .errors import LatticeError, VerificationError
from .lattice import FiniteLattice, build_from_covers, dual, interval

__all__ = [
    "FiniteLattice",
    "LatticeError",
    "VerificationError",
    "boolean",
    "build_from_covers",
    "chain",
    "characterization_report",
    "classify_all",
    "corpus",
    "diamond",
    "divisor_lattice",
    "dual",
    "from_spec",
    "interval",
    "is_hollow",
    "is_irreducible",
    "is_strongly_hollow",
    "is_strongly_irreducible",
    "pentagon",
    "product",
    "sh_elements",
    "si_elements",
    "structure_dichotomy",
    "subspace_lattice",
]

__version__ = "0.1.0"
