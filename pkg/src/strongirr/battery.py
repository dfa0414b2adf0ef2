"""Run every lattice-level property the library guarantees against one lattice.

Used by ``strongirr verify properties``; each check reports counterexamples instead of raising.
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field

from .classify import (
    characterization_report,
    classify_all,
    is_strongly_irreducible,
    is_weakly_meet_distributive,
    omega,
    structure_dichotomy,
)
from .errors import EmptySpectrum, LatticeError
from .lattice import FiniteLattice, is_distributive, is_modular, is_total_order
from .representations import strong_kuros_ore_check
from .topology import closed_basis, open_basis


@dataclass
class Check:
    name: str
    passed: bool
    checked: int = 0
    counterexamples: list = field(default_factory=list)

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "counterexamples": self.counterexamples[:20],
        }


def _check(name, cases):
    cases = list(cases)
    bad = [label for label, ok in cases if not ok]
    return Check(name, not bad, len(cases), bad)


def si_chains(L: FiniteLattice, si):
    """Every non-empty chain of the given elements."""
    si = sorted(si, key=lambda p: int(L.leq[:, p].sum()))
    for r in range(1, len(si) + 1):
        for combo in itertools.combinations(si, r):
            if all(L.leq[a, b] for a, b in zip(combo, combo[1:])):
                yield combo


def property_checks(L: FiniteLattice) -> list[Check]:
    rows = classify_all(L)
    lab = L.labels
    si = [r.element for r in rows if r.strongly_irreducible]
    total = is_total_order(L)
    out = [
        _check("total_order_si", [("lattice", all(r.strongly_irreducible for r in rows) == total)]),
        _check("total_order_sh", [("lattice", all(r.strongly_hollow for r in rows) == total)]),
        _check(
            "characterization",
            [(lab[p], characterization_report(L, p).consistent) for p in range(L.size) if omega(L, p)],
        ),
    ]

    dich = []
    for p in si:
        try:
            structure_dichotomy(L, p)
            dich.append((lab[p], True))
        except LatticeError:
            dich.append((lab[p], False))
    out.append(_check("dichotomy", dich))

    out.append(_check(
        "complete_flags",
        [
            (r.label, r.completely_strongly_irreducible == r.strongly_irreducible
             and r.completely_irreducible == r.irreducible)
            for r in rows
        ],
    ))
    if is_distributive(L):
        out.append(_check("distributive_irreducible_is_si", [(r.label, r.irreducible == r.strongly_irreducible) for r in rows]))
    out.append(_check("si_weakly_distributive", [(lab[p], is_weakly_meet_distributive(L, p)) for p in si]))
    out.append(_check(
        "chain_meets",
        [("/".join(lab[p] for p in c), is_strongly_irreducible(L, L.meet_all(c))) for c in si_chains(L, si)],
    ))

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", EmptySpectrum)
        for kind, build in (("closed", closed_basis), ("open", open_basis)):
            v = build(L).verification
            out.append(Check(f"topology_{kind}", v.passed, v.pair_checks, v.counterexamples))

    if is_modular(L):
        ko = strong_kuros_ore_check(L)
        out.append(Check("strong_kuros_ore", ko.unique, len(ko.representations),
                         [] if ko.counterexample is None else [[lab[p] for p in ko.counterexample]]))
    return out
