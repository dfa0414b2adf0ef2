"""Zariski-style topologies on the strongly irreducible and strongly hollow spectra.

Closed basis on X ⊆ SI(L) ∖ {top}:  V(a) = {p ∈ X | a <= p}
Open basis on X ⊆ SH(L) ∖ {bottom}: χ(a) = {p ∈ X | p ≰ a}

Basis sets are stored as packed bit rows, one row per lattice element.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .classify import sh_elements, si_elements
from .errors import EmptySpectrum, SpectrumNotSH, SpectrumNotSI
from .lattice import FiniteLattice, dual

MAX_REPORTED = 20


def si_spectrum(L: FiniteLattice) -> list[int]:
    X = [p for p in si_elements(L) if p != L.top]
    if not X:
        warnings.warn("no strongly irreducible element below top", EmptySpectrum, stacklevel=2)
    return X


def sh_spectrum(L: FiniteLattice) -> list[int]:
    X = [p for p in sh_elements(L) if p != L.bottom]
    if not X:
        warnings.warn("no strongly hollow element above bottom", EmptySpectrum, stacklevel=2)
    return X


@dataclass
class TopologyReport:
    passed: bool
    pair_checks: int
    counterexamples: list = field(default_factory=list)
    violations: int = 0

    def to_dict(self):
        return {
            "passed": self.passed,
            "pair_checks": self.pair_checks,
            "violations": self.violations,
            "counterexamples": self.counterexamples,
        }


@dataclass
class TopologyBasis:
    lattice: FiniteLattice
    spectrum: list
    kind: str  # "closed" or "open"
    bits: np.ndarray  # n x ceil(|X|/8) packed membership rows
    verification: TopologyReport | None = None

    def members(self, a) -> list[int]:
        """Spectrum elements in the basis set of lattice element a."""
        row = np.unpackbits(self.bits[a], count=len(self.spectrum)).astype(bool)
        return [self.spectrum[i] for i in np.flatnonzero(row)]

    @property
    def sets(self) -> dict:
        return {a: self.members(a) for a in range(self.lattice.size)}

    def to_dict(self):
        L = self.lattice
        return {
            "spectrum": [L.labels[p] for p in self.spectrum],
            "kind": self.kind,
            "sets": {L.labels[a]: [L.labels[p] for p in self.members(a)] for a in range(L.size)},
            "verified": bool(self.verification and self.verification.passed),
        }


def _membership(L, X, kind):
    X = np.asarray(X, dtype=np.intp)
    if kind == "closed":
        rows = L.leq[:, X]
    else:
        rows = ~L.leq[X, :].T
    return np.packbits(rows, axis=1)


def _check_spectrum(L, X, kind):
    X = sorted(L.index(x) for x in X)
    if len(set(X)) != len(X):
        raise ValueError("spectrum has repeated points")
    if kind == "closed":
        bad = [p for p in X if p == L.top or p not in set(si_elements(L))]
        if bad:
            raise SpectrumNotSI(f"not strongly irreducible below top: {[L.labels[p] for p in bad]}")
    else:
        bad = [p for p in X if p == L.bottom or p not in set(sh_elements(L))]
        if bad:
            raise SpectrumNotSH(f"not strongly hollow above bottom: {[L.labels[p] for p in bad]}")
    return X


def closed_basis(L: FiniteLattice, X=None) -> TopologyBasis:
    """V-sets on the strongly irreducible spectrum, verified on construction."""
    X = si_spectrum(L) if X is None else _check_spectrum(L, X, "closed")
    basis = TopologyBasis(L, list(X), "closed", _membership(L, X, "closed"))
    basis.verification = verify_topology(basis)
    return basis


def open_basis(L: FiniteLattice, X=None) -> TopologyBasis:
    """χ-sets on the strongly hollow spectrum, verified on construction."""
    X = sh_spectrum(L) if X is None else _check_spectrum(L, X, "open")
    basis = TopologyBasis(L, list(X), "open", _membership(L, X, "open"))
    basis.verification = verify_topology(basis)
    return basis


def verify_topology(basis: TopologyBasis) -> TopologyReport:
    """Re-check every basis law from the stored sets alone.

    S(bottom) = X, S(top) = ∅, S(a) ∪ S(b) = S(a ∧ b) and S(a) ∩ S(b) = S(a ∨ b)
    for S = V or χ. Pairs are ordered, so a lattice of n elements gives n² pair checks.
    """
    L, B = basis.lattice, basis.bits
    full = np.packbits(np.ones(len(basis.spectrum), dtype=bool))
    empty = np.zeros_like(full)
    bad = []

    # both kinds send bottom to X, top to ∅, meets to unions and joins to intersections
    whole, nothing = L.bottom, L.top
    if not np.array_equal(B[whole], full):
        bad.append({"law": "whole space", "a": L.labels[whole]})
    if not np.array_equal(B[nothing], empty):
        bad.append({"law": "empty set", "a": L.labels[nothing]})

    pairs = 0
    for a in range(L.size):
        laws = (
            ("union", B[a] | B, L.meet[a]),
            ("intersection", B[a] & B, L.join[a]),
        )
        for law, got, via in laws:
            wrong = np.flatnonzero((got != B[via]).any(axis=1))
            for b in wrong:
                bad.append({"law": law, "a": L.labels[a], "b": L.labels[b]})
        pairs += L.size
    return TopologyReport(not bad, pairs, bad[:MAX_REPORTED], len(bad))


def complement_in_spectrum(basis: TopologyBasis) -> np.ndarray:
    """Packed rows of X ∖ S for every basis set S."""
    full = np.packbits(np.ones(len(basis.spectrum), dtype=bool))
    return basis.bits ^ full


def dual_closed_basis(L: FiniteLattice, X) -> TopologyBasis:
    """closed_basis on dual(L) for the same spectrum; its complements are the χ-sets of L."""
    return closed_basis(dual(L), X)
