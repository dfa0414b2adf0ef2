"""Element-level properties: (strong, complete) irreducibility, waists, Ω-sets,
pseudo-complements, weak distributivity, and their duals (hollow notions).

Every function accepts a FiniteLattice or an IntervalView. Elements passed to an
IntervalView are parent indices; returned elements are parent indices too.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from . import config
from .errors import (
    EmptyInput,
    NotAssociative,
    NotComparable,
    NotGenerating,
    NotMonotone,
    NotStronglyIrreducible,
    NotSubMeet,
    VerificationError,
)
from .lattice import FiniteLattice, IntervalView, dual, interval


def _ctx(L):
    if isinstance(L, IntervalView):
        return L.lattice, L.to_local, L.to_parent
    return L, int, int


def _resolve(L, *elements):
    lat, loc, back = _ctx(L)
    if isinstance(L, IntervalView):
        return lat, [loc(L.parent.index(e)) for e in elements], back
    return lat, [lat.index(e) for e in elements], back


# Definition 1 ---------------------------------------------------------------


def _strongly_irreducible(L: FiniteLattice, p: int) -> bool:
    out = np.flatnonzero(~L.leq[:, p])
    return not L.leq[L.meet[np.ix_(out, out)], p].any()


def _irreducible(L: FiniteLattice, p: int) -> bool:
    above = np.flatnonzero(L.leq[p, :] & ~L.leq[:, p])
    return not L.leq[L.meet[np.ix_(above, above)], p].any()


def is_irreducible(L, p) -> bool:
    """For a, b >= p: a ∧ b <= p forces a <= p or b <= p."""
    lat, (p,), _ = _resolve(L, p)
    return _irreducible(lat, p)


def is_strongly_irreducible(L, p) -> bool:
    """For all a, b: a ∧ b <= p forces a <= p or b <= p."""
    lat, (p,), _ = _resolve(L, p)
    return _strongly_irreducible(lat, p)


def is_hollow(L, p) -> bool:
    """Irreducible in the dual lattice."""
    lat, (p,), _ = _resolve(L, p)
    return _irreducible(dual(lat), p)


def is_strongly_hollow(L, p) -> bool:
    """Strongly irreducible in the dual lattice: p <= a ∨ b forces p <= a or p <= b."""
    lat, (p,), _ = _resolve(L, p)
    return _strongly_irreducible(dual(lat), p)


def generates(L, gens) -> bool:
    """True when every element is the join of the generators below it."""
    lat, gens, _ = _resolve(L, *gens)
    g = np.array(sorted(set(gens)), dtype=np.intp)
    for x in range(lat.size):
        below = g[lat.leq[g, x]]
        if lat.join_all(below) != x:
            return False
    return True


def is_strongly_irreducible_via_gens(L, p, gens) -> bool:
    """Strong irreducibility of p checked only on pairs drawn from a join-generating set."""
    lat, (p, *gens), _ = _resolve(L, p, *gens)
    if not generates(lat, gens):
        raise NotGenerating("not every element is a join of the given generators")
    g = np.array(sorted(set(gens)), dtype=np.intp)
    out = g[~lat.leq[g, p]]
    return not lat.leq[lat.meet[np.ix_(out, out)], p].any()


# complete versions ----------------------------------------------------------


def _reachable_meets(L, pool, bound):
    """All meets of non-empty subsets of ``pool`` with at most ``bound`` elements."""
    pool = np.asarray(pool, dtype=np.intp)
    reached = np.unique(pool)
    frontier = reached
    for _ in range(bound - 1):
        if len(frontier) == 0:
            break
        new = np.unique(L.meet[np.ix_(frontier, pool)])
        frontier = np.setdiff1d(new, reached)
        reached = np.union1d(reached, new)
    return reached


def _complete_check(L, p, pool, bound):
    # a subset with a member below p never violates; only pool = {a : a ≰ p} matters,
    # and each subset has the same meet as its antichain of minimal members
    if len(pool) == 0:
        return True
    return not L.leq[_reachable_meets(L, pool, bound), p].any()


def is_completely_strongly_irreducible(L, p, bound=None) -> bool:
    """⋀A <= p forces some a in A below p, for every non-empty A.

    In a finite lattice every element is cocompact, so this coincides with strong
    irreducibility; the bounded subset search is kept as an independent cross-check.
    """
    lat, (p,), _ = _resolve(L, p)
    bound = config.COMPLETE_SUBSET_BOUND if bound is None else bound
    answer = _strongly_irreducible(lat, p)
    pool = np.flatnonzero(~lat.leq[:, p])
    checked = _complete_check(lat, p, pool, bound)
    if checked != answer and (bound >= 2 or answer):
        raise VerificationError(f"bounded subset check disagrees at element {p}")
    return answer


def is_completely_irreducible(L, p, bound=None) -> bool:
    """As above, restricted to subsets of elements above p."""
    lat, (p,), _ = _resolve(L, p)
    bound = config.COMPLETE_SUBSET_BOUND if bound is None else bound
    answer = _irreducible(lat, p)
    pool = np.flatnonzero(lat.leq[p, :] & ~lat.leq[:, p])
    checked = _complete_check(lat, p, pool, bound)
    if checked != answer and (bound >= 2 or answer):
        raise VerificationError(f"bounded subset check disagrees at element {p}")
    return answer


def is_completely_hollow(L, p, bound=None) -> bool:
    lat, (p,), _ = _resolve(L, p)
    return is_completely_irreducible(dual(lat), p, bound)


def is_completely_strongly_hollow(L, p, bound=None) -> bool:
    lat, (p,), _ = _resolve(L, p)
    return is_completely_strongly_irreducible(dual(lat), p, bound)


# waists, Ω, pseudo-complements ---------------------------------------------


def is_waist(L, p) -> bool:
    lat, (p,), _ = _resolve(L, p)
    return bool((lat.leq[:, p] | lat.leq[p, :]).all())


def _omega(L, elements):
    zero = L.bottom
    ok = np.ones(L.size, dtype=bool)
    for a in elements:
        ok &= L.meet[a] == zero
    ok[zero] = False
    return np.flatnonzero(ok)


def omega(L, A) -> list[int]:
    """Ω(A): non-bottom x with a ∧ x = bottom for every a in A."""
    A = list(A) if not isinstance(A, (int, np.integer, str)) else [A]
    if not A:
        raise EmptyInput("Ω needs a non-empty set")
    lat, A, back = _resolve(L, *A)
    return [back(int(x)) for x in _omega(lat, A)]


def is_essential(L, p) -> bool:
    lat, (p,), _ = _resolve(L, p)
    return len(_omega(lat, [p])) == 0


class PseudoComplement(NamedTuple):
    element: Optional[int]
    maximals: list


def _pseudo_complement(L, a):
    zs = np.flatnonzero(L.meet[a] == L.bottom)
    sub = L.leq[np.ix_(zs, zs)]
    # z is maximal iff nothing else in zs lies strictly above it
    maximal = zs[(sub.sum(axis=1) == 1)]
    maximals = [int(m) for m in maximal]
    return PseudoComplement(maximals[0] if len(maximals) == 1 else None, maximals)


def pseudo_complement(L, a) -> PseudoComplement:
    """Greatest x with a ∧ x = bottom, or None together with the maximal such x."""
    lat, (a,), back = _resolve(L, a)
    pc = _pseudo_complement(lat, a)
    return PseudoComplement(
        None if pc.element is None else back(pc.element), [back(m) for m in pc.maximals]
    )


def _is_pc_of(L, p, q):
    return _pseudo_complement(L, q).element == p


def _uniform_interval(L, a, b):
    """a is irreducible inside [a, b]."""
    mid = np.flatnonzero(L.leq[a, :] & L.leq[:, b])
    mid = mid[mid != a]
    return not (L.meet[np.ix_(mid, mid)] == a).any()


def is_uniform_interval(L, a, b) -> bool:
    lat, (a, b), _ = _resolve(L, a, b)
    if not lat.leq[a, b]:
        raise NotComparable(f"{lat.labels[a]} is not below {lat.labels[b]}")
    return _uniform_interval(lat, a, b)


def _weakly_meet_distributive(L, p):
    xs, ys = np.nonzero(L.meet == L.bottom)
    jx, jy = L.join[xs, p], L.join[ys, p]
    return bool((L.meet[jx, jy] == p).all())


def is_weakly_meet_distributive(L, p) -> bool:
    """x ∧ y = bottom implies p = (x ∨ p) ∧ (y ∨ p)."""
    lat, (p,), _ = _resolve(L, p)
    return _weakly_meet_distributive(lat, p)


def is_weakly_join_distributive(L, p) -> bool:
    """x ∨ y = top implies p = (x ∧ p) ∨ (y ∧ p)."""
    lat, (p,), _ = _resolve(L, p)
    return _weakly_meet_distributive(dual(lat), p)


def is_small(L, p) -> bool:
    """No proper q has p ∨ q = top (the dual of being essential)."""
    lat, (p,), _ = _resolve(L, p)
    return len(_omega(dual(lat), [p])) == 0


def supplements(L, q) -> list[int]:
    """Minimal elements x with x ∨ q = top."""
    lat, (q,), back = _resolve(L, q)
    return [back(m) for m in _pseudo_complement(dual(lat), q).maximals]


# characterisation ------------------------------------------------------------


@dataclass
class CharacterizationReport:
    element: int
    omega_nonempty: bool
    cond_a: bool
    cond_a_prime: bool
    cond_b: bool
    cond_c: bool
    cond_d: bool
    cond_e: bool
    witness_q: Optional[int] = None
    uniform_q: list = field(default_factory=list)

    @property
    def flags(self):
        return (self.cond_a, self.cond_a_prime, self.cond_b, self.cond_c, self.cond_d, self.cond_e)

    @property
    def consistent(self) -> bool:
        return not self.omega_nonempty or len(set(self.flags)) == 1

    def to_dict(self):
        d = asdict(self)
        d["consistent"] = self.consistent
        return d


def _characterize(L, p):
    om = _omega(L, [p])
    outside = np.flatnonzero(~L.leq[:, p])

    cond_a = _strongly_irreducible(L, p)

    m = L.meet[np.ix_(outside, outside)]
    cond_a_prime = not L.leq[m, p].any()

    in_omega = np.zeros(L.size, dtype=bool)
    in_omega[om] = True
    closed = bool(in_omega[L.meet[np.ix_(om, om)]].all())
    # every a outside [0, p] bounds some y in Ω(p) from above
    covered = all(L.leq[om, a].any() for a in outside)
    cond_b = closed and covered

    def good(q):
        return _is_pc_of(L, p, q) and _uniform_interval(L, L.bottom, q)

    witness = next((q for q in range(L.size) if good(q)), None)
    cond_c = witness is not None
    uniform_q = [int(q) for q in om if good(q)]
    cond_d = len(uniform_q) == len(om)

    cond_e = _irreducible(L, p) and _weakly_meet_distributive(L, p)
    return CharacterizationReport(
        p, len(om) > 0, cond_a, cond_a_prime, cond_b, cond_c, cond_d, cond_e, witness, uniform_q
    )


def characterization_report(L, p) -> CharacterizationReport:
    """Evaluate the six equivalent conditions for strong irreducibility of p.

    The flags are only required to agree when Ω(p) is non-empty.
    """
    lat, (p,), back = _resolve(L, p)
    return _remap(_characterize(lat, p), back)


def dual_characterization_report(L, p) -> CharacterizationReport:
    """The same conditions in the dual lattice; Ω there is {q ≠ top | p ∨ q = top}."""
    lat, (p,), back = _resolve(L, p)
    return _remap(_characterize(dual(lat), p), back)


def _remap(r, back):
    r.element = back(r.element)
    r.witness_q = None if r.witness_q is None else back(r.witness_q)
    r.uniform_q = [back(q) for q in r.uniform_q]
    return r


@dataclass(frozen=True)
class Dichotomy:
    kind: str  # "witness" or "waist"
    element: int
    p_prime: Optional[int] = None
    q: Optional[int] = None


def structure_dichotomy(L, p) -> Dichotomy:
    """For strongly irreducible p: either p′ < p and q such that p is the
    pseudo-complement of q inside [p′, top] with [p′, q] uniform, or p is a waist."""
    lat, (p,), back = _resolve(L, p)
    if not _strongly_irreducible(lat, p):
        raise NotStronglyIrreducible(f"{lat.labels[p]} is not strongly irreducible")
    for pp in range(lat.size):
        if pp == p or not lat.leq[pp, p]:
            continue
        view = interval(lat, pp, lat.top)
        sub = view.lattice
        lp = view.to_local(p)
        om = _omega(sub, [lp])
        if len(om) == 0:
            continue
        for q in om:
            if _is_pc_of(sub, lp, q) and _uniform_interval(sub, sub.bottom, q):
                return Dichotomy("witness", back(p), back(pp), back(view.to_parent(int(q))))
        raise VerificationError(f"no uniform witness for {lat.labels[p]} above {lat.labels[pp]}")
    if not bool((lat.leq[:, p] | lat.leq[p, :]).all()):
        raise VerificationError(f"{lat.labels[p]} is essential everywhere but not a waist")
    return Dichotomy("waist", back(p))


def minimal_si_above(L, a) -> list[int]:
    lat, (a,), back = _resolve(L, a)
    cands = [x for x in range(lat.size) if lat.leq[a, x] and _strongly_irreducible(lat, x)]
    return [back(x) for x in cands if not any(y != x and lat.leq[y, x] for y in cands)]


# partially ordered groupoids -------------------------------------------------


@dataclass(frozen=True)
class GroupoidTable:
    op: np.ndarray

    def check(self, L: FiniteLattice):
        op = np.asarray(self.op, dtype=np.intp)
        n = L.size
        if op.shape != (n, n):
            raise NotMonotone(f"product table must be {n}x{n}")
        for a in range(n):
            for b in np.flatnonzero(L.leq[a]):
                if not (L.leq[op[a], op[b]].all() and L.leq[op[:, a], op[:, b]].all()):
                    raise NotMonotone(f"product is not monotone at {a} <= {b}")
        if not np.array_equal(_assoc_lhs(op), _assoc_rhs(op)):
            raise NotAssociative("product is not associative")
        if not L.leq[op, L.meet].all():
            raise NotSubMeet("a * b <= a ∧ b fails")


def _assoc_lhs(op):
    # (a * b) * c
    return op[op[:, :, None], np.arange(op.shape[0])[None, None, :]]


def _assoc_rhs(op):
    # a * (b * c)
    return op[np.arange(op.shape[0])[:, None, None], op[None, :, :]]


def prime_elements(L: FiniteLattice, g: GroupoidTable) -> list[int]:
    """p with a * b <= p forcing a <= p or b <= p; each is checked to be strongly irreducible."""
    g.check(L)
    op = np.asarray(g.op, dtype=np.intp)
    primes = []
    for p in range(L.size):
        out = np.flatnonzero(~L.leq[:, p])
        if not L.leq[op[np.ix_(out, out)], p].any():
            primes.append(p)
    for p in primes:
        if not _strongly_irreducible(L, p):
            raise VerificationError(f"prime element {L.labels[p]} is not strongly irreducible")
    return primes


# full profile ----------------------------------------------------------------


@dataclass
class ElementClassification:
    element: int
    label: str
    irreducible: bool
    strongly_irreducible: bool
    completely_irreducible: bool
    completely_strongly_irreducible: bool
    waist: bool
    atom: bool
    coatom: bool
    essential: bool
    weakly_meet_distributive: bool
    weakly_join_distributive: bool
    hollow: bool
    strongly_hollow: bool
    completely_hollow: bool
    completely_strongly_hollow: bool
    omega_size: int

    def to_dict(self):
        return asdict(self)


def classify_all(L) -> list[ElementClassification]:
    lat, _, back = _ctx(L)
    D = dual(lat)
    atoms, coatoms = set(lat.atoms()), set(lat.coatoms())
    rows = []
    for p in range(lat.size):
        rows.append(
            ElementClassification(
                element=back(p),
                label=lat.labels[p],
                irreducible=_irreducible(lat, p),
                strongly_irreducible=_strongly_irreducible(lat, p),
                completely_irreducible=is_completely_irreducible(lat, p),
                completely_strongly_irreducible=is_completely_strongly_irreducible(lat, p),
                waist=bool((lat.leq[:, p] | lat.leq[p, :]).all()),
                atom=p in atoms,
                coatom=p in coatoms,
                essential=len(_omega(lat, [p])) == 0,
                weakly_meet_distributive=_weakly_meet_distributive(lat, p),
                weakly_join_distributive=_weakly_meet_distributive(D, p),
                hollow=_irreducible(D, p),
                strongly_hollow=_strongly_irreducible(D, p),
                completely_hollow=is_completely_irreducible(D, p),
                completely_strongly_hollow=is_completely_strongly_irreducible(D, p),
                omega_size=len(_omega(lat, [p])),
            )
        )
    return rows


def si_elements(L) -> list[int]:
    lat, _, back = _ctx(L)
    return [back(p) for p in range(lat.size) if _strongly_irreducible(lat, p)]


def sh_elements(L) -> list[int]:
    lat, _, back = _ctx(L)
    D = dual(lat)
    return [back(p) for p in range(lat.size) if _strongly_irreducible(D, p)]


def irreducible_elements(L) -> list[int]:
    lat, _, back = _ctx(L)
    return [back(p) for p in range(lat.size) if _irreducible(lat, p)]
