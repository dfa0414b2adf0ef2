"""Finite abelian groups Z_{d1} x ... x Z_{dk}, their subgroup lattices, and the
strongly hollow / hollow subgroups.

Elements are mixed-radix integer codes; a subgroup is a boolean membership mask
over those codes.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np
from sympy import ZZ, Matrix, factorint, isprime
from sympy.matrices.normalforms import invariant_factors as _snf_factors
from sympy.utilities.iterables import partitions

from . import config
from .classify import sh_elements
from .errors import InvalidInput, NotSimple, ParseError, PreconditionFail, SizeLimit, VerificationError
from .lattice import FiniteLattice, check_size


class FiniteAbelianGroup:
    """Z_{d1} x ... x Z_{dk} in the coordinates given; factors equal to 1 are dropped.

    ``invariant_factors`` is the normalised form d1 | d2 | ... | dk.
    """

    def __init__(self, factors=()):
        factors = tuple(int(d) for d in factors)
        if any(d < 1 for d in factors):
            raise InvalidInput("cyclic factors must be positive")
        self.factors = tuple(d for d in factors if d > 1)
        self.order = math.prod(self.factors)
        if self.order > config.MAX_GROUP_ORDER:
            raise SizeLimit(f"group order {self.order} exceeds {config.MAX_GROUP_ORDER}")
        d = np.array(self.factors, dtype=np.int64)
        self._d = d
        # code = sum x_i * stride_i, last coordinate fastest
        self._strides = np.array([math.prod(self.factors[i + 1 :]) for i in range(len(d))], dtype=np.int64)

    @classmethod
    def parse(cls, text: str) -> "FiniteAbelianGroup":
        """``4x9``, ``2x2x3`` or ``1`` for the trivial group."""
        text = text.strip().replace("×", "x")
        if not re.fullmatch(r"\d+(x\d+)*", text):
            raise ParseError(f"cannot parse group {text!r}; expected e.g. 4x9")
        return cls(int(t) for t in text.split("x"))

    def __repr__(self):
        return f"FiniteAbelianGroup({'x'.join(map(str, self.factors)) or '1'})"

    def __eq__(self, other):
        return isinstance(other, FiniteAbelianGroup) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    @property
    def rank(self):
        return len(self.factors)

    @cached_property
    def elementary_divisors(self) -> tuple:
        out = []
        for d in self.factors:
            out += [p**e for p, e in factorint(d).items()]
        return tuple(sorted(out))

    @cached_property
    def invariant_factors(self) -> tuple:
        by_prime = {}
        for q in self.elementary_divisors:
            p = next(iter(factorint(q)))
            by_prime.setdefault(p, []).append(q)
        k = max((len(v) for v in by_prime.values()), default=0)
        out = [1] * k
        for powers in by_prime.values():
            for i, q in enumerate(sorted(powers, reverse=True)):
                out[k - 1 - i] *= q
        return tuple(out)

    def isomorphic(self, other) -> bool:
        return self.invariant_factors == other.invariant_factors

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.factors) if self.factors else 1

    @cached_property
    def primes(self) -> tuple:
        return tuple(sorted(factorint(self.order)))

    # element arithmetic ---------------------------------------------------

    @cached_property
    def coords(self) -> np.ndarray:
        """order x rank array of coordinates, row c is the element with code c."""
        codes = np.arange(self.order, dtype=np.int64)
        if not self.factors:
            return np.zeros((1, 0), dtype=np.int64)
        return (codes[:, None] // self._strides[None, :]) % self._d[None, :]

    def encode(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64) % self._d
        return x @ self._strides

    def code(self, element) -> int:
        if isinstance(element, (int, np.integer)):
            if not 0 <= element < self.order:
                raise InvalidInput(f"element code {element} out of range")
            return int(element)
        element = tuple(element)
        if len(element) != self.rank:
            raise InvalidInput(f"element needs {self.rank} coordinates")
        return int(self.encode(element))

    def add(self, a, b):
        return self.encode(self.coords[a] + self.coords[b])

    def multiple(self, a, m):
        return self.encode(self.coords[a] * m)

    @cached_property
    def element_orders(self) -> np.ndarray:
        if not self.factors:
            return np.ones(1, dtype=np.int64)
        per = self._d[None, :] // np.gcd(self.coords, self._d[None, :])
        return np.lcm.reduce(per, axis=1)

    def cyclic_mask(self, x) -> np.ndarray:
        """Membership mask of the cyclic subgroup <x>."""
        m = np.arange(self.element_orders[x], dtype=np.int64)
        mask = np.zeros(self.order, dtype=bool)
        mask[self.encode(self.coords[x][None, :] * m[:, None])] = True
        return mask

    def in_cyclic(self, g) -> np.ndarray:
        """Boolean vector over all x: is g in <x>."""
        out = np.zeros(self.order, dtype=bool)
        chunk = max(1, 2_000_000 // self.order)
        for start in range(0, self.exponent, chunk):
            m = np.arange(start, min(start + chunk, self.exponent), dtype=np.int64)
            out |= (self.encode(self.coords[:, None, :] * m[None, :, None]) == g).any(axis=1)
        return out

    # subgroups ------------------------------------------------------------

    def subgroup(self, generators=()) -> "Subgroup":
        gens = [self.code(g) for g in generators]
        return Subgroup(self, _span(self, _zero_mask(self), gens), tuple(gens))

    def whole(self) -> "Subgroup":
        return Subgroup(self, np.ones(self.order, dtype=bool), ())

    def trivial(self) -> "Subgroup":
        return Subgroup(self, _zero_mask(self), ())


def _zero_mask(A):
    m = np.zeros(A.order, dtype=bool)
    m[0] = True
    return m


def _add_cyclic(A, mask, g):
    """Mask of H + <g>."""
    hs = np.flatnonzero(mask)
    ms = np.flatnonzero(A.cyclic_mask(g))
    out = np.zeros(A.order, dtype=bool)
    out[A.encode(A.coords[hs][:, None, :] + A.coords[ms][None, :, :]).ravel()] = True
    return out


def _span(A, mask, gens):
    for g in gens:
        if not mask[g]:
            mask = _add_cyclic(A, mask, g)
    return mask


class Subgroup:
    """A subgroup given by its membership mask; equality is by elements."""

    def __init__(self, group: FiniteAbelianGroup, mask, generators=()):
        mask = np.asarray(mask, dtype=bool).copy()
        mask.setflags(write=False)
        self.group = group
        self.mask = mask
        self.generators = tuple(int(g) for g in generators)

    @cached_property
    def key(self) -> bytes:
        return np.packbits(self.mask).tobytes()

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.group == other.group and self.key == other.key

    def __hash__(self):
        return hash((self.group.factors, self.key))

    def __repr__(self):
        return f"Subgroup({self.label}, order={self.order})"

    @property
    def order(self) -> int:
        return int(self.mask.sum())

    def __contains__(self, element) -> bool:
        return bool(self.mask[self.group.code(element)])

    def __le__(self, other):
        return not (self.mask & ~other.mask).any()

    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def __and__(self, other):
        return Subgroup(self.group, self.mask & other.mask)

    def __add__(self, other):
        A = self.group
        return Subgroup(A, _span(A, self.mask.copy(), other.elements()), self.generators + other.generators)

    @cached_property
    def canonical_generators(self) -> tuple:
        """Rows of the Hermite normal form of {v in Z^k : v mod d in H}, trivial rows dropped.

        Pivot i is the least positive i-th coordinate among members whose earlier
        coordinates vanish; entries right of a pivot are reduced below that pivot.
        """
        A = self.group
        d = A.factors
        X = A.coords[self.elements()]
        rows = []
        for i in range(A.rank):
            sub = X[(X[:, :i] == 0).all(axis=1)]
            pos = sub[sub[:, i] > 0]
            if len(pos) == 0:
                row = [0] * A.rank
                row[i] = d[i]
            else:
                row = pos[np.argmin(pos[:, i])].tolist()
            rows.append(row)
        for i in range(A.rank):
            for j in range(i + 1, A.rank):
                q = rows[i][j] // rows[j][j]
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[j])]
        return tuple(tuple(r) for i, r in enumerate(rows) if r[i] != d[i])

    @property
    def label(self) -> str:
        gens = self.canonical_generators
        if not gens:
            return "0"
        if self.group.rank == 1:
            return "<" + ",".join(str(g[0]) for g in gens) + ">"
        return "<" + ",".join("(" + ",".join(map(str, g)) + ")" for g in gens) + ">"

    def is_cyclic(self) -> bool:
        return bool((self.group.element_orders[self.mask] == self.order).any())

    def is_p_subgroup(self) -> bool:
        return len(factorint(self.order)) <= 1

    def isomorphism_type(self) -> FiniteAbelianGroup:
        return subquotient(self, self.group.trivial())


# quotients and Hom -----------------------------------------------------------


def subquotient(X: Subgroup, Y: Subgroup) -> FiniteAbelianGroup:
    """Isomorphism type of X / Y (Y inside X), from the sizes of its p^j-torsion.

    If X/Y has p-part with cyclic exponents e_1..e_r then |(X/Y)[p^j]| = p^(sum min(j, e_i)),
    so successive differences count the factors of exponent at least j.
    """
    if not Y <= X:
        raise InvalidInput("subquotient needs Y inside X")
    A = X.group
    xs = X.elements()
    index = X.order // Y.order
    divisors = []
    for p, e in factorint(index).items():
        logs = [0]
        pj = 1
        while logs[-1] < e:
            pj *= p
            hit = Y.mask[A.multiple(xs, pj)].sum() // Y.order
            logs.append(round(math.log(hit, p)))
        at_least = [logs[j] - logs[j - 1] for j in range(1, len(logs))]
        at_least.append(0)
        for j in range(1, len(at_least)):
            divisors += [p**j] * (at_least[j - 1] - at_least[j])
    return FiniteAbelianGroup(sorted(divisors))


def quotient(A: FiniteAbelianGroup, P: Subgroup) -> FiniteAbelianGroup:
    """A / P, from the Smith normal form of diag(d) stacked on generators of P."""
    if A.rank == 0:
        return FiniteAbelianGroup()
    rows = [[d if i == j else 0 for j in range(A.rank)] for i, d in enumerate(A.factors)]
    rows += [list(r) for r in P.canonical_generators]
    inv = _snf_factors(Matrix(rows), domain=ZZ)
    return FiniteAbelianGroup(int(x) for x in inv)


def hom_count(A: FiniteAbelianGroup, B: FiniteAbelianGroup) -> int:
    """|Hom(A, B)| = product of gcd(d_i, e_j) over any cyclic decompositions."""
    return math.prod(math.gcd(a, b) for a in A.factors for b in B.factors)


def p_component(A: FiniteAbelianGroup, p: int) -> FiniteAbelianGroup:
    return FiniteAbelianGroup(q for q in A.elementary_divisors if q % p == 0)


def is_cyclic(A: FiniteAbelianGroup) -> bool:
    return len(A.invariant_factors) <= 1


def p_component_subgroup(A: FiniteAbelianGroup, p: int) -> Subgroup:
    """Elements of p-power order."""
    pk = p ** factorint(A.exponent).get(p, 0)
    return Subgroup(A, pk % A.element_orders == 0)


# enumeration -----------------------------------------------------------------


def _p_subgroups(A: FiniteAbelianGroup, p: int) -> list[np.ndarray]:
    """All subgroups of the p-component, as masks, by climbing index-p covers."""
    Ap = p_component_subgroup(A, p).mask
    pool = np.flatnonzero(Ap)
    start = _zero_mask(A)
    seen = {np.packbits(start).tobytes(): start}
    layer = [start]
    while layer:
        nxt = []
        for H in layer:
            hs = np.flatnonzero(H)
            # g outside H with p*g in H gives a cover H + <g> of index p
            cand = pool[~H[pool] & H[A.multiple(pool, p)]]
            if len(cand) == 0:
                continue
            steps = A.coords[cand][:, None, :] * np.arange(p)[None, :, None]
            sums = A.encode(steps[:, :, None, :] + A.coords[hs][None, None, :, :])
            masks = np.zeros((len(cand), A.order), dtype=bool)
            masks[np.repeat(np.arange(len(cand)), sums.shape[1] * sums.shape[2]), sums.reshape(len(cand), -1).ravel()] = True
            packed = np.unique(np.packbits(masks, axis=1), axis=0)
            for row in packed:
                k = row.tobytes()
                if k not in seen:
                    m = np.unpackbits(row, count=A.order).astype(bool)
                    seen[k] = m
                    nxt.append(m)
        layer = nxt
    return list(seen.values())


def _gauss_binomial(n, k, p):
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def _conjugate(parts, length):
    return [sum(1 for e in parts if e > i) for i in range(length)]


def _count_p_subgroups(exps, p) -> int:
    """Subgroups of the p-group with cyclic factors p^e, e in ``exps``, without enumerating.

    Sums the number of subgroups of each type mu inside lambda, using the product of
    Gaussian binomials over the columns of the conjugate partitions.
    """
    top = max(exps, default=0)
    lam = _conjugate(exps, top) + [0]

    def columns(i, bound):
        # non-increasing mu'_i..mu'_top with mu'_j <= lambda'_j
        if i == top:
            yield [0]
            return
        for m in range(min(bound, lam[i]) + 1):
            for rest in columns(i + 1, m):
                yield [m] + rest

    total = 0
    for mu in columns(0, lam[0]):
        term = 1
        for i in range(top):
            term *= p ** (mu[i + 1] * (lam[i] - mu[i])) * _gauss_binomial(lam[i] - mu[i + 1], mu[i] - mu[i + 1], p)
        total += term
    return total


def count_subgroups(A: FiniteAbelianGroup) -> int:
    total = 1
    for p in A.primes:
        exps = [factorint(q)[p] for q in A.elementary_divisors if q % p == 0]
        total *= _count_p_subgroups(exps, p)
    return total


def enumerate_subgroups(A: FiniteAbelianGroup, limit: Optional[int] = None) -> list[Subgroup]:
    """Every subgroup once, as direct sums of subgroups of the primary components,
    sorted by order and then by mask."""
    if limit is not None and (total := count_subgroups(A)) > limit:
        raise SizeLimit(f"{A} has {total} subgroups, more than {limit}")
    parts = [_p_subgroups(A, p) for p in A.primes]
    masks = [_zero_mask(A)]
    for comp in parts:
        new = []
        for m in masks:
            ms = np.flatnonzero(m)
            for c in comp:
                cs = np.flatnonzero(c)
                out = np.zeros(A.order, dtype=bool)
                out[A.encode(A.coords[ms][:, None, :] + A.coords[cs][None, :, :]).ravel()] = True
                new.append(out)
        masks = new
    subs = [Subgroup(A, m) for m in masks]
    subs.sort(key=lambda s: (s.order, s.key[::-1]))
    return subs


@dataclass
class SubgroupLattice:
    group: FiniteAbelianGroup
    subgroups: list
    lattice: FiniteLattice

    def index(self, H: Subgroup) -> int:
        return self._pos[H.key]

    @cached_property
    def _pos(self):
        return {s.key: i for i, s in enumerate(self.subgroups)}


def subgroup_lattice(A: FiniteAbelianGroup, limit=None) -> SubgroupLattice:
    """Subgroups under inclusion; labels are canonical generator descriptions."""
    limit = config.MAX_LATTICE_SIZE if limit is None else limit
    subs = enumerate_subgroups(A, limit=limit)
    check_size(len(subs), limit)
    M = np.array([s.mask for s in subs], dtype=np.float32)
    leq = (M @ (1 - M).T) == 0
    L = FiniteLattice.from_leq(leq, [s.label for s in subs], limit=limit)
    return SubgroupLattice(A, subs, L)


# strongly hollow and hollow subgroups -------------------------------------------


def _is_sh_implicit(A, P: Subgroup) -> bool:
    """P is strongly hollow iff P is not inside the sum S_P of all subgroups not containing P.

    Every subgroup is a sum of cyclic ones, so S_P is generated by the x with P not inside <x>.
    """
    if P.order == 1:
        return True
    inside = np.ones(A.order, dtype=bool)
    for g in P.elements():
        inside &= A.in_cyclic(g)
    S = _zero_mask(A)
    for x in np.flatnonzero(~inside):
        if not S[x]:
            S = _add_cyclic(A, S, x)
            if (P.mask <= S).all():
                return False
    return True


def _is_si_implicit(A, P: Subgroup) -> bool:
    """P is strongly irreducible iff the intersection of all <x> with x outside P is not inside P."""
    if P.order == A.order:
        return True
    meet = np.ones(A.order, dtype=bool)
    for x in np.flatnonzero(~P.mask):
        meet &= A.cyclic_mask(x)
    return bool((meet & ~P.mask).any())


def _is_hollow_implicit(A, P: Subgroup) -> bool:
    """P is hollow iff its proper cyclic subgroups do not add up to P."""
    if P.order == 1:
        return True
    S = _zero_mask(A)
    for x in P.elements():
        if A.element_orders[x] < P.order and not S[x]:
            S = _add_cyclic(A, S, x)
    return S.sum() < P.order


def cyclic_subgroups(A: FiniteAbelianGroup) -> list[Subgroup]:
    seen = {}
    for x in range(A.order):
        s = Subgroup(A, A.cyclic_mask(x), (x,))
        seen.setdefault(s.key, s)
    return sorted(seen.values(), key=lambda s: (s.order, s.key[::-1]))


def _characterized_sh(A: FiniteAbelianGroup) -> set:
    """Non-zero P with P a p-group for a prime p whose p-component is cyclic, plus 0."""
    out = {A.trivial()}
    for p in A.primes:
        if is_cyclic(p_component(A, p)):
            Ap = p_component_subgroup(A, p)
            g = int(np.flatnonzero(Ap.mask & (A.element_orders == Ap.order))[0])
            for k in range(int(round(math.log(Ap.order, p))) + 1):
                out.add(A.subgroup([A.multiple(g, p**k)]))
    return out


@dataclass
class StronglyHollowReport:
    group: FiniteAbelianGroup
    route: str  # "table" or "implicit"
    subgroups: list
    characterized: list
    agree: bool

    @property
    def nonzero(self) -> list:
        return [s for s in self.subgroups if s.order > 1]


def strongly_hollow_subgroups(A: FiniteAbelianGroup, route=None) -> StronglyHollowReport:
    """Strongly hollow subgroups from the subgroup lattice, checked against the
    p-group / cyclic p-component description.

    route "table" classifies the full lattice through its dual; "implicit" tests each
    cyclic subgroup directly (a non-cyclic P lies in no cyclic subgroup, so it sits
    inside the sum of all subgroups avoiding it and is never strongly hollow).
    By default tables are used up to SUBGROUP_TABLE_ROUTE_MAX subgroups.
    """
    if route is None:
        route = "table" if count_subgroups(A) <= config.SUBGROUP_TABLE_ROUTE_MAX else "implicit"
    if route == "table":
        SL = subgroup_lattice(A)
        found = [SL.subgroups[i] for i in sh_elements(SL.lattice)]
    elif route == "implicit":
        found = [P for P in cyclic_subgroups(A) if _is_sh_implicit(A, P)]
    else:
        raise InvalidInput(f"unknown route {route!r}")
    characterized = sorted(_characterized_sh(A), key=lambda s: (s.order, s.key[::-1]))
    agree = set(found) == set(characterized)
    if not agree:
        raise VerificationError(f"lattice and p-component descriptions disagree for {A}")
    return StronglyHollowReport(A, route, found, characterized, agree)


def hollow_subgroups(A: FiniteAbelianGroup, route=None) -> list[Subgroup]:
    """Subgroups that are hollow as groups; checked to be exactly the cyclic p-subgroups."""
    if route is None:
        route = "table" if count_subgroups(A) <= config.SUBGROUP_TABLE_ROUTE_MAX else "implicit"
    if route == "table":
        SL = subgroup_lattice(A)
        L = SL.lattice
        # hollow in a finite lattice: at most one lower cover
        found = [SL.subgroups[i] for i in range(L.size) if len(L.lower_covers(i)) <= 1]
    else:
        found = [P for P in enumerate_subgroups(A) if _is_hollow_implicit(A, P)]
    expected = {P for P in cyclic_subgroups(A) if P.is_p_subgroup()}
    if set(found) != expected:
        raise VerificationError(f"hollow subgroups of {A} are not the cyclic p-subgroups")
    return found


def is_strongly_hollow_subgroup(A, P: Subgroup) -> bool:
    return _is_sh_implicit(A, P)


def is_strongly_irreducible_subgroup(A, P: Subgroup) -> bool:
    return _is_si_implicit(A, P)


# module-level checks -------------------------------------------------------------


@dataclass
class StephensonReport:
    passed: bool
    checked: int
    violations: list = field(default_factory=list)


def stephenson_check(A: FiniteAbelianGroup, P: Subgroup, subgroups=None, require=True) -> StephensonReport:
    """|Hom(P/(P∩Q), Q/(P∩Q))| = 1 for every subgroup Q.

    With require=True, P must be strongly hollow or strongly irreducible.
    """
    if require and not (_is_sh_implicit(A, P) or _is_si_implicit(A, P)):
        raise PreconditionFail(f"{P.label} is neither strongly hollow nor strongly irreducible")
    subgroups = enumerate_subgroups(A) if subgroups is None else subgroups
    bad = []
    for Q in subgroups:
        I = P & Q
        h = hom_count(subquotient(P, I), subquotient(Q, I))
        if h != 1:
            bad.append({"Q": Q.label, "hom_count": h})
    return StephensonReport(not bad, len(subgroups), bad)


@dataclass
class SimpleSummandReport:
    q: int
    D: FiniteAbelianGroup
    cond_a: bool  # E strongly hollow in E + D
    cond_b: bool  # every subgroup contains E or lies in D
    cond_c: bool  # ann(E) + ann(D) is the whole ring
    cond_d: bool  # ann(D) not inside ann(E)
    hom_condition: bool  # Hom(E, D/B) = 0 for every subgroup B of D

    @property
    def agree(self):
        return len({self.cond_a, self.cond_b, self.cond_c, self.cond_d, self.hom_condition}) == 1


def simple_summand_check(q: int, D: FiniteAbelianGroup) -> SimpleSummandReport:
    """Conditions on the simple summand E = Z_q of M = E + D; all must agree."""
    if not isprime(q):
        raise NotSimple(f"Z_{q} is not simple")
    M = FiniteAbelianGroup((q,) + D.factors)
    E = M.subgroup([(1,) + (0,) * D.rank])
    Dsub = Subgroup(M, M.coords[:, 0] == 0)
    subs = enumerate_subgroups(M)
    a = _is_sh_implicit(M, E)
    b = all(E <= H or H <= Dsub for H in subs)
    expD = D.exponent
    # annihilators as exponents: ann(E) = qZ, ann(D) = exp(D)Z
    c = math.gcd(q, expD) == 1
    d = expD % q != 0
    Esub_type = FiniteAbelianGroup((q,))
    hom = all(hom_count(Esub_type, subquotient(Dsub, B)) == 1 for B in subs if B <= Dsub)
    r = SimpleSummandReport(q, D, a, b, c, d, hom)
    if not r.agree:
        raise VerificationError(f"simple summand conditions disagree for Z_{q} + {D}")
    return r


# catalogue -------------------------------------------------------------------------


def abelian_groups_of_order(n: int) -> list[FiniteAbelianGroup]:
    """One group per isomorphism class, in invariant-factor form."""
    per_prime = []
    for p, e in sorted(factorint(n).items()):
        per_prime.append([
            sorted((p**k for k, m in part.items() for _ in range(m)), reverse=True)
            for part in partitions(e)
        ])
    out = []
    for combo in itertools.product(*per_prime):
        k = max((len(c) for c in combo), default=0)
        inv = [1] * k
        for powers in combo:
            for i, q in enumerate(powers):
                inv[k - 1 - i] *= q
        out.append(FiniteAbelianGroup(inv))
    return out


def abelian_groups_up_to(n: int) -> list[FiniteAbelianGroup]:
    return [A for m in range(1, n + 1) for A in abelian_groups_of_order(m)]
