"""Bounded finite lattices stored as order matrix plus meet/join tables.

Elements are the dense indices ``0..n-1``; labels are for display only.
"""
from __future__ import annotations

import graphlib
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import config
from .errors import CycleDetected, InvalidInput, NotALattice, NotComparable, SizeLimit


def _frozen(arr):
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


def check_size(n, limit=None):
    limit = config.MAX_LATTICE_SIZE if limit is None else limit
    if n > limit:
        raise SizeLimit(f"lattice with {n} elements exceeds the limit of {limit}")


class FiniteLattice:
    """Immutable bounded finite lattice.

    ``leq[a, b]`` is True iff a <= b; ``meet`` and ``join`` are n x n index tables.
    """

    def __init__(self, labels: Sequence[str], leq, meet, join):
        n = len(labels)
        if n < 1:
            raise InvalidInput("a lattice needs at least one element")
        labels = [str(x) for x in labels]
        if len(set(labels)) != n:
            raise InvalidInput("labels must be unique")
        leq = np.asarray(leq, dtype=bool)
        meet = np.asarray(meet, dtype=np.intp)
        join = np.asarray(join, dtype=np.intp)
        for name, arr in (("leq", leq), ("meet", meet), ("join", join)):
            if arr.shape != (n, n):
                raise InvalidInput(f"{name} must have shape {(n, n)}, got {arr.shape}")
        self.labels = tuple(labels)
        self.leq = _frozen(leq)
        self.meet = _frozen(meet)
        self.join = _frozen(join)
        self.size = n
        self.bottom = int(_extreme(self.leq, lower=True))
        self.top = int(_extreme(self.leq, lower=False))
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    # construction -----------------------------------------------------------

    @classmethod
    def from_leq(cls, leq, labels=None, limit=None) -> "FiniteLattice":
        """Compute meet/join tables from an order matrix; raise NotALattice on failure."""
        leq = np.asarray(leq, dtype=bool)
        n = leq.shape[0]
        check_size(n, limit)
        if leq.shape != (n, n):
            raise InvalidInput("order matrix must be square")
        if labels is None:
            labels = [str(i) for i in range(n)]
        _check_partial_order(leq)
        meet = _bound_table(leq)
        join = _bound_table(leq.T)
        return cls(labels, leq, meet, join)

    # basic queries ----------------------------------------------------------

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"FiniteLattice(n={self.size}, bottom={self.labels[self.bottom]!r}, top={self.labels[self.top]!r})"

    def __eq__(self, other):
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        return (
            self.labels == other.labels
            and np.array_equal(self.leq, other.leq)
            and np.array_equal(self.meet, other.meet)
            and np.array_equal(self.join, other.join)
        )

    __hash__ = None

    def index(self, label) -> int:
        """Element index for a label (ints pass through)."""
        if isinstance(label, (int, np.integer)) and not isinstance(label, bool):
            if not 0 <= label < self.size:
                raise InvalidInput(f"element {label} out of range")
            return int(label)
        try:
            return self._index[str(label)]
        except KeyError:
            raise InvalidInput(f"no element labelled {label!r}") from None

    def label(self, i) -> str:
        return self.labels[i]

    def le(self, a, b) -> bool:
        return bool(self.leq[a, b])

    def lt(self, a, b) -> bool:
        return a != b and bool(self.leq[a, b])

    def comparable(self, a, b) -> bool:
        return bool(self.leq[a, b] or self.leq[b, a])

    def meet_all(self, elements: Iterable[int]) -> int:
        out = self.top
        for x in elements:
            out = self.meet[out, x]
        return int(out)

    def join_all(self, elements: Iterable[int]) -> int:
        out = self.bottom
        for x in elements:
            out = self.join[out, x]
        return int(out)

    def down(self, a) -> np.ndarray:
        return np.flatnonzero(self.leq[:, a])

    def up(self, a) -> np.ndarray:
        return np.flatnonzero(self.leq[a, :])

    @cached_property
    def cover_matrix(self) -> np.ndarray:
        strict = self.leq & ~np.eye(self.size, dtype=bool)
        # a < c < b for some c  <=>  (strict @ strict)[a, b] > 0
        s = strict.astype(np.float32)
        via = (s @ s) > 0
        return _frozen(strict & ~via)

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges (x, y) with x covered by y, in index order."""
        xs, ys = np.nonzero(self.cover_matrix)
        return [(int(x), int(y)) for x, y in zip(xs, ys)]

    def upper_covers(self, a) -> list[int]:
        return np.flatnonzero(self.cover_matrix[a]).tolist()

    def lower_covers(self, a) -> list[int]:
        return np.flatnonzero(self.cover_matrix[:, a]).tolist()

    def atoms(self) -> list[int]:
        return self.upper_covers(self.bottom) if self.size > 1 else []

    def coatoms(self) -> list[int]:
        return self.lower_covers(self.top) if self.size > 1 else []

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "covers": [list(c) for c in self.covers()]}

    def validate(self):
        """Brute-force check of every lattice invariant; raises NotALattice."""
        _check_partial_order(self.leq)
        if not np.array_equal(self.meet, _bound_table(self.leq)):
            raise NotALattice("meet table disagrees with greatest lower bounds")
        if not np.array_equal(self.join, _bound_table(self.leq.T)):
            raise NotALattice("join table disagrees with least upper bounds")
        return True


def _extreme(leq, lower):
    hits = np.flatnonzero(leq.all(axis=1) if lower else leq.all(axis=0))
    if len(hits) != 1:
        raise NotALattice("no unique bottom" if lower else "no unique top")
    return hits[0]


def _check_partial_order(leq):
    n = leq.shape[0]
    if not leq.diagonal().all():
        raise NotALattice("order relation is not reflexive")
    if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
        raise NotALattice("order relation is not antisymmetric")
    lf = leq.astype(np.float32)
    if ((lf @ lf > 0) & ~leq).any():
        raise NotALattice("order relation is not transitive")


def _bound_table(leq):
    """Greatest-lower-bound table for the order ``leq`` (pass ``leq.T`` for joins)."""
    n = leq.shape[0]
    down_size = leq.sum(axis=0)  # number of x <= g
    table = np.empty((n, n), dtype=np.intp)
    for a in range(n):
        lower = leq[:, a][:, None] & leq  # lower[x, b]: x <= a and x <= b
        count = lower.sum(axis=0)
        # g is the glb iff it is a lower bound and everything below g is all of them
        cand = lower & (down_size[:, None] == count[None, :])
        hits = cand.sum(axis=0)
        if (hits != 1).any():
            b = int(np.flatnonzero(hits != 1)[0])
            raise NotALattice(f"elements {a} and {b} have no unique bound")
        table[a] = cand.argmax(axis=0)
    return table


def build_from_covers(n: int, covers, labels=None, limit=None) -> FiniteLattice:
    """Lattice whose order is the reflexive-transitive closure of ``covers``.

    ``covers`` holds pairs (x, y) meaning x is covered by y.
    """
    if n < 1:
        raise InvalidInput("n must be at least 1")
    check_size(n, limit)
    if labels is not None and len(labels) != n:
        raise InvalidInput(f"expected {n} labels, got {len(labels)}")
    seen = set()
    deps = {i: set() for i in range(n)}
    for pair in covers:
        x, y = (int(v) for v in pair)
        if not (0 <= x < n and 0 <= y < n):
            raise InvalidInput(f"cover {(x, y)} out of range")
        if (x, y) in seen:
            warnings.warn(f"duplicate cover {(x, y)} ignored", stacklevel=2)
            continue
        if x == y:
            raise CycleDetected(f"self-loop at {x}")
        seen.add((x, y))
        deps[y].add(x)
    try:
        order = list(graphlib.TopologicalSorter(deps).static_order())
    except graphlib.CycleError as exc:
        raise CycleDetected(f"cover relation has a cycle: {exc.args[1]}") from None
    ups = {i: [] for i in range(n)}
    for x, y in seen:
        ups[x].append(y)
    leq = np.eye(n, dtype=bool)
    for x in reversed(order):
        for y in ups[x]:
            leq[x] |= leq[y]
    return FiniteLattice.from_leq(leq, labels, limit=limit)


def dual(L: FiniteLattice) -> FiniteLattice:
    """Order-reversed lattice on the same indices and labels."""
    return FiniteLattice(L.labels, L.leq.T, L.join, L.meet)


@dataclass(frozen=True)
class IntervalView:
    """The interval [lo, hi] of a parent lattice, with its own local indexing."""

    parent: FiniteLattice
    lo: int
    hi: int
    members: tuple

    @cached_property
    def lattice(self) -> FiniteLattice:
        idx = np.array(self.members, dtype=np.intp)
        local = {m: i for i, m in enumerate(self.members)}
        remap = np.vectorize(local.__getitem__, otypes=[np.intp])
        sub = np.ix_(idx, idx)
        return FiniteLattice(
            [self.parent.labels[m] for m in self.members],
            self.parent.leq[sub],
            remap(self.parent.meet[sub]),
            remap(self.parent.join[sub]),
        )

    def to_local(self, x) -> int:
        try:
            return self.members.index(x)
        except ValueError:
            raise InvalidInput(f"element {x} is not in [{self.lo}, {self.hi}]") from None

    def to_parent(self, i) -> int:
        return self.members[i]


def interval(L: FiniteLattice, a, b) -> IntervalView:
    a, b = L.index(a), L.index(b)
    if not L.leq[a, b]:
        raise NotComparable(f"{L.labels[a]} is not below {L.labels[b]}")
    members = np.flatnonzero(L.leq[a, :] & L.leq[:, b])
    return IntervalView(L, a, b, tuple(int(m) for m in members))


def is_distributive(L: FiniteLattice) -> bool:
    """a ∧ (b ∨ c) == (a ∧ b) ∨ (a ∧ c) for all triples."""
    M, J = L.meet, L.join
    for a in range(L.size):
        lhs = M[a, J]
        rhs = J[M[a][:, None], M[a][None, :]]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def is_modular(L: FiniteLattice) -> bool:
    """(x ∧ y) ∨ (x ∧ z) == x ∧ (y ∨ (x ∧ z)) for all triples."""
    M, J = L.meet, L.join
    for x in range(L.size):
        mx = M[x]
        lhs = J[mx[:, None], mx[None, :]]
        rhs = M[x, J[:, mx]]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def is_total_order(L: FiniteLattice) -> bool:
    return bool((L.leq | L.leq.T).all())


def find_isomorphism(L1: FiniteLattice, L2: FiniteLattice):
    """An order isomorphism as a dict index->index, or None."""
    if L1.size != L2.size:
        return None
    import networkx as nx
    from networkx.algorithms.isomorphism import DiGraphMatcher

    g1, g2 = nx.DiGraph(), nx.DiGraph()
    g1.add_nodes_from(range(L1.size))
    g2.add_nodes_from(range(L2.size))
    g1.add_edges_from(L1.covers())
    g2.add_edges_from(L2.covers())
    matcher = DiGraphMatcher(g1, g2)
    if matcher.is_isomorphic():
        return dict(matcher.mapping)
    return None


def is_isomorphic(L1: FiniteLattice, L2: FiniteLattice) -> bool:
    return find_isomorphism(L1, L2) is not None
