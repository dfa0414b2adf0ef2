"""Irredundant meet and join representations, and the Kuroš–Ore and Goldie dimensions."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import config
from .classify import irreducible_elements, si_elements
from .errors import InvalidInput, NoneFound, NotModular, SizeLimit, VerificationError
from .lattice import FiniteLattice, dual, is_modular

MEET_KINDS = ("any", "irreducible", "strongly_irreducible")
JOIN_KINDS = ("any", "hollow", "strongly_hollow")
_ALIASES = {"si": "strongly_irreducible", "irr": "irreducible", "sh": "strongly_hollow"}
_TO_MEET = {"any": "any", "hollow": "irreducible", "strongly_hollow": "strongly_irreducible"}

# atoms searched exhaustively for the Goldie dimension
GOLDIE_ATOM_BOUND = 24


@dataclass(frozen=True)
class MeetRepresentation:
    target: int
    parts: tuple
    irredundant: bool = True
    parts_kind: str = "any"

    def labels(self, L):
        return [L.labels[p] for p in self.parts]


def _kind(kind, allowed):
    kind = _ALIASES.get(kind, kind)
    if kind not in allowed:
        raise InvalidInput(f"kind must be one of {allowed}, got {kind!r}")
    return kind


def _candidates(L, x, kind):
    if kind == "any":
        pool = range(L.size)
    elif kind == "irreducible":
        pool = irreducible_elements(L)
    else:
        pool = si_elements(L)
    return [p for p in pool if L.leq[x, p]]


def is_irredundant(L: FiniteLattice, parts, target) -> bool:
    """⋀parts = target and dropping any single part raises the meet."""
    parts = list(parts)
    if L.meet_all(parts) != target:
        return False
    return all(L.meet_all(parts[:i] + parts[i + 1 :]) != target for i in range(len(parts)))


def irredundant_meet_reps(L: FiniteLattice, x, kind="any", max_size=None) -> list[MeetRepresentation]:
    """Every irredundant representation of x as a meet of parts of the given kind,
    with at most max_size parts."""
    kind = _kind(kind, MEET_KINDS)
    max_size = config.DEFAULT_REP_SIZE if max_size is None else max_size
    if max_size > config.MAX_REP_SIZE:
        raise SizeLimit(f"max_size {max_size} exceeds {config.MAX_REP_SIZE}")
    x = L.index(x)
    if x == L.top:
        # top is vacuously of every kind and is its own one-part meet
        return [MeetRepresentation(x, (x,), True, kind)]
    cands = _candidates(L, x, kind)
    found = []

    def extend(chosen, current, start):
        if current == x:
            if is_irredundant(L, chosen, x):
                found.append(MeetRepresentation(x, tuple(chosen), True, kind))
            return  # supersets are redundant
        if len(chosen) == max_size:
            return
        for i in range(start, len(cands)):
            c = cands[i]
            # a part above the running meet is removable, so it can never appear
            if L.leq[current, c]:
                continue
            extend(chosen + [c], int(L.meet[current, c]), i + 1)

    extend([], L.top, 0)
    return found


def irredundant_join_reps(L: FiniteLattice, x, kind="any", max_size=None, assert_unique=None):
    """Irredundant joins, found as meets in the dual lattice.

    For x = top and strongly hollow parts in a modular lattice, all representations
    must coincide as sets; this is checked (assert_unique=None means "when it applies").
    """
    kind = _kind(kind, JOIN_KINDS)
    x = L.index(x)
    reps = irredundant_meet_reps(dual(L), x, _TO_MEET[kind], max_size)
    reps = [MeetRepresentation(r.target, r.parts, r.irredundant, kind) for r in reps]
    applies = x == L.top and kind == "strongly_hollow"
    if assert_unique or (assert_unique is None and applies and is_modular(L)):
        if not is_modular(L):
            raise NotModular("uniqueness of strongly hollow sums needs a modular lattice")
        if len({frozenset(r.parts) for r in reps}) > 1:
            raise VerificationError("irredundant strongly hollow sums of top are not unique")
    return reps


@dataclass
class KurosOreReport:
    unique: bool
    canonical: Optional[tuple]
    representations: list = field(default_factory=list)
    counterexample: Optional[tuple] = None

    def to_dict(self, L=None):
        show = (lambda ps: [L.labels[p] for p in ps]) if L is not None else list
        return {
            "unique": self.unique,
            "canonical": None if self.canonical is None else show(self.canonical),
            "representations": [show(r.parts) for r in self.representations],
            "counterexample": None if self.counterexample is None else show(self.counterexample),
        }


def _require_modular(L):
    if not is_modular(L):
        raise NotModular("the lattice is not modular")


def strong_kuros_ore_check(L: FiniteLattice, max_size=None) -> KurosOreReport:
    """All irredundant meet-representations of bottom by strongly irreducible parts agree as sets."""
    _require_modular(L)
    reps = irredundant_meet_reps(L, L.bottom, "strongly_irreducible", max_size)
    if not reps:
        return KurosOreReport(True, None, [])
    first = frozenset(reps[0].parts)
    for r in reps[1:]:
        if frozenset(r.parts) != first:
            return KurosOreReport(False, None, reps, r.parts)
    return KurosOreReport(True, reps[0].parts, reps)


def kuros_ore_dimension(L: FiniteLattice, max_size=None) -> int:
    """Number of parts in an irredundant meet of irreducibles equal to bottom.

    Every such representation found is checked to have the same size.
    """
    _require_modular(L)
    if L.size == 1:
        return 0
    reps = irredundant_meet_reps(L, L.bottom, "irreducible", max_size)
    if not reps:
        raise NoneFound("no irredundant irreducible representation of bottom within the size bound")
    sizes = {len(r.parts) for r in reps}
    if len(sizes) != 1:
        raise VerificationError(f"irredundant irreducible representations have sizes {sorted(sizes)}")
    return sizes.pop()


def is_join_independent(L: FiniteLattice, elements) -> bool:
    """Non-bottom elements each meeting the join of the others in bottom."""
    es = list(elements)
    if any(e == L.bottom for e in es):
        return False
    return all(L.meet[e, L.join_all(es[:i] + es[i + 1 :])] == L.bottom for i, e in enumerate(es))


def _greedy_independent(L, atoms):
    chosen, span = [], L.bottom
    for a in atoms:
        if L.meet[a, span] == L.bottom:
            chosen.append(a)
            span = int(L.join[span, a])
    return chosen


def goldie_dimension(L: FiniteLattice, exhaustive=True) -> int:
    """Largest size of a join-independent set.

    Shrinking a member keeps a set independent, so atoms suffice. In a modular lattice
    independent atom sets form a matroid and every maximal one has the same size; the
    exhaustive search re-derives the maximum without relying on that.
    """
    _require_modular(L)
    atoms = L.atoms()
    if not atoms:
        return 0
    greedy = _greedy_independent(L, atoms)
    if not exhaustive:
        return len(greedy)
    if len(atoms) > GOLDIE_ATOM_BOUND:
        raise SizeLimit(f"{len(atoms)} atoms exceed the exhaustive bound {GOLDIE_ATOM_BOUND}")
    best = []

    def grow(chosen, start):
        nonlocal best
        if len(chosen) > len(best) and is_join_independent(L, chosen):
            best = list(chosen)
        if len(chosen) + len(atoms) - start <= len(best):
            return
        for i in range(start, len(atoms)):
            a = atoms[i]
            if is_join_independent(L, chosen + [a]):
                grow(chosen + [a], i + 1)

    grow([], 0)
    if len(best) != len(greedy):
        raise VerificationError("greedy and exhaustive independent sets differ in size")
    return len(best)
