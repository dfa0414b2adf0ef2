"""Pulling strong irreducibility back along order-preserving maps, and the
localisation model on ideal lattices of Z/nZ.

A MonotonePair holds G: source -> target and F: target -> source. When G preserves
meets, a <= F(G(a)) for all a, and G(F(G(p))) = G(p), strong irreducibility of G(p)
forces strong irreducibility of F(G(p)).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from sympy import isprime

from .builders import divisor_lattice
from .classify import is_strongly_hollow, is_strongly_irreducible
from .errors import DoesNotDivide, HypothesesFail, NotPrime, ParseError, ShapeMismatch, VerificationError
from .lattice import FiniteLattice, dual


@dataclass(frozen=True)
class MonotonePair:
    source: FiniteLattice
    target: FiniteLattice
    G: np.ndarray
    F: np.ndarray

    def __post_init__(self):
        G = np.asarray(self.G, dtype=np.intp)
        F = np.asarray(self.F, dtype=np.intp)
        if G.shape != (self.source.size,) or F.shape != (self.target.size,):
            raise ShapeMismatch(
                f"G needs {self.source.size} entries and F {self.target.size}, got {G.shape} and {F.shape}"
            )
        if G.size and not (0 <= G.min() and G.max() < self.target.size):
            raise ShapeMismatch("G has values outside the target lattice")
        if F.size and not (0 <= F.min() and F.max() < self.source.size):
            raise ShapeMismatch("F has values outside the source lattice")
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "F", F)

    def swapped(self) -> "MonotonePair":
        return MonotonePair(self.target, self.source, self.F, self.G)


def pair_from_json(doc, source: FiniteLattice, target: FiniteLattice) -> MonotonePair:
    """Read ``{"G": [...], "F": [...]}`` (element indices) against two lattices."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "G" not in doc or "F" not in doc:
        raise ParseError('pair document needs "G" and "F"')
    return MonotonePair(source, target, doc["G"], doc["F"])


def _monotone(f, dom, cod):
    # a <= b must give f(a) <= f(b)
    return bool(cod.leq[np.ix_(f, f)][dom.leq].all())


@dataclass
class PairReport:
    G_monotone: bool
    F_monotone: bool
    G_meet_hom: bool
    G_join_hom: bool
    unit_ineq: bool
    fixed_points: list = field(default_factory=list)

    @property
    def hypotheses(self) -> bool:
        return self.G_monotone and self.F_monotone and self.G_meet_hom and self.unit_ineq

    def to_dict(self):
        return {
            "G_monotone": self.G_monotone,
            "F_monotone": self.F_monotone,
            "G_meet_hom": self.G_meet_hom,
            "G_join_hom": self.G_join_hom,
            "unit_ineq": self.unit_ineq,
            "fixed_points": list(self.fixed_points),
        }


def verify_pair(pair: MonotonePair) -> PairReport:
    L, T, G, F = pair.source, pair.target, pair.G, pair.F
    FG = F[G]
    return PairReport(
        G_monotone=_monotone(G, L, T),
        F_monotone=_monotone(F, T, L),
        G_meet_hom=bool(np.array_equal(G[L.meet], T.meet[np.ix_(G, G)])),
        G_join_hom=bool(np.array_equal(G[L.join], T.join[np.ix_(G, G)])),
        unit_ineq=bool(L.leq[np.arange(L.size), FG].all()),
        fixed_points=[int(p) for p in np.flatnonzero(G[FG] == G)],
    )


@dataclass(frozen=True)
class TransferVerdict:
    element: int
    image: int  # F(G(p))
    hypothesis_held: bool
    premise: bool  # G(p) strongly irreducible in the target
    conclusion_verified: Optional[bool]  # F(G(p)) strongly irreducible; None when the premise fails


def transfer_si(pair: MonotonePair, p, report: PairReport | None = None) -> TransferVerdict:
    """Check that strong irreducibility of G(p) carries over to F(G(p))."""
    L, T = pair.source, pair.target
    p = L.index(p)
    report = verify_pair(pair) if report is None else report
    failed = [
        name
        for name, ok in (
            ("G_monotone", report.G_monotone),
            ("F_monotone", report.F_monotone),
            ("G_meet_hom", report.G_meet_hom),
            ("unit_ineq", report.unit_ineq),
            ("GFG(p) = G(p)", p in report.fixed_points),
        )
        if not ok
    ]
    if failed:
        raise HypothesesFail(failed)
    g = int(pair.G[p])
    image = int(pair.F[g])
    if not is_strongly_irreducible(T, g):
        return TransferVerdict(p, image, True, False, None)
    return TransferVerdict(p, image, True, True, is_strongly_irreducible(L, image))


# localisation on Z/nZ ------------------------------------------------------


def _valuation(d, p):
    v = 0
    while d % p == 0:
        d //= p
        v += 1
    return v


def ideal_lattice(n: int) -> FiniteLattice:
    """Ideals dZ/nZ for d | n, ordered by inclusion: bottom is n (the zero ideal), top is 1."""
    return dual(divisor_lattice(n))


@dataclass
class LocalizationModel:
    """Z/nZ localised at the prime p, which is Z/p^kZ with p^k the p-part of n.

    extension: ideal d of Z/nZ goes to p^v_p(d) in Z/p^kZ
    contraction: ideal p^j of Z/p^kZ pulls back to p^j Z/nZ
    """

    n: int
    p: int
    L: FiniteLattice
    Lp: FiniteLattice
    extension: np.ndarray
    contraction: np.ndarray

    @property
    def p_part(self) -> int:
        return int(self.Lp.labels[self.Lp.bottom])

    def pair(self) -> MonotonePair:
        # contraction is the meet-preserving map, extension its partner
        return MonotonePair(self.Lp, self.L, self.contraction, self.extension)

    def reversed_pair(self) -> MonotonePair:
        return MonotonePair(self.L, self.Lp, self.extension, self.contraction)

    def label(self, lattice, i):
        return lattice.labels[i]


def localization_model(n: int, p: int) -> LocalizationModel:
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1 or n % p:
        raise DoesNotDivide(f"{p} does not divide {n}")
    k = _valuation(n, p)
    L, Lp = ideal_lattice(n), ideal_lattice(p**k)
    divs = [int(x) for x in L.labels]
    ext = np.array([Lp.index(str(p ** min(_valuation(d, p), k))) for d in divs], dtype=np.intp)
    con = np.array([L.index(lab) for lab in Lp.labels], dtype=np.intp)
    model = LocalizationModel(n, p, L, Lp, ext, con)
    _check_model(model)
    return model


def _check_model(m: LocalizationModel):
    L, Lp = m.L, m.Lp
    if not np.array_equal(m.extension[m.contraction], np.arange(Lp.size)):
        raise VerificationError("extension after contraction is not the identity")
    GF = m.contraction[m.extension]
    if not L.leq[np.arange(L.size), GF].all():
        raise VerificationError("an ideal is not contained in its saturation")
    for d, g in zip(L.labels, GF):
        if int(L.labels[g]) != m.p ** _valuation(int(d), m.p):
            raise VerificationError(f"saturation of {d} is {L.labels[g]}")


@dataclass
class CorrespondenceReport:
    n: int
    p: int
    rows: list
    si_correspondence: bool
    pullback_si: bool
    pushdown_si: bool
    fg_identity: bool
    unit_ineq: bool
    G_preserves_joins: bool
    sh_transfer: bool
    sh_counterexamples: list
    sh_converse: Optional[bool]

    @property
    def passed(self) -> bool:
        """The statements that must hold; sh_transfer is recorded, not required."""
        return (
            self.si_correspondence
            and self.pullback_si
            and self.pushdown_si
            and self.fg_identity
            and self.unit_ineq
            and self.sh_converse is not False
        )

    def to_dict(self):
        d = dict(self.__dict__)
        d["passed"] = self.passed
        return d


def localization_correspondence(model: LocalizationModel) -> CorrespondenceReport:
    """Compare each ideal B of the localisation with its contraction B ∩ Z/nZ."""
    L, Lp = model.L, model.Lp
    pair, rev = model.pair(), model.reversed_pair()
    pr, rr = verify_pair(pair), verify_pair(rev)
    rows, fwd, back = [], True, True
    sh_bad = []
    for b in range(Lp.size):
        c = int(model.contraction[b])
        row = {
            "ideal": Lp.labels[b],
            "contraction": L.labels[c],
            "si_local": is_strongly_irreducible(Lp, b),
            "si_contraction": is_strongly_irreducible(L, c),
            "sh_local": is_strongly_hollow(Lp, b),
            "sh_contraction": is_strongly_hollow(L, c),
        }
        rows.append(row)
        # SI of the contraction pulls back to B = F(G(B))
        v = transfer_si(pair, b, pr)
        fwd &= v.conclusion_verified is not False
        # reversed roles: SI of B = extension(contraction) pushes down to the contraction
        v = transfer_si(rev, c, rr)
        back &= v.conclusion_verified is not False
        if row["sh_local"] and not row["sh_contraction"]:
            sh_bad.append(Lp.labels[b])

    join_hom = pr.G_join_hom
    converse = None
    if join_hom:
        converse = all(r["sh_local"] for r in rows if r["sh_contraction"])
    return CorrespondenceReport(
        n=model.n,
        p=model.p,
        rows=rows,
        si_correspondence=all(r["si_local"] == r["si_contraction"] for r in rows),
        pullback_si=fwd,
        pushdown_si=back,
        fg_identity=bool(np.array_equal(model.extension[model.contraction], np.arange(Lp.size))),
        unit_ineq=rr.unit_ineq,
        G_preserves_joins=join_hom,
        sh_transfer=not sh_bad,
        sh_counterexamples=sh_bad,
        sh_converse=converse,
    )


# random pairs ----------------------------------------------------------------


def random_meet_hom(rng, source: FiniteLattice, target: FiniteLattice, terms=3) -> np.ndarray:
    """A meet of step maps a -> (y1 if a >= c else y0), with y0 <= y1.

    Each step map preserves meets, and so does a pointwise meet of such maps.
    """
    G = np.full(source.size, target.top, dtype=np.intp)
    for _ in range(int(rng.integers(1, terms + 1))):
        c = int(rng.integers(source.size))
        y1 = int(rng.integers(target.size))
        below = np.flatnonzero(target.leq[:, y1])
        y0 = int(rng.choice(below))
        step = np.where(source.leq[c], y1, y0)
        G = target.meet[G, step]
    return G


def random_closure(rng, L: FiniteLattice, k=3) -> np.ndarray:
    """cl(x) = meet of the closed elements above x, for a random closed set containing top."""
    closed = np.unique(np.append(rng.integers(0, L.size, size=k), L.top))
    cl = np.empty(L.size, dtype=np.intp)
    for x in range(L.size):
        cl[x] = L.meet_all(closed[L.leq[x, closed]])
    return cl


def random_pair(rng, source: FiniteLattice, target: FiniteLattice) -> MonotonePair:
    """A pair meeting the hypotheses: G preserves meets and a <= F(G(a))."""
    if source is target and rng.random() < 0.3:
        c = int(rng.integers(source.size))
        G = source.meet[:, c].copy()
    else:
        G = random_meet_hom(rng, source, target)
    cl = random_closure(rng, source)
    F = np.empty(target.size, dtype=np.intp)
    for y in range(target.size):
        F[y] = cl[source.join_all(np.flatnonzero(target.leq[G, y]))]
    return MonotonePair(source, target, G, F)


@dataclass
class SweepReport:
    seed: int
    pairs: int
    checks: int  # (pair, p) cases whose premise held
    failures: list

    @property
    def passed(self):
        return not self.failures


def random_transfer_sweep(lattices, count=500, seed=0) -> SweepReport:
    """Draw seeded random pairs between the given lattices and test every eligible element."""
    rng = np.random.default_rng(seed)
    lattices = list(lattices)
    checks, failures = 0, []
    for i in range(count):
        src = lattices[int(rng.integers(len(lattices)))]
        tgt = src if rng.random() < 0.3 else lattices[int(rng.integers(len(lattices)))]
        pair = random_pair(rng, src, tgt)
        rep = verify_pair(pair)
        if not rep.hypotheses:
            raise VerificationError(f"random pair {i} misses the hypotheses")
        for p in rep.fixed_points:
            v = transfer_si(pair, p, rep)
            if v.premise:
                checks += 1
                if not v.conclusion_verified:
                    failures.append({"pair": i, "element": p})
    return SweepReport(seed, count, checks, failures)
