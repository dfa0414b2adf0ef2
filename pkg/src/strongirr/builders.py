"""Standard lattices: chains, Boolean algebras, divisor, diamond, pentagon,
products and subspace lattices, plus the builder-spec mini language used by the CLI.

>>> from strongirr.builders import from_spec
>>> from_spec("product:(divisor:12)x(chain:2)").size
12
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from sympy import isprime

from . import config
from .errors import InvalidInput, NotPrime, ParseError, SizeLimit
from .lattice import FiniteLattice, build_from_covers, check_size


def chain(n: int) -> FiniteLattice:
    if n < 1:
        raise InvalidInput("chain length must be at least 1")
    check_size(n)
    idx = np.arange(n)
    leq = idx[:, None] <= idx[None, :]
    return FiniteLattice(
        [str(i) for i in range(n)],
        leq,
        np.minimum.outer(idx, idx),
        np.maximum.outer(idx, idx),
    )


def boolean(k: int) -> FiniteLattice:
    """Subsets of {0..k-1}; element index is the subset bitmask."""
    if k < 0:
        raise InvalidInput("atom count must be non-negative")
    if k > 30:
        raise SizeLimit(f"boolean({k}) is too large")
    n = 1 << k
    check_size(n)
    idx = np.arange(n)
    labels = ["{" + ",".join(str(i) for i in range(k) if m >> i & 1) + "}" for m in range(n)]
    return FiniteLattice(
        labels,
        (idx[:, None] & ~idx[None, :]) == 0,
        idx[:, None] & idx[None, :],
        idx[:, None] | idx[None, :],
    )


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def divisor_lattice(n: int) -> FiniteLattice:
    """Divisors of n under divisibility: meet = gcd, join = lcm."""
    if n < 1:
        raise InvalidInput("n must be positive")
    if n > config.MAX_DIVISOR_ARG:
        raise SizeLimit(f"{n} exceeds the divisor-lattice argument bound")
    ds = divisors(n)
    check_size(len(ds))
    pos = {d: i for i, d in enumerate(ds)}
    arr = np.array(ds, dtype=np.int64)
    g = np.gcd.outer(arr, arr)
    meet = np.vectorize(pos.__getitem__, otypes=[np.intp])(g)
    join = np.vectorize(pos.__getitem__, otypes=[np.intp])(arr[:, None] // g * arr[None, :])
    leq = arr[None, :] % arr[:, None] == 0
    return FiniteLattice([str(d) for d in ds], leq, meet, join)


def _letters(k):
    if k <= 26:
        return [chr(ord("a") + i) for i in range(k)]
    return [f"a{i}" for i in range(1, k + 1)]


def diamond(k: int) -> FiniteLattice:
    """M_k: bottom, top and k pairwise incomparable middle elements."""
    if k < 1:
        raise InvalidInput("diamond needs at least one atom")
    n = k + 2
    check_size(n)
    leq = np.eye(n, dtype=bool)
    leq[0, :] = True
    leq[:, n - 1] = True
    return FiniteLattice.from_leq(leq, ["0", *_letters(k), "1"])


def pentagon() -> FiniteLattice:
    """N5 on indices 0,a,b,c,1 with 0 < a < c < 1 and 0 < b < 1."""
    return build_from_covers(5, [(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)], ["0", "a", "b", "c", "1"])


def product(L1: FiniteLattice, L2: FiniteLattice) -> FiniteLattice:
    """Componentwise order; element (i, j) has index i * |L2| + j."""
    n1, n2 = L1.size, L2.size
    check_size(n1 * n2)
    i = np.repeat(np.arange(n1), n2)
    j = np.tile(np.arange(n2), n1)
    leq = L1.leq[np.ix_(i, i)] & L2.leq[np.ix_(j, j)]
    meet = L1.meet[np.ix_(i, i)] * n2 + L2.meet[np.ix_(j, j)]
    join = L1.join[np.ix_(i, i)] * n2 + L2.join[np.ix_(j, j)]
    labels = [f"({L1.labels[a]},{L2.labels[b]})" for a, b in zip(i, j)]
    return FiniteLattice(labels, leq, meet, join)


# subspace lattices ---------------------------------------------------------


def _rref_bases(p, d):
    """Yield every reduced row-echelon basis over GF(p) as a tuple of row tuples."""
    for r in range(d + 1):
        for pivots in itertools.combinations(range(d), r):
            free = [(i, j) for i in range(r) for j in range(pivots[i] + 1, d) if j not in pivots]
            for values in itertools.product(range(p), repeat=len(free)):
                rows = [[0] * d for _ in range(r)]
                for i, c in enumerate(pivots):
                    rows[i][c] = 1
                for (i, j), v in zip(free, values):
                    rows[i][j] = v
                yield tuple(tuple(row) for row in rows)


def _span(rows, p, d):
    vecs = {(0,) * d}
    for row in rows:
        vecs = {tuple((v[k] + c * row[k]) % p for k in range(d)) for v in vecs for c in range(p)}
    return frozenset(vecs)


def subspace_lattice(p: int, d: int) -> FiniteLattice:
    """Subspaces of GF(p)^d ordered by inclusion, indexed by reduced echelon basis."""
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if d < 0:
        raise InvalidInput("dimension must be non-negative")
    if p**d > config.MAX_GROUP_ORDER:
        raise SizeLimit(f"GF({p})^{d} has more than {config.MAX_GROUP_ORDER} vectors")
    count = sum(_gaussian_binomial(d, r, p) for r in range(d + 1))
    check_size(count)
    bases = list(_rref_bases(p, d))
    spans = [_span(b, p, d) for b in bases]
    pos = {s: i for i, s in enumerate(spans)}
    n = len(spans)
    leq = np.array([[a <= b for b in spans] for a in spans], dtype=bool)
    meet = np.empty((n, n), dtype=np.intp)
    join = np.empty((n, n), dtype=np.intp)
    for a in range(n):
        for b in range(a, n):
            meet[a, b] = meet[b, a] = pos[spans[a] & spans[b]]
            summed = frozenset(
                tuple((x[k] + y[k]) % p for k in range(d)) for x in spans[a] for y in spans[b]
            )
            join[a, b] = join[b, a] = pos[summed]

    def fmt(rows):
        if not rows:
            return "0"
        return "<" + ",".join("(" + ",".join(map(str, r)) + ")" for r in rows) + ">"

    return FiniteLattice([fmt(b) for b in bases], leq, meet, join)


def _gaussian_binomial(d, r, p):
    num = den = 1
    for i in range(r):
        num *= p ** (d - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


# JSON interchange ----------------------------------------------------------


def lattice_from_json(doc) -> FiniteLattice:
    """Build from ``{"labels": [...], "covers": [[i, j], ...]}``."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "labels" not in doc or "covers" not in doc:
        raise ParseError('lattice document needs "labels" and "covers"')
    labels, covers = doc["labels"], doc["covers"]
    if not isinstance(labels, list) or not isinstance(covers, list):
        raise ParseError('"labels" and "covers" must be arrays')
    try:
        pairs = [(int(c[0]), int(c[1])) for c in covers if len(c) == 2]
    except (TypeError, ValueError, KeyError):
        raise ParseError("covers must be pairs of integers") from None
    if len(pairs) != len(covers):
        raise ParseError("covers must be pairs of integers")
    return build_from_covers(len(labels), pairs, [str(x) for x in labels])


def parse_lattice_file(path) -> FiniteLattice:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return lattice_from_json(text)


# builder specs -------------------------------------------------------------


@dataclass(frozen=True)
class BuilderSpec:
    kind: str
    parameters: tuple = field(default_factory=tuple)

    def build(self) -> FiniteLattice:
        k, ps = self.kind, self.parameters
        if k == "chain":
            return chain(*ps)
        if k == "boolean":
            return boolean(*ps)
        if k == "divisor":
            return divisor_lattice(*ps)
        if k == "diamond":
            return diamond(*ps)
        if k == "pentagon":
            return pentagon()
        if k == "subspace":
            return subspace_lattice(*ps)
        if k == "product":
            return product(ps[0].build(), ps[1].build())
        if k == "fromfile":
            return parse_lattice_file(ps[0])
        raise ParseError(f"unknown builder kind {k!r}")


_INT_KINDS = {"chain": 1, "boolean": 1, "divisor": 1, "M": 1, "diamond": 1, "subspace": 2}


def parse_spec(text: str) -> BuilderSpec:
    """Parse builder strings such as ``chain:5``, ``M:3``, ``N5``, ``subspace:2,2``,
    ``product:(divisor:12)x(chain:2)`` or ``file:path.json``."""
    text = text.strip()
    if text in ("N5", "pentagon"):
        return BuilderSpec("pentagon")
    kind, sep, rest = text.partition(":")
    if not sep:
        if text.endswith(".json"):
            return BuilderSpec("fromfile", (text,))
        raise ParseError(f"cannot parse builder spec {text!r}")
    if kind == "file":
        return BuilderSpec("fromfile", (rest,))
    if kind == "product":
        left, right = _split_product(rest)
        return BuilderSpec("product", (parse_spec(left), parse_spec(right)))
    if kind not in _INT_KINDS:
        raise ParseError(f"unknown builder kind {kind!r}")
    if not re.fullmatch(r"\d+(,\d+)*", rest):
        raise ParseError(f"bad parameters {rest!r} for {kind}")
    params = tuple(int(x) for x in rest.split(","))
    if len(params) != _INT_KINDS[kind]:
        raise ParseError(f"{kind} takes {_INT_KINDS[kind]} parameter(s)")
    return BuilderSpec("diamond" if kind == "M" else kind, params)


def _split_product(rest):
    if not rest.startswith("("):
        raise ParseError("product operands must be parenthesised: product:(A)x(B)")
    depth = 0
    for i, ch in enumerate(rest):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0:
            left, tail = rest[1:i], rest[i + 1 :]
            break
    else:
        raise ParseError("unbalanced parentheses in product spec")
    if not (tail.startswith("x(") and tail.endswith(")")):
        raise ParseError("product spec must look like product:(A)x(B)")
    return left, tail[2:-1]


def from_spec(text: str) -> FiniteLattice:
    return parse_spec(text).build()


def corpus() -> dict[str, FiniteLattice]:
    """The desk-scale lattices the acceptance criteria range over."""
    specs = (
        [f"chain:{n}" for n in range(2, 7)]
        + [f"boolean:{k}" for k in range(1, 5)]
        + [f"divisor:{n}" for n in (12, 30, 36, 60)]
        + [f"M:{k}" for k in range(3, 6)]
        + ["N5", "subspace:2,2", "subspace:3,2", "product:(divisor:12)x(chain:2)"]
    )
    return {s: from_spec(s) for s in specs}
