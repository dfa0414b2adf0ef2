import itertools
import math
from collections import Counter

import pytest
from sympy import primefactors

from strongirr.abelian import (
    FiniteAbelianGroup,
    abelian_groups_of_order,
    abelian_groups_up_to,
    count_subgroups,
    cyclic_subgroups,
    enumerate_subgroups,
    hollow_subgroups,
    hom_count,
    is_cyclic,
    is_strongly_hollow_subgroup,
    is_strongly_irreducible_subgroup,
    p_component,
    p_component_subgroup,
    quotient,
    simple_summand_check,
    stephenson_check,
    strongly_hollow_subgroups,
    subgroup_lattice,
    subquotient,
)
from strongirr.builders import boolean, chain, diamond
from strongirr.classify import is_waist, si_elements
from strongirr.errors import InvalidInput, NotSimple, ParseError, PreconditionFail, SizeLimit
from strongirr.lattice import interval, is_isomorphic
from strongirr.representations import irredundant_join_reps


# pure-Python reference on coordinate tuples


def elements(factors):
    return list(itertools.product(*[range(d) for d in factors]))


def add(factors, x, y):
    return tuple((a + b) % d for a, b, d in zip(x, y, factors))


def span(factors, gens):
    zero = tuple(0 for _ in factors)
    out = {zero}
    frontier = [zero]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = add(factors, x, g)
            if y not in out:
                out.add(y)
                frontier.append(y)
    return frozenset(out)


def naive_subgroups(factors):
    """Every subgroup of a group of rank r is generated by r elements."""
    els = elements(factors)
    return {span(factors, gens) for gens in itertools.combinations_with_replacement(els, max(len(factors), 1))}


def as_sets(A, subs):
    return {frozenset(map(tuple, A.coords[s.elements()].tolist())) for s in subs}


def naive_sum(factors, H, K):
    return frozenset(add(factors, h, k) for h in H for k in K)


def naive_sh(factors, P, subs):
    return all(P <= K or P <= L for K in subs for L in subs if P <= naive_sum(factors, K, L))


def quotient_order_counts(factors, P):
    """Multiset of element orders in A / P, computed on cosets."""
    cosets = {frozenset(add(factors, x, p) for p in P) for x in elements(factors)}
    counts = Counter()
    for c in cosets:
        x = next(iter(c))
        y, k = x, 1
        while y not in P:
            y = add(factors, y, x)
            k += 1
        counts[k] += 1
    return counts


def order_counts(G):
    return Counter(G.element_orders.tolist())


SMALL = ["2", "4", "6", "2x2", "3x3", "2x4", "2x6", "4x4", "2x2x2", "2x2x3", "8", "9", "12", "3x9"]


# construction


def test_parse_and_invariants():
    A = FiniteAbelianGroup.parse("4x9")
    assert A.order == 36 and A.factors == (4, 9)
    assert A.elementary_divisors == (4, 9)
    assert A.invariant_factors == (36,)
    assert FiniteAbelianGroup.parse("2x4x3").invariant_factors == (2, 12)
    assert FiniteAbelianGroup.parse("1").order == 1
    assert FiniteAbelianGroup.parse("6").isomorphic(FiniteAbelianGroup.parse("2x3"))
    assert not FiniteAbelianGroup.parse("4").isomorphic(FiniteAbelianGroup.parse("2x2"))


@pytest.mark.parametrize("text", ["", "4x", "a", "4*9", "x4"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        FiniteAbelianGroup.parse(text)


def test_size_limit_and_bad_factors():
    with pytest.raises(SizeLimit):
        FiniteAbelianGroup((101, 101))
    with pytest.raises(InvalidInput):
        FiniteAbelianGroup((0,))


def test_invariant_factors_divide():
    for A in abelian_groups_up_to(100):
        inv = A.invariant_factors
        assert math.prod(inv) == A.order
        assert all(b % a == 0 for a, b in zip(inv, inv[1:]))


def test_catalogue_counts():
    # number of abelian groups of order n is a product of partition numbers
    assert [len(abelian_groups_of_order(n)) for n in (1, 8, 16, 32, 64, 72, 128)] == [1, 3, 5, 7, 11, 6, 15]
    groups = abelian_groups_of_order(144)
    assert len({G.invariant_factors for G in groups}) == len(groups)


def test_element_orders_match_naive():
    for text in SMALL:
        A = FiniteAbelianGroup.parse(text)
        for code, x in enumerate(elements(A.factors)):
            assert A.code(x) == code
            assert A.element_orders[code] == len(span(A.factors, [x]))


# enumeration


@pytest.mark.parametrize("text", SMALL)
def test_enumeration_matches_naive(text):
    A = FiniteAbelianGroup.parse(text)
    subs = enumerate_subgroups(A)
    assert len(subs) == len(set(subs)) == count_subgroups(A)
    assert as_sets(A, subs) == naive_subgroups(A.factors)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_elementary_rank_two_count(p):
    assert len(enumerate_subgroups(FiniteAbelianGroup((p, p)))) == p + 3


def test_spec_counts():
    assert len(enumerate_subgroups(FiniteAbelianGroup((4,)))) == 3
    assert len(enumerate_subgroups(FiniteAbelianGroup((2, 4)))) == 8


def test_closed_form_count_matches_enumeration():
    for A in abelian_groups_up_to(100):
        assert count_subgroups(A) == len(enumerate_subgroups(A)), A
    assert count_subgroups(FiniteAbelianGroup((2,) * 5)) == 374
    assert count_subgroups(FiniteAbelianGroup((2,) * 7)) == 29212


def test_enumerate_limit():
    with pytest.raises(SizeLimit):
        enumerate_subgroups(FiniteAbelianGroup((2,) * 7), limit=1000)


def test_closed_under_meet_and_sum():
    A = FiniteAbelianGroup.parse("2x4")
    subs = set(enumerate_subgroups(A))
    for H in subs:
        for K in subs:
            assert H & K in subs and H + K in subs


def test_lagrange_and_quotient_order():
    for text in SMALL:
        A = FiniteAbelianGroup.parse(text)
        for P in enumerate_subgroups(A):
            assert A.order % P.order == 0
            assert P.order * quotient(A, P).order == A.order


def test_canonical_generators_unique_and_regenerate():
    for text in ["2x4", "4x4", "2x2x2", "3x9", "2x6"]:
        A = FiniteAbelianGroup.parse(text)
        subs = enumerate_subgroups(A)
        labels = [s.label for s in subs]
        assert len(set(labels)) == len(labels)
        for s in subs:
            assert A.subgroup(s.canonical_generators) == s


def test_canonical_generators_independent_of_input():
    A = FiniteAbelianGroup.parse("4x4")
    H1 = A.subgroup([(1, 2), (0, 2)])
    H2 = A.subgroup([(3, 0), (2, 2)])
    assert H1 == H2 and H1.canonical_generators == H2.canonical_generators


def test_labels():
    A = FiniteAbelianGroup.parse("4")
    assert [s.label for s in enumerate_subgroups(A)] == ["0", "<2>", "<1>"]
    assert FiniteAbelianGroup.parse("2x2").trivial().label == "0"


# lattice shape


def test_lattice_shapes():
    assert is_isomorphic(subgroup_lattice(FiniteAbelianGroup((2, 2))).lattice, diamond(3))
    assert is_isomorphic(subgroup_lattice(FiniteAbelianGroup((6,))).lattice, boolean(2))
    for p, k in [(2, 3), (3, 2), (5, 2), (2, 5)]:
        assert is_isomorphic(subgroup_lattice(FiniteAbelianGroup((p**k,))).lattice, chain(k + 1))


def test_lattice_operations_are_intersection_and_sum():
    SL = subgroup_lattice(FiniteAbelianGroup.parse("2x4"))
    L, subs = SL.lattice, SL.subgroups
    for i, H in enumerate(subs):
        for j, K in enumerate(subs):
            assert subs[L.meet[i, j]] == H & K
            assert subs[L.join[i, j]] == H + K
            assert L.leq[i, j] == (H <= K)
    L.validate()


# components, quotients, Hom


def test_components():
    A = FiniteAbelianGroup.parse("4x9")
    assert p_component(A, 2) == FiniteAbelianGroup((4,))
    assert p_component(FiniteAbelianGroup((6,)), 5).order == 1
    assert not is_cyclic(FiniteAbelianGroup((2, 2)))
    assert is_cyclic(FiniteAbelianGroup((4, 9)))
    assert p_component_subgroup(FiniteAbelianGroup.parse("2x12"), 2).order == 8


def test_quotient_examples():
    Z4 = FiniteAbelianGroup((4,))
    assert quotient(Z4, Z4.subgroup([2])) == FiniteAbelianGroup((2,))
    V = FiniteAbelianGroup((2, 2))
    assert quotient(V, V.subgroup([(1, 1)])) == FiniteAbelianGroup((2,))
    assert quotient(V, V.whole()).order == 1


@pytest.mark.parametrize("text", ["2x4", "4x4", "2x2x2", "2x6", "3x9"])
def test_quotient_matches_cosets(text):
    A = FiniteAbelianGroup.parse(text)
    for P in enumerate_subgroups(A):
        Q = quotient(A, P)
        assert Q.isomorphic(subquotient(A.whole(), P))
        Pset = frozenset(map(tuple, A.coords[P.elements()].tolist()))
        assert order_counts(Q) == quotient_order_counts(A.factors, Pset)


def test_isomorphism_type():
    A = FiniteAbelianGroup.parse("4x4")
    for P in enumerate_subgroups(A):
        T = P.isomorphism_type()
        assert T.order == P.order
        assert order_counts(T) == Counter(A.element_orders[P.mask].tolist())


def test_subquotient_requires_containment():
    A = FiniteAbelianGroup.parse("2x2")
    with pytest.raises(InvalidInput):
        subquotient(A.subgroup([(1, 0)]), A.subgroup([(0, 1)]))


def naive_hom_count(A, B):
    # a hom is fixed by images of the standard generators; e_i can go to any y with d_i y = 0
    total = 1
    for d in A.factors:
        total *= sum(1 for y in range(B.order) if B.multiple(y, d) == 0)
    return total


def test_hom_count():
    Z = lambda *f: FiniteAbelianGroup(f)
    assert hom_count(Z(2), Z(3)) == 1
    assert hom_count(Z(4), Z(6)) == 2
    assert hom_count(Z(2, 2), Z(2)) == 4
    for a, b in itertools.product(["2", "4", "6", "2x2", "2x4", "3x9", "12"], repeat=2):
        A, B = FiniteAbelianGroup.parse(a), FiniteAbelianGroup.parse(b)
        assert hom_count(A, B) == naive_hom_count(A, B)


# strongly hollow and hollow


def test_spec_strongly_hollow_examples():
    r = strongly_hollow_subgroups(FiniteAbelianGroup((4, 9)))
    assert sorted(s.label for s in r.nonzero) == ["<(0,1)>", "<(0,3)>", "<(1,0)>", "<(2,0)>"]
    assert r.agree
    assert strongly_hollow_subgroups(FiniteAbelianGroup((4, 8))).nonzero == []
    for n in (8, 9, 25, 27, 32):
        A = FiniteAbelianGroup((n,))
        assert set(strongly_hollow_subgroups(A).subgroups) == set(enumerate_subgroups(A))


@pytest.mark.parametrize("text", ["2x2", "4", "6", "2x4", "3x3", "2x6", "12", "2x2x3", "4x9"])
def test_strongly_hollow_matches_definition(text):
    A = FiniteAbelianGroup.parse(text)
    subs = naive_subgroups(A.factors)
    expected = {P for P in subs if naive_sh(A.factors, P, subs)}
    assert as_sets(A, strongly_hollow_subgroups(A).subgroups) == expected


@pytest.mark.parametrize("text", ["2x6", "4x4", "2x2x3", "2x12", "3x3x4"])
def test_routes_agree(text):
    A = FiniteAbelianGroup.parse(text)
    table = strongly_hollow_subgroups(A, route="table")
    implicit = strongly_hollow_subgroups(A, route="implicit")
    assert set(table.subgroups) == set(implicit.subgroups)
    SL = subgroup_lattice(A)
    for H in SL.subgroups:
        assert is_strongly_irreducible_subgroup(A, H) == (SL.index(H) in si_elements(SL.lattice))
        assert is_strongly_hollow_subgroup(A, H) == (H in set(table.subgroups))


def test_bad_route():
    with pytest.raises(InvalidInput):
        strongly_hollow_subgroups(FiniteAbelianGroup((2,)), route="fast")


def test_large_group_uses_implicit_route():
    r = strongly_hollow_subgroups(FiniteAbelianGroup((2,) * 7))
    assert r.route == "implicit" and r.nonzero == []


def test_strongly_hollow_is_waist_in_cyclic_component():
    for A in abelian_groups_up_to(120):
        nonzero = strongly_hollow_subgroups(A).nonzero
        if not nonzero:
            continue
        SL = subgroup_lattice(A)
        for P in nonzero:
            (p,) = primefactors(P.order)
            view = interval(SL.lattice, SL.index(A.trivial()), SL.index(p_component_subgroup(A, p)))
            assert is_waist(view, SL.index(P))


def test_hollow_subgroups():
    V = FiniteAbelianGroup((2, 2))
    found = hollow_subgroups(V)
    assert sorted(s.order for s in found) == [1, 2, 2, 2]
    A = FiniteAbelianGroup((4, 9))
    assert set(hollow_subgroups(A)) == {P for P in cyclic_subgroups(A) if P.is_p_subgroup()}
    assert FiniteAbelianGroup((6,)).whole() not in hollow_subgroups(FiniteAbelianGroup((6,)))
    B = FiniteAbelianGroup((2, 6))
    assert set(hollow_subgroups(B, route="table")) == set(hollow_subgroups(B, route="implicit"))


def test_dual_kuros_ore_on_subgroup_lattices():
    for text in ["4x9", "2x2", "6", "2x4", "12", "3x3x4"]:
        SL = subgroup_lattice(FiniteAbelianGroup.parse(text))
        reps = irredundant_join_reps(SL.lattice, SL.lattice.top, "strongly_hollow")
        assert len({frozenset(r.parts) for r in reps}) <= 1


# module-level checks


def test_stephenson_examples():
    A = FiniteAbelianGroup((4, 9))
    assert stephenson_check(A, A.subgroup([(1, 0)])).passed
    assert stephenson_check(A, A.trivial()).passed
    V = FiniteAbelianGroup((2, 2))
    line = V.subgroup([(1, 0)])
    with pytest.raises(PreconditionFail):
        stephenson_check(V, line)
    r = stephenson_check(V, line, require=False)
    assert not r.passed
    assert {v["hom_count"] for v in r.violations} == {2}
    assert "<(0,1)>" in {v["Q"] for v in r.violations}


def test_stephenson_on_small_groups():
    for A in abelian_groups_up_to(72):
        subs = enumerate_subgroups(A)
        for P in strongly_hollow_subgroups(A).subgroups:
            assert stephenson_check(A, P, subgroups=subs).passed


def test_simple_summand_examples():
    r = simple_summand_check(2, FiniteAbelianGroup((3,)))
    assert r.agree and r.cond_a
    r = simple_summand_check(2, FiniteAbelianGroup((2,)))
    assert r.agree and not r.cond_a
    r = simple_summand_check(3, FiniteAbelianGroup((4, 2)))
    assert r.agree and r.cond_a
    with pytest.raises(NotSimple):
        simple_summand_check(4, FiniteAbelianGroup((3,)))


@pytest.mark.parametrize("q", [2, 3, 5])
def test_simple_summand_sweep(q):
    for D in abelian_groups_up_to(24):
        r = simple_summand_check(q, D)
        assert r.hom_condition == (D.exponent % q != 0)
