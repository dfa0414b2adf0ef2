import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from oracles import Oracle
from strategies import lattices
from strongirr.builders import boolean, chain, diamond, divisor_lattice, subspace_lattice
from strongirr.classify import (
    GroupoidTable,
    characterization_report,
    classify_all,
    dual_characterization_report,
    is_completely_strongly_irreducible,
    is_essential,
    is_hollow,
    is_irreducible,
    is_small,
    is_strongly_hollow,
    is_strongly_irreducible,
    is_strongly_irreducible_via_gens,
    is_uniform_interval,
    is_waist,
    is_weakly_join_distributive,
    is_weakly_meet_distributive,
    minimal_si_above,
    omega,
    prime_elements,
    pseudo_complement,
    sh_elements,
    si_elements,
    structure_dichotomy,
    supplements,
)
from strongirr.errors import (
    EmptyInput,
    NotAssociative,
    NotComparable,
    NotGenerating,
    NotMonotone,
    NotStronglyIrreducible,
    NotSubMeet,
)
from strongirr.lattice import dual, interval, is_distributive, is_modular, is_total_order

M3 = diamond(3)
B2 = boolean(2)
C4 = chain(4)
D12 = divisor_lattice(12)


def labels(L, idx):
    return {L.labels[i] for i in idx}


def test_irreducible_examples():
    assert is_irreducible(M3, "a")
    assert not is_irreducible(B2, 0)
    assert all(is_irreducible(C4, p) for p in range(4))


def test_si_examples():
    assert all(is_strongly_irreducible(chain(5), p) for p in range(5))
    assert not is_strongly_irreducible(M3, "a")
    for L in (M3, B2, D12):
        assert is_strongly_irreducible(L, L.top)


def test_via_generators():
    B3 = boolean(3)
    gens = [0, 1, 2, 4]
    for p in range(8):
        assert is_strongly_irreducible_via_gens(B3, p, gens) == is_strongly_irreducible(B3, p)
    assert is_strongly_irreducible_via_gens(B3, 6, gens)
    pp = ["1", "2", "4", "3"]
    for p in D12.labels:
        assert is_strongly_irreducible_via_gens(D12, p, pp) == is_strongly_irreducible(D12, p)
    assert all(is_strongly_irreducible_via_gens(C4, p, range(4)) for p in range(4))
    with pytest.raises(NotGenerating):
        is_strongly_irreducible_via_gens(D12, "4", ["1", "2"])


def test_via_generators_every_generating_set(lattices):
    # all join-irreducibles (plus bottom) generate; any superset does too
    for L in lattices.values():
        ji = [x for x in range(L.size) if len(L.lower_covers(x)) == 1]
        for p in range(L.size):
            assert is_strongly_irreducible_via_gens(L, p, ji + [L.bottom]) == is_strongly_irreducible(L, p)


def test_complete_examples():
    assert is_completely_strongly_irreducible(chain(3), 1)
    assert not is_completely_strongly_irreducible(B2, 0)
    assert is_completely_strongly_irreducible(B2, 0, bound=1) is False


def test_complete_against_all_subsets(lattices):
    for name in ("boolean:3", "M:4", "N5", "divisor:30", "subspace:2,2"):
        L = lattices[name]
        o = Oracle(L)
        for p in range(L.size):
            assert is_completely_strongly_irreducible(L, p) == o.complete_si(p)


def test_waist_and_essential():
    assert all(is_waist(C4, p) for p in range(4))
    assert not is_waist(M3, "a")
    assert is_waist(M3, 0) and is_waist(M3, 4)
    assert all(is_essential(C4, p) for p in range(1, 4))
    assert not is_essential(M3, "a")
    assert not is_essential(B2, 0)


def test_omega_examples():
    assert labels(M3, omega(M3, ["a"])) == {"b", "c"}
    assert omega(C4, [1]) == []
    assert omega(B2, [1]) == [2]
    assert omega(B2, 1) == [2]
    with pytest.raises(EmptyInput):
        omega(B2, [])


def test_pseudo_complement_examples():
    assert pseudo_complement(B2, 1).element == 2
    pc = pseudo_complement(M3, "a")
    assert pc.element is None and labels(M3, pc.maximals) == {"b", "c"}
    assert D12.labels[pseudo_complement(D12, "4").element] == "3"


def test_uniform_interval_examples():
    assert is_uniform_interval(C4, 1, 3)
    assert not is_uniform_interval(B2, 0, 3)
    assert is_uniform_interval(D12, "1", "4")
    with pytest.raises(NotComparable):
        is_uniform_interval(B2, 1, 2)


def test_weak_distributivity_examples():
    assert not is_weakly_meet_distributive(M3, "a")
    for L in (M3, B2, D12, C4):
        assert is_weakly_meet_distributive(L, L.top)
        assert is_weakly_join_distributive(L, L.bottom)


def test_characterization_examples():
    r = characterization_report(M3, "a")
    assert r.omega_nonempty and not any(r.flags)
    r = characterization_report(B2, 1)
    assert all(r.flags) and r.witness_q == 2
    r = characterization_report(D12, "4")
    assert r.consistent and labels(D12, omega(D12, ["4"])) == {"3"}


def test_dichotomy_examples():
    assert structure_dichotomy(C4, 1).kind == "waist"
    d = structure_dichotomy(B2, 1)
    assert (d.kind, d.p_prime, d.q) == ("witness", 0, 2)
    d = structure_dichotomy(D12, "4")
    assert (D12.labels[d.p_prime], D12.labels[d.q]) == ("1", "3")
    with pytest.raises(NotStronglyIrreducible):
        structure_dichotomy(M3, "a")


def test_minimal_si_above():
    assert minimal_si_above(M3, 0) == [M3.top]
    assert labels(D12, minimal_si_above(D12, "1")) == {"3", "4"}
    assert minimal_si_above(C4, 0) == [0]


def _ideal_product_12():
    # ideals of Z/12 indexed by generator d; product of ideals dZ and eZ is gcd(de, 12)Z
    L = dual(D12)
    ds = [int(x) for x in L.labels]
    return L, np.array([[ds.index(np.gcd(a * b, 12)) for b in ds] for a in ds])


def test_prime_elements_ideal_product():
    L, op = _ideal_product_12()
    assert labels(L, prime_elements(L, GroupoidTable(op))) == {"1", "2", "3"}


def test_prime_elements_meet_is_si(lattices):
    for L in lattices.values():
        assert prime_elements(L, GroupoidTable(L.meet)) == si_elements(L)


def test_prime_elements_constant_bottom():
    C3 = chain(3)
    assert prime_elements(C3, GroupoidTable(np.zeros((3, 3), dtype=int))) == [2]


def test_groupoid_errors():
    _, op = _ideal_product_12()
    with pytest.raises(NotSubMeet):
        # same product read in divisibility order exceeds the meet
        prime_elements(D12, GroupoidTable(op))
    C3 = chain(3)
    with pytest.raises(NotMonotone):
        prime_elements(C3, GroupoidTable(np.array([[2, 0, 0], [0, 0, 0], [0, 0, 0]])))
    with pytest.raises(NotMonotone):
        prime_elements(C3, GroupoidTable(np.zeros((2, 2), dtype=int)))


def test_non_associative_detected():
    C3 = chain(3)
    op = np.array([[0, 0, 0], [0, 0, 0], [0, 1, 1]])
    # (2*2)*1 = 0 while 2*(2*1) = 1
    with pytest.raises(NotAssociative):
        prime_elements(C3, GroupoidTable(op))


def test_classify_all_examples():
    rows = classify_all(chain(3))
    assert all(r.strongly_irreducible and r.strongly_hollow for r in rows)
    rows = classify_all(M3)
    assert {r.label for r in rows if r.strongly_irreducible} == {"1"}
    assert {r.label for r in rows if r.strongly_hollow} == {"0"}
    rows = classify_all(B2)
    assert {r.label for r in rows if r.strongly_irreducible} == {"{0}", "{1}", "{0,1}"}
    assert {r.label for r in rows if r.strongly_hollow} == {"{}", "{0}", "{1}"}
    assert rows[0].to_dict()["label"] == "{}"


def test_classify_against_oracle(corpus_spec, lattices):
    L = lattices[corpus_spec]
    o, od = Oracle(L), Oracle(L, flip=True)
    for r in classify_all(L):
        p = r.element
        assert r.strongly_irreducible == o.si(p)
        assert r.irreducible == o.irr(p)
        assert r.strongly_hollow == od.si(p)
        assert r.hollow == od.irr(p)
        assert r.weakly_meet_distributive == o.wmd(p)
        assert r.weakly_join_distributive == od.wmd(p)
        assert r.omega_size == len(o.omega([p]))
        assert r.waist == all(o.le(x, p) or o.le(p, x) for x in range(L.size))
        assert r.essential == (r.omega_size == 0)
        pc = pseudo_complement(L, p)
        assert pc.element == o.pc(p)


def test_profile_invariants(lattices):
    for L in lattices.values():
        D = dual(L)
        for r in classify_all(L):
            assert not r.strongly_irreducible or r.irreducible
            assert not r.strongly_irreducible or r.weakly_meet_distributive
            assert r.hollow == is_irreducible(D, r.element)
            assert r.strongly_hollow == is_strongly_irreducible(D, r.element)
            assert r.hollow == is_hollow(L, r.element)
            assert r.strongly_hollow == is_strongly_hollow(L, r.element)
            assert r.completely_strongly_irreducible == r.strongly_irreducible
            assert r.completely_irreducible == r.irreducible
            assert r.completely_hollow == r.hollow
            assert r.completely_strongly_hollow == r.strongly_hollow
            if r.irreducible and r.waist:
                assert r.strongly_irreducible


def test_hollow_is_at_most_one_lower_cover(lattices):
    for L in lattices.values():
        for p in range(L.size):
            if p != L.bottom:
                assert is_hollow(L, p) == (len(L.lower_covers(p)) == 1)


def test_interval_restriction(lattices):
    for name in ("divisor:60", "M:4", "N5", "product:(divisor:12)x(chain:2)", "boolean:3"):
        L = lattices[name]
        for p in range(L.size):
            si, irr = is_strongly_irreducible(L, p), is_irreducible(L, p)
            for a in L.down(p):
                v = interval(L, int(a), L.top)
                assert not si or is_strongly_irreducible(v, p)
                assert not irr or is_irreducible(v, p)
            for b in L.up(p):
                v = interval(L, L.bottom, int(b))
                assert not si or is_strongly_irreducible(v, p)
                assert not irr or is_irreducible(v, p)


def test_interval_view_queries():
    L = divisor_lattice(60)
    v = interval(L, "2", "60")
    assert labels(L, si_elements(v)) >= {"60"}
    assert labels(L, omega(v, ["4"])) == {"6", "10", "30"}
    o = Oracle(v.lattice)
    for x in v.members:
        assert is_strongly_irreducible(v, x) == o.si(v.to_local(x))


def test_meet_is_si_only_via_comparable_si_part(lattices):
    for L in lattices.values():
        si = set(si_elements(L))
        for a, b in itertools.product(range(L.size), repeat=2):
            lhs = int(L.meet[a, b]) in si
            rhs = (L.leq[a, b] and a in si) or (L.leq[b, a] and b in si)
            assert lhs == rhs


def test_total_order_law(lattices):
    for L in lattices.values():
        assert (len(si_elements(L)) == L.size) == is_total_order(L)
        assert (len(sh_elements(L)) == L.size) == is_total_order(L)


def test_distributive_irreducible_equals_si(lattices):
    for L in lattices.values():
        if is_distributive(L):
            rows = classify_all(L)
            assert [r.irreducible for r in rows] == [r.strongly_irreducible for r in rows]


def test_local_distributivity_makes_irreducible_strong(lattices):
    for L in lattices.values():
        for p in range(L.size):
            ok = all(
                L.join[L.meet[a, b], p] == L.meet[L.join[a, p], L.join[b, p]]
                for a, b in itertools.product(range(L.size), repeat=2)
                if L.leq[L.meet[a, b], p]
            )
            if ok:
                assert is_irreducible(L, p) == is_strongly_irreducible(L, p)


def test_characterization_battery(lattices):
    for L in lattices.values():
        for M in (L, dual(L)):
            for p in range(M.size):
                r = characterization_report(M, p)
                assert r.consistent, (M, p, r)


def test_pseudo_complement_of_atom(lattices):
    for L in lattices.values():
        atoms = L.atoms()
        for p in range(L.size):
            if not omega(L, [p]):
                continue
            pcs = [a for a in atoms if pseudo_complement(L, a).element == p]
            assert is_strongly_irreducible(L, p) == bool(pcs)
            for a in pcs:
                assert all(L.comparable(x, a) or L.comparable(x, p) for x in range(L.size))


def test_dichotomy_everywhere(lattices):
    for L in lattices.values():
        for p in si_elements(L):
            d = structure_dichotomy(L, p)
            if d.kind == "waist":
                assert is_waist(L, p)
            else:
                v = interval(L, d.p_prime, L.top)
                assert pseudo_complement(v, d.q).element == p
                assert is_uniform_interval(L, d.p_prime, d.q)
                assert L.lt(d.p_prime, p)


def test_chain_of_si_meets(lattices):
    for L in lattices.values():
        si = si_elements(L)
        # every chain is a subset totally ordered; meets of chains are their minimum
        for r in range(1, min(len(si), 4) + 1):
            for C in itertools.combinations(si, r):
                if all(L.comparable(a, b) for a, b in itertools.combinations(C, 2)):
                    assert is_strongly_irreducible(L, L.meet_all(C))


def test_dual_notions():
    assert not is_small(B2, 1)
    assert is_small(C4, 1)  # in a chain only the top joins to the top
    assert labels(M3, supplements(M3, "a")) == {"b", "c"}
    r = dual_characterization_report(B2, 1)
    assert all(r.flags)


def test_unique_supplement_in_modular_lattices(lattices):
    # the supplement argument relies on the modular law; N5 breaks it
    for L in lattices.values():
        if not is_modular(L):
            continue
        D = dual(L)
        unique = all(
            _pc_unique(D, x) for x in range(L.size) if pseudo_complement(D, x).maximals
        )
        if not unique:
            continue
        for p in range(L.size):
            if is_hollow(L, p) and not is_small(L, p) and p != L.bottom:
                assert is_strongly_hollow(L, p)


def _pc_unique(L, x):
    return pseudo_complement(L, x).element is not None


def test_unique_supplement_conditions(lattices):
    for L in lattices.values():
        for p in range(L.size):
            if not is_small(L, p):
                r = dual_characterization_report(L, p)
                assert r.omega_nonempty and r.consistent
                assert r.cond_a == is_strongly_hollow(L, p)


@settings(max_examples=80, deadline=None)
@given(lattices())
def test_random_lattices_against_oracle(L):
    o, od = Oracle(L), Oracle(L, flip=True)
    for r in classify_all(L):
        p = r.element
        assert r.strongly_irreducible == o.si(p)
        assert r.irreducible == o.irr(p)
        assert r.strongly_hollow == od.si(p)
        assert characterization_report(L, p).consistent
        if r.strongly_irreducible:
            structure_dichotomy(L, p)


def test_subspace_matrix_ring_model():
    S = subspace_lattice(2, 2)
    assert si_elements(S) == [S.top]
    assert sh_elements(S) == [S.bottom]


def test_unique_supplements_need_modularity():
    from strongirr.builders import pentagon

    N = pentagon()
    assert all(len(supplements(N, q)) == 1 for q in range(N.size) if q != N.top)
    c = N.index("c")
    assert is_hollow(N, c) and not is_small(N, c)
    assert not is_strongly_hollow(N, c)
