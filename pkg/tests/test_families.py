import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterkit.families import (
    Junta,
    KSubset,
    ParameterError,
    SetFamily,
    construct,
    empty_family,
    essential_containment,
    frankl_furedi,
    full_family,
    is_star,
    junta_generate,
    lex_compare,
    lex_family,
    lex_rank,
    lex_unrank,
    measure,
    odd_bipartite,
    random_family,
    restrict,
    star,
    to_mask,
)
from oracles import as_sets, conditional_probability, ksets, lex_sorted


def S(*els, n=4):
    return KSubset(tuple(els), n)


def fam(n, k, *sets):
    return SetFamily.from_sets(n, k, [tuple(int(c) for c in str(x)) for x in sets])


class TestKSubset:
    def test_rejects_unsorted(self):
        with pytest.raises(ParameterError):
            KSubset((2, 1), 4)

    def test_rejects_out_of_range(self):
        with pytest.raises(ParameterError):
            KSubset((0, 1), 4)
        with pytest.raises(ParameterError):
            KSubset((1, 5), 4)

    def test_of_sorts(self):
        assert KSubset.of([3, 1], 4).elements == (1, 3)


@pytest.mark.parametrize("a,b,expected", [
    ((1, 2), (1, 3), -1),
    ((1, 3), (2, 3), -1),
    ((2, 4), (2, 4), 0),
    ((2, 3), (1, 4), 1),
])
def test_lex_compare_examples(a, b, expected):
    assert lex_compare(S(*a), S(*b)) == expected


def test_lex_compare_mismatched_ambient():
    with pytest.raises(ParameterError):
        lex_compare(KSubset((1, 2), 4), KSubset((1, 2), 5))
    with pytest.raises(ParameterError):
        lex_compare(KSubset((1, 2), 4), KSubset((1, 2, 3), 4))


@pytest.mark.parametrize("n", range(1, 9))
def test_lex_prefix_matches_sorted_enumeration(n):
    for k in range(0, n + 1):
        order = lex_sorted(ksets(range(1, n + 1), k))
        for i in range(len(order) + 1):
            assert as_sets(lex_family(i, k, n)) == set(order[:i])


def test_lex_compare_is_total_order_on_small_universe():
    sets = [KSubset(tuple(sorted(s)), 6) for s in ksets(range(1, 7), 3)]
    ordered = sorted(sets)
    for a, b in zip(ordered, ordered[1:]):
        assert lex_compare(a, b) == -1 and lex_compare(b, a) == 1


def test_lex_family_examples():
    assert lex_family(3, 2, 4).sets() == [(1, 2), (1, 3), (1, 4)]
    assert len(lex_family(0, 3, 6)) == 0
    with pytest.raises(ParameterError):
        lex_family(7, 2, 4)
    with pytest.raises(ParameterError):
        lex_family(-1, 2, 4)


@pytest.mark.parametrize("n", range(3, 9))
def test_lex_star_prefix(n):
    for k in range(2, n):
        assert lex_family(comb(n - 1, k - 1), k, n) == star(n, k, 1)


@pytest.mark.parametrize("n", range(3, 9))
def test_lex_identity_first_m(n):
    for k in range(2, n):
        for m in range(2, n - k + 2):
            i = comb(n - 1, k - 1) - comb(n - m, k - 1)
            expected = {A for A in ksets(range(1, n + 1), k)
                        if 1 in A and A & frozenset(range(2, m + 1))}
            assert as_sets(lex_family(i, k, n)) == expected


def test_rank_unrank_roundtrip():
    n, k = 9, 4
    for r, c in enumerate(lex_sorted(ksets(range(1, n + 1), k))):
        t = tuple(sorted(c))
        assert lex_unrank(r, k, n) == t
        assert lex_rank(t, n) == r


def test_rank_unrank_scale():
    n, k = 30, 12
    r = comb(n, k) // 3
    assert lex_rank(lex_unrank(r, k, n), n) == r


def test_measure_examples():
    assert measure(star(6, 3)) == Fraction(1, 2)
    assert measure(empty_family(6, 3)) == 0
    assert measure(full_family(6, 3)) == 1


def test_restrict_examples():
    st4 = star(4, 2)
    r = restrict(st4, [1], [1])
    assert as_sets(r) == {frozenset({2}), frozenset({3}), frozenset({4})}
    assert measure(r) == 1
    r0 = restrict(st4, [1], [])
    assert len(r0) == 0
    full = restrict(full_family(4, 2), [1, 2], [2])
    assert as_sets(full) == {frozenset({3}), frozenset({4})}
    assert measure(full) == 1
    with pytest.raises(ParameterError):
        restrict(st4, [1], [2])


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 8).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(1, n - 1), st.integers(0, 2**32), st.integers(0, min(3, n)))))
def test_restriction_measure_is_conditional_probability(params):
    n, k, seed, jsize = params
    rng = random.Random(seed)
    F = random_family(n, k, rng.randint(0, comb(n, k)), seed)
    J = rng.sample(range(1, n + 1), jsize)
    members = as_sets(F)
    for r in range(len(J) + 1):
        for B in ksets(J, r):
            if len(B) > k:
                continue
            expected = conditional_probability(members, n, k, J, B)
            if expected is None:
                continue
            assert measure(restrict(F, J, B)) == expected


def test_junta_examples():
    assert junta_generate(Junta([1], [[1]], 5, 2), 2) == star(5, 2)
    J = [1, 2]
    all_B = [[], [1], [2], [1, 2]]
    assert junta_generate(Junta(J, all_B, 6, 3), 3) == full_family(6, 3)
    assert len(junta_generate(Junta(J, [], 6, 3), 3)) == 0


def test_junta_rejects_bad_generators():
    with pytest.raises(ParameterError):
        Junta([1], [[2]], 5, 2)
    with pytest.raises(ParameterError):
        Junta([1, 2, 3], [[1, 2, 3]], 5, 2)


def test_junta_restrict_roundtrip():
    n, k = 7, 3
    J = [1, 2, 3]
    G = [[1], [2, 3], []]
    fam_ = junta_generate(Junta(J, G, n, k), k)
    for r in range(4):
        for B in ksets(J, r):
            part = restrict(fam_, J, sorted(B))
            if to_mask(B) in {to_mask(b) for b in G}:
                assert len(part) == comb(n - len(J), k - len(B))
            else:
                assert len(part) == 0


def test_essential_containment_examples():
    s4 = star(4, 2)
    assert essential_containment(s4, s4) == 0
    assert essential_containment(s4, empty_family(4, 2)) == Fraction(1, 2)
    F = fam(4, 2, 13, 14, 23, 24)
    # {23, 24} lie outside the star of 1
    assert essential_containment(F, s4) == Fraction(1, 3)
    with pytest.raises(ParameterError):
        essential_containment(s4, star(5, 2))


def test_frankl_furedi():
    F = frankl_furedi(4, 2)
    assert F.sets() == [(1, 3), (1, 4), (2, 3), (2, 4)]
    for n, k in [(6, 2), (6, 3), (8, 2), (9, 3)]:
        F = frankl_furedi(n, k)
        assert len(F) == (n // k) ** k
        w = n // k
        for A in F.sets():
            assert sorted((a - 1) // w for a in A) == list(range(k))
    with pytest.raises(ParameterError):
        frankl_furedi(5, 2)


def test_odd_bipartite():
    F = odd_bipartite(6, 3)
    assert len(F) == 10
    assert sum(1 for A in F.sets() if len(set(A) & {1, 2, 3}) == 3) == 1
    assert measure(odd_bipartite(8, 4)) == Fraction(32, 70)
    with pytest.raises(ParameterError):
        odd_bipartite(7, 3)


def test_star_construct():
    assert construct("star", 5, 2, center=1).sets() == [(1, 2), (1, 3), (1, 4), (1, 5)]
    with pytest.raises(ParameterError):
        construct("star", 5, 2, center=6)
    assert is_star(star(6, 3, 4))
    assert not is_star(frankl_furedi(4, 2))


def test_random_family_reproducible():
    a = construct("random", 10, 4, size=30, seed=7)
    b = construct("random", 10, 4, size=30, seed=7)
    c = construct("random", 10, 4, size=30, seed=8)
    assert a == b and len(a) == 30
    assert a != c
    with pytest.raises(ParameterError):
        random_family(4, 2, 7)


def test_family_rejects_bad_members():
    with pytest.raises(ParameterError):
        SetFamily.from_sets(4, 2, [(1, 2, 3)])
    with pytest.raises(ParameterError):
        SetFamily.from_sets(4, 2, [(1, 5)])
    with pytest.raises(ParameterError):
        SetFamily.from_sets(4, 2, [(1, 2), (1, 2)])
