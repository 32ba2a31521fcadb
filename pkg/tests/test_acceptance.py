"""Exit criteria, one test per criterion, each at its stated tolerance.

Run ``pytest tests/test_acceptance.py`` to see the PASS/FAIL summary.
"""

import random
import time
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from clusterkit.clusters import (
    cluster_span,
    find_cluster,
    find_cross_cluster,
    intersection_lower_bound,
    is_cluster,
    iter_clusters,
    simplex_check,
    tight_implies_simplex,
    union_bound_criterion,
)
from clusterkit.families import (
    Junta,
    frankl_furedi,
    full_family,
    lex_family,
    measure,
    odd_bipartite,
    popcount,
    random_family,
)
from clusterkit.juntas import junta_cluster_equivalence
from clusterkit.shadows import biased_measure, monotone_closure, upper_shadow
from clusterkit.solver import f_monotonicity_scan, solve
from oracles import as_sets, ksets, powerset_biased_measure


@pytest.fixture
def criterion(request):
    def tag(label):
        request.node.user_properties.append(("criterion", label))
    return tag


def test_c01_mubayi_exact_values(criterion):
    criterion("1: Mubayi exact values f(2,2,4,5)=4, f(2,2,4,4)=3, f(2,3,6,6)=10, f(2,3,6,7)=15")
    t0 = time.monotonic()
    expected = {(2, 2, 4, 5): 4, (2, 2, 4, 4): 3, (2, 3, 6, 6): 10, (2, 3, 6, 7): 15}
    for (d, k, s, n), value in expected.items():
        uniq = (d, k, s, n) in {(2, 3, 6, 6), (2, 2, 4, 5)}
        r = solve(d, k, s, n, check_uniqueness=uniq)
        assert r.exact and r.value == value == comb(n - 1, k - 1)
        assert r.star_is_max is True
        assert find_cluster(r.witness, d, s) is None
        if uniq:
            assert r.uniqueness["checked"] and r.uniqueness["all_maxima_are_stars"]
    assert time.monotonic() - t0 < 60


def test_c02_small_span_has_no_clusters(criterion):
    criterion("2: f(2,3,4,6) = C(6,3) = 20")
    r = solve(2, 3, 4, 6)
    assert r.exact and r.value == comb(6, 3) == 20
    assert 4 < cluster_span(2, 3)


def test_c03_frankl_furedi_regime(criterion):
    criterion("3: Frankl-Furedi family beats the star")
    ff8 = frankl_furedi(8, 2)
    assert find_cluster(ff8, 2, 3) is None
    assert len(ff8) == 16 > comb(7, 1)
    r = solve(2, 2, 3, 4)
    assert r.exact and r.value == 4 > comb(3, 1)
    ff4 = frankl_furedi(4, 2)
    assert len(ff4) == r.value and find_cluster(ff4, 2, 3) is None


def test_c04_tight_clusters_are_simplices(criterion):
    criterion("4: tight clusters are simplices with large d-wise intersections")
    t0 = time.monotonic()
    violations = 0
    examined = 0
    for d, k, n in [(2, 2, 6), (2, 3, 7), (3, 3, 7)]:
        F = full_family(n, k)
        for s in range(0, n + 1):
            if not tight_implies_simplex(d, k, s):
                continue
            bound = intersection_lower_bound(d, k, s)
            for tup in iter_clusters(F, d, s):
                examined += 1
                if not simplex_check(list(tup)).is_simplex:
                    violations += 1
                for sub in combinations(tup, d):
                    inter = -1
                    for A in sub:
                        inter &= A
                    if popcount(inter) < bound:
                        violations += 1
    assert examined > 0
    assert violations == 0
    assert time.monotonic() - t0 < 120


def test_c05_shadow_measure_property(criterion):
    criterion("5: mu(F) <= mu(F^l) on 1000 random families")
    rng = random.Random(2024)
    violations = 0
    for _ in range(1000):
        n = rng.randint(2, 10)
        k = rng.randint(1, n - 1)
        l = rng.randint(k + 1, n)
        F = random_family(n, k, rng.randint(0, comb(n, k)), rng.getrandbits(64))
        if measure(F) > measure(upper_shadow(F, l)):
            violations += 1
    assert violations == 0


def test_c06_kruskal_katona_minimality(criterion):
    criterion("6: |F^3| >= |L(i,2,6)^3| for 200 random families per i")
    n, k, l = 6, 2, 3
    rng = random.Random(6)
    violations = 0
    for i in range(1, comb(n, k) + 1):
        lex = len(upper_shadow(lex_family(i, k, n), l))
        for _ in range(200):
            F = random_family(n, k, i, rng.getrandbits(64))
            if len(upper_shadow(F, l)) < lex:
                violations += 1
    assert violations == 0


def test_c07_lex_identity(criterion):
    criterion("7: L(C(n-1,k-1)-C(n-m,k-1),k,n) = {A: 1 in A, A meets [2..m]}")
    checked = 0
    for n in range(2, 9):
        for k in range(1, n + 1):
            for m in range(2, n - k + 2):
                i = comb(n - 1, k - 1) - comb(n - m, k - 1)
                expected = {A for A in ksets(range(1, n + 1), k)
                            if 1 in A and A & frozenset(range(2, m + 1))}
                assert as_sets(lex_family(i, k, n)) == expected
                checked += 1
    assert checked > 50


def test_c08_junta_equivalence(criterion):
    criterion("8: juntas with |J| <= 2 are cluster-free iff 3-wise intersecting")
    n, k, d = 12, 3, 2
    disagreements = 0
    cases = 0
    for j in range(0, 3):
        J = list(range(1, j + 1))
        subsets = [list(c) for r in range(j + 1) for c in combinations(J, r)]
        s = cluster_span(d, k) + j
        for bits in range(1 << len(subsets)):
            G = [subsets[t] for t in range(len(subsets)) if bits >> t & 1]
            v = junta_cluster_equivalence(Junta(J, G, n, k), k, d, s)
            cases += 1
            if not v.equivalent:
                disagreements += 1
    assert cases == 2 + 4 + 16
    assert disagreements == 0


def test_c09_layer_formula(criterion):
    criterion("9: layered biased measure equals power-set enumeration")
    rng = random.Random(9)
    ps = [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2)]
    for t in range(100):
        n = rng.randint(2, 12)
        k = rng.randint(1, n - 1)
        F = random_family(n, k, rng.randint(0, min(comb(n, k), 60)), rng.getrandbits(64))
        p = ps[t % 3]
        assert biased_measure(monotone_closure(F), p) == powerset_biased_measure(
            as_sets(F), range(1, n + 1), p)


def test_c10_odd_bipartite(criterion):
    criterion("10: odd bipartite (8,4) has no (2,4,6)-cluster, measure 32/70")
    F = odd_bipartite(8, 4)
    assert find_cluster(F, 2, 6) is None
    assert measure(F) == Fraction(32, 70)


def test_c11_union_bound(criterion):
    criterion("11: union-bound criterion implies a cross cluster (20 triples)")
    n, k, l, d = 9, 3, 4, 2
    rng = random.Random(11)
    triples = 0
    failures = 0
    while triples < 20:
        fams = [random_family(n, k, rng.randint(15, 50), rng.getrandbits(64)) for _ in range(3)]
        res = union_bound_criterion(fams, l)
        if not res.guaranteed:
            continue
        triples += 1
        w = find_cross_cluster([upper_shadow(F, l) for F in fams], cluster_span(d, l))
        if w is None or not is_cluster(list(w.sets), d, cluster_span(d, l)):
            failures += 1
    assert failures == 0


def test_c12_monotone_in_s(criterion):
    criterion("12: f(d,k,s,n) non-increasing in s")
    for d, k, n, srange in [(2, 2, 4, range(2, 5)), (2, 3, 6, range(4, 7))]:
        rep = f_monotonicity_scan(d, k, n, srange)
        values = [row["value"] for row in rep["rows"]]
        assert all(row["exact"] for row in rep["rows"])
        assert values == sorted(values, reverse=True)
        assert rep["nonincreasing"] and rep["below_threshold_full"]
        assert rep["above_threshold_intersecting"]
