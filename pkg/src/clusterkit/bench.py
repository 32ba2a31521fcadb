"""Timing suites over the desk-scale instances the library is meant for."""

from __future__ import annotations

import time
from math import comb

from .clusters import iter_clusters, simplex_check, tight_implies_simplex
from .families import full_family
from .shadows import kk_minimality_test
from .solver import solve


def _mubayi():
    cases = []
    for d, k, s, n in [(2, 2, 4, 4), (2, 2, 4, 5), (2, 3, 6, 6), (2, 3, 6, 7), (2, 3, 4, 6), (2, 2, 3, 4)]:
        t0 = time.perf_counter()
        r = solve(d, k, s, n)
        cases.append({"name": f"f({d},{k},{s},{n})", "value": r.value, "nodes": r.stats["nodes"],
                      "ok": r.exact, "seconds": time.perf_counter() - t0})
    return cases


def _tight_simplex():
    cases = []
    for d, k, n in [(2, 2, 6), (2, 3, 7), (3, 3, 7)]:
        F = full_family(n, k)
        s = k
        while tight_implies_simplex(d, k, s):
            t0 = time.perf_counter()
            total = bad = 0
            for tup in iter_clusters(F, d, s):
                total += 1
                if not simplex_check(list(tup)).is_simplex:
                    bad += 1
            cases.append({"name": f"clusters d={d} k={k} n={n} s={s}", "clusters": total,
                          "ok": bad == 0, "seconds": time.perf_counter() - t0})
            s += 1
    return cases


def _kk():
    cases = []
    for i in range(1, comb(6, 2) + 1):
        t0 = time.perf_counter()
        rep = kk_minimality_test(i, 2, 3, 6, samples=200, seed=i)
        cases.append({"name": f"KK i={i}", "ok": rep.passed, "seconds": time.perf_counter() - t0})
    return cases


SUITES = {"mubayi": _mubayi, "tight-simplex": _tight_simplex, "kk": _kk}


def run_suite(name: str) -> dict:
    t0 = time.perf_counter()
    cases = SUITES[name]()
    return {"suite": name, "cases": cases, "total_seconds": time.perf_counter() - t0}
