"""Exact computation of f(d,k,s,n), the largest (d,k,s)-cluster-free family.

The search is include/exclude branch-and-bound over the k-subsets of [n] in
lex order. Candidates that would complete a cluster with the chosen sets are
dropped as soon as a set is included (forward checking), and a branch is cut
when |chosen| + |feasible remaining| cannot beat the incumbent.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import comb

from .clusters import cluster_span
from .families import (
    ParameterError,
    SetFamily,
    from_mask,
    full_mask,
    is_star,
    k_subsets,
    lex_key,
    popcount,
    star,
    to_mask,
)

EXACT = "exact"
VERIFY_STAR = "verify_star"
GREEDY = "greedy"

UNIQUENESS_LIMIT = 40


class BudgetExhausted(Exception):
    pass


def _completes_cluster(A: int, C: int, chosen: list[int], d: int, s: int) -> bool:
    """Do A, C and some d-1 further chosen sets form a (d,·,s)-cluster?"""
    base = A | C
    if popcount(base) > s:
        return False
    need = d - 1
    if need == 0:
        return not (A & C)
    N = len(chosen)

    def rec(start, depth, union, inter):
        if depth == need:
            return inter == 0
        for i in range(start, N - (need - depth) + 1):
            X = chosen[i]
            u = union | X
            if popcount(u) > s:
                continue
            if rec(i + 1, depth + 1, u, inter & X):
                return True
        return False

    return rec(0, 0, base, A & C)


def _creates_cluster(A: int, chosen: list[int], d: int, s: int) -> bool:
    """Would adding A to ``chosen`` create a cluster (with d chosen partners)?"""
    N = len(chosen)

    def rec(start, depth, union, inter):
        if depth == d:
            return inter == 0
        for i in range(start, N - (d - depth) + 1):
            X = chosen[i]
            u = union | X
            if popcount(u) > s:
                continue
            if rec(i + 1, depth + 1, u, inter & X):
                return True
        return False

    return rec(0, 0, A, A)


@dataclass
class _Search:
    d: int
    s: int
    best: int
    best_family: list
    exclude_first: bool
    node_cap: int | None = None
    deadline: float | None = None
    collect_size: int | None = None
    collected: list = field(default_factory=list)
    nodes: int = 0

    def tick(self):
        self.nodes += 1
        if self.node_cap is not None and self.nodes > self.node_cap:
            raise BudgetExhausted
        if self.deadline is not None and self.nodes % 1024 == 0 and time.monotonic() > self.deadline:
            raise BudgetExhausted

    def run(self, chosen: list[int], remaining: list[int]):
        self.tick()
        if self.collect_size is not None:
            if len(chosen) == self.collect_size:
                self.collected.append(list(chosen))
                return
            if len(chosen) + len(remaining) < self.collect_size:
                return
        else:
            if len(chosen) > self.best:
                self.best = len(chosen)
                self.best_family = list(chosen)
            if len(chosen) + len(remaining) <= self.best:
                return
        if not remaining:
            return
        A, rest = remaining[0], remaining[1:]
        if self.exclude_first:
            self.run(chosen, rest)
            self._include(chosen, A, rest)
        else:
            self._include(chosen, A, rest)
            self.run(chosen, rest)

    def _include(self, chosen, A, rest):
        kept = [C for C in rest if not _completes_cluster(A, C, chosen, self.d, self.s)]
        chosen.append(A)
        self.run(chosen, kept)
        chosen.pop()


@dataclass
class SolveResult:
    d: int
    k: int
    s: int
    n: int
    value: int
    witness: SetFamily
    exact: bool
    star_is_max: bool | None
    mode: str = EXACT
    uniqueness: dict | None = None
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        uniq = self.uniqueness
        if uniq is not None and uniq.get("counterexample") is not None:
            uniq = {**uniq, "counterexample": [list(t) for t in uniq["counterexample"]]}
        return {
            "d": self.d, "k": self.k, "s": self.s, "n": self.n,
            "mode": self.mode,
            "value": self.value,
            "exact": self.exact,
            "star_is_max": self.star_is_max,
            "witness": [list(t) for t in self.witness.sets()],
            "uniqueness": uniq,
            "stats": dict(self.stats),
        }


def _validate(d, k, s, n):
    if d < 1:
        raise ParameterError(f"d must be at least 1, got {d}")
    if not 1 <= k <= n:
        raise ParameterError(f"need 1 <= k <= n (k={k}, n={n})")
    if s < 0:
        raise ParameterError(f"s must be nonnegative, got {s}")


def _candidates(n: int, k: int, perm=None) -> list[int]:
    base = list(k_subsets(full_mask(n), k))
    if perm is None:
        return base
    return [to_mask(perm[e] for e in from_mask(A)) for A in base]


def max_cluster_free(candidates: list[int], d: int, s: int, *, lower_bound: int = 0,
                     incumbent: list[int] | None = None, exclude_first: bool = True,
                     node_cap: int | None = None, time_cap: float | None = None):
    """Largest cluster-free subfamily of ``candidates``.

    Returns (size, family masks, exact flag, nodes). Only families strictly
    larger than ``lower_bound`` are searched for; ``incumbent`` is returned
    if nothing better turns up.
    """
    deadline = time.monotonic() + time_cap if time_cap else None
    search = _Search(d, s, lower_bound, list(incumbent or []), exclude_first,
                     node_cap, deadline)
    exact = True
    try:
        search.run([], list(candidates))
    except BudgetExhausted:
        exact = False
    return search.best, search.best_family, exact, search.nodes


def enumerate_maximum_families(candidates: list[int], d: int, s: int, size: int,
                               node_cap: int | None = None) -> list[list[int]]:
    """All cluster-free subfamilies of ``candidates`` with exactly ``size`` sets."""
    search = _Search(d, s, 0, [], False, node_cap, collect_size=size)
    search.run([], list(candidates))
    return search.collected


def solve(d: int, k: int, s: int, n: int, mode: str = EXACT, *, seed=0, restarts: int = 20,
          node_cap: int | None = None, time_cap: float | None = None,
          check_uniqueness: bool = False, perm: dict | None = None) -> SolveResult:
    """f(d, k, s, n) with a maximum witness family.

    ``perm`` relabels the ground set before the search (the value must not
    change). ``verify_star`` only asks whether anything beats the star.
    """
    _validate(d, k, s, n)
    mode = mode.replace("-", "_")
    t0 = time.monotonic()
    star_size = comb(n - 1, k - 1)
    st = star(n, k, 1)
    if mode == GREEDY:
        fam = greedy_lower_bound(d, k, s, n, seed=seed, restarts=restarts)
        return SolveResult(d, k, s, n, len(fam), fam, False,
                           None, mode, None,
                           {"nodes": 0, "wall_time": time.monotonic() - t0})
    if mode not in (EXACT, VERIFY_STAR):
        raise ParameterError(f"unknown solve mode {mode!r}")
    cands = _candidates(n, k, perm)
    incumbent = sorted(st.members, key=lex_key)
    value, fam, exact, nodes = max_cluster_free(
        cands, d, s, lower_bound=star_size, incumbent=incumbent,
        exclude_first=True, node_cap=node_cap, time_cap=time_cap)
    witness = SetFamily(n, k, frozenset(fam))
    star_is_max = (value == star_size) if exact else (False if value > star_size else None)
    uniqueness = None
    if check_uniqueness or mode == VERIFY_STAR:
        uniqueness = _uniqueness(cands, d, s, n, k, value, exact)
    stats = {"nodes": nodes, "wall_time": time.monotonic() - t0}
    return SolveResult(d, k, s, n, value, witness, exact, star_is_max, mode, uniqueness, stats)


def _uniqueness(cands, d, s, n, k, value, exact) -> dict:
    if not exact or len(cands) > UNIQUENESS_LIMIT:
        return {"checked": False, "all_maxima_are_stars": None, "counterexample": None,
                "count": None}
    maxima = enumerate_maximum_families(cands, d, s, value)
    counter = None
    for fam in maxima:
        F = SetFamily(n, k, frozenset(fam))
        if not is_star(F):
            counter = F.sets()
            break
    return {"checked": True, "all_maxima_are_stars": counter is None,
            "counterexample": counter, "count": len(maxima)}


def verify_star_extremal(d: int, k: int, s: int, n: int, enumerate_maxima: bool = True, **kw):
    """Is f(d,k,s,n) = C(n-1, k-1)?

    Returns (flag, counterexample SetFamily or None, SolveResult). The
    counterexample is a cluster-free family beating the star, or, with
    ``enumerate_maxima``, a non-star family of star size.
    """
    res = solve(d, k, s, n, EXACT, check_uniqueness=enumerate_maxima, **kw)
    star_size = comb(n - 1, k - 1)
    res.mode = VERIFY_STAR
    if res.value > star_size:
        return False, res.witness, res
    if res.uniqueness and res.uniqueness.get("counterexample"):
        return True, SetFamily.from_sets(n, k, res.uniqueness["counterexample"]), res
    return True, None, res


def greedy_lower_bound(d: int, k: int, s: int, n: int, seed=0, restarts: int = 1) -> SetFamily:
    """Best of ``restarts`` randomized greedy passes; always cluster-free."""
    _validate(d, k, s, n)
    rng = random.Random(seed)
    base = list(k_subsets(full_mask(n), k))
    best: list[int] = []
    for _ in range(max(1, restarts)):
        order = base[:]
        rng.shuffle(order)
        chosen: list[int] = []
        for A in order:
            if not _creates_cluster(A, chosen, d, s):
                chosen.append(A)
        if len(chosen) > len(best):
            best = chosen
    return SetFamily(n, k, frozenset(best))


def max_swise_intersecting_size(n: int, k: int, t: int) -> int:
    """Largest t-wise intersecting family in C([n], k), by plain backtracking.

    Kept separate from the cluster search so the two can cross-check.
    """
    sets = list(k_subsets(full_mask(n), k))
    best = 0

    def ok(A, chosen):
        # every <= t-1 chosen sets together with A must share an element
        def rec(start, depth, inter):
            if inter == 0:
                return False
            if depth == t - 1:
                return True
            for i in range(start, len(chosen)):
                if not rec(i + 1, depth + 1, inter & chosen[i]):
                    return False
            return True

        return rec(0, 0, A)

    def go(i, chosen):
        nonlocal best
        if len(chosen) + (len(sets) - i) <= best:
            return
        if i == len(sets):
            best = max(best, len(chosen))
            return
        A = sets[i]
        if ok(A, chosen):
            chosen.append(A)
            go(i + 1, chosen)
            chosen.pop()
        go(i + 1, chosen)

    go(0, [])
    return best


@dataclass
class ScanRow:
    s: int
    value: int
    exact: bool


def f_monotonicity_scan(d: int, k: int, n: int, s_range, **kw) -> dict:
    """f(d,k,s,n) over a range of s, with the known structural checks."""
    rows = [ScanRow(s, (r := solve(d, k, s, n, **kw)).value, r.exact) for s in s_range]
    full = comb(n, k)
    low = cluster_span(d, k)
    high = min((d + 1) * k, n)
    nonincreasing = all(a.value >= b.value for a, b in zip(rows, rows[1:]))
    below_ok = all(r.value == full for r in rows if r.s < low)
    above = [r for r in rows if r.s >= high]
    above_ok = True
    if above:
        target = max_swise_intersecting_size(n, k, d + 1)
        above_ok = all(r.value == target for r in above)
    return {
        "d": d, "k": k, "n": n,
        "rows": [{"s": r.s, "value": r.value, "exact": r.exact} for r in rows],
        "nonincreasing": nonincreasing,
        "below_threshold_full": below_ok,
        "above_threshold_intersecting": above_ok,
    }
