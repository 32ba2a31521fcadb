"""(d,k,s)-clusters, simplices, cross-family clusters and random cluster sampling.

A (d,k,s)-cluster is d+1 distinct k-sets whose union has at most s elements
and whose common intersection is empty.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .families import (
    ParameterError,
    SetFamily,
    _coerce_mask,
    from_mask,
    lex_key,
    measure,
    popcount,
    to_mask,
)
from .shadows import upper_shadow

EXHAUSTIVE = "exhaustive"
SIMPLEX_ONLY = "simplex_only"
SIMPLEX_CLUSTER_ONLY = "simplex_cluster_only"
MODES = (EXHAUSTIVE, SIMPLEX_ONLY, SIMPLEX_CLUSTER_ONLY)

MAX_SAMPLE_ATTEMPTS = 10**6


def cluster_span(d: int, l: int) -> int:
    """⌈(d+1) l / d⌉, the smallest union a (d, l, ·)-cluster can have."""
    return -(-(d + 1) * l // d)


@dataclass(frozen=True)
class ClusterWitness:
    sets: tuple  # masks, in the order found
    union_size: int
    d: int
    k: int
    s: int

    @property
    def total_intersection(self) -> int:
        acc = self.sets[0]
        for A in self.sets[1:]:
            acc &= A
        return acc

    def as_tuples(self) -> list[tuple[int, ...]]:
        return [from_mask(A) for A in self.sets]

    def to_json(self) -> dict:
        rep = simplex_check(list(self.sets))
        return {
            "sets": [list(t) for t in self.as_tuples()],
            "union_size": self.union_size,
            "d": self.d,
            "s": self.s,
            "simplex": rep.is_simplex,
            "simplex_cluster": rep.is_simplex_cluster,
        }


@dataclass(frozen=True)
class NotCluster:
    reason: str  # union-too-large | intersection-nonempty | duplicates
    union_size: int

    def __bool__(self):
        return False


def _masks_of(sets) -> list[int]:
    return [_coerce_mask(s) for s in sets]


def _union(masks) -> int:
    u = 0
    for A in masks:
        u |= A
    return u


def _inter(masks) -> int:
    it = iter(masks)
    acc = next(it)
    for A in it:
        acc &= A
    return acc


def _check_uniform(masks):
    sizes = {popcount(A) for A in masks}
    if len(sizes) > 1:
        raise ParameterError(f"sets have mixed sizes {sorted(sizes)}")
    return sizes.pop() if sizes else 0


def is_cluster(sets: Sequence, d: int, s: int):
    """ClusterWitness if the d+1 sets form a (d,k,s)-cluster, else NotCluster."""
    masks = _masks_of(sets)
    if len(masks) != d + 1:
        raise ParameterError(f"expected d+1={d + 1} sets, got {len(masks)}")
    k = _check_uniform(masks)
    u = popcount(_union(masks))
    if len(set(masks)) != len(masks):
        return NotCluster("duplicates", u)
    if u > s:
        return NotCluster("union-too-large", u)
    if _inter(masks):
        return NotCluster("intersection-nonempty", u)
    return ClusterWitness(tuple(masks), u, d, k, s)


@dataclass(frozen=True)
class SimplexReport:
    is_simplex: bool
    missing_d_subset: tuple | None
    is_simplex_cluster: bool
    union_size: int


def simplex_check(sets: Sequence) -> SimplexReport:
    """Is the collection a d-simplex (and a d-simplex-cluster, union <= 2k)?

    ``missing_d_subset`` holds the indices of a d-subset with empty
    intersection when one exists.
    """
    masks = _masks_of(sets)
    if len(masks) < 2:
        raise ParameterError("a simplex needs at least two sets")
    if len(set(masks)) != len(masks):
        raise ParameterError("sets must be pairwise distinct")
    k = _check_uniform(masks)
    d = len(masks) - 1
    u = popcount(_union(masks))
    missing = None
    for idx in combinations(range(d + 1), d):
        if not _inter(masks[i] for i in idx):
            missing = idx
            break
    simplex = not _inter(masks) and missing is None
    return SimplexReport(simplex, missing, simplex and u <= 2 * k, u)


def _is_simplex_masks(masks) -> bool:
    if _inter(masks):
        return False
    for skip in range(len(masks)):
        acc = -1
        for i, A in enumerate(masks):
            if i != skip:
                acc &= A
        if not acc:
            return False
    return True


def iter_clusters(F: SetFamily, d: int, s: int, mode: str = EXHAUSTIVE) -> Iterator[tuple[int, ...]]:
    """All (d,k,s)-clusters of F as mask tuples, in lex order of member tuples.

    The union bound prunes partial tuples; the empty-intersection test is
    only applied once d+1 sets are chosen.
    """
    if mode not in MODES:
        raise ParameterError(f"unknown mode {mode!r}")
    if d < 1:
        raise ParameterError("d must be at least 1")
    if mode == SIMPLEX_CLUSTER_ONLY:
        s = min(s, 2 * F.k)
    members = F.sorted_masks()
    N = len(members)
    want = d + 1
    chosen: list[int] = []

    def rec(start, union, inter):
        depth = len(chosen)
        if depth == want:
            if inter == 0 and (mode == EXHAUSTIVE or _is_simplex_masks(chosen)):
                yield tuple(chosen)
            return
        for idx in range(start, N - (want - depth) + 1):
            A = members[idx]
            u = union | A
            if popcount(u) > s:
                continue
            chosen.append(A)
            yield from rec(idx + 1, u, inter & A)
            chosen.pop()

    yield from rec(0, 0, -1)


def find_cluster(F: SetFamily, d: int, s: int, mode: str = EXHAUSTIVE) -> ClusterWitness | None:
    """First cluster of F (lex order of member tuples), or None."""
    for tup in iter_clusters(F, d, s, mode):
        return ClusterWitness(tup, popcount(_union(tup)), d, F.k, s)
    return None


def count_clusters(F: SetFamily, d: int, s: int, mode: str = EXHAUSTIVE) -> int:
    return sum(1 for _ in iter_clusters(F, d, s, mode))


def find_cross_cluster(families: Sequence[SetFamily], s: int, distinct: bool = True) -> ClusterWitness | None:
    """Sets A_i in F_i (one per family) forming a cluster with union <= s."""
    if len(families) < 2:
        raise ParameterError("need at least two families")
    F0 = families[0]
    for G in families[1:]:
        if G.n != F0.n or G.k != F0.k:
            raise ParameterError("families must share (n, k)")
    d = len(families) - 1
    lists = [G.sorted_masks() for G in families]
    chosen: list[int] = []

    def rec(i, union, inter):
        if i == len(lists):
            if inter == 0:
                return tuple(chosen)
            return None
        for A in lists[i]:
            if distinct and A in chosen:
                continue
            u = union | A
            if popcount(u) > s:
                continue
            chosen.append(A)
            got = rec(i + 1, u, inter & A)
            chosen.pop()
            if got is not None:
                return got
        return None

    tup = rec(0, 0, -1)
    if tup is None:
        return None
    return ClusterWitness(tup, popcount(_union(tup)), d, F0.k, s)


@dataclass(frozen=True)
class UnionBoundResult:
    deficits: tuple
    sum_of_deficits: Fraction
    guaranteed: bool
    l: int
    s: int

    def to_json(self) -> dict:
        from .shadows import _q
        return {
            "deficits": [_q(x) for x in self.deficits],
            "sum_of_deficits": _q(self.sum_of_deficits),
            "guaranteed": self.guaranteed,
            "l": self.l,
            "s": self.s,
        }


def union_bound_criterion(families: Sequence[SetFamily], l: int) -> UnionBoundResult:
    """Σ_i (1 - μ(F_i^{↑l})); below 1 a cross cluster among the shadows exists.

    The cluster it guarantees has union at most ⌈(d+1) l / d⌉.
    """
    d = len(families) - 1
    if d < 1:
        raise ParameterError("need at least two families")
    deficits = tuple(1 - measure(upper_shadow(G, l)) for G in families)
    total = sum(deficits, Fraction(0))
    return UnionBoundResult(deficits, total, total < 1, l, cluster_span(d, l))


def intersection_lower_bound(d: int, k: int, s: int) -> int:
    """Lower bound k - (d-1)(s-k) on each d-wise intersection of a cluster."""
    return k - (d - 1) * (s - k)


def tight_implies_simplex(d: int, k: int, s: int) -> bool:
    """True iff s < d k / (d-1), so every (d,k,s)-cluster is a d-simplex.

    Defined False for d = 1, where the threshold is undefined.
    """
    if d < 2:
        return False
    return s * (d - 1) < d * k


def sample_random_cluster(d: int, l: int, ground, seed=None) -> ClusterWitness:
    """A uniform (d, l, ⌈(d+1)l/d⌉)-cluster inside a uniform S ⊆ ground.

    S has size ⌈(d+1)l/d⌉; the d+1 sets are drawn as an ordered tuple of
    distinct l-subsets of S by rejection until their intersection is empty.
    """
    g = _coerce_mask(ground)
    t = cluster_span(d, l)
    elems = from_mask(g)
    if len(elems) < t:
        raise ParameterError(f"ground has {len(elems)} elements, need at least {t}")
    rng = random.Random(seed)
    S = sorted(rng.sample(elems, t))
    layer = [to_mask(c) for c in combinations(S, l)]
    if len(layer) < d + 1:
        raise RuntimeError(f"C(S, {l}) has fewer than d+1={d + 1} sets")
    for _ in range(MAX_SAMPLE_ATTEMPTS):
        tup = rng.sample(layer, d + 1)
        if not _inter(tup):
            return ClusterWitness(tuple(tup), popcount(_union(tup)), d, l, t)
    raise RuntimeError(
        f"no cluster found in C(S, {l}) after {MAX_SAMPLE_ATTEMPTS} attempts "
        f"(d={d}, l={l}, S={S})"
    )


@dataclass(frozen=True)
class IntersectingResult:
    intersecting: bool
    violation: tuple | None  # masks

    def __bool__(self):
        return self.intersecting


def s_wise_intersecting(F: SetFamily, s: int) -> IntersectingResult:
    """Whether every s members (repetition allowed) share an element.

    Since repetition never empties an intersection, only distinct tuples
    are searched. The violation is the lex-least tuple found; it may have
    fewer than s sets when F is small or a shorter tuple already fails.
    """
    if s < 2:
        raise ParameterError("s must be at least 2")
    members = F.sorted_masks()
    N = len(members)
    chosen: list[int] = []

    def rec(start, inter):
        if chosen and inter == 0:
            return tuple(chosen)
        if len(chosen) == s:
            return None
        for idx in range(start, N):
            A = members[idx]
            chosen.append(A)
            got = rec(idx + 1, inter & A)
            chosen.pop()
            if got is not None:
                return got
        return None

    got = rec(0, -1)
    if got is None:
        return IntersectingResult(True, None)
    # pad with the next members in lex order to a full s-tuple when possible
    padded = list(got)
    for A in members:
        if len(padded) >= s:
            break
        if A not in padded:
            padded.append(A)
    padded.sort(key=lex_key)
    return IntersectingResult(False, tuple(padded))
