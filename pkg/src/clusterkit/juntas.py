"""Regularity, regular decompositions, junta cluster tests and star stability."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil, comb

from .clusters import find_cluster, s_wise_intersecting
from .families import (
    Junta,
    SetFamily,
    from_mask,
    junta_generate,
    measure,
    popcount,
    restrict,
    to_mask,
    trace_counts,
)
from .shadows import _q


def _subsets(mask: int):
    """All submasks of ``mask``, smallest first."""
    els = from_mask(mask)
    for r in range(len(els) + 1):
        for c in combinations(els, r):
            yield to_mask(c)


def _restricted_universe(F: SetFamily, j: int, b: int) -> int:
    """C(|X| - |J|, k - |B|), the size of the universe F_J^B lives in."""
    kb = F.k - b
    if kb < 0:
        return 0
    return comb(F.ground_size - j, kb)


def _part_measure(F: SetFamily, J: int, B: int) -> Fraction:
    hits = sum(1 for A in F.members if A & J == B)
    return Fraction(hits, _restricted_universe(F, popcount(J), popcount(B)))


@dataclass(frozen=True)
class RegularityReport:
    r: int
    epsilon: Fraction
    regular: bool
    worst_witness: tuple | None  # (J mask, B mask, deviation)

    def to_json(self) -> dict:
        w = None
        if self.worst_witness is not None:
            J, B, dev = self.worst_witness
            w = {"J": list(from_mask(J)), "B": list(from_mask(B)), "deviation": _q(dev)}
        return {"r": self.r, "epsilon": _q(self.epsilon), "regular": self.regular,
                "worst_witness": w}


def restriction_deviations(F: SetFamily, r: int):
    """Yield (J, B, |μ(F_J^B) - μ(F)|) over |J| <= r, B ⊆ J.

    Pairs whose restricted universe is empty (|B| > k, or too few free
    elements left) are skipped.
    """
    mu = measure(F)
    ground = from_mask(F.ground)
    for size in range(min(r, len(ground)) + 1):
        for Jt in combinations(ground, size):
            J = to_mask(Jt)
            counts = trace_counts(F, J)
            for B in _subsets(J):
                universe = _restricted_universe(F, size, popcount(B))
                if universe == 0:
                    continue
                dev = abs(Fraction(counts.get(B, 0), universe) - mu)
                yield J, B, dev


def regularity_check(F: SetFamily, r: int, epsilon) -> RegularityReport:
    """(r, ε)-regularity: every restriction with |J| <= r is within ε of μ(F)."""
    epsilon = Fraction(epsilon)
    mu = measure(F)
    worst, best_key = None, None
    for J, B, dev in restriction_deviations(F, r):
        # ties go to the first over-represented part
        key = (dev, dev > 0 and _part_measure(F, J, B) > mu)
        if worst is None or key > best_key:
            worst, best_key = (J, B, dev), key
    regular = worst is None or worst[2] <= epsilon
    return RegularityReport(r, epsilon, regular, worst)


@dataclass(frozen=True)
class PartReport:
    B: int
    regular: bool
    measure: Fraction
    r: int


@dataclass(frozen=True)
class DecompositionResult:
    J: int
    G: frozenset
    remainder_measure: Fraction
    parts: tuple  # PartReport for each B ∈ G

    def to_json(self) -> dict:
        return {
            "J": list(from_mask(self.J)),
            "G": sorted([list(from_mask(B)) for B in self.G], key=lambda b: (len(b), b)),
            "remainder_measure": _q(self.remainder_measure),
            "parts": [
                {"B": list(from_mask(p.B)), "regular": p.regular,
                 "measure": _q(p.measure), "r": p.r}
                for p in self.parts
            ],
        }


def find_regular_decomposition(F: SetFamily, delta, epsilon, j_max: int) -> DecompositionResult | None:
    """Search J by size then lex for a regular decomposition of F.

    For each J the canonical G collects every B whose part F_J^B is
    (min(⌈1/δ⌉, |X| - |J|), δ)-regular with measure above ε/2; J is accepted
    when F is ε-essentially contained in <G>.
    """
    delta, epsilon = Fraction(delta), Fraction(epsilon)
    r_full = ceil(1 / delta)
    total = F.universe_size()
    ground = from_mask(F.ground)
    for size in range(min(j_max, len(ground)) + 1):
        r = min(r_full, len(ground) - size)
        for Jt in combinations(ground, size):
            J = to_mask(Jt)
            counts = trace_counts(F, J)
            G, parts = set(), []
            for B in _subsets(J):
                if _restricted_universe(F, size, popcount(B)) == 0:
                    continue
                part = restrict(F, J, B)
                mu = measure(part)
                if mu <= epsilon / 2:
                    continue
                rep = regularity_check(part, r, delta)
                if rep.regular:
                    G.add(B)
                    parts.append(PartReport(B, True, mu, r))
            outside = sum(c for B, c in counts.items() if B not in G)
            remainder = Fraction(outside, total) if total else Fraction(0)
            if remainder <= epsilon:
                return DecompositionResult(J, frozenset(G), remainder, tuple(parts))
    return None


@dataclass(frozen=True)
class EquivalenceVerdict:
    cluster_free: bool
    dplus1_wise: bool
    in_known_range: bool

    @property
    def equivalent(self) -> bool:
        return self.cluster_free == self.dplus1_wise

    def to_json(self) -> dict:
        return {"cluster_free": self.cluster_free, "dplus1_wise": self.dplus1_wise,
                "equivalent": self.equivalent, "in_known_range": self.in_known_range}


def junta_cluster_equivalence(junta: Junta, k: int, d: int, s: int) -> EquivalenceVerdict:
    """Compare cluster-freeness of <G> with (d+1)-wise intersection.

    ``in_known_range`` is set when s >= (d+1)k/d + |J| and n >= s, the range
    where the two are known to coincide.
    """
    fam = junta_generate(junta, k)
    free = find_cluster(fam, d, s) is None
    inter = s_wise_intersecting(fam, d + 1).intersecting
    applies = d * s >= (d + 1) * k + d * junta.j and junta.n >= s
    return EquivalenceVerdict(free, inter, applies)


@dataclass(frozen=True)
class StabilityReport:
    best_center: int
    outside_measure: Fraction
    inside_deficit: Fraction

    def to_json(self) -> dict:
        return {"best_center": self.best_center, "outside_measure": _q(self.outside_measure),
                "inside_deficit": _q(self.inside_deficit)}


def stability_report(F: SetFamily) -> StabilityReport:
    """Closest star to F: the center minimising |F \\ S| (smallest such center)."""
    N = F.ground_size
    total = comb(N, F.k)
    star_size = comb(N - 1, F.k - 1) if F.k >= 1 else 0
    best = None
    for c in from_mask(F.ground):
        bit = 1 << c
        inside = sum(1 for A in F.members if A & bit)
        outside = len(F) - inside
        if best is None or outside < best[1]:
            best = (c, outside, inside)
    if best is None:
        raise ValueError("empty ground set")
    c, outside, inside = best
    deficit = 1 - Fraction(inside, star_size) if star_size else Fraction(0)
    return StabilityReport(c, Fraction(outside, total), deficit)
