"""Upper shadows, monotone closures, p-biased measures and Kruskal-Katona checks."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .families import (
    ParameterError,
    SetFamily,
    empty_family,
    lex_family,
    random_family,
)


def _up_one(masks, ground: int) -> set[int]:
    out = set()
    for A in masks:
        free = ground & ~A
        while free:
            low = free & -free
            out.add(A | low)
            free ^= low
    return out


def upper_shadow(F: SetFamily, l: int) -> SetFamily:
    """F^{↑l}: the l-sets of the ground set containing some member of F.

    Built one level at a time from the previous layer; cost is
    O(sum of layer sizes * n).
    """
    if not F.k <= l <= F.ground_size:
        raise ParameterError(f"level l={l} outside [k={F.k}, |X|={F.ground_size}]")
    layer = set(F.members)
    for _ in range(l - F.k):
        layer = _up_one(layer, F.ground)
    return SetFamily(F.n, l, frozenset(layer), F.ground)


@dataclass(frozen=True)
class LayeredFamily:
    """A non-uniform family stored as uniform layers, keyed by level."""

    n: int
    ground: int
    layers: dict = field(default_factory=dict)

    @property
    def ground_size(self) -> int:
        return bin(self.ground).count("1")

    def layer(self, r: int) -> SetFamily:
        if r in self.layers:
            return self.layers[r]
        return empty_family(self.n, r, self.ground)

    def __contains__(self, mask: int) -> bool:
        r = bin(mask).count("1")
        return r in self.layers and mask in self.layers[r].members

    def is_monotone(self) -> bool:
        for r in range(self.ground_size):
            up = _up_one(self.layer(r).members, self.ground)
            if not up <= self.layer(r + 1).members:
                return False
        return True


def monotone_closure(F: SetFamily) -> LayeredFamily:
    """F^↑ as layers k..|X| (lower layers are empty)."""
    layers = {}
    layer = set(F.members)
    for r in range(F.k, F.ground_size + 1):
        if r > F.k:
            layer = _up_one(layer, F.ground)
        layers[r] = SetFamily(F.n, r, frozenset(layer), F.ground)
    for r in range(F.k):
        layers[r] = empty_family(F.n, r, F.ground)
    return LayeredFamily(F.n, F.ground, layers)


def _check_p(p) -> Fraction:
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ParameterError(f"p={p} outside [0, 1]")
    return p


def biased_measure(LF: LayeredFamily, p) -> Fraction:
    """μ_p of a layered family: Σ_r p^r (1-p)^{N-r} C(N, r) μ(layer r).

    C(N, r) μ(layer r) is just the layer size, so no division is needed.
    """
    p = _check_p(p)
    q = 1 - p
    N = LF.ground_size
    total = Fraction(0)
    for r, layer in LF.layers.items():
        if layer.members:
            total += p**r * q ** (N - r) * len(layer)
    return total


# ---------------------------------------------------------------------------
# Kruskal-Katona


@dataclass
class KKBoundReport:
    n: int
    k: int
    l: int
    size: int
    actual: int
    epsilon: Fraction
    m: int
    epsilon_prime: Fraction
    bound1: Fraction
    bound2: Fraction
    C: Fraction
    bound3_epsilon: float
    satisfied: dict
    is_lex: bool

    def to_json(self) -> dict:
        return {
            "n": self.n, "k": self.k, "l": self.l, "size": self.size,
            "actual": self.actual,
            "bounds": {
                "bound1": _q(self.bound1),
                "bound2": _q(self.bound2),
                "bound3_epsilon": self.bound3_epsilon,
                "C": _q(self.C),
            },
            "epsilon": _q(self.epsilon),
            "epsilon_prime": _q(self.epsilon_prime),
            "m": self.m,
            "is_lex": self.is_lex,
            "satisfied": dict(self.satisfied),
        }


def _q(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _power_form_holds(eps: Fraction, C: Fraction, deficit: Fraction) -> bool:
    """Exact test of C * eps^(1 + 1/C) >= deficit for rational C = a/b > 0."""
    if deficit <= 0:
        return True
    if eps == 0:
        return False
    a, b = C.numerator, C.denominator
    # eps^((a+b)/a) >= deficit / C  <=>  eps^(a+b) >= (deficit / C)^a
    return eps ** (a + b) >= (deficit / C) ** a


def kk_verify(F: SetFamily, l: int, C=2) -> KKBoundReport:
    """Evaluate the three bounds that follow from Kruskal-Katona for |F^{↑l}|.

    Parts (1) and (2) hold for every F. Part (3) uses a caller-supplied C
    and is informational: its constant is only known to exist.
    """
    n, k = F.ground_size, F.k
    if not k < l < n:
        raise ParameterError(f"need k < l < n (k={k}, l={l}, n={n})")
    C = Fraction(C)
    if C <= 0:
        raise ParameterError("C must be positive")
    star_k = comb(n - 1, k - 1)
    star_l = comb(n - 1, l - 1)
    size = min(len(F), star_k)
    eps = 1 - Fraction(size, star_k)
    m = max(mm for mm in range(1, n + 1) if size >= star_k - comb(n - mm, k - 1))
    tail_k = comb(n - m, k - 1)
    eps_prime = 1 - Fraction(star_k - size, tail_k) if tail_k else Fraction(1)
    actual = len(upper_shadow(F, l))
    bound1 = star_l * (1 - eps)
    bound2 = star_l - (1 - eps_prime) * comb(n - m, l - 1)
    deficit = 1 - Fraction(actual, star_l)
    b3 = float(C) * float(eps) ** (1 + 1 / float(C))
    lex = F.ground == (((1 << F.n) - 1) << 1) and F == lex_family(len(F), k, F.n)
    return KKBoundReport(
        n=n, k=k, l=l, size=len(F), actual=actual, epsilon=eps, m=m,
        epsilon_prime=eps_prime, bound1=bound1, bound2=bound2, C=C,
        bound3_epsilon=b3,
        satisfied={
            "bound1": actual >= bound1,
            "bound2": actual >= bound2,
            "bound3": _power_form_holds(eps, C, deficit),
        },
        is_lex=lex,
    )


@dataclass
class KKMinimalityReport:
    i: int
    k: int
    l: int
    n: int
    samples: int
    lex_shadow: int
    min_observed: int | None
    violations: int

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_json(self) -> dict:
        return {**self.__dict__, "passed": self.passed}


def kk_minimality_test(i: int, k: int, l: int, n: int, samples: int = 200, seed=0) -> KKMinimalityReport:
    """Random families of size i never have smaller l-shadow than L(i, k, n)."""
    if not k < l < n:
        raise ParameterError(f"need k < l < n (k={k}, l={l}, n={n})")
    lex_size = len(upper_shadow(lex_family(i, k, n), l))
    rng = random.Random(seed)
    observed = []
    for _ in range(samples):
        F = random_family(n, k, i, rng.getrandbits(64))
        observed.append(len(upper_shadow(F, l)))
    violations = sum(1 for x in observed if x < lex_size)
    return KKMinimalityReport(i, k, l, n, samples, lex_size,
                              min(observed) if observed else None, violations)


def kk_ratio_factors(n: int, k: int, l: int, m: int, zeta) -> dict:
    """Per-factor checks behind the C * eps^(1+1/C) estimate.

    For i = 1..m-1 each factor 1 - (k-1)/(n-i) must be at least ζ, and each
    ratio (1 - (l-1)/(n-i)) / (1 - (k-1)/(n-i)) at most 1 - ζ. Meaningful
    when l - k >= ζ n and n - m >= l - 1.
    """
    zeta = Fraction(zeta)
    lower_ok, ratio_ok = True, True
    for i in range(1, m):
        f_k = 1 - Fraction(k - 1, n - i)
        f_l = 1 - Fraction(l - 1, n - i)
        if f_k < zeta:
            lower_ok = False
        if f_k == 0 or f_l / f_k > 1 - zeta:
            ratio_ok = False
    applies = l - k >= zeta * n and n - m >= l - 1
    return {"applies": applies, "lower_factors_ok": lower_ok, "ratio_factors_ok": ratio_ok}


def restrict_layered(LF: LayeredFamily, J: int, B: int) -> LayeredFamily:
    """(F^↑)_J^B layer by layer: layer r maps to layer r - |B| on X \\ J."""
    if B & ~J:
        raise ParameterError("B must be a subset of J")
    b = bin(B).count("1")
    ground = LF.ground & ~J
    layers = {}
    for r, layer in LF.layers.items():
        if r < b:
            continue
        layers[r - b] = SetFamily(LF.n, r - b,
                                  frozenset(A & ~J for A in layer.members if A & J == B), ground)
    return LayeredFamily(LF.n, ground, layers)
