"""k-subsets, k-uniform families, lexicographic machinery, restrictions and juntas.

Sets are kept as Python int bitmasks (bit ``i`` set means element ``i`` is
present, elements are 1-based) for fast union/intersection; the canonical
form for I/O and ordering is the ascending element tuple.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from itertools import combinations, islice
from math import comb
from typing import Iterable, Iterator, Sequence


class ParameterError(ValueError):
    """Raised when arguments violate an operation's preconditions."""


# ---------------------------------------------------------------------------
# bitmask helpers


def to_mask(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def from_mask(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(n: int) -> int:
    return ((1 << n) - 1) << 1


def lex_key(mask: int) -> tuple[int, ...]:
    # For equal-size sets, tuple order of sorted elements is exactly <_L.
    return from_mask(mask)


def k_subsets(ground: int, k: int) -> Iterator[int]:
    """Yield the k-subsets of a ground mask in lexicographic order."""
    for c in combinations(from_mask(ground), k):
        yield to_mask(c)


def _coerce_mask(s) -> int:
    if isinstance(s, KSubset):
        return s.mask
    if isinstance(s, int):
        return s
    return to_mask(s)


# ---------------------------------------------------------------------------
# KSubset


@total_ordering
@dataclass(frozen=True)
class KSubset:
    """A subset of [n] with its elements stored in ascending order."""

    elements: tuple[int, ...]
    n: int

    def __post_init__(self):
        els = tuple(self.elements)
        object.__setattr__(self, "elements", els)
        if self.n < 0:
            raise ParameterError(f"ambient n must be nonnegative, got {self.n}")
        if any(a >= b for a, b in zip(els, els[1:])):
            raise ParameterError(f"elements must be strictly increasing: {els}")
        if els and (els[0] < 1 or els[-1] > self.n):
            raise ParameterError(f"elements {els} not contained in [1, {self.n}]")

    @classmethod
    def of(cls, elements: Iterable[int], n: int) -> "KSubset":
        return cls(tuple(sorted(set(elements))), n)

    @classmethod
    def from_mask(cls, mask: int, n: int) -> "KSubset":
        return cls(from_mask(mask), n)

    @property
    def k(self) -> int:
        return len(self.elements)

    @property
    def mask(self) -> int:
        return to_mask(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __lt__(self, other: "KSubset") -> bool:
        return lex_compare(self, other) < 0

    def __str__(self):
        return ",".join(map(str, self.elements))


def lex_compare(a: KSubset, b: KSubset) -> int:
    """Compare two k-sets in lex order: ``a < b`` iff min(a Δ b) lies in ``a``.

    Returns -1, 0 or 1.
    """
    if a.n != b.n or a.k != b.k:
        raise ParameterError(
            f"cannot compare sets with different ambient parameters "
            f"(n={a.n}, k={a.k}) vs (n={b.n}, k={b.k})"
        )
    am, bm = a.mask, b.mask
    diff = am ^ bm
    if not diff:
        return 0
    low = diff & -diff
    return -1 if am & low else 1


# ---------------------------------------------------------------------------
# SetFamily


@dataclass(frozen=True)
class SetFamily:
    """A k-uniform family over a ground set (by default [n]).

    ``ground`` is the bitmask of the ground set X; restrictions live on
    ``[n] \\ J`` and carry a smaller ground. Measures are taken relative to
    ``C(|X|, k)``.
    """

    n: int
    k: int
    members: frozenset = frozenset()
    ground: int = -1

    def __post_init__(self):
        if self.n < 0 or self.k < 0:
            raise ParameterError(f"n and k must be nonnegative (n={self.n}, k={self.k})")
        if self.ground == -1:
            object.__setattr__(self, "ground", full_mask(self.n))
        if self.ground & ~full_mask(self.n):
            raise ParameterError("ground set must lie inside [n]")
        members = frozenset(self.members)
        object.__setattr__(self, "members", members)
        for m in members:
            if m & ~self.ground or popcount(m) != self.k:
                raise ParameterError(
                    f"member {from_mask(m)} is not a {self.k}-subset of the ground set"
                )

    @classmethod
    def from_sets(cls, n: int, k: int, sets: Iterable, ground=None) -> "SetFamily":
        masks = [_coerce_mask(s) for s in sets]
        members = frozenset(masks)
        if len(members) != len(masks):
            raise ParameterError("duplicate members")
        g = -1 if ground is None else _coerce_mask(ground)
        return cls(n, k, members, g)

    @property
    def ground_size(self) -> int:
        return popcount(self.ground)

    @property
    def ground_elements(self) -> tuple[int, ...]:
        return from_mask(self.ground)

    def universe_size(self) -> int:
        return comb(self.ground_size, self.k)

    def sorted_masks(self) -> list[int]:
        return sorted(self.members, key=lex_key)

    def sets(self) -> list[tuple[int, ...]]:
        """Members as ascending tuples, in lex order."""
        return [from_mask(m) for m in self.sorted_masks()]

    def ksubsets(self) -> list[KSubset]:
        return [KSubset(s, self.n) for s in self.sets()]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.sets())

    def __contains__(self, s) -> bool:
        return _coerce_mask(s) in self.members

    def same_ambient(self, other: "SetFamily") -> bool:
        return self.n == other.n and self.k == other.k and self.ground == other.ground

    def with_members(self, masks: Iterable[int]) -> "SetFamily":
        return SetFamily(self.n, self.k, frozenset(masks), self.ground)

    def __repr__(self):
        body = " ".join("".join(map(str, s)) if self.n < 10 else "{" + ",".join(map(str, s)) + "}"
                        for s in self.sets()[:12])
        more = " ..." if len(self) > 12 else ""
        return f"SetFamily(n={self.n}, k={self.k}, |F|={len(self)}: {body}{more})"


def empty_family(n: int, k: int, ground=None) -> SetFamily:
    return SetFamily.from_sets(n, k, [], ground)


def full_family(n: int, k: int, ground=None) -> SetFamily:
    g = full_mask(n) if ground is None else _coerce_mask(ground)
    return SetFamily(n, k, frozenset(k_subsets(g, k)), g)


# ---------------------------------------------------------------------------
# lexicographic ranks


def lex_rank(s: KSubset | Sequence[int], n: int | None = None) -> int:
    """Position of a k-subset of [n] in lex order, counting from 0."""
    if isinstance(s, KSubset):
        n, els = s.n, s.elements
    else:
        els = tuple(sorted(s))
    k = len(els)
    r, prev = 0, 0
    for i, e in enumerate(els):
        for x in range(prev + 1, e):
            r += comb(n - x, k - i - 1)
        prev = e
    return r


def lex_unrank(r: int, k: int, n: int) -> tuple[int, ...]:
    """Inverse of :func:`lex_rank`."""
    if not 0 <= r < comb(n, k):
        raise ParameterError(f"rank {r} out of range [0, C({n},{k}))")
    out = []
    x = 1
    for i in range(k):
        # sets starting with x at this position
        while r >= comb(n - x, k - i - 1):
            r -= comb(n - x, k - i - 1)
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def lex_family(i: int, k: int, n: int) -> SetFamily:
    """L(i, k, n): the first ``i`` k-subsets of [n] in lex order."""
    if not 0 <= i <= comb(n, k):
        raise ParameterError(f"lex rank i={i} outside [0, C({n},{k})={comb(n, k)}]")
    if i == 0:
        return empty_family(n, k)
    # combinations() walks C([n], k) in lex order; no global sort needed
    masks = [to_mask(c) for c in islice(combinations(range(1, n + 1), k), i)]
    return SetFamily(n, k, frozenset(masks))


# ---------------------------------------------------------------------------
# measures, restrictions, juntas


def measure(F: SetFamily) -> Fraction:
    """Uniform measure |F| / C(|X|, k)."""
    total = F.universe_size()
    if total == 0:
        return Fraction(0)
    return Fraction(len(F), total)


def restrict(F: SetFamily, J, B) -> SetFamily:
    """F_J^B = {A in C(X \\ J, k - |B|) : A ∪ B in F}."""
    jm, bm = _coerce_mask(J), _coerce_mask(B)
    if bm & ~jm:
        raise ParameterError(f"B={from_mask(bm)} is not a subset of J={from_mask(jm)}")
    if jm & ~F.ground:
        raise ParameterError(f"J={from_mask(jm)} is not inside the ground set")
    kb = F.k - popcount(bm)
    if kb < 0:
        raise ParameterError(f"|B|={popcount(bm)} exceeds k={F.k}")
    members = frozenset(A & ~jm for A in F.members if A & jm == bm)
    return SetFamily(F.n, kb, members, F.ground & ~jm)


def trace_counts(F: SetFamily, J: int) -> dict[int, int]:
    """Number of members of F with each trace ``A ∩ J``."""
    counts: dict[int, int] = {}
    for A in F.members:
        t = A & J
        counts[t] = counts.get(t, 0) + 1
    return counts


@dataclass(frozen=True)
class Junta:
    """The pair (J, G) with G a collection of subsets of J; generates <G>."""

    J: int
    G: frozenset
    n: int
    k: int

    def __post_init__(self):
        object.__setattr__(self, "J", _coerce_mask(self.J))
        object.__setattr__(self, "G", frozenset(_coerce_mask(B) for B in self.G))
        if self.J & ~full_mask(self.n):
            raise ParameterError(f"J={from_mask(self.J)} not inside [{self.n}]")
        for B in self.G:
            if B & ~self.J:
                raise ParameterError(f"generator {from_mask(B)} is not a subset of J")
            if popcount(B) > self.k:
                raise ParameterError(
                    f"generator {from_mask(B)} has more than k={self.k} elements"
                )

    @property
    def j(self) -> int:
        return popcount(self.J)


def junta_generate(junta: Junta, k: int | None = None) -> SetFamily:
    """<G> ∩ C([n], k): all k-sets whose trace on J lies in G."""
    k = junta.k if k is None else k
    n = junta.n
    if k > n:
        raise ParameterError(f"k={k} exceeds n={n}")
    rest = full_mask(n) & ~junta.J
    members = set()
    for B in junta.G:
        need = k - popcount(B)
        if need < 0:
            continue
        for T in k_subsets(rest, need):
            members.add(B | T)
    return SetFamily(n, k, frozenset(members))


def essential_containment(F: SetFamily, G: SetFamily) -> Fraction:
    """Least ε with F ε-essentially contained in G, i.e. |F \\ G| / C(|X|, k)."""
    if not F.same_ambient(G):
        raise ParameterError("families must share ambient (n, k, ground)")
    total = F.universe_size()
    if total == 0:
        return Fraction(0)
    return Fraction(len(F.members - G.members), total)


# ---------------------------------------------------------------------------
# constructions


def star(n: int, k: int, center: int = 1) -> SetFamily:
    if not 1 <= center <= n:
        raise ParameterError(f"center {center} not in [1, {n}]")
    if k < 1:
        return empty_family(n, k)
    c = 1 << center
    return SetFamily(n, k, frozenset(c | T for T in k_subsets(full_mask(n) & ~c, k - 1)))


def frankl_furedi(n: int, k: int) -> SetFamily:
    """Transversals of the partition of [n] into k consecutive blocks of size n/k."""
    if k < 1 or n % k:
        raise ParameterError(f"frankl_furedi needs k | n (n={n}, k={k})")
    w = n // k
    blocks = [range(i * w + 1, (i + 1) * w + 1) for i in range(k)]
    members = set()

    def rec(i, acc):
        if i == k:
            members.add(acc)
            return
        for x in blocks[i]:
            rec(i + 1, acc | (1 << x))

    rec(0, 0)
    return SetFamily(n, k, frozenset(members))


def odd_bipartite(n: int, k: int) -> SetFamily:
    """All k-sets meeting {1, ..., n/2} in an odd number of elements."""
    if n % 2:
        raise ParameterError(f"odd_bipartite needs n even, got n={n}")
    half = full_mask(n // 2)
    return SetFamily(
        n, k, frozenset(A for A in k_subsets(full_mask(n), k) if popcount(A & half) % 2)
    )


def random_family(n: int, k: int, m: int, seed=None) -> SetFamily:
    """m distinct k-subsets of [n] drawn uniformly without replacement."""
    total = comb(n, k)
    if not 0 <= m <= total:
        raise ParameterError(f"size m={m} outside [0, C({n},{k})={total}]")
    rng = random.Random(seed)
    ranks = rng.sample(range(total), m)
    return SetFamily(n, k, frozenset(to_mask(lex_unrank(r, k, n)) for r in ranks))


def construct(kind: str, n: int, k: int, *, center: int = 1, rank: int | None = None,
              size: int | None = None, seed=None) -> SetFamily:
    """Dispatch over the named constructions (star, frankl_furedi, ...)."""
    kind = kind.replace("-", "_")
    if kind == "star":
        return star(n, k, center)
    if kind == "frankl_furedi":
        return frankl_furedi(n, k)
    if kind == "odd_bipartite":
        return odd_bipartite(n, k)
    if kind == "lex":
        if rank is None:
            raise ParameterError("lex construction needs a rank")
        return lex_family(rank, k, n)
    if kind == "random":
        if size is None:
            raise ParameterError("random construction needs a size")
        return random_family(n, k, size, seed)
    raise ParameterError(f"unknown construction kind {kind!r}")


def is_star(F: SetFamily) -> bool:
    """True iff F is exactly the full star of some element."""
    if F.k == 0:
        return False
    common = F.ground
    for A in F.members:
        common &= A
    if not common or not F.members:
        return False
    return len(F) == comb(F.ground_size - 1, F.k - 1)


def relabel(F: SetFamily, perm: dict[int, int]) -> SetFamily:
    """Image of F under the element map ``perm`` (a permutation of [n])."""
    def img(m):
        return to_mask(perm[e] for e in from_mask(m))

    return SetFamily(F.n, F.k, frozenset(img(A) for A in F.members), img(F.ground))
