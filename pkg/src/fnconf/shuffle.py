"""Compositions, shuffles, shuffle constants and rank-1 braid scalars.

Positions and composition indices are 1-based throughout.  A shuffle in
Sh(p, q) is recorded by the positions its second block occupies; the
permutation keeps the relative order inside each block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Tuple

from .exactalg import Cyclotomic, as_order, gaussian_binomial


class Composition(tuple):
    """Ordered tuple of positive parts."""

    def __new__(cls, parts):
        obj = super().__new__(cls, parts)
        if not obj or any(int(x) < 1 for x in obj):
            raise ValueError(f"not a composition: {tuple(parts)}")
        return obj

    @property
    def parts(self) -> Tuple[int, ...]:
        return tuple(self)

    @property
    def total(self) -> int:
        return sum(self)


def _compositions_of_length(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    # lexicographic on the part tuple
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions_of_length(n - first, k - 1):
            yield (first,) + rest


def compositions(n: int, length: Optional[int] = None) -> Iterator[Composition]:
    """All compositions of n, ordered by length and then lexicographically.

    For n = 3 the order is (3), (1,2), (2,1), (1,1,1).
    """
    if n < 1:
        raise ValueError("n must be positive")
    lengths = [length] if length is not None else range(1, n + 1)
    for k in lengths:
        if 1 <= k <= n:
            for parts in _compositions_of_length(n, k):
                yield Composition(parts)


def coarsen(lam: Sequence[int], i: int) -> Composition:
    """Merge parts i and i+1 (1-based)."""
    if not 1 <= i < len(lam):
        raise IndexError(f"cannot merge parts {i}, {i + 1} of a length-{len(lam)} composition")
    lam = tuple(lam)
    return Composition(lam[: i - 1] + (lam[i - 1] + lam[i],) + lam[i + 1:])


# ---------------------------------------------------------------------------
# shuffles


@dataclass(frozen=True)
class Shuffle:
    p: int
    q: int
    placement: Tuple[int, ...]

    def __post_init__(self):
        pl = tuple(self.placement)
        if len(pl) != self.q or any(b <= a for a, b in zip(pl, pl[1:])) or (pl and (pl[0] < 1 or pl[-1] > self.p + self.q)):
            raise ValueError(f"bad placement {pl} for Sh({self.p},{self.q})")

    def permutation(self) -> Tuple[int, ...]:
        """Images gamma(1), ..., gamma(p+q)."""
        taken = set(self.placement)
        left = [x for x in range(1, self.p + self.q + 1) if x not in taken]
        return tuple(left) + tuple(self.placement)

    def inversions(self) -> int:
        # element k of the second block jumps over the p - (pos - k) first-block elements above it
        return sum(self.p - pos + k for k, pos in enumerate(self.placement, start=1))

    def sign(self) -> int:
        return -1 if self.inversions() % 2 else 1


def enumerate_shuffles(p: int, q: int) -> Iterator[Shuffle]:
    """Sh(p, q) in lexicographic order of the placement tuple."""
    for pl in combinations(range(1, p + q + 1), q):
        yield Shuffle(p, q, pl)


def enumerate_h_j_shuffles(kind: str, p: int, q: int, h: int, j: int) -> Iterator[Shuffle]:
    """Shuffles with a pinned marked element.

    kind="right": the (p,(q,h),j) family, gamma(j+1) = j+h+1, i.e. h elements
    of the second block land below the (j+1)-st element of the first block.
    kind="left": the ((p,h),q,j) family, gamma(p+j+1) = h+j+1, i.e. h
    elements of the first block land below the (j+1)-st element of the second.
    Output is in lexicographic placement order.
    """
    if kind == "right":
        if not (0 <= j < p and 0 <= h <= q):
            return
        target = j + h + 1
        below = range(1, target)
        above = range(target + 1, p + q + 1)
        for lo in combinations(below, h):
            for hi in combinations(above, q - h):
                yield Shuffle(p, q, lo + hi)
    elif kind == "left":
        if not (0 <= j < q and 0 <= h <= p):
            return
        target = h + j + 1
        for lo in combinations(range(1, target), j):
            for hi in combinations(range(target + 1, p + q + 1), q - j - 1):
                yield Shuffle(p, q, lo + (target,) + hi)
    else:
        raise ValueError(f"unknown shuffle kind {kind!r}")


def filter_h_j_shuffles(kind: str, p: int, q: int, h: int, j: int) -> List[Shuffle]:
    """Brute-force version of :func:`enumerate_h_j_shuffles` (test oracle)."""
    out = []
    for g in enumerate_shuffles(p, q):
        perm = g.permutation()
        if kind == "right" and j < p and perm[j] == j + h + 1:
            out.append(g)
        elif kind == "left" and j < q and perm[p + j] == h + j + 1:
            out.append(g)
    return out


def shuffle_sign(g: Shuffle) -> int:
    return g.sign()


@lru_cache(maxsize=None)
def c_pq(p: int, q: int) -> int:
    """Signed shuffle count; cross-checked against the Gaussian binomial at -1."""
    by_enum = sum(g.sign() for g in enumerate_shuffles(p, q))
    by_poly = gaussian_binomial(p + q, q).evaluate(-1)
    if by_enum != by_poly:
        raise AssertionError(f"c_{p},{q}: enumeration {by_enum} != binomial {by_poly}")
    return by_enum


@lru_cache(maxsize=None)
def c_hj(kind: str, p: int, q: int, h: int, j: int) -> int:
    return sum(g.sign() for g in enumerate_h_j_shuffles(kind, p, q, h, j))


# ---------------------------------------------------------------------------
# positive braid words


@dataclass(frozen=True)
class PositiveBraidWord:
    letters: Tuple[int, ...]
    strands: int

    def permutation(self) -> Tuple[int, ...]:
        """Final position of the strand starting at each position 1..strands."""
        at = list(range(1, self.strands + 1))  # at[pos-1] = strand at pos
        for i in self.letters:
            at[i - 1], at[i] = at[i], at[i - 1]
        final = [0] * self.strands
        for pos, strand in enumerate(at, start=1):
            final[strand - 1] = pos
        return tuple(final)

    def __add__(self, other: "PositiveBraidWord") -> "PositiveBraidWord":
        return PositiveBraidWord(self.letters + other.letters, max(self.strands, other.strands))

    def shifted(self, offset: int, strands: int) -> "PositiveBraidWord":
        return PositiveBraidWord(tuple(i + offset for i in self.letters), strands)


def lift_word(g: Shuffle) -> PositiveBraidWord:
    """Reduced positive word for the shuffle: the right block passes in front.

    The k-th element of the second block travels from position p+k down to
    its placement, one adjacent letter at a time, in the order k = 1..q.
    """
    letters: List[int] = []
    for k, pos in enumerate(g.placement, start=1):
        letters.extend(range(g.p + k - 1, pos - 1, -1))
    return PositiveBraidWord(tuple(letters), g.p + g.q)


# ---------------------------------------------------------------------------
# rank-1 local system


@dataclass(frozen=True, eq=False)
class LocalSystemParams:
    """Units of a rank-1 braid representation over a common Q(zeta_order).

    p: winding around a puncture, q: crossing of two free strands,
    u: crossing of two fixed strands, s: rescaling of the mixed braiding.
    """

    p: Cyclotomic
    q: Cyclotomic
    u: Cyclotomic
    s: Cyclotomic

    @classmethod
    def make(cls, p=1, q=1, u=1, s=1) -> "LocalSystemParams":
        order = 1
        for x in (p, q, u, s):
            if isinstance(x, Cyclotomic):
                order = math.lcm(order, x.order)
        vals = [as_order(x, order) for x in (p, q, u, s)]
        for name, v in zip("pqus", vals):
            if v.is_zero():
                raise ValueError(f"{name} must be invertible")
        return cls(*vals)

    @classmethod
    def roots_of_unity(cls, p=(1, 0), q=(1, 0), u=(1, 0), s=(1, 0)) -> "LocalSystemParams":
        """Build from (order, exponent) pairs."""
        return cls.make(*(Cyclotomic.zeta(o, e) for o, e in (p, q, u, s)))

    @property
    def order(self) -> int:
        return self.p.order

    def eps_twisted(self) -> "LocalSystemParams":
        """The sign-twisted braiding: q -> -q, s -> -s."""
        return LocalSystemParams(self.p, -self.q, self.u, -self.s)

    def is_trivial(self) -> bool:
        return all(x == 1 for x in (self.p, self.q, self.u, self.s))

    def key(self) -> tuple:
        return (self.order, self.p.coeffs, self.q.coeffs, self.u.coeffs, self.s.coeffs)

    # the order is part of the identity: caches must not mix coefficient fields
    def __eq__(self, other):
        return isinstance(other, LocalSystemParams) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def rank1_scalar(word: PositiveBraidWord, marked: Sequence[int], params: LocalSystemParams) -> Tuple[Cyclotomic, Tuple[int, ...]]:
    """Scalar of a positive word acting on a rank-1 local system.

    Letters are read left to right with positions-before-letter semantics.
    Per letter at (i, i+1): q if neither position is marked, s if the mark
    sits at i+1 (it moves left), p/s if the mark sits at i (it moves right).
    """
    marks = set(marked)
    n_q = n_left = n_right = 0
    for i in word.letters:
        a, b = i in marks, (i + 1) in marks
        if a and b:
            raise ValueError(f"letter {i} would cross two fixed strands")
        if b:
            marks.discard(i + 1)
            marks.add(i)
            n_left += 1
        elif a:
            marks.discard(i)
            marks.add(i + 1)
            n_right += 1
        else:
            n_q += 1
    scalar = params.q ** n_q * params.s ** (n_left - n_right) * params.p ** n_right
    return scalar, tuple(sorted(marks))
