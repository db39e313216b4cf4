"""Closed-form predictions: composition counts, homology dimensions of the
punctured-plane configuration spaces, vanishing ranges and the character-sum
bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Optional


def binom_ext(t: int, k: int) -> int:
    """Binomial with edge conventions: C(t, -1) = [t == -1]; 0 when t < k."""
    if k == -1:
        return 1 if t == -1 else 0
    if k < -1 or t < k:
        return 0
    return math.comb(t, k)


def composition_count_P(n: int, r: int, m: int, reading: str = "displayed") -> int:
    """P(n) = number of compositions (a_1, ..., a_{m-1}, r*a_m) of n.

    reading="displayed" takes all a_i >= 1 (sum over a = 1..floor(n/r));
    reading="shifted" lets a_m >= 0 (sum from a = 0).  The homology ranks
    support the displayed reading.
    """
    start = {"displayed": 1, "shifted": 0}[reading]
    if n < 0:
        return 0
    return sum(binom_ext(n - r * a - 1, m - 2) for a in range(start, n // r + 1))


def composition_count_bruteforce(n: int, r: int, m: int, min_last: int = 1) -> int:
    """Enumerate (a_1..a_{m-1} >= 1, a_m >= min_last) with sum a_i + r*a_m = n."""
    count = 0
    for last in range(min_last, n // r + 1):
        rest = n - r * last
        if m == 1:
            count += rest == 0
            continue
        for head in product(range(1, rest + 1), repeat=m - 2):
            tail = rest - sum(head)
            if tail >= 1:
                count += 1
    return count


@dataclass
class PredictionReport:
    n: int
    m: int
    r: Optional[int] = None
    d: Optional[int] = None
    dims: Dict[int, int] = field(default_factory=dict)  # j -> dim H_j(Conf_n(C_m); L)
    vanishing_threshold: Optional[int] = None  # H_j = 0 for all j <= threshold
    bound: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "r": self.r,
            "d": self.d,
            "dims": {str(j): v for j, v in sorted(self.dims.items())},
            "vanishing_threshold": self.vanishing_threshold,
            "bound": self.bound,
        }


def punctured_dims_quadratic(n: int, m: int, r: int) -> PredictionReport:
    """Case p = -q with -q a primitive r-th root of unity."""
    if r < 2:
        raise ValueError("r must be at least 2")
    dims = {j: 0 for j in range(0, n + 1)}
    dims[n] = composition_count_P(n + m + r - 1, r, m)
    if n >= 1:
        dims[n - 1] = composition_count_P(n + m - 1, r, m)
    return PredictionReport(n, m, r=r, dims=dims, vanishing_threshold=n - 2)


def punctured_dims_generic(n: int, m: int) -> PredictionReport:
    """Case p not a power of -q: everything sits in degree n."""
    if m < 1:
        raise ValueError("m must be at least 1")
    dims = {j: 0 for j in range(0, n + 1)}
    dims[n] = binom_ext(n + m - 2, m - 2)
    return PredictionReport(n, m, dims=dims, vanishing_threshold=n - 1)


def mixed_vanishing_threshold(n: int, m: int, d: int) -> int:
    if d < 2:
        raise ValueError("character order must be at least 2")
    return max(n, m) - 2 if d == 2 else max(n, m) - 1


def _bound_exponent(n: int, m: int, d: int) -> Fraction:
    mx = max(n, m)
    if d == 2:
        return n + m + 1 - Fraction(mx, 2)
    return n + m + Fraction(1 - mx, 2)


def bound(n: int, m: int, q: int, d: int) -> float:
    """Upper bound for |F_chi(n, m, q)| for a character of order d."""
    if q < 2 or d < 2:
        raise ValueError("need q >= 2 and d >= 2")
    E = _bound_exponent(n, m, d)
    return 2 ** (2 * n + 2 * m - 1) * (q ** float(E) - 1) / (math.sqrt(q) - 1)


def bound_exact(n: int, m: int, q: int, d: int) -> Optional[Fraction]:
    """The bound as an exact rational when sqrt(q) is an integer, else None."""
    s = math.isqrt(q)
    if s * s != q:
        return None
    E = _bound_exponent(n, m, d)
    return Fraction(2 ** (2 * n + 2 * m - 1) * (s ** int(2 * E) - 1), s - 1)


def within_bound_exact(abs_sq: Fraction, n: int, m: int, q: int, d: int) -> Optional[bool]:
    """Compare |F|^2 with bound^2 exactly; None when either side is irrational."""
    b = bound_exact(n, m, q, d)
    if b is None or abs_sq is None:
        return None
    return abs_sq <= b * b


def average_bound(n: int, m: int, q: int, d: int) -> float:
    return 2.0 ** (2 * n + 2 * m + 3) * q ** ((1 - max(n, m)) / 2)
