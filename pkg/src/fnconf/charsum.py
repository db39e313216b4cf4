"""Multiplicative characters of F_q and the brute-force sums

    F_chi(n, m, q) = sum over monic square-free f (deg n), g (deg m) of chi(R(f, g)),

computed exactly in Q(zeta_d) from a histogram of resultant values.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional

import numpy as np

from . import kernels
from .exactalg import Cyclotomic
from .ffield import FqContext, monic_array
from .predict import bound as bound_value
from .predict import within_bound_exact

DEFAULT_BUDGET = 10 ** 8
BUDGET_ENV = "FNCONF_BUDGET"


class BudgetExceeded(RuntimeError):
    def __init__(self, cost: int, budget: int, what: str = "resultant evaluations"):
        super().__init__(f"estimated cost {cost} {what} exceeds budget {budget}")
        self.cost = cost
        self.budget = budget


def configured_budget(budget: Optional[int] = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


def find_primitive_root(ctx: FqContext) -> int:
    """Smallest element code of multiplicative order q - 1."""
    q = ctx.q
    for g in range(1, q):
        x, order = g, 1
        while x != 1:
            x = ctx.mul(x, g)
            order += 1
        if order == q - 1:
            return g
    raise AssertionError("no primitive root found")


@dataclass(frozen=True)
class Character:
    """chi(generator^k) = zeta_d^(a*k), chi(0) = 0.  ``a`` is a Galois twist."""

    ctx: FqContext
    order: int
    generator: int
    log_table: tuple  # log_table[x] for x = 1..q-1 (index 0 unused)
    twist: int = 1

    @classmethod
    def of_order(cls, ctx: FqContext, d: int, twist: int = 1) -> "Character":
        q = ctx.q
        if d < 2:
            raise ValueError("character must be nontrivial (order >= 2)")
        if (q - 1) % d:
            raise ValueError(f"order {d} does not divide q - 1 = {q - 1}")
        if math.gcd(twist, d) != 1:
            raise ValueError("twist exponent must be coprime to the order")
        g = find_primitive_root(ctx)
        logs = [0] * q
        x = 1
        for k in range(q - 1):
            logs[x] = k
            x = ctx.mul(x, g)
        return cls(ctx, d, g, tuple(logs), twist % d)

    def exponent(self, x: int) -> Optional[int]:
        """Exponent e with chi(x) = zeta_d^e, or None for x = 0."""
        if x == 0:
            return None
        return (self.twist * self.log_table[x]) % self.order

    def conjugate(self) -> "Character":
        return Character(self.ctx, self.order, self.generator, self.log_table, (-self.twist) % self.order)


def char_eval(chi: Character, x: int) -> Cyclotomic:
    e = chi.exponent(int(x))
    if e is None:
        return Cyclotomic.from_int(chi.order, 0)
    return Cyclotomic.zeta(chi.order, e)


@dataclass
class CharSumResult:
    n: int
    m: int
    q: int
    d: int
    value: Cyclotomic
    magnitude: float
    bound: float
    within_bound: bool
    twist: int = 1
    exact_check: Optional[bool] = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "q": self.q,
            "d": self.d,
            "twist": self.twist,
            "value_coeffs": [str(c) for c in self.value.coeffs],
            "magnitude": round(self.magnitude, 12),
            "bound": self.bound,
            "within_bound": self.within_bound,
        }


@lru_cache(maxsize=None)
def squarefree_array(q: int, n: int, modulus: tuple = ()) -> np.ndarray:
    ctx = FqContext.of(q, modulus or None)
    P = monic_array(q, n)
    return P[kernels.squarefree_mask(P, q, ctx.characteristic, ctx.tables)]


@lru_cache(maxsize=64)
def _histogram_cached(q: int, n: int, m: int, modulus: tuple, backend: str) -> tuple:
    ctx = FqContext.of(q, modulus or None)
    F = squarefree_array(q, n, modulus)
    G = squarefree_array(q, m, modulus)
    return tuple(int(x) for x in kernels.resultant_histogram(F, G, q, ctx.tables))


def resultant_histogram(ctx: FqContext, n: int, m: int, budget: Optional[int] = None) -> List[int]:
    """counts[x] = number of square-free monic pairs (f, g) with R(f, g) = x."""
    cost = ctx.q ** (n + m)
    limit = configured_budget(budget)
    if cost > limit:
        raise BudgetExceeded(cost, limit)
    mod = ctx.modulus if ctx.degree > 1 else ()
    return list(_histogram_cached(ctx.q, n, m, mod, kernels.get_backend()))


def sum_from_histogram(hist: List[int], chi: Character) -> Cyclotomic:
    by_exp = [0] * chi.order
    for x, c in enumerate(hist):
        if x and c:
            by_exp[chi.exponent(x)] += c
    return Cyclotomic(chi.order, by_exp)


def character_sum(n: int, m: int, chi: Character, budget: Optional[int] = None) -> CharSumResult:
    if n < 1 or m < 1:
        raise ValueError("degrees must be positive")
    hist = resultant_histogram(chi.ctx, n, m, budget)
    value = sum_from_histogram(hist, chi)
    mag = abs(value.to_complex())
    q, d = chi.ctx.q, chi.order
    b = bound_value(n, m, q, d)
    abs_sq = (value * value.conj()).rational_value()
    exact = within_bound_exact(abs_sq, n, m, q, d)
    return CharSumResult(n, m, q, d, value, mag, b, mag <= b + 1e-9, chi.twist, exact)


def coprime_pair_count(ctx: FqContext, n: int, m: int, budget: Optional[int] = None) -> int:
    """The sum with the trivial character (1 on F_q^*, 0 at 0)."""
    hist = resultant_histogram(ctx, n, m, budget)
    return sum(hist[1:])
