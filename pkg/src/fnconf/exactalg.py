"""Exact number types and exact sparse linear algebra.

Rationals are :class:`fractions.Fraction`.  Elements of the cyclotomic field
Q(zeta_d) are stored as coefficient vectors reduced modulo the d-th
cyclotomic polynomial, so equality and zero tests are coefficient-wise.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Dict, Iterable, List, Sequence, Tuple

Rational = Fraction


# ---------------------------------------------------------------------------
# cyclotomic polynomials


def euler_phi(d: int) -> int:
    result, n, p = d, d, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def _poly_divexact(num: List[int], den: List[int]) -> List[int]:
    # exact division of integer polynomials, den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for i, b in enumerate(den):
                num[k + i] -= c * b
    assert not any(num), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> Tuple[int, ...]:
    """Integer coefficients of Phi_d, ascending degree."""
    if d < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (d - 1) + [1]
    for e in range(1, d):
        if d % e == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(e)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_table(d: int) -> Tuple[Tuple[int, ...], ...]:
    """Rows r_k with x^(phi+k) = sum_i r_k[i] x^i mod Phi_d, for k < phi - 1."""
    phi = euler_phi(d)
    cyc = cyclotomic_polynomial(d)
    rows = []
    cur = [-c for c in cyc[:phi]]  # x^phi
    for _ in range(max(phi - 1, 0)):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [a - top * c for a, c in zip(cur, cyc[:phi])]
    return tuple(rows)


def _reduce(vec: Sequence, d: int) -> list:
    """Reduce a coefficient list of any length modulo Phi_d."""
    phi = euler_phi(d)
    if len(vec) <= phi:
        return list(vec) + [0] * (phi - len(vec))
    if len(vec) > 2 * phi - 1:
        # fold with x^d = 1 first
        folded = [0] * d
        for i, c in enumerate(vec):
            folded[i % d] += c
        vec = folded
        if len(vec) <= phi:
            return list(vec) + [0] * (phi - len(vec))
        if len(vec) > 2 * phi - 1:
            return _reduce_long(vec, d)
    out = list(vec[:phi])
    table = _reduction_table(d)
    for k, c in enumerate(vec[phi:]):
        if c:
            row = table[k]
            for i in range(phi):
                if row[i]:
                    out[i] += c * row[i]
    return out


def _reduce_long(vec: Sequence, d: int) -> list:
    phi = euler_phi(d)
    cyc = cyclotomic_polynomial(d)
    vec = list(vec)
    for k in range(len(vec) - 1, phi - 1, -1):
        c = vec[k]
        if c:
            for i in range(phi + 1):
                vec[k - phi + i] -= c * cyc[i]
    return vec[:phi]


def _polymul(a: Sequence, b: Sequence) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


# ---------------------------------------------------------------------------
# Cyclotomic


class Cyclotomic:
    """Element of Q(zeta_d), stored as coefficients of 1, zeta, ..., zeta^(phi-1)."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs: Iterable = ()):
        vec = [Fraction(c) for c in coeffs]
        self.order = order
        self.coeffs = tuple(Fraction(c) for c in _reduce(vec, order)) if vec else (Fraction(0),) * euler_phi(order)
        self._hash = None

    @classmethod
    def _raw(cls, order: int, coeffs: tuple) -> "Cyclotomic":
        obj = cls.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> "Cyclotomic":
        k %= order
        return cls(order, [0] * k + [1])

    @classmethod
    def from_int(cls, order: int, value) -> "Cyclotomic":
        return cls(order, [value])

    # -- coercion
    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise ValueError(f"mismatched cyclotomic orders {self.order} and {other.order}")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.order, [other])
        return NotImplemented

    def lift(self, order: int) -> "Cyclotomic":
        """Embed into Q(zeta_order) for a multiple ``order`` of ``self.order``."""
        if order % self.order:
            raise ValueError(f"{self.order} does not divide {order}")
        step = order // self.order
        vec = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            vec[i * step] = c
        return Cyclotomic(order, vec)

    # -- arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclotomic._raw(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclotomic._raw(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._raw(self.order, tuple(a * other for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prod = _reduce(_polymul(self.coeffs, other.coeffs), self.order)
        return Cyclotomic._raw(self.order, tuple(Fraction(c) for c in prod))

    __rmul__ = __mul__

    def inv(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic")
        phi = len(self.coeffs)
        # columns: self * zeta^k ; solve M x = e_0
        cols = []
        basis = self
        z = Cyclotomic.zeta(self.order)
        for _ in range(phi):
            cols.append(basis.coeffs)
            basis = basis * z
        aug = [[cols[c][r] for c in range(phi)] + [Fraction(int(r == 0))] for r in range(phi)]
        for c in range(phi):
            piv = next(r for r in range(c, phi) if aug[r][c] != 0)
            aug[c], aug[piv] = aug[piv], aug[c]
            pv = aug[c][c]
            aug[c] = [v / pv for v in aug[c]]
            for r in range(phi):
                if r != c and aug[r][c] != 0:
                    f = aug[r][c]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
        return Cyclotomic._raw(self.order, tuple(aug[r][phi] for r in range(phi)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._raw(self.order, tuple(a / other for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = Cyclotomic.from_int(self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- predicates and maps
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                m = math.lcm(self.order, other.order)
                return self.lift(m).coeffs == other.lift(m).coeffs
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            # rationals hash like their Fraction so that 1 == Cyclotomic(d, [1])
            if not any(self.coeffs[1:]):
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.order, self.coeffs))
        return self._hash

    def galois(self, a: int) -> "Cyclotomic":
        """Apply zeta -> zeta^a (a coprime to the order)."""
        if math.gcd(a, self.order) != 1:
            raise ValueError("Galois exponent must be coprime to the order")
        vec = [Fraction(0)] * self.order
        for i, c in enumerate(self.coeffs):
            vec[(i * a) % self.order] += c
        return Cyclotomic(self.order, vec)

    def conj(self) -> "Cyclotomic":
        return self.galois(-1 % self.order) if self.order > 2 else self

    def to_complex(self) -> complex:
        z = cmath.exp(2j * math.pi / self.order)
        total = 0j
        for i, c in enumerate(self.coeffs):
            if c:
                total += float(c) * z ** i
        return total

    def rational_value(self):
        """The rational value if the element lies in Q, else None."""
        return self.coeffs[0] if not any(self.coeffs[1:]) else None

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z^{i}")
        return f"Cyclotomic({self.order}: {' + '.join(terms) or '0'})"


def cyc_arith(a: Cyclotomic, b: Cyclotomic, op: str) -> Cyclotomic:
    if a.order != b.order:
        raise ValueError(f"mismatched cyclotomic orders {a.order} and {b.order}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown op {op!r}")


def cyc_embed(a) -> Tuple[float, float]:
    """Numeric value under zeta_d -> exp(2 pi i / d); abs error far below 1e-10 at desk scale."""
    if isinstance(a, Cyclotomic):
        z = a.to_complex()
    else:
        z = complex(a)
    return (z.real, z.imag)


def as_order(x, order: int) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x if x.order == order else x.lift(order)
    return Cyclotomic.from_int(order, x)


# ---------------------------------------------------------------------------
# integer polynomials


@dataclass(frozen=True)
class IntPoly:
    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        return IntPoly(tuple(_polymul(self.coeffs, other.coeffs)))

    def shift(self, k: int) -> "IntPoly":
        return IntPoly((0,) * k + self.coeffs) if self.coeffs else self

    def evaluate(self, x):
        """Horner evaluation at anything supporting + and * with ints."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


@lru_cache(maxsize=None)
def gaussian_binomial(a: int, b: int) -> IntPoly:
    """Gaussian binomial [a choose b] in q via the Pascal recurrence.

    Returns the zero polynomial when b > a or b < 0.
    """
    if b < 0 or b > a:
        return IntPoly()
    if b == 0 or b == a:
        return IntPoly((1,))
    return gaussian_binomial(a - 1, b - 1) + gaussian_binomial(a - 1, b).shift(b)


# ---------------------------------------------------------------------------
# sparse matrices


@dataclass
class SparseMatrix:
    rows: int
    cols: int
    entries: Dict[Tuple[int, int], object] = field(default_factory=dict)

    def __post_init__(self):
        for (r, c), v in list(self.entries.items()):
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) out of range")
            if v == 0:
                del self.entries[(r, c)]

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "SparseMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        return cls(nr, nc, {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v != 0})

    def to_dense(self, zero=0) -> List[list]:
        out = [[zero] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row: Dict[int, List[Tuple[int, object]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: Dict[Tuple[int, int], object] = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                key = (r, c)
                out[key] = out[key] + v * w if key in out else v * w
        return SparseMatrix(self.rows, other.cols, {k: v for k, v in out.items() if v != 0})

    def is_zero(self) -> bool:
        return not self.entries

    def scalar_order(self) -> int:
        order = 1
        for v in self.entries.values():
            if isinstance(v, Cyclotomic):
                order = math.lcm(order, v.order)
        return order


# ---------------------------------------------------------------------------
# rank over Q(zeta_d), fraction-free


def _content(vals) -> int:
    g = 0
    for v in vals:
        g = math.gcd(g, v)
        if g == 1:
            return 1
    return g


def _integer_rows(M: SparseMatrix):
    """Rows as {col: int} (order 1) or {col: tuple of ints}, denominators cleared."""
    order = M.scalar_order()
    phi = euler_phi(order)
    rows: Dict[int, Dict[int, tuple]] = {}
    for (r, c), v in M.entries.items():
        if isinstance(v, Cyclotomic):
            vec = v.lift(order).coeffs if v.order != order else v.coeffs
        else:
            vec = (Fraction(v),) + (Fraction(0),) * (phi - 1)
        rows.setdefault(r, {})[c] = vec
    out = []
    for row in rows.values():
        den = 1
        for vec in row.values():
            for x in vec:
                den = math.lcm(den, x.denominator)
        irow = {c: tuple(int(x * den) for x in vec) for c, vec in row.items()}
        if phi == 1:
            irow = {c: vec[0] for c, vec in irow.items()}
        out.append(irow)
    return out, order, phi


def _normalize_row(row: dict, phi: int) -> dict:
    if phi == 1:
        g = _content(abs(v) for v in row.values())
        if g > 1:
            row = {c: v // g for c, v in row.items()}
    else:
        g = _content(abs(x) for vec in row.values() for x in vec)
        if g > 1:
            row = {c: tuple(x // g for x in vec) for c, vec in row.items()}
    return row


def rank(M: SparseMatrix) -> int:
    """Exact rank over Q (integer/rational entries) or Q(zeta_d).

    Fraction-free row echelon insertion: each incoming row is reduced against
    the stored pivot rows by ``row <- a*row - b*pivot`` with integer (or
    Z[zeta]) coefficients, followed by content removal.
    """
    rows, order, phi = _integer_rows(M)
    if not rows:
        return 0
    if phi == 1:
        mul = lambda a, b: a * b  # noqa: E731
        sub = lambda a, b: a - b  # noqa: E731
        nonzero = bool
    else:
        def mul(a, b):
            return tuple(_reduce(_polymul(a, b), order))

        def sub(a, b):
            return tuple(x - y for x, y in zip(a, b))

        def nonzero(a):
            return any(a)

    rows.sort(key=len)
    pivots: Dict[int, dict] = {}
    for row in rows:
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = row
                break
            a, b = piv[c], row[c]
            new = {}
            for k, v in row.items():
                if k != c:
                    new[k] = mul(a, v)
            for k, v in piv.items():
                if k == c:
                    continue
                t = mul(b, v)
                if k in new:
                    w = sub(new[k], t)
                    if nonzero(w):
                        new[k] = w
                    else:
                        del new[k]
                else:
                    new[k] = sub(0 if phi == 1 else (0,) * phi, t)
            row = _normalize_row(new, phi) if new else new
    return len(pivots)


# ---------------------------------------------------------------------------
# Smith normal form over Z


def _dense_snf_diagonal(A: List[List[int]]) -> List[int]:
    A = [list(r) for r in A]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    diag = []
    t = 0
    while t < nr and t < nc:
        # smallest nonzero entry in the remaining block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, nr):
                if A[i][t]:
                    f = A[i][t] // p
                    if f:
                        A[i] = [x - f * y for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, nc):
                if A[t][j]:
                    f = A[t][j] // p
                    if f:
                        for row in A:
                            row[j] -= f * row[t]
                    if A[t][j]:
                        done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if A[i][j] % p), None)
                if bad is None:
                    break
                A[t] = [x + y for x, y in zip(A[t], A[bad[0]])]
                continue
            # move the new smallest entry of row/col t into the pivot
            best = None
            for i in range(t, nr):
                v = A[i][t]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, t)
            for j in range(t, nc):
                v = A[t][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), t, j)
            _, i, j = best
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def _divisibility_chain(diag: List[int]) -> List[int]:
    d = sorted(x for x in diag if x)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = math.gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


def smith_normal_form(M: SparseMatrix) -> List[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix.

    Unit entries are eliminated sparsely first (each contributes a factor 1);
    the remaining block, typically small, goes through a dense reduction.
    """
    rows: Dict[int, Dict[int, int]] = {}
    cols: Dict[int, set] = {}
    for (r, c), v in M.entries.items():
        v = int(v)
        if v:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, set()).add(r)
    ones = 0
    while True:
        best = None
        for r, row in rows.items():
            lr = len(row)
            for c, v in row.items():
                if v == 1 or v == -1:
                    cost = (lr - 1) * (len(cols[c]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, r, c)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, pr, pc = best
        prow = rows.pop(pr)
        pv = prow[pc]
        for c in prow:
            cols[c].discard(pr)
        for r in list(cols[pc]):
            row = rows[r]
            f = row[pc] * pv  # pv = +-1 so this is row[pc] / pv
            for c, v in prow.items():
                nv = row.get(c, 0) - f * v
                if nv:
                    if c not in row:
                        cols[c].add(r)
                    row[c] = nv
                elif c in row:
                    del row[c]
                    cols[c].discard(r)
            if not row:
                del rows[r]
        del cols[pc]
        ones += 1
    rest = [r for r in rows if rows[r]]
    diag: List[int] = []
    if rest:
        used_cols = sorted({c for r in rest for c in rows[r]})
        index = {c: k for k, c in enumerate(used_cols)}
        dense = [[0] * len(used_cols) for _ in rest]
        for i, r in enumerate(rest):
            for c, v in rows[r].items():
                dense[i][index[c]] = v
        diag = _dense_snf_diagonal(dense)
    return [1] * ones + _divisibility_chain(diag)
