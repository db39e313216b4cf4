"""Finite fields F_q, polynomials over them, and resultants.

An element of F_q = F_p[t]/(modulus) is encoded by the integer
sum_i c_i p^i of its residue vector (c_0, ..., c_{k-1}); so 0 and 1 are the
field's zero and one, and 0..p-1 are the prime subfield.  Arithmetic goes
through precomputed q x q tables, which are also handed to the compiled
kernels in :mod:`fnconf.kernels`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np


def prime_power(q: int) -> Optional[Tuple[int, int]]:
    """(p, k) with q = p^k, or None."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    return (p, k) if r == 1 else None


# ---------------------------------------------------------------------------
# polynomials over F_p with plain int coefficients (used to build F_q)


def _pmod_p(a: List[int], b: List[int], p: int) -> List[int]:
    a = [x % p for x in a]
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        f = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - f * c) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible_p(poly: Sequence[int], p: int) -> bool:
    k = len(poly) - 1
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _pmod_p(list(poly), list(low) + [1], p):
                return False
    return True


@dataclass(frozen=True)
class FqContext:
    characteristic: int
    degree: int
    modulus: Tuple[int, ...] = field(default=(0, 1))

    def __post_init__(self):
        p, k = self.characteristic, self.degree
        if prime_power(p) != (p, 1):
            raise ValueError(f"{p} is not prime")
        if k == 1:
            object.__setattr__(self, "modulus", (0, 1))
        else:
            mod = tuple(x % p for x in self.modulus)
            if len(mod) != k + 1 or mod[-1] != 1 or not _is_irreducible_p(mod, p):
                raise ValueError(f"modulus {self.modulus} is not monic irreducible of degree {k} over F_{p}")
            object.__setattr__(self, "modulus", mod)

    @classmethod
    def of(cls, q: int, modulus: Optional[Sequence[int]] = None) -> "FqContext":
        pk = prime_power(q)
        if pk is None:
            raise ValueError(f"{q} is not a prime power")
        p, k = pk
        if k == 1:
            return cls(p, 1)
        if modulus is None:
            modulus = next(low + (1,) for low in product(range(p), repeat=k) if _is_irreducible_p(low + (1,), p))
        return cls(p, k, tuple(modulus))

    @property
    def q(self) -> int:
        return self.characteristic ** self.degree

    # -- element encoding
    def coeffs(self, x: int) -> Tuple[int, ...]:
        p = self.characteristic
        return tuple((x // p ** i) % p for i in range(self.degree))

    def encode(self, coeffs: Sequence[int]) -> int:
        p = self.characteristic
        return sum((c % p) * p ** i for i, c in enumerate(coeffs))

    def from_int(self, n: int) -> int:
        return n % self.characteristic

    @cached_property
    def tables(self):
        """(add, sub, mul, neg, inv) as int64 numpy arrays; inv[0] = 0."""
        q, p, k = self.q, self.characteristic, self.degree
        vecs = [self.coeffs(x) for x in range(q)]
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                add[a, b] = self.encode([x + y for x, y in zip(vecs[a], vecs[b])])
                prod = [0] * (2 * k - 1)
                for i, x in enumerate(vecs[a]):
                    for j, y in enumerate(vecs[b]):
                        prod[i + j] += x * y
                red = _pmod_p(prod, list(self.modulus), p) if k > 1 else [prod[0] % p]
                mul[a, b] = self.encode(red)
        neg = np.array([self.encode([-x for x in vecs[a]]) for a in range(q)], dtype=np.int64)
        sub = add[:, neg]
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        return add, sub, mul, neg, inv

    @cached_property
    def _py_tables(self):
        add, sub, mul, neg, inv = self.tables
        return add.tolist(), sub.tolist(), mul.tolist(), neg.tolist(), inv.tolist()

    def add(self, a: int, b: int) -> int:
        return self._py_tables[0][a][b]

    def sub(self, a: int, b: int) -> int:
        return self._py_tables[1][a][b]

    def mul(self, a: int, b: int) -> int:
        return self._py_tables[2][a][b]

    def neg(self, a: int) -> int:
        return self._py_tables[3][a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        return self._py_tables[4][a]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def element(self, x) -> "FqElement":
        return FqElement(self, x if isinstance(x, int) else self.encode(x))

    def poly(self, coeffs: Sequence[int]) -> "FqPoly":
        return FqPoly(self, tuple(coeffs))


@dataclass(frozen=True)
class FqElement:
    ctx: FqContext
    code: int

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return self.ctx.coeffs(self.code)

    def _other(self, o) -> int:
        return o.code if isinstance(o, FqElement) else self.ctx.from_int(o)

    def __add__(self, o):
        return FqElement(self.ctx, self.ctx.add(self.code, self._other(o)))

    def __sub__(self, o):
        return FqElement(self.ctx, self.ctx.sub(self.code, self._other(o)))

    def __mul__(self, o):
        return FqElement(self.ctx, self.ctx.mul(self.code, self._other(o)))

    def __neg__(self):
        return FqElement(self.ctx, self.ctx.neg(self.code))

    def inv(self):
        return FqElement(self.ctx, self.ctx.inv(self.code))

    def __eq__(self, o):
        if isinstance(o, int):
            return self.code == self.ctx.from_int(o)
        return isinstance(o, FqElement) and o.ctx == self.ctx and o.code == self.code

    def __hash__(self):
        return hash(self.code)

    def __int__(self):
        return self.code


# ---------------------------------------------------------------------------
# polynomials over F_q (coefficient codes, ascending degree)


def _trim(c: Sequence[int]) -> Tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class FqPoly:
    ctx: FqContext
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __add__(self, o: "FqPoly") -> "FqPoly":
        return FqPoly(self.ctx, _padd(self.ctx, self.coeffs, o.coeffs))

    def __sub__(self, o: "FqPoly") -> "FqPoly":
        return FqPoly(self.ctx, _psub(self.ctx, self.coeffs, o.coeffs))

    def __mul__(self, o: "FqPoly") -> "FqPoly":
        return FqPoly(self.ctx, _pmul(self.ctx, self.coeffs, o.coeffs))

    def divmod(self, o: "FqPoly") -> Tuple["FqPoly", "FqPoly"]:
        qt, r = _pdivmod(self.ctx, self.coeffs, o.coeffs)
        return FqPoly(self.ctx, qt), FqPoly(self.ctx, r)

    def derivative(self) -> "FqPoly":
        ctx = self.ctx
        return FqPoly(ctx, [ctx.mul(ctx.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = self.ctx.add(self.ctx.mul(acc, x), c)
        return acc


def _padd(ctx, a, b):
    n = max(len(a), len(b))
    a = tuple(a) + (0,) * (n - len(a))
    b = tuple(b) + (0,) * (n - len(b))
    return _trim([ctx.add(x, y) for x, y in zip(a, b)])


def _psub(ctx, a, b):
    n = max(len(a), len(b))
    a = tuple(a) + (0,) * (n - len(a))
    b = tuple(b) + (0,) * (n - len(b))
    return _trim([ctx.sub(x, y) for x, y in zip(a, b)])


def _pmul(ctx, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = ctx.add(out[i + j], ctx.mul(x, y))
    return _trim(out)


def _pdivmod(ctx, a, b):
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(_trim(a))
    inv = ctx.inv(b[-1])
    qt = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        f = ctx.mul(a[-1], inv)
        shift = len(a) - len(b)
        qt[shift] = f
        for i, c in enumerate(b):
            a[shift + i] = ctx.sub(a[shift + i], ctx.mul(f, c))
        a = list(_trim(a[:-1]) if a[-1] == 0 else _trim(a))
    return _trim(qt), _trim(a)


def _monic(ctx, a):
    if not a:
        return a
    inv = ctx.inv(a[-1])
    return tuple(ctx.mul(inv, c) for c in a)


def poly_gcd(f: FqPoly, g: FqPoly) -> FqPoly:
    """Monic gcd by Euclid."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd of two zero polynomials")
    ctx = f.ctx
    a, b = f.coeffs, g.coeffs
    while b:
        a, b = b, _pdivmod(ctx, a, b)[1]
    return FqPoly(ctx, _monic(ctx, a))


def is_squarefree(f: FqPoly) -> bool:
    if f.is_zero():
        raise ValueError("zero polynomial")
    d = f.derivative()
    if d.is_zero():
        return f.degree == 0
    return poly_gcd(f, d).degree == 0


def _det(ctx: FqContext, M: List[List[int]]) -> int:
    M = [list(r) for r in M]
    N = len(M)
    det = 1
    for c in range(N):
        piv = next((r for r in range(c, N) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = ctx.neg(det)
        det = ctx.mul(det, M[c][c])
        inv = ctx.inv(M[c][c])
        for r in range(c + 1, N):
            if M[r][c]:
                f = ctx.mul(M[r][c], inv)
                M[r] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(M[r], M[c])]
    return det


def sylvester_matrix(f: FqPoly, g: FqPoly) -> List[List[int]]:
    """Ascending layout: m shifted rows of f's coefficients, then n rows of g's."""
    n, m = f.degree, g.degree
    N = n + m
    rows = []
    for r in range(m):
        rows.append([0] * r + list(f.coeffs) + [0] * (N - r - n - 1))
    for r in range(n):
        rows.append([0] * r + list(g.coeffs) + [0] * (N - r - m - 1))
    return rows


def layout_sign(n: int, m: int) -> int:
    """Sign relating the ascending Sylvester determinant to prod(x_i - y_j)."""
    return -1 if (n * m) % 2 else 1


def sylvester_resultant(f: FqPoly, g: FqPoly) -> FqElement:
    """R(f, g) = prod (x_i - y_j) for monic f, g of positive degree.

    Computed as the determinant of the ascending-layout Sylvester matrix,
    corrected by :func:`layout_sign` (reversing rows within each block and
    all columns turns it into the classical descending layout).
    """
    if f.degree < 1 or g.degree < 1:
        raise ValueError("resultant needs polynomials of positive degree")
    if not (f.is_monic() and g.is_monic()):
        raise ValueError("resultant inputs must be monic")
    ctx = f.ctx
    det = _det(ctx, sylvester_matrix(f, g))
    if layout_sign(f.degree, g.degree) < 0:
        det = ctx.neg(det)
    return FqElement(ctx, det)


def euclid_resultant(f: FqPoly, g: FqPoly) -> FqElement:
    """Resultant of monic f, g via the Euclidean recursion

    res(A, B) = (-1)^(deg A deg B) lc(B)^(deg A - deg R) res(B, R), R = A mod B.
    """
    ctx = f.ctx
    minus = ctx.neg(1)
    a, b = f.coeffs, g.coeffs
    result = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return FqElement(ctx, ctx.mul(result, ctx.pow(b[0], da)))
        if da < db:
            a, b = b, a
            if (da * db) % 2:
                result = ctx.mul(result, minus)
            continue
        r = _pdivmod(ctx, a, b)[1]
        if not r:
            return FqElement(ctx, 0)
        if (da * db) % 2:
            result = ctx.mul(result, minus)
        result = ctx.mul(result, ctx.pow(b[-1], da - (len(r) - 1)))
        a, b = b, r


# ---------------------------------------------------------------------------
# product-formula oracle


def _factor_monic(f: FqPoly) -> List[Tuple[FqPoly, int]]:
    """Irreducible factorization by trial division (desk-scale degrees only)."""
    ctx = f.ctx
    rest = f.coeffs
    out = []
    d = 1
    while len(rest) - 1 >= 2 * d:
        for low in product(range(ctx.q), repeat=d):
            cand = low + (1,)
            e = 0
            while True:
                qt, r = _pdivmod(ctx, rest, cand)
                if r:
                    break
                rest, e = qt, e + 1
            if e:
                out.append((FqPoly(ctx, cand), e))
        d += 1
    if len(rest) > 1:
        out.append((FqPoly(ctx, rest), 1))
    return out


def resultant_oracle(f: FqPoly, g: FqPoly, max_degree: int = 24) -> FqElement:
    """prod_{i,j} (x_i - y_j) evaluated through roots in extension fields.

    For each irreducible factor psi of f, adjoin a root t: K = F_q[t]/(psi).
    The roots of psi are the Frobenius conjugates t^(q^k), and since g is
    monic, prod_j (x - y_j) = g(x); so the block of the product belonging to
    psi is prod_k g(t^(q^k)), which lands in F_q.
    """
    ctx = f.ctx
    if f.degree < 1 or g.degree < 1 or not (f.is_monic() and g.is_monic()):
        raise ValueError("oracle needs monic polynomials of positive degree")
    total = 1
    for psi, mult in _factor_monic(f):
        e = psi.degree
        if e > max_degree:
            raise ValueError(f"extension degree {e} exceeds cap {max_degree}")
        mod = psi.coeffs

        def kmul(a, b):
            return _pdivmod(ctx, _pmul(ctx, a, b), mod)[1]

        def kpow(a, n):
            r = (1,)
            while n:
                if n & 1:
                    r = kmul(r, a)
                a = kmul(a, a)
                n >>= 1
            return r

        root = _pdivmod(ctx, (0, 1), mod)[1]
        block = (1,)
        for _ in range(e):
            val = ()
            for c in reversed(g.coeffs):
                val = _padd(ctx, kmul(val, root), (c,))
            block = kmul(block, val)
            root = kpow(root, ctx.q)
        block = _trim(block)
        if len(block) > 1:
            raise AssertionError("norm did not land in the base field")
        value = block[0] if block else 0
        total = ctx.mul(total, ctx.pow(value, mult) if value else 0)
    return FqElement(ctx, total)


# ---------------------------------------------------------------------------
# enumeration


def enumerate_monic(ctx: FqContext, n: int) -> Iterator[FqPoly]:
    """Monic polynomials of degree n, lexicographic in (a_0, ..., a_{n-1})."""
    for low in product(range(ctx.q), repeat=n):
        yield FqPoly(ctx, low + (1,))


def enumerate_monic_squarefree(ctx: FqContext, n: int) -> Iterator[FqPoly]:
    for f in enumerate_monic(ctx, n):
        if is_squarefree(f):
            yield f


def monic_array(q: int, n: int) -> np.ndarray:
    """All monic degree-n polynomials as rows (a_0, ..., a_{n-1}), same order as enumerate_monic."""
    idx = np.arange(q ** n, dtype=np.int64)
    out = np.empty((q ** n, n), dtype=np.int64)
    for i in range(n - 1, -1, -1):
        out[:, i] = idx % q
        idx //= q
    return out
