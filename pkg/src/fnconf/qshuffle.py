"""Rank-1 quantum shuffle model: the algebra Gamma_{-q}[x], the bimodule with
basis y_{i,n}, and the bar-type complex F built from them.

x_a is the degree-a generator of the divided power algebra; y_{i,n} is the
degree-n module class with the fixed strand w at position i.  Products are
sums over shuffles whose lifted braids act by the sign-twisted rank-1
scalars (q -> -q, s -> -s, p unchanged).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .exactalg import Cyclotomic, SparseMatrix, gaussian_binomial, rank
from .foxneuwirth import Cell, ChainComplex, HomologyReport, assemble, complex_homology
from .shuffle import LocalSystemParams, enumerate_shuffles, lift_word, rank1_scalar

Label = Tuple[int, int]  # (i, n) for y_{i,n}


@dataclass
class GammaElement:
    """Finite combination sum_n c_n x_n in Gamma_{-q}[x]."""

    coeffs: Dict[int, Cyclotomic]
    params: LocalSystemParams

    def __mul__(self, other: "GammaElement") -> "GammaElement":
        out: Dict[int, Cyclotomic] = {}
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                v = ca * cb * gamma_mul(a, b, self.params)
                out[a + b] = out[a + b] + v if a + b in out else v
        return GammaElement({k: v for k, v in out.items() if not v.is_zero()}, self.params)

    @classmethod
    def x(cls, a: int, params: LocalSystemParams) -> "GammaElement":
        return cls({a: Cyclotomic.from_int(params.order, 1)}, params)


@lru_cache(maxsize=None)
def gamma_mul(a: int, b: int, params: LocalSystemParams) -> Cyclotomic:
    """Coefficient of x_{a+b} in x_a * x_b: Gaussian binomial at -q."""
    return gaussian_binomial(a + b, b).evaluate(-params.q)


def _collect(pairs, order: int) -> Dict[Label, Cyclotomic]:
    out: Dict[Label, Cyclotomic] = {}
    for label, v in pairs:
        out[label] = out[label] + v if label in out else v
    return {k: v for k, v in out.items() if not v.is_zero()}


@lru_cache(maxsize=None)
def _left_mul(a: int, i: int, n: int, params: LocalSystemParams) -> Tuple[Tuple[Label, Cyclotomic], ...]:
    if a == 0:
        return (((i, n), Cyclotomic.from_int(params.order, 1)),)
    eps = params.eps_twisted()
    pairs = []
    for g in enumerate_shuffles(a, n):
        val, final = rank1_scalar(lift_word(g), (a + i,), eps)
        pairs.append(((final[0], a + n), val))
    return tuple(sorted(_collect(pairs, params.order).items()))


@lru_cache(maxsize=None)
def _right_mul(i: int, n: int, b: int, params: LocalSystemParams) -> Tuple[Tuple[Label, Cyclotomic], ...]:
    if b == 0:
        return (((i, n), Cyclotomic.from_int(params.order, 1)),)
    eps = params.eps_twisted()
    pairs = []
    for g in enumerate_shuffles(n, b):
        val, final = rank1_scalar(lift_word(g), (i,), eps)
        pairs.append(((final[0], n + b), val))
    return tuple(sorted(_collect(pairs, params.order).items()))


def left_mul(a: int, y: Label, params: LocalSystemParams) -> Dict[Label, Cyclotomic]:
    """x_a * y_{i,n} as {(i', a+n): coefficient}."""
    return dict(_left_mul(a, y[0], y[1], params))


def right_mul(y: Label, b: int, params: LocalSystemParams) -> Dict[Label, Cyclotomic]:
    """y_{i,n} * x_b as {(i', n+b): coefficient}."""
    return dict(_right_mul(y[0], y[1], b, params))


def right_mul_closed_terms(n: int, m: int, params: LocalSystemParams) -> Dict[int, Cyclotomic]:
    """Coefficients k_h in y_{n,n} * x_m = sum_h k_h x_{m-h} * y_{n+h,n+h}.

    With Q = -q and S = -s:
    k_h = S^(-m) Q^(-(m-h)(n-1+h)) [n-1+h choose h]_Q prod_{j<h} (p - Q^(-(n-1+j))).
    """
    Q = -params.q
    S = -params.s
    out = {}
    for h in range(m + 1):
        v = S ** (-m) * Q ** (-(m - h) * (n - 1 + h)) * gaussian_binomial(n - 1 + h, h).evaluate(Q)
        for j in range(h):
            v = v * (params.p - Q ** (-(n - 1 + j)))
        out[h] = v
    return out


def right_mul_closed(n: int, m: int, params: LocalSystemParams) -> Dict[Label, Cyclotomic]:
    """y_{n,n} * x_m from the closed formula, expanded in the y_{i,n+m} basis."""
    pairs = []
    for h, k in right_mul_closed_terms(n, m, params).items():
        if k.is_zero():
            continue
        for label, v in left_mul(m - h, (n + h, n + h), params).items():
            pairs.append((label, k * v))
    return _collect(pairs, params.order)


def left_freeness_rank(N: int, params: LocalSystemParams) -> int:
    """Rank of the map spanned by x_{N-k} * y_{k,k}, k = 1..N, in degree N."""
    entries = {}
    for k in range(1, N + 1):
        for (i, _), v in left_mul(N - k, (k, k), params).items():
            entries[(i - 1, k - 1)] = v
    return rank(SparseMatrix(N, N, entries))


# ---------------------------------------------------------------------------
# the complex F


@dataclass(frozen=True)
class FBasisElement:
    """Sequence of blocks ('x', a) and ('y', i, b)."""

    blocks: Tuple[tuple, ...]

    def to_cell(self) -> Cell:
        lam = tuple(b[1] if b[0] == "x" else b[2] for b in self.blocks)
        I = tuple(k for k, b in enumerate(self.blocks, start=1) if b[0] == "y")
        J = tuple(b[1] - 1 for b in self.blocks if b[0] == "y")
        return Cell(lam, I, J)

    @classmethod
    def from_cell(cls, c: Cell) -> "FBasisElement":
        fixed = dict(zip(c.I, c.J))
        blocks = []
        for k, size in enumerate(c.lam, start=1):
            blocks.append(("y", fixed[k] + 1, size) if k in fixed else ("x", size))
        return cls(tuple(blocks))


def _block_sequences(total: int, nblocks: int, ny: int):
    if nblocks == 0:
        if total == 0 and ny == 0:
            yield ()
        return
    for size in range(1, total - nblocks + 2):
        if nblocks - 1 >= ny:
            for rest in _block_sequences(total - size, nblocks - 1, ny):
                yield (("x", size),) + rest
        if ny >= 1:
            for i in range(1, size + 1):
                for rest in _block_sequences(total - size, nblocks - 1, ny - 1):
                    yield (("y", i, size),) + rest


def f_basis(n: int, m: int, k: int) -> List[FBasisElement]:
    """Basis of F in degree k: k blocks of total degree n+m, m of them module blocks."""
    return [FBasisElement(b) for b in _block_sequences(n + m, k, m)]


def _merge_blocks(left: tuple, right: tuple, params: LocalSystemParams):
    """Product of two adjacent blocks as [(block, coefficient)]."""
    if left[0] == "x" and right[0] == "x":
        return [(("x", left[1] + right[1]), gamma_mul(left[1], right[1], params))]
    if left[0] == "x":
        return [(("y", i, nn), v) for (i, nn), v in left_mul(left[1], (right[1], right[2]), params).items()]
    if right[0] == "x":
        return [(("y", i, nn), v) for (i, nn), v in right_mul((left[1], left[2]), right[1], params).items()]
    return []


def f_boundary(e: FBasisElement, params: LocalSystemParams) -> Dict[FBasisElement, Cyclotomic]:
    """Bar-type differential sum_i (-1)^(i-1) d_i, d_i multiplying blocks i, i+1."""
    out: Dict[FBasisElement, Cyclotomic] = {}
    blocks = e.blocks
    for i in range(1, len(blocks)):
        sign = 1 if i % 2 else -1
        for merged, v in _merge_blocks(blocks[i - 1], blocks[i], params):
            if v.is_zero():
                continue
            target = FBasisElement(blocks[: i - 1] + (merged,) + blocks[i + 1:])
            w = out[target] + sign * v if target in out else sign * v
            if w.is_zero():
                out.pop(target, None)
            else:
                out[target] = w
    return out


def f_complex(n: int, m: int, params: LocalSystemParams) -> ChainComplex:
    """F in degrees m..n+m (number of blocks)."""
    if m < 1:
        raise ValueError("the module complex needs m >= 1")
    degrees = list(range(m, n + m + 1))
    basis = {k: f_basis(n, m, k) for k in degrees}
    return assemble(degrees, basis, lambda e: f_boundary(e, params), params.order)


def f_homology_dims(n: int, m: int, params: LocalSystemParams) -> HomologyReport:
    """Homology of F, re-indexed to cell degree k + n - m and dualized."""
    dims, _ = complex_homology(f_complex(n, m, params))
    compact = {k + n - m: v for k, v in dims.items()}
    conf = {2 * n - k: v for k, v in compact.items()}
    return HomologyReport(n, m, params.order, compact, conf, engine="F")


def compare_with_d(n: int, m: int, params: LocalSystemParams, d_cx: Optional[ChainComplex] = None) -> List[str]:
    """Entry-wise comparison of F and D under the block <-> cell bijection.

    Returns a list of mismatch descriptions (empty when the complexes agree).
    """
    from .foxneuwirth import d_complex

    fx = f_complex(n, m, params)
    dx = d_complex(n, m, params) if d_cx is None else d_cx
    problems = []
    for k in fx.degrees:
        dk = k + n - m
        fcells = [e.to_cell() for e in fx.basis[k]]
        if sorted(fcells) != sorted(dx.basis[dk]):
            problems.append(f"basis mismatch in F degree {k}")
            continue
        if k not in fx.boundaries:
            continue
        frow = {e.to_cell(): r for r, e in enumerate(fx.basis[k - 1])}
        fcol = {e.to_cell(): c for c, e in enumerate(fx.basis[k])}
        drow = dx.basis[dk - 1]
        dcol = dx.basis[dk]
        dent = {(frow[drow[r]], fcol[dcol[c]]): v for (r, c), v in dx.boundaries[dk].entries.items()}
        fent = fx.boundaries[k].entries
        for key in set(dent) | set(fent):
            a, b = dent.get(key, 0), fent.get(key, 0)
            if a != b:
                problems.append(f"degree {k} entry {key}: D={a!r} F={b!r}")
    return problems
