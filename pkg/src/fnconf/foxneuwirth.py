"""Fox-Neuwirth cellular chain complex of configurations in a punctured plane.

A cell (lam, I, J) describes n free points and m fixed punctures arranged in
vertical columns of sizes lam (a composition of n+m).  The columns listed in
I (1-based, increasing) each contain one fixed point, with J[k] points of
its column strictly below it.  The cell has dimension n + len(lam) - m, and
the complex is graded by that dimension, which ranges over [n, 2n].

The boundary merges adjacent columns i, i+1 (never two fixed columns) with
sign (-1)^(i-1) and a shuffle coefficient.  In the twisted version each
shuffle contributes its rank-1 scalar evaluated with the sign-twisted
parameters (-q, -s), which folds the (-1)^inversions factor into the letters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, List, Optional, Tuple

from .exactalg import Cyclotomic, SparseMatrix, euler_phi, rank, smith_normal_form
from .shuffle import (
    LocalSystemParams,
    c_hj,
    c_pq,
    compositions,
    enumerate_h_j_shuffles,
    enumerate_shuffles,
    lift_word,
    rank1_scalar,
)


@dataclass(frozen=True, order=True)
class Cell:
    lam: Tuple[int, ...]
    I: Tuple[int, ...] = ()
    J: Tuple[int, ...] = ()

    @property
    def n(self) -> int:
        return sum(self.lam) - len(self.I)

    @property
    def m(self) -> int:
        return len(self.I)

    @property
    def dim(self) -> int:
        return self.n + len(self.lam) - self.m

    def positions(self) -> Tuple[int, ...]:
        """Overall heights iota_k = j_k + 1 + (points in earlier columns)."""
        out = []
        for i, j in zip(self.I, self.J):
            out.append(j + 1 + sum(self.lam[: i - 1]))
        return tuple(out)

    def validate(self) -> None:
        L = len(self.lam)
        if any(x < 1 for x in self.lam):
            raise ValueError(f"bad composition {self.lam}")
        if len(self.I) != len(self.J):
            raise ValueError("I and J differ in length")
        if any(b <= a for a, b in zip(self.I, self.I[1:])) or any(not 1 <= i <= L for i in self.I):
            raise ValueError(f"bad fixed columns {self.I}")
        if any(not 0 <= j < self.lam[i - 1] for i, j in zip(self.I, self.J)):
            raise ValueError(f"bad heights {self.J}")
        pos = self.positions()
        if any(b <= a for a, b in zip(pos, pos[1:])):
            raise ValueError("fixed points out of order")
        if self.n < 1:
            raise ValueError("need at least one free point")


def enumerate_cells(n: int, m: int, dim: int) -> List[Cell]:
    """Cells of the given dimension, ordered by (lam, I, J) with lam in composition order."""
    L = dim - n + m
    if n < 1 or m < 0 or L < max(m, 1) or L > n + m:
        return []
    out = []
    for lam in compositions(n + m, L):
        for I in combinations(range(1, L + 1), m):
            for J in product(*(range(lam[i - 1]) for i in I)):
                out.append(Cell(tuple(lam), I, tuple(J)))
    return out


def _merge(lam: Tuple[int, ...], i: int) -> Tuple[int, ...]:
    return lam[: i - 1] + (lam[i - 1] + lam[i],) + lam[i + 1:]


def _shift_from(I: Tuple[int, ...], k: int) -> Tuple[int, ...]:
    # decrement the fixed column indices at positions >= k (0-based k)
    return I[:k] + tuple(x - 1 for x in I[k:])


def _merges(c: Cell):
    """Yield (i, kind, a, b, k) for each admissible merge of columns i, i+1.

    kind "free": both free; "fix_right": free column i then fixed column i+1
    (the k-th fixed column, 0-based); "fix_left": fixed column i then free.
    """
    fixed = {col: k for k, col in enumerate(c.I)}
    for i in range(1, len(c.lam)):
        left, right = fixed.get(i), fixed.get(i + 1)
        a, b = c.lam[i - 1], c.lam[i]
        if left is not None and right is not None:
            continue
        if left is None and right is None:
            yield i, "free", a, b, None
        elif right is not None:
            yield i, "fix_right", a, b, right
        else:
            yield i, "fix_left", a, b, left


def _terms(c: Cell, coeff_free, coeff_fix_right, coeff_fix_left) -> Dict[Cell, object]:
    out: Dict[Cell, object] = {}

    def add(cell, v):
        if v == 0:
            return
        w = out.get(cell)
        w = v if w is None else w + v
        if w == 0:
            out.pop(cell, None)
        else:
            out[cell] = w

    for i, kind, a, b, k in _merges(c):
        sign = -1 if (i - 1) % 2 else 1
        lam2 = _merge(c.lam, i)
        if kind == "free":
            # fixed columns to the right of i+1 shift down by one
            k0 = next((t for t, col in enumerate(c.I) if col > i), len(c.I))
            add(Cell(lam2, _shift_from(c.I, k0), c.J), sign * coeff_free(a, b))
        elif kind == "fix_right":
            j = c.J[k]
            I2 = _shift_from(c.I, k)
            for h in range(a + 1):
                J2 = c.J[:k] + (j + h,) + c.J[k + 1:]
                add(Cell(lam2, I2, J2), sign * coeff_fix_right(a, b, h, j))
        else:
            j = c.J[k]
            I2 = _shift_from(c.I, k + 1)
            for h in range(b + 1):
                J2 = c.J[:k] + (j + h,) + c.J[k + 1:]
                add(Cell(lam2, I2, J2), sign * coeff_fix_left(a, b, h, j))
    return out


def boundary_untwisted(c: Cell) -> Dict[Cell, int]:
    """Integer boundary of a cell as {cell: coefficient}."""
    return _terms(
        c,
        c_pq,
        lambda a, b, h, j: c_hj("left", a, b, h, j),
        lambda a, b, h, j: c_hj("right", a, b, h, j),
    )


@lru_cache(maxsize=None)
def _twisted_coeff(kind: str, a: int, b: int, h: int, j: int, params: LocalSystemParams, route: str):
    """Sum over the relevant shuffles of (-1)^inv * rank-1 scalar of the lift.

    route "eps" evaluates letters with (-q, -s); route "sign" multiplies the
    untwisted-letter scalar by the explicit shuffle sign.  Both agree.
    Marks are local to the two merged columns.
    """
    if kind == "free":
        shuffles = enumerate_shuffles(a, b)
        marks: Tuple[int, ...] = ()
        expect = None
    elif kind == "fix_right":  # free block a, fixed block b, mark is element j+1 of block b
        shuffles = enumerate_h_j_shuffles("left", a, b, h, j)
        marks = (a + j + 1,)
        expect = (h + j + 1,)
    else:  # fixed block a with mark j+1, free block b
        shuffles = enumerate_h_j_shuffles("right", a, b, h, j)
        marks = (j + 1,)
        expect = (j + h + 1,)
    eps = params.eps_twisted()
    total = Cyclotomic.from_int(params.order, 0)
    for g in shuffles:
        word = lift_word(g)
        if route == "eps":
            val, final = rank1_scalar(word, marks, eps)
        else:
            val, final = rank1_scalar(word, marks, params)
            val = val * g.sign()
        if expect is not None and final != expect:
            raise AssertionError(f"mark ended at {final}, expected {expect}")
        total = total + val
    return total


def boundary_twisted(c: Cell, params: LocalSystemParams, route: str = "eps") -> Dict[Cell, Cyclotomic]:
    return _terms(
        c,
        lambda a, b: _twisted_coeff("free", a, b, 0, 0, params, route),
        lambda a, b, h, j: _twisted_coeff("fix_right", a, b, h, j, params, route),
        lambda a, b, h, j: _twisted_coeff("fix_left", a, b, h, j, params, route),
    )


# ---------------------------------------------------------------------------
# chain complexes


@dataclass
class ChainComplex:
    """Graded basis plus boundary matrices; boundaries[k] maps degree k to k-1.

    Matrix columns index the source basis, rows the target basis.
    ``scalar`` is "Z" for integer complexes or the cyclotomic order.
    """

    degrees: List[int]
    basis: Dict[int, list]
    boundaries: Dict[int, SparseMatrix]
    scalar: object = "Z"

    def size(self, k: int) -> int:
        return len(self.basis.get(k, ()))

    def boundary(self, k: int) -> SparseMatrix:
        if k in self.boundaries:
            return self.boundaries[k]
        return SparseMatrix(self.size(k - 1), self.size(k))

    def d_squared_is_zero(self) -> bool:
        for k in self.degrees:
            if k - 1 in self.boundaries and k in self.boundaries:
                if not self.boundaries[k - 1].matmul(self.boundaries[k]).is_zero():
                    return False
        return True

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * self.size(k) for k in self.degrees)


def assemble(degrees: List[int], basis: Dict[int, list], boundary_of, scalar) -> ChainComplex:
    bounds = {}
    for k in degrees:
        if k - 1 not in basis:
            continue
        index = {cell: r for r, cell in enumerate(basis[k - 1])}
        entries = {}
        for col, cell in enumerate(basis[k]):
            for target, v in boundary_of(cell).items():
                entries[(index[target], col)] = v
        bounds[k] = SparseMatrix(len(basis[k - 1]), len(basis[k]), entries)
    return ChainComplex(list(degrees), basis, bounds, scalar)


def d_complex(n: int, m: int, params: Optional[LocalSystemParams] = None, route: str = "eps") -> ChainComplex:
    """D(n, m) in degrees n..2n; untwisted over Z when params is None."""
    degrees = list(range(n, 2 * n + 1))
    basis = {k: enumerate_cells(n, m, k) for k in degrees}
    if params is None:
        return assemble(degrees, basis, boundary_untwisted, "Z")
    return assemble(degrees, basis, lambda c: boundary_twisted(c, params, route), params.order)


# ---------------------------------------------------------------------------
# homology


@dataclass
class HomologyReport:
    """Per-degree homology of a compactified-pair complex and its dual.

    ``compact[k]`` is the dimension (or free rank) in cell degree k.
    ``conf[j]`` is the dimension for the configuration space itself, with
    j = 2n - k.  Over Z, ``torsion`` lists invariant factors > 1 per cell
    degree and ``conf_torsion`` the torsion of H_j(Conf) obtained by
    universal coefficients (torsion of cell degree 2n - j - 1).
    """

    n: int
    m: int
    scalar: object
    compact: Dict[int, int]
    conf: Dict[int, int]
    torsion: Dict[int, List[int]] = field(default_factory=dict)
    conf_torsion: Dict[int, List[int]] = field(default_factory=dict)
    engine: str = "D"

    def to_dict(self) -> dict:
        d = {
            "n": self.n,
            "m": self.m,
            "engine": self.engine,
            "scalar": _scalar_label(self.scalar),
            "compact_dims": {str(k): v for k, v in sorted(self.compact.items())},
            "conf_dims": {str(k): v for k, v in sorted(self.conf.items())},
        }
        if self.scalar == "Z":
            d["compact_torsion"] = {str(k): v for k, v in sorted(self.torsion.items())}
            d["conf_torsion"] = {str(k): v for k, v in sorted(self.conf_torsion.items())}
        return d


def _scalar_label(scalar) -> str:
    if isinstance(scalar, str):
        return scalar
    return "Q" if scalar <= 2 else f"Q(zeta_{scalar})"


def complex_homology(cx: ChainComplex) -> Tuple[Dict[int, int], Dict[int, List[int]]]:
    """Dimensions (free ranks over Z) and torsion factors per degree."""
    ranks: Dict[int, int] = {}
    torsion: Dict[int, List[int]] = {}
    for k, M in cx.boundaries.items():
        if cx.scalar == "Z":
            inv = smith_normal_form(M)
            ranks[k] = len(inv)
            torsion[k - 1] = [x for x in inv if x > 1]
        else:
            ranks[k] = rank(M)
    dims = {}
    for k in cx.degrees:
        dims[k] = cx.size(k) - ranks.get(k, 0) - ranks.get(k + 1, 0)
    tors = {k: torsion.get(k, []) for k in cx.degrees} if cx.scalar == "Z" else {}
    return dims, tors


def homology_dims(n: int, m: int, params: Optional[LocalSystemParams] = None) -> HomologyReport:
    """Homology of D(n, m) (twisted if params given) with the dualized report."""
    if params is not None and params.is_trivial() and params.order == 1:
        params = None
    cx = d_complex(n, m, params)
    dims, tors = complex_homology(cx)
    conf = {2 * n - k: v for k, v in dims.items()}
    conf_tors = {}
    if cx.scalar == "Z":
        conf_tors = {j: tors.get(2 * n - j - 1, []) for j in conf}
    return HomologyReport(n, m, cx.scalar, dims, conf, tors, conf_tors, "D")


def scalar_width(order) -> int:
    return 1 if order == "Z" else euler_phi(order)
