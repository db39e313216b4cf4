"""Hot loops of the character-sum brute force.

Two interchangeable backends:

* ``numba``: per-pair Euclidean resultants in @njit loops, parallel over g.
* ``numpy``: batched Sylvester determinants by vectorized Gaussian
  elimination, no compilation.

Set ``FNCONF_PURE_NUMPY=1`` to force the numpy path (it is also used when
numba cannot be imported).  Field elements are integer codes and all
arithmetic is done through the (add, sub, mul, neg, inv) tables of
:class:`fnconf.ffield.FqContext`.
"""

from __future__ import annotations

import os
import warnings

import numpy as np

# the system TBB is too old for numba; it falls back to OpenMP by itself
warnings.filterwarnings("ignore", message="The TBB threading layer")

try:
    import numba
    from numba import njit, prange

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

_backend = "numpy" if (os.environ.get("FNCONF_PURE_NUMPY", "") not in ("", "0") or not HAVE_NUMBA) else "numba"

CHUNK = 1 << 15


def get_backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    _backend = name


# ---------------------------------------------------------------------------
# numpy backend


def _batched_det(M: np.ndarray, sub, mul, neg, inv) -> np.ndarray:
    """Determinants of a stack of square matrices over F_q (M is modified)."""
    B, N, _ = M.shape
    det = np.ones(B, dtype=np.int64)
    rows = np.arange(B)
    for c in range(N):
        nz = M[:, c:, c] != 0
        has = nz.any(axis=1)
        det[~has] = 0
        piv = c + nz.argmax(axis=1)
        swap = has & (piv != c)
        if swap.any():
            r = rows[swap]
            top = M[r, c, :].copy()
            M[r, c, :] = M[r, piv[swap], :]
            M[r, piv[swap], :] = top
            det[swap] = neg[det[swap]]
        p = M[:, c, c]
        det = mul[det, p]
        if c + 1 < N:
            f = mul[M[:, c + 1:, c], inv[p][:, None]]
            M[:, c + 1:, c:] = sub[M[:, c + 1:, c:], mul[f[:, :, None], M[:, None, c, c:]]]
    return det


def _sylvester_stack(A: np.ndarray, Bc: np.ndarray) -> np.ndarray:
    """Ascending-layout Sylvester matrices for rows of full coefficient arrays.

    A: (K, a+1), Bc: (K, b+1); the matrix has b rows of A then a rows of B.
    """
    K, a1 = A.shape
    b1 = Bc.shape[1]
    a, b = a1 - 1, b1 - 1
    N = a + b
    M = np.zeros((K, N, N), dtype=np.int64)
    for r in range(b):
        M[:, r, r:r + a1] = A
    for r in range(a):
        M[:, b + r, r:r + b1] = Bc
    return M


def _squarefree_numpy(polys: np.ndarray, p: int, tables) -> np.ndarray:
    add, sub, mul, neg, inv = tables
    K, n = polys.shape
    if n == 1:
        return np.ones(K, dtype=bool)
    full = np.concatenate([polys, np.ones((K, 1), dtype=np.int64)], axis=1)
    # formal derivative, kept with n coefficients even if the top one is 0
    scal = np.arange(1, n + 1) % p
    deriv = mul[full[:, 1:], scal[None, :]]
    out = np.empty(K, dtype=bool)
    for s in range(0, K, CHUNK):
        M = _sylvester_stack(full[s:s + CHUNK], deriv[s:s + CHUNK])
        out[s:s + CHUNK] = _batched_det(M, sub, mul, neg, inv) != 0
    return out


def _histogram_numpy(F: np.ndarray, G: np.ndarray, q: int, tables) -> np.ndarray:
    add, sub, mul, neg, inv = tables
    nF, n = F.shape
    nG, m = G.shape
    Ff = np.concatenate([F, np.ones((nF, 1), dtype=np.int64)], axis=1)
    Gf = np.concatenate([G, np.ones((nG, 1), dtype=np.int64)], axis=1)
    hist = np.zeros(q, dtype=np.int64)
    flip = (n * m) % 2 == 1
    per = max(1, CHUNK // max(nF, 1))
    for s in range(0, nG, per):
        g = Gf[s:s + per]
        A = np.tile(Ff, (g.shape[0], 1))
        Bc = np.repeat(g, nF, axis=0)
        det = _batched_det(_sylvester_stack(A, Bc), sub, mul, neg, inv)
        if flip:
            det = neg[det]
        hist += np.bincount(det, minlength=q)
    return hist


# ---------------------------------------------------------------------------
# numba backend

if HAVE_NUMBA:

    @njit(cache=True)
    def _rem_inplace(a, da, b, db, sub, mul, inv):
        # a <- a mod b; returns new degree of a (-1 for zero)
        ib = inv[b[db]]
        while da >= db:
            f = mul[a[da], ib]
            if f != 0:
                shift = da - db
                for i in range(db + 1):
                    a[shift + i] = sub[a[shift + i], mul[f, b[i]]]
            da -= 1
            while da >= 0 and a[da] == 0:
                da -= 1
        return da

    @njit(cache=True)
    def _fpow(x, e, mul):
        r = 1
        while e > 0:
            if e & 1:
                r = mul[r, x]
            x = mul[x, x]
            e >>= 1
        return r

    @njit(cache=True)
    def _resultant_euclid(a, da, b, db, sub, mul, neg, inv):
        """res(a, b) for full coefficient arrays (a, b are overwritten)."""
        result = 1
        minus = neg[1]
        while True:
            if db == 0:
                return mul[result, _fpow(b[0], da, mul)]
            if da < db:
                a, b = b, a
                da, db = db, da
                if (da * db) & 1:
                    result = mul[result, minus]
                continue
            dr = _rem_inplace(a, da, b, db, sub, mul, inv)
            if dr < 0:
                return 0
            if (da * db) & 1:
                result = mul[result, minus]
            result = mul[result, _fpow(b[db], da - dr, mul)]
            a, b = b, a
            da, db = db, dr

    @njit(cache=True)
    def _gcd_degree(a, da, b, db, sub, mul, inv):
        while db >= 0:
            dr = _rem_inplace(a, da, b, db, sub, mul, inv)
            a, b = b, a
            da, db = db, dr
        return da

    @njit(parallel=True, cache=True)
    def _squarefree_numba(polys, p, sub, mul, inv):
        K, n = polys.shape
        out = np.zeros(K, dtype=np.bool_)
        for t in prange(K):
            a = np.empty(n + 1, dtype=np.int64)
            b = np.zeros(n + 1, dtype=np.int64)
            for i in range(n):
                a[i] = polys[t, i]
            a[n] = 1
            db = -1
            for i in range(1, n + 1):
                b[i - 1] = mul[a[i], i % p]
                if b[i - 1] != 0:
                    db = i - 1
            if db < 0:
                out[t] = False
            else:
                out[t] = _gcd_degree(a, n, b, db, sub, mul, inv) == 0
        return out

    @njit(parallel=True, cache=True)
    def _histogram_numba(F, G, q, sub, mul, neg, inv):
        nF, n = F.shape
        nG, m = G.shape
        nblocks = min(nG, 256)
        hist = np.zeros((nblocks, q), dtype=np.int64)
        for blk in prange(nblocks):
            a = np.empty(max(n, m) + 1, dtype=np.int64)
            b = np.empty(max(n, m) + 1, dtype=np.int64)
            for gi in range(blk, nG, nblocks):
                for fi in range(nF):
                    for i in range(n):
                        a[i] = F[fi, i]
                    a[n] = 1
                    for i in range(m):
                        b[i] = G[gi, i]
                    b[m] = 1
                    r = _resultant_euclid(a, n, b, m, sub, mul, neg, inv)
                    hist[blk, r] += 1
        return hist.sum(axis=0)


# ---------------------------------------------------------------------------
# dispatch


def squarefree_mask(polys: np.ndarray, q: int, p: int, tables) -> np.ndarray:
    """Boolean mask of square-free rows; rows hold (a_0..a_{n-1}) of monic polys."""
    polys = np.ascontiguousarray(polys, dtype=np.int64)
    if polys.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    add, sub, mul, neg, inv = tables
    if _backend == "numba":
        return _squarefree_numba(polys, p, sub, mul, inv)
    return _squarefree_numpy(polys, p, tables)


def resultant_histogram(F: np.ndarray, G: np.ndarray, q: int, tables) -> np.ndarray:
    """counts[x] = #{(f, g) in F x G : R(f, g) = x} with R = prod(x_i - y_j)."""
    F = np.ascontiguousarray(F, dtype=np.int64)
    G = np.ascontiguousarray(G, dtype=np.int64)
    if F.shape[0] == 0 or G.shape[0] == 0:
        return np.zeros(q, dtype=np.int64)
    add, sub, mul, neg, inv = tables
    if _backend == "numba":
        return _histogram_numba(F, G, q, sub, mul, neg, inv)
    return _histogram_numpy(F, G, q, tables)


def set_threads(n: int) -> None:
    if HAVE_NUMBA and n and n > 0:
        numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))
