from itertools import product

import numpy as np
import pytest

from fnconf import charsum as cs
from fnconf import kernels
from fnconf.exactalg import Cyclotomic
from fnconf.ffield import FqContext, monic_array


def test_primitive_roots():
    assert cs.find_primitive_root(FqContext.of(3)) == 2
    assert cs.find_primitive_root(FqContext.of(5)) == 2
    assert cs.find_primitive_root(FqContext.of(7)) == 3


def test_char_eval_examples():
    ctx = FqContext.of(5)
    chi = cs.Character.of_order(ctx, 2)
    assert cs.char_eval(chi, 4) == 1
    assert cs.char_eval(chi, 0).is_zero()
    for q, d in ((7, 3), (9, 4), (13, 6)):
        chi = cs.Character.of_order(FqContext.of(q), d)
        g = chi.generator
        assert cs.char_eval(chi, g) * cs.char_eval(chi, FqContext.of(q).pow(g, d - 1)) == 1


def test_character_is_multiplicative():
    ctx = FqContext.of(9)
    chi = cs.Character.of_order(ctx, 4)
    for a in range(1, 9):
        for b in range(1, 9):
            assert cs.char_eval(chi, ctx.mul(a, b)) == cs.char_eval(chi, a) * cs.char_eval(chi, b)


def test_character_rejects_bad_orders():
    ctx = FqContext.of(7)
    with pytest.raises(ValueError):
        cs.Character.of_order(ctx, 1)
    with pytest.raises(ValueError):
        cs.Character.of_order(ctx, 4)


def _euclid_resultant_mod_p(f, g, p):
    """Textbook resultant of monic integer-coefficient polys over F_p by Euclid.

    f, g are ascending coefficient lists.  Independent of the package code.
    """

    def trim(a):
        while a and a[-1] % p == 0:
            a = a[:-1]
        return [x % p for x in a]

    def rem(a, b):
        a = trim(a)
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, x in enumerate(b):
                a[shift + i] = (a[shift + i] - c * x) % p
            a = trim(a)
        return a

    a, b = trim(f), trim(g)
    res = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * pow(b[0], da, p) % p
        r = rem(a, b)
        if not r:
            return 0
        dr = len(r) - 1
        # R(a, b) = (-1)^(da db) lc(b)^(da - dr) R(b, r)
        res = res * pow(b[-1], da - dr, p) % p
        if (da * db) % 2:
            res = -res % p
        a, b = b, r


def _squarefree_mod_p(f, p):
    df = [(i * c) % p for i, c in enumerate(f)][1:]
    while df and df[-1] == 0:
        df.pop()
    if not df:
        return False
    return _euclid_resultant_mod_p(f, df, p) != 0


def test_F_2_1_3_against_double_loop():
    p = 3
    total = 0
    for a in product(range(p), repeat=2):
        f = list(a) + [1]
        if not _squarefree_mod_p(f, p):
            continue
        for b in range(p):
            g = [b, 1]
            r = _euclid_resultant_mod_p(f, g, p)
            total += {0: 0, 1: 1, 2: -1}[r]
    chi = cs.Character.of_order(FqContext.of(3), 2)
    value = cs.character_sum(2, 1, chi).value
    assert value == total
    assert value == -6  # frozen from the double loop above


def test_F_1_1_vanishes():
    for q, d in ((3, 2), (4, 3), (5, 4), (7, 6), (9, 4)):
        chi = cs.Character.of_order(FqContext.of(q), d)
        assert cs.character_sum(1, 1, chi).value.is_zero()


def test_conjugate_character_gives_conjugate_sum():
    ctx = FqContext.of(7)
    chi = cs.Character.of_order(ctx, 3)
    a = cs.character_sum(2, 2, chi).value
    b = cs.character_sum(2, 2, chi.conjugate()).value
    assert b == a.conj()


def test_swap_law():
    for q, d in ((3, 2), (5, 4), (7, 3)):
        ctx = FqContext.of(q)
        chi = cs.Character.of_order(ctx, d)
        for n, m in ((1, 2), (2, 3), (1, 3)):
            if q ** (n + m) > 10 ** 5:
                continue
            lhs = cs.character_sum(m, n, chi).value
            rhs = cs.character_sum(n, m, chi).value * cs.char_eval(chi, ctx.neg(1)) ** (n * m)
            assert lhs == rhs


def test_trivial_pair_count():
    """Coprime square-free pairs counted by a direct gcd loop."""
    from fnconf.ffield import enumerate_monic_squarefree, poly_gcd

    ctx = FqContext.of(3)
    for n, m in ((1, 1), (2, 1), (2, 2)):
        direct = sum(
            1
            for f in enumerate_monic_squarefree(ctx, n)
            for g in enumerate_monic_squarefree(ctx, m)
            if poly_gcd(f, g).degree == 0
        )
        assert cs.coprime_pair_count(ctx, n, m) == direct


def test_budget_refusal():
    chi = cs.Character.of_order(FqContext.of(9), 2)
    with pytest.raises(cs.BudgetExceeded) as exc:
        cs.character_sum(4, 4, chi, budget=1000)
    assert exc.value.cost == 9 ** 8


def test_histogram_total():
    ctx = FqContext.of(5)
    hist = cs.resultant_histogram(ctx, 2, 2)
    assert sum(hist) == (25 - 5) ** 2


@pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")
@pytest.mark.parametrize("q,n,m", [(3, 3, 2), (4, 2, 2), (5, 2, 3), (9, 2, 1)])
def test_backends_agree(q, n, m):
    ctx = FqContext.of(q)
    p = ctx.characteristic
    out = {}
    old = kernels.get_backend()
    try:
        for name in ("numba", "numpy"):
            kernels.set_backend(name)
            Pn, Pm = monic_array(q, n), monic_array(q, m)
            mask_n = kernels.squarefree_mask(Pn, q, p, ctx.tables)
            mask_m = kernels.squarefree_mask(Pm, q, p, ctx.tables)
            out[name] = (mask_n.tolist(), kernels.resultant_histogram(Pn[mask_n], Pm[mask_m], q, ctx.tables).tolist())
    finally:
        kernels.set_backend(old)
    assert out["numba"] == out["numpy"]


def test_kernel_histogram_matches_python_oracle():
    from fnconf.ffield import enumerate_monic_squarefree, resultant_oracle

    ctx = FqContext.of(4)
    hist = [0] * 4
    for f in enumerate_monic_squarefree(ctx, 2):
        for g in enumerate_monic_squarefree(ctx, 2):
            hist[int(resultant_oracle(f, g))] += 1
    assert cs.resultant_histogram(ctx, 2, 2) == hist


def test_env_flag_selects_numpy_backend():
    import os
    import subprocess
    import sys

    env = dict(os.environ, FNCONF_PURE_NUMPY="1")
    code = "from fnconf import kernels, charsum as cs; from fnconf.ffield import FqContext; print(kernels.get_backend(), cs.character_sum(2, 1, cs.Character.of_order(FqContext.of(3), 2)).value)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True).stdout.split()
    assert out[0] == "numpy" and "-6" in " ".join(out[1:])
