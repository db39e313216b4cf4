"""End-to-end checks run by ``fnconf selftest``.

Each check raises ``CheckFailed`` with a short reason or returns a one-line
summary.  ``fast=True`` restricts the homology checks to n + m <= 5.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, List, Optional

from . import charsum as cs
from .exactalg import Cyclotomic, gaussian_binomial
from .ffield import FqContext, monic_array
from .foxneuwirth import boundary_twisted, boundary_untwisted, d_complex, enumerate_cells, homology_dims
from .golden import GOLDEN_DIR, check_golden
from .predict import (
    composition_count_bruteforce,
    composition_count_P,
    punctured_dims_generic,
    punctured_dims_quadratic,
)
from .qshuffle import compare_with_d, f_homology_dims, right_mul, right_mul_closed, right_mul_closed_terms
from .shuffle import (
    LocalSystemParams,
    c_hj,
    c_pq,
    enumerate_h_j_shuffles,
    enumerate_shuffles,
    filter_h_j_shuffles,
)
from . import kernels


class CheckFailed(AssertionError):
    pass


def _require(cond, msg):
    if not cond:
        raise CheckFailed(msg)


def twisted_sets() -> List[LocalSystemParams]:
    """(p, q, u) = (-1, 1, 1), (zeta_3, 1, 1), (zeta_4, 1, 1)."""
    return [
        LocalSystemParams.make(p=-1),
        LocalSystemParams.make(p=Cyclotomic.zeta(3)),
        LocalSystemParams.make(p=Cyclotomic.zeta(4)),
    ]


def _pairs(max_n, max_m, min_m=0, max_total=None):
    for n in range(1, max_n + 1):
        for m in range(min_m, max_m + 1):
            if max_total is None or n + m <= max_total:
                yield n, m


def check_differential(fast=False):
    cap = 5 if fast else 7
    count = 0
    for total in range(1, cap + 1):
        for m in range(0, total):
            _require(d_complex(total - m, m).d_squared_is_zero(), f"untwisted d^2 != 0 at n={total - m}, m={m}")
            count += 1
    for P in twisted_sets():
        for n, m in _pairs(5, 3, max_total=5 if fast else None):
            _require(d_complex(n, m, P).d_squared_is_zero(), f"twisted d^2 != 0 at n={n}, m={m}, p={P.p}")
            count += 1
    return f"{count} complexes"


def check_shuffle_constants(fast=False):
    for total in range(0, 11):
        for p in range(total + 1):
            q = total - p
            enum = sum(g.sign() for g in enumerate_shuffles(p, q))
            _require(enum == gaussian_binomial(p + q, q).evaluate(-1), f"c_{p},{q}")
    fams = 0
    for total in range(0, 9):
        for p in range(total + 1):
            q = total - p
            for kind, hmax, jmax in (("right", q, p), ("left", p, q)):
                for h in range(hmax + 1):
                    for j in range(jmax):
                        a = [g.placement for g in enumerate_h_j_shuffles(kind, p, q, h, j)]
                        b = [g.placement for g in filter_h_j_shuffles(kind, p, q, h, j)]
                        _require(a == b, f"{kind} family p={p} q={q} h={h} j={j}")
                        fams += 1
    return f"{fams} h,j families"


def check_two_engines(fast=False):
    count = 0
    for P in twisted_sets():
        for n, m in _pairs(4, 2, min_m=1, max_total=5 if fast else None):
            problems = compare_with_d(n, m, P)
            _require(not problems, f"n={n} m={m} p={P.p}: {problems[:2]}")
            count += 1
    return f"{count} complex pairs equal"


def _check_dims(report, prediction, label):
    for j in range(0, 2 * report.n + 1):
        got = report.conf.get(j, 0)
        want = prediction.dims.get(j, 0)
        _require(got == want, f"{label}: H_{j} = {got}, predicted {want}")


def check_quadratic(fast=False):
    P = LocalSystemParams.make(p=-1)
    count = 0
    problems = []
    for n, m in _pairs(5, 3, min_m=1, max_total=5 if fast else None):
        for arg in (n + m + 1, n + m - 1):
            _require(composition_count_P(arg, 2, m) == composition_count_bruteforce(arg, 2, m), f"P({arg}) m={m}")
        pred = punctured_dims_quadratic(n, m, 2)
        for engine, rep in (("D", homology_dims(n, m, P)), ("F", f_homology_dims(n, m, P))):
            try:
                _check_dims(rep, pred, f"{engine} n={n} m={m}")
            except CheckFailed as exc:
                problems.append(str(exc))
        count += 1
    _require(not problems, "; ".join(problems))
    return f"{count} (n, m) cases, both engines"


def check_generic(fast=False):
    count = 0
    for d in (3, 4):
        P = LocalSystemParams.make(p=Cyclotomic.zeta(d))
        for n, m in _pairs(5, 3, min_m=1, max_total=5 if fast else None):
            pred = punctured_dims_generic(n, m)
            _check_dims(homology_dims(n, m, P), pred, f"D n={n} m={m} d={d}")
            _check_dims(f_homology_dims(n, m, P), pred, f"F n={n} m={m} d={d}")
            count += 1
    return f"{count} cases"


def closed_form_sets() -> List[LocalSystemParams]:
    return [
        LocalSystemParams.make(p=-1),
        LocalSystemParams.make(p=Cyclotomic.zeta(3), s=2),
        LocalSystemParams.make(p=Cyclotomic.zeta(5), q=Cyclotomic.zeta(5, 2), u=Cyclotomic.zeta(5, 3), s=Cyclotomic.zeta(5)),
    ]


def check_closed_form(fast=False):
    for P in closed_form_sets():
        for n in range(1, 7):
            for m in range(0, 5):
                _require(right_mul((n, n), m, P) == right_mul_closed(n, m, P), f"y_{n} x_{m} at p={P.p}")
    quad = LocalSystemParams.make(p=-1)  # p = -q with q = 1, r = 2
    for n in range(1, 9):
        lead = right_mul_closed_terms(n, 1, quad)[1]
        _require(lead.is_zero() == (n % 2 == 0), f"vanishing criterion at n={n}")
        enum = right_mul((n, n), 1, quad).get((n + 1, n + 1))
        _require((enum is None) == (n % 2 == 0), f"enumerated top coefficient at n={n}")
    return "closed form = enumeration; vanishing iff 2 | n"


def charsum_cases(max_cost=10 ** 6):
    for q in (3, 4, 5, 7, 9):
        for d in range(2, 7):
            if (q - 1) % d:
                continue
            for n in range(1, 20):
                for m in range(1, 20):
                    if q ** (n + m) <= max_cost:
                        yield q, d, n, m


def check_charsum(fast=False):
    max_cost = 10 ** 5 if fast else 10 ** 6
    count = 0
    for q, d, n, m in charsum_cases(max_cost):
        chi = cs.Character.of_order(FqContext.of(q), d)
        r = cs.character_sum(n, m, chi)
        _require(r.within_bound and r.exact_check is not False, f"bound fails q={q} d={d} n={n} m={m}")
        if n == m == 1:
            _require(r.value.is_zero(), f"F(1,1,{q}) != 0 for d={d}")
        if n < m:
            other = cs.character_sum(m, n, chi).value
            sign = cs.char_eval(chi, FqContext.of(q).neg(1)) ** (n * m)
            _require(other == sign * r.value, f"swap law q={q} d={d} n={n} m={m}")
        count += 1
    return f"{count} sums within bound"


def check_squarefree(fast=False):
    for q in (3, 5, 7):
        ctx = FqContext.of(q)
        for n in range(2, 7):
            got = len(cs.squarefree_array(q, n))
            _require(got == q ** n - q ** (n - 1), f"q={q} n={n}: {got}")
    return "counts match q^n - q^(n-1)"


def check_untwisted(fast=False):
    for n in (2, 3):
        for m in (1, 2):
            r = homology_dims(n, m)
            _require(r.conf[1] == m + 1 and not r.conf_torsion[1], f"H_1 at n={n} m={m}: {r.conf[1]}")
        r = homology_dims(n, 0)
        _require(r.conf[0] == 1 and r.conf[1] == 1, f"Conf_{n}(C): {r.conf}")
        _require(not r.conf_torsion[0] and not r.conf_torsion[1], f"Conf_{n}(C) torsion {r.conf_torsion}")
    return "H_1 ranks m+1; Conf_n(C) H_0 = H_1 = Z"


def check_invariance(fast=False):
    for base in twisted_sets():
        for n, m in _pairs(4, 2, min_m=1, max_total=5 if fast else None):
            ref = homology_dims(n, m, base).compact
            for s in (-1, 2):
                P = LocalSystemParams.make(p=base.p, s=s)
                _require(homology_dims(n, m, P).compact == ref, f"D dims change with s={s} n={n} m={m}")
                _require(f_homology_dims(n, m, P).compact == ref, f"F dims change with s={s} n={n} m={m}")
    trivial = LocalSystemParams.make()
    for total in range(1, (5 if fast else 7) + 1):
        for m in range(0, total):
            for dim in range(total - m, 2 * (total - m) + 1):
                for c in enumerate_cells(total - m, m, dim):
                    _require(boundary_twisted(c, trivial) == boundary_untwisted(c), f"trivial twist differs at {c}")
    return "dims invariant under s; trivial twist = untwisted"


@dataclass
class CheckResult:
    key: str
    title: str
    passed: bool
    detail: str
    seconds: float


CRITERIA: List[tuple] = [
    ("1", "differential squares to zero", check_differential),
    ("2", "shuffle constants", check_shuffle_constants),
    ("3", "two-engine matrix equality", check_two_engines),
    ("4", "quadratic-case homology", check_quadratic),
    ("5", "generic-case homology", check_generic),
    ("6", "closed right-multiplication formula", check_closed_form),
    ("7", "character-sum bound", check_charsum),
    ("8", "square-free counts", check_squarefree),
    ("9", "untwisted regressions", check_untwisted),
    ("10", "parameter invariance", check_invariance),
]


def run_check(key: str, title: str, fn: Callable, fast: bool) -> CheckResult:
    t = time.perf_counter()
    try:
        detail = fn(fast)
        ok = True
    except CheckFailed as exc:
        detail, ok = str(exc), False
    return CheckResult(key, title, ok, detail, time.perf_counter() - t)


def run_all(fast: bool = False, golden_dir: Optional[str] = None) -> List[CheckResult]:
    results = [run_check(k, t, f, fast) for k, t, f in CRITERIA]
    t = time.perf_counter()
    failures = check_golden(golden_dir or GOLDEN_DIR)
    detail = "all golden matrices match" if not failures else "; ".join(failures[:5])
    results.append(CheckResult("golden", "golden matrix files", not failures, detail, time.perf_counter() - t))
    return results
