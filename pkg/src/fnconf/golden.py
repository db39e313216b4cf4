"""Golden boundary matrices for small complexes (n + m <= 5).

Three parameter sets are stored: the untwisted integer complex ("Z"), the
quadratic local system p = -1 ("p2") and p = zeta_3 ("p3"), all with
q = u = s = 1.
"""

from __future__ import annotations

import os
from typing import Dict, List, Optional

from .exactalg import Cyclotomic
from .foxneuwirth import d_complex
from .matrix_io import complex_order, format_matrix, parse_matrix
from .shuffle import LocalSystemParams

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "golden")


def golden_params() -> Dict[str, Optional[LocalSystemParams]]:
    return {
        "Z": None,
        "p2": LocalSystemParams.make(p=-1),
        "p3": LocalSystemParams.make(p=Cyclotomic.zeta(3)),
    }


def golden_cases(max_total: int = 5):
    for total in range(1, max_total + 1):
        for m in range(0, total):
            yield total - m, m


def _expected_files(max_total: int = 5):
    """Yield (file name, matrix text) for every golden matrix."""
    for tag, params in golden_params().items():
        for n, m in golden_cases(max_total):
            cx = d_complex(n, m, params)
            order = complex_order(cx)
            for k in sorted(cx.boundaries):
                yield f"D_n{n}_m{m}_{tag}_d{k}.txt", cx.boundaries[k], order


def write_golden(directory: str = GOLDEN_DIR) -> int:
    os.makedirs(directory, exist_ok=True)
    count = 0
    for name, M, order in _expected_files():
        with open(os.path.join(directory, name), "w") as fh:
            fh.write(format_matrix(M, order))
        count += 1
    return count


def check_golden(directory: str = GOLDEN_DIR) -> List[str]:
    """Names of golden files that are missing, unreadable or differ from a fresh build."""
    failures = []
    for name, M, order in _expected_files():
        path = os.path.join(directory, name)
        try:
            with open(path) as fh:
                stored, stored_order = parse_matrix(fh.read())
        except (OSError, ValueError) as exc:
            failures.append(f"{name}: {exc}")
            continue
        if stored_order != order or (stored.rows, stored.cols) != (M.rows, M.cols) or stored.entries != M.entries:
            failures.append(f"{name}: content differs")
    return failures
