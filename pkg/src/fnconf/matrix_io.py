"""Sparse triple text format for boundary matrices.

    rows cols order_d
    row col coeff_0 ... coeff_{phi(d)-1}

One line per nonzero entry, sorted by (row, col), 0-based indices.  Each
coefficient is a rational written ``num/den`` (or just ``num`` when the
denominator is 1); the entry is sum_k coeff_k zeta_d^k.  Integer matrices use
order_d = 1 with a single coefficient.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Dict, List, Tuple

from .exactalg import Cyclotomic, SparseMatrix, euler_phi
from .foxneuwirth import ChainComplex


def _coeffs(v, order: int) -> Tuple[Fraction, ...]:
    if isinstance(v, Cyclotomic):
        return (v if v.order == order else v.lift(order)).coeffs
    return (Fraction(v),) + (Fraction(0),) * (euler_phi(order) - 1)


def format_matrix(M: SparseMatrix, order: int = 1) -> str:
    lines = [f"{M.rows} {M.cols} {order}"]
    for (r, c) in sorted(M.entries):
        vals = " ".join(str(x) for x in _coeffs(M.entries[(r, c)], order))
        lines.append(f"{r} {c} {vals}")
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> Tuple[SparseMatrix, int]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix file")
    rows, cols, order = (int(x) for x in lines[0].split())
    phi = euler_phi(order)
    entries: Dict[Tuple[int, int], object] = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2 + phi:
            raise ValueError(f"expected {phi} coefficients: {ln!r}")
        r, c = int(parts[0]), int(parts[1])
        vals = [Fraction(x) for x in parts[2:]]
        entries[(r, c)] = vals[0] if order == 1 else Cyclotomic(order, vals)
        if order == 1 and vals[0].denominator == 1:
            entries[(r, c)] = int(vals[0])
    return SparseMatrix(rows, cols, entries), order


def write_matrix(M: SparseMatrix, path: str, order: int = 1) -> None:
    with open(path, "w") as fh:
        fh.write(format_matrix(M, order))


def read_matrix(path: str) -> Tuple[SparseMatrix, int]:
    with open(path) as fh:
        return parse_matrix(fh.read())


def complex_order(cx: ChainComplex) -> int:
    return 1 if cx.scalar == "Z" else int(cx.scalar)


def emit_complex(cx: ChainComplex, directory: str, prefix: str) -> List[str]:
    """Write every boundary matrix of ``cx`` as ``{prefix}_d{k}.txt``; returns the paths."""
    os.makedirs(directory, exist_ok=True)
    order = complex_order(cx)
    paths = []
    for k in sorted(cx.boundaries):
        path = os.path.join(directory, f"{prefix}_d{k}.txt")
        write_matrix(cx.boundaries[k], path, order)
        paths.append(path)
    return paths
