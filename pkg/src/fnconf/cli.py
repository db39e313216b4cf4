"""Command line entry point.

Commands: charsum, homology, predict, verify, selftest.  Reports are JSON
(``schema: 1``, sorted keys) or CSV with the same flat rows.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget refusal.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
SCHEMA = 1
MAX_CELLS_ENV = "FNCONF_MAX_CELLS"


class UsageError(Exception):
    pass


class Refused(Exception):
    pass


# ---------------------------------------------------------------------------
# config parsing


def parse_range(text: str, name: str, lo: int = 0) -> List[int]:
    """'3', '1..4' or '2,3,5' -> sorted list of ints."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            vals = list(range(int(a), int(b) + 1))
        else:
            vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--{name}: cannot parse {text!r}")
    if not vals:
        raise UsageError(f"--{name}: empty range {text!r}")
    if min(vals) < lo:
        raise UsageError(f"--{name}: values must be >= {lo}")
    return sorted(set(vals))


@dataclass
class RunConfig:
    command: str
    n: List[int] = field(default_factory=list)
    m: List[int] = field(default_factory=list)
    q: Optional[int] = None
    orders: List[int] = field(default_factory=list)
    twist: int = 1
    params: Tuple[Tuple[int, int], ...] = ((1, 0), (1, 0), (1, 0), (1, 0))  # (order, exp) for p, q, u, s
    output: Optional[str] = None
    fmt: str = "json"
    budget: Optional[int] = None
    max_cells: Optional[int] = None
    threads: int = 1
    emit_matrices: Optional[str] = None

    def to_dict(self) -> dict:
        d = {
            "command": self.command,
            "n": self.n,
            "m": self.m,
        }
        if self.command == "charsum":
            d.update(q=self.q, orders=self.orders, twist=self.twist)
        else:
            d["params"] = {k: {"order": o, "exp": e} for k, (o, e) in zip(("p", "q", "u", "s"), self.params)}
        return d


def _local_params(pairs):
    from .shuffle import LocalSystemParams

    return LocalSystemParams.roots_of_unity(*pairs)


def _default_threads() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)


# ---------------------------------------------------------------------------
# output


def emit(cfg: RunConfig, rows: List[dict], extra: Optional[dict] = None) -> str:
    if cfg.fmt == "csv":
        keys = sorted({k for r in rows for k in r})
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v for k, v in r.items()})
        text = buf.getvalue()
    else:
        doc = {"schema": SCHEMA, "config": cfg.to_dict(), "rows": rows}
        doc.update(extra or {})
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return text


# ---------------------------------------------------------------------------
# charsum


def cmd_charsum(cfg: RunConfig) -> int:
    from . import charsum as cs
    from . import kernels
    from .ffield import FqContext, prime_power

    if prime_power(cfg.q) is None:
        raise UsageError(f"--q {cfg.q} is not a prime power")
    for d in cfg.orders:
        if d < 2:
            raise UsageError("--order must be >= 2 (the trivial character is excluded)")
        if (cfg.q - 1) % d:
            raise UsageError(f"--order {d} does not divide q - 1 = {cfg.q - 1}")
    if min(cfg.n) < 1 or min(cfg.m) < 1:
        raise UsageError("degrees must be positive")
    budget = cs.configured_budget(cfg.budget)
    worst = cfg.q ** (max(cfg.n) + max(cfg.m))
    if worst > budget:
        raise Refused(f"estimated cost {worst} resultant evaluations (q^(n+m) at n={max(cfg.n)}, m={max(cfg.m)}) exceeds budget {budget}")
    kernels.set_threads(cfg.threads)
    ctx = FqContext.of(cfg.q)
    rows, ok = [], True
    for n in cfg.n:
        for m in cfg.m:
            for d in cfg.orders:
                chi = cs.Character.of_order(ctx, d, cfg.twist)
                r = cs.character_sum(n, m, chi, budget)
                row = r.to_dict()
                row["exact_check"] = r.exact_check
                rows.append(row)
                ok = ok and r.within_bound and r.exact_check is not False
    emit(cfg, rows)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# homology


@lru_cache(maxsize=None)
def cell_count(n: int, m: int) -> int:
    """Total number of cells of D(n, m) over all degrees."""

    @lru_cache(maxsize=None)
    def count(total: int, fixed: int) -> int:
        # compositions of `total` with `fixed` marked columns, weighted by the choice of J
        if total == 0:
            return 1 if fixed == 0 else 0
        out = 0
        for a in range(1, total + 1):
            out += count(total - a, fixed)
            if fixed:
                out += a * count(total - a, fixed - 1)
        return out

    return count(n + m, m)


def default_max_cells() -> int:
    env = os.environ.get(MAX_CELLS_ENV)
    return int(env) if env else cell_count(5, 3)


def prediction_for(n: int, m: int, params):
    """Closed-form prediction when q = u = 1, or None when no closed form applies."""
    from .predict import punctured_dims_generic, punctured_dims_quadratic

    if m == 0 or not (params.q == 1 and params.u == 1):
        return None
    if params.p == -1:
        return punctured_dims_quadratic(n, m, 2)
    if params.p != 1:
        return punctured_dims_generic(n, m)
    return None


def homology_job(n: int, m: int, pairs, emit_dir: Optional[str] = None) -> dict:
    from .foxneuwirth import d_complex, homology_dims
    from .matrix_io import emit_complex
    from .qshuffle import compare_with_d, f_homology_dims

    params = _local_params(pairs)
    untwisted = params.is_trivial() and params.order == 1
    t = time.perf_counter()
    d_rep = homology_dims(n, m, None if untwisted else params)
    row = {"n": n, "m": m, "D": d_rep.to_dict()}
    if m >= 1:
        f_rep = f_homology_dims(n, m, params)
        row["F"] = f_rep.to_dict()
        row["matrices_equal"] = not compare_with_d(n, m, params)
        row["engines_agree"] = row["matrices_equal"] and f_rep.compact == d_rep.compact
    else:
        row["F"] = None
        row["matrices_equal"] = None
        row["engines_agree"] = True
    pred = prediction_for(n, m, params)
    if pred is None:
        row["prediction"] = None
        row["matches_prediction"] = None
    else:
        row["prediction"] = pred.to_dict()
        row["matches_prediction"] = all(d_rep.conf.get(j, 0) == pred.dims.get(j, 0) for j in range(0, 2 * n + 1))
    if emit_dir:
        cx = d_complex(n, m, None if untwisted else params)
        row["matrix_files"] = [os.path.basename(p) for p in emit_complex(cx, emit_dir, f"D_n{n}_m{m}")]
    row["seconds"] = round(time.perf_counter() - t, 3)
    return row


def _homology_rows(cfg: RunConfig) -> List[dict]:
    limit = cfg.max_cells if cfg.max_cells is not None else default_max_cells()
    jobs = [(n, m) for n in cfg.n for m in cfg.m]
    for n, m in jobs:
        if n < 1:
            raise UsageError("--n must be positive")
        cells = cell_count(n, m)
        if cells > limit:
            raise Refused(f"D({n},{m}) has {cells} cells, over the limit {limit} (raise with --max-cells)")
    if cfg.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.threads, len(jobs))) as pool:
            futs = [pool.submit(homology_job, n, m, cfg.params, cfg.emit_matrices) for n, m in jobs]
            rows = [f.result() for f in futs]
    else:
        rows = [homology_job(n, m, cfg.params, cfg.emit_matrices) for n, m in jobs]
    for r in rows:
        r.pop("seconds")  # keep reports byte-identical across runs
    return rows


def cmd_homology(cfg: RunConfig) -> int:
    rows = _homology_rows(cfg)
    emit(cfg, rows)
    return EXIT_OK if all(r["engines_agree"] for r in rows) else EXIT_FAIL


def cmd_verify(cfg: RunConfig) -> int:
    rows = _homology_rows(cfg)
    failures = []
    for r in rows:
        if not r["engines_agree"]:
            failures.append(f"n={r['n']} m={r['m']}: engines disagree")
        if r["matches_prediction"] is False:
            failures.append(f"n={r['n']} m={r['m']}: dims differ from prediction")
    emit(cfg, rows, {"failures": failures})
    for f in failures:
        print(f"FAIL {f}", file=sys.stderr)
    return EXIT_FAIL if failures else EXIT_OK


# ---------------------------------------------------------------------------
# predict


def cmd_predict(cfg: RunConfig) -> int:
    from .predict import average_bound, bound, mixed_vanishing_threshold

    params = _local_params(cfg.params)
    rows = []
    for n in cfg.n:
        for m in cfg.m:
            pred = prediction_for(n, m, params) if n >= 1 else None
            row = {"n": n, "m": m, "prediction": pred.to_dict() if pred else None}
            if cfg.q is not None and n >= 1 and m >= 1:
                row["charsum_bounds"] = {
                    str(d): {
                        "bound": bound(n, m, cfg.q, d),
                        "average_bound": average_bound(n, m, cfg.q, d),
                        "vanishing_threshold": mixed_vanishing_threshold(n, m, d),
                    }
                    for d in cfg.orders or [2]
                }
            rows.append(row)
    emit(cfg, rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# selftest


def cmd_selftest(args) -> int:
    from .acceptance import run_all
    from .golden import GOLDEN_DIR, write_golden

    if args.write_golden:
        count = write_golden(args.golden_dir or GOLDEN_DIR)
        print(f"wrote {count} golden matrices")
        return EXIT_OK
    ok = True
    for r in run_all(fast=args.fast, golden_dir=args.golden_dir):
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.key:>6} {r.title} ({r.seconds:.2f}s): {r.detail}")
        ok = ok and r.passed
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(p, need_q=False):
    p.add_argument("--n", default="1..3", help="degree range, e.g. 3, 1..4 or 2,5")
    p.add_argument("--m", default="1..2", help="puncture / second-degree range")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")
    p.add_argument("--threads", type=int, default=None, help="worker count (default: available cores)")


def _add_params(p):
    for name, what in (("p", "winding around a puncture"), ("q", "free-free crossing"), ("u", "fixed-fixed crossing"), ("s", "mixed braiding rescaling")):
        p.add_argument(f"--{name}-order", type=int, default=1, help=f"root-of-unity order for {what}")
        p.add_argument(f"--{name}-exp", type=int, default=None, help="exponent (default 1 if order > 1)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fnconf", description="Twisted homology of punctured-plane configuration spaces and resultant character sums.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("charsum", help="brute-force character sums over square-free pairs")
    _add_common(p)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--order", default="2", help="character orders d, each dividing q - 1")
    p.add_argument("--twist", type=int, default=1, help="Galois twist of the character")
    p.add_argument("--budget", type=int, default=None, help="max q^(n+m) resultant evaluations")

    for name, hlp in (("homology", "homology from both chain-complex engines"), ("verify", "homology plus a check against the closed forms")):
        p = sub.add_parser(name, help=hlp)
        _add_common(p)
        _add_params(p)
        p.add_argument("--max-cells", type=int, default=None, help="refuse complexes with more cells than this")
        p.add_argument("--emit-matrices", metavar="DIR", default=None, help="dump boundary matrices as sparse triples")

    p = sub.add_parser("predict", help="closed-form dimensions and bounds")
    _add_common(p)
    _add_params(p)
    p.add_argument("--q", type=int, default=None, help="field size for the character-sum bounds")
    p.add_argument("--order", default="", help="character orders for the bounds")

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--fast", action="store_true", help="restrict homology checks to n + m <= 5")
    p.add_argument("--golden-dir", default=None)
    p.add_argument("--write-golden", action="store_true", help="regenerate the golden matrices and exit")
    return ap


def _params_from(args) -> Tuple[Tuple[int, int], ...]:
    out = []
    for name in "pqus":
        order = getattr(args, f"{name}_order")
        exp = getattr(args, f"{name}_exp")
        if order < 1:
            raise UsageError(f"--{name}-order must be >= 1")
        if exp is None:
            exp = 1 if order > 1 else 0
        out.append((order, exp % order))
    return tuple(out)


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(args.command)
    cfg.n = parse_range(args.n, "n", lo=0)
    cfg.m = parse_range(args.m, "m", lo=0)
    cfg.fmt = args.format
    cfg.output = args.output
    threads = args.threads if args.threads is not None else _default_threads()
    if threads < 1:
        raise UsageError("--threads must be positive")
    cfg.threads = threads
    if args.command == "charsum":
        cfg.q = args.q
        cfg.orders = parse_range(args.order, "order", lo=0)
        cfg.twist = args.twist
        cfg.budget = args.budget
    else:
        cfg.params = _params_from(args)
    if args.command in ("homology", "verify"):
        cfg.max_cells = args.max_cells
        cfg.emit_matrices = args.emit_matrices
    if args.command == "predict":
        cfg.q = args.q
        cfg.orders = parse_range(args.order, "order", lo=2) if args.order else []
    return cfg


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "selftest":
            return cmd_selftest(args)
        cfg = config_from_args(args)
        handler = {"charsum": cmd_charsum, "homology": cmd_homology, "verify": cmd_verify, "predict": cmd_predict}[cfg.command]
        return handler(cfg)
    except UsageError as exc:
        print(f"fnconf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Refused as exc:
        print(f"fnconf: refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"fnconf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
