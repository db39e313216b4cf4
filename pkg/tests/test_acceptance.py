"""Acceptance criteria 1-10, one test each, full (non-fast) sizes.

Each test prints a single PASS/FAIL line.  Tolerances: exact everywhere
except the character-sum bound, which uses 1e-9 slack (plus the exact
squared comparison when sqrt(q) is an integer).
"""

import pytest

from fnconf.acceptance import CRITERIA, run_check
from fnconf.golden import GOLDEN_DIR, check_golden

BY_KEY = {key: (title, fn) for key, title, fn in CRITERIA}


def _run(key):
    title, fn = BY_KEY[key]
    r = run_check(key, title, fn, fast=False)
    print(f"criterion {key:>2} [{'PASS' if r.passed else 'FAIL'}] {title} ({r.seconds:.2f}s): {r.detail}")
    assert r.passed, r.detail


def test_criterion_01_differential_soundness():
    _run("1")


def test_criterion_02_shuffle_constants():
    _run("2")


def test_criterion_03_two_engine_equality():
    _run("3")


def test_criterion_04_quadratic_case_dims():
    _run("4")


def test_criterion_05_generic_case_dims():
    _run("5")


def test_criterion_06_closed_right_multiplication():
    _run("6")


def test_criterion_07_character_sum_bound():
    _run("7")


def test_criterion_08_squarefree_counts():
    _run("8")


def test_criterion_09_untwisted_regressions():
    _run("9")


def test_criterion_10_parameter_invariance():
    _run("10")


def test_golden_matrices():
    failures = check_golden(GOLDEN_DIR)
    print(f"golden [{'PASS' if not failures else 'FAIL'}] {len(failures)} mismatching files")
    assert not failures
