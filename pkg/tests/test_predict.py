import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fnconf.predict import (
    average_bound,
    binom_ext,
    bound,
    bound_exact,
    composition_count_bruteforce,
    composition_count_P,
    mixed_vanishing_threshold,
    punctured_dims_generic,
    punctured_dims_quadratic,
    within_bound_exact,
)


def test_binom_conventions():
    assert binom_ext(-1, -1) == 1
    assert binom_ext(0, -1) == 0
    assert binom_ext(2, 3) == 0
    assert binom_ext(5, 2) == 10


def test_P_examples():
    assert composition_count_P(5, 2, 2) == 2
    assert composition_count_bruteforce(5, 2, 2) == 2
    for m in (2, 3, 4):
        assert composition_count_P(0, 2, m) == 0
    for n in range(2, 9):
        assert composition_count_P(n, 2, 2) == composition_count_bruteforce(n, 2, 2)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 14), st.integers(2, 4), st.integers(1, 4))
def test_P_matches_enumeration(n, r, m):
    assert composition_count_P(n, r, m) == composition_count_bruteforce(n, r, m)
    assert composition_count_P(n, r, m, reading="shifted") == composition_count_bruteforce(n, r, m, min_last=0)


def test_quadratic_prediction_shape():
    for n in range(1, 7):
        for m in range(1, 4):
            rep = punctured_dims_quadratic(n, m, 2)
            assert all(v == 0 for j, v in rep.dims.items() if j <= n - 2)
            assert all(j <= n for j in rep.dims)
            assert rep.vanishing_threshold == n - 2
    rep = punctured_dims_quadratic(3, 1, 2)
    assert rep.dims[3] == composition_count_P(5, 2, 1) == 0
    with pytest.raises(ValueError):
        punctured_dims_quadratic(3, 1, 1)


def test_generic_prediction():
    for n in range(1, 7):
        assert punctured_dims_generic(n, 2).dims[n] == 1
    assert punctured_dims_generic(2, 3).dims[2] == 3
    assert punctured_dims_generic(3, 1).dims[3] == 0


def test_vanishing_threshold():
    assert mixed_vanishing_threshold(3, 5, 2) == 3
    assert mixed_vanishing_threshold(3, 5, 3) == 4
    assert mixed_vanishing_threshold(1, 1, 2) == -1


def test_bound_examples():
    assert bound(1, 1, 9, 2) == pytest.approx(968)
    assert bound(1, 1, 9, 3) == pytest.approx(320)
    assert bound_exact(1, 1, 9, 2) == 968
    assert bound_exact(1, 1, 3, 2) is None
    assert within_bound_exact(Fraction(968 ** 2), 1, 1, 9, 2) is True
    assert within_bound_exact(Fraction(968 ** 2 + 1), 1, 1, 9, 2) is False


def test_bound_monotone_in_q():
    for n in range(1, 4):
        for m in range(1, 4):
            for d in (2, 3):
                vals = [bound(n, m, q, d) for q in (4, 9, 16, 25)]
                assert vals == sorted(vals)


def test_average_bound():
    for q in (3, 4, 9, 256):
        assert average_bound(1, 1, q, 2) == pytest.approx(128)
    for q in (16, 25, 256):
        for m in (1, 2, 3):
            vals = [average_bound(n, m, q, 2) for n in range(m, 30)]
            assert all(b <= a * (1 + 1e-12) for a, b in zip(vals, vals[1:]))
    assert average_bound(60, 1, 2 ** 8 + 1, 2) < 1e-3
