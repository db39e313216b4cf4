from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from fnconf.exactalg import Cyclotomic, SparseMatrix
from fnconf.foxneuwirth import d_complex
from fnconf.matrix_io import emit_complex, format_matrix, parse_matrix, read_matrix
from fnconf.shuffle import LocalSystemParams


def test_format_example():
    M = SparseMatrix(2, 3, {(0, 1): 1, (1, 2): -2})
    assert format_matrix(M) == "2 3 1\n0 1 1\n1 2 -2\n"


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 5)), st.fractions(max_denominator=7).filter(lambda x: x != 0), max_size=10))
def test_rational_round_trip(entries):
    M = SparseMatrix(5, 6, entries)
    back, order = parse_matrix(format_matrix(M))
    assert order == 1 and (back.rows, back.cols) == (5, 6)
    assert {k: Fraction(v) for k, v in back.entries.items()} == entries


def test_cyclotomic_round_trip(tmp_path):
    z = Cyclotomic.zeta(5)
    M = SparseMatrix(2, 2, {(0, 0): z, (1, 1): z * z - Fraction(1, 2)})
    back, order = parse_matrix(format_matrix(M, 5))
    assert order == 5 and back.entries == M.entries
    cx = d_complex(2, 1, LocalSystemParams.make(p=Cyclotomic.zeta(3)))
    paths = emit_complex(cx, str(tmp_path), "D")
    assert len(paths) == len(cx.boundaries)
    for k, path in zip(sorted(cx.boundaries), paths):
        M, _ = read_matrix(path)
        assert M.entries == cx.boundaries[k].entries
