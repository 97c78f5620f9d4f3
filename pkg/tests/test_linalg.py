from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fano_lines import linalg

small = st.integers(-5, 5)
square3 = st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3)


def test_rank_and_kernel():
    m = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert linalg.rank(m) == 2
    ker = linalg.kernel(m)
    assert len(ker) == 1
    assert linalg.matvec(m, ker[0]) == [0, 0, 0]


def test_singular_inverse():
    with pytest.raises(linalg.SingularMatrix):
        linalg.inv([[1, 2], [2, 4]])


def test_complete_basis():
    b = linalg.complete_basis([[1, 1, 0]], 3)
    assert b[0] == [1, 1, 0] or list(b[0]) == [1, 1, 0]
    assert linalg.rank(b) == 3


def test_primitive_integer():
    assert list(linalg.primitive_integer([Fraction(1, 2), Fraction(-3, 4), 0])) == [2, -3, 0]


@settings(max_examples=60, deadline=None)
@given(square3, square3)
def test_det_multiplicative(a, b):
    assert linalg.det(linalg.matmul(a, b)) == linalg.det(a) * linalg.det(b)


@settings(max_examples=60, deadline=None)
@given(square3)
def test_inverse_or_singular(a):
    if linalg.det(a):
        assert linalg.matmul(a, linalg.inv(a)) == linalg.identity(3)
    else:
        assert linalg.rank(a) < 3
        for v in linalg.kernel(a):
            assert not any(linalg.matvec(a, v))


@settings(max_examples=40, deadline=None)
@given(square3, st.lists(small, min_size=3, max_size=3))
def test_solve(a, b):
    if linalg.det(a):
        x = linalg.solve(a, b)
        assert linalg.matvec(a, x) == [Fraction(v) for v in b]
