from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fano_lines.lines import (CHART_ORDER, Nonreduced, PluckerChart, ProjectiveLine, Reduced,
                              canonical_point, chart_equations, chart_equations_direct,
                              is_valid_scheme, line_in_Y, plucker_relations, random_length_two,
                              restrict_to_line, scheme_from_json, tangent_space)
from fano_lines.localmodel import adapt_frame
from fano_lines.poly import VARS, Poly

vec = st.lists(st.integers(-4, 4), min_size=6, max_size=6)


@settings(max_examples=60, deadline=None)
@given(vec, vec, st.integers(-3, 3).filter(bool), st.integers(-3, 3))
def test_line_is_independent_of_basis(a, b, s, t):
    from fano_lines import linalg

    if linalg.rank([a, b]) < 2:
        return
    L = ProjectiveLine(a, b)
    M = ProjectiveLine([s * x + t * y for x, y in zip(a, b)], b)
    assert L == M and hash(L) == hash(M)
    assert not any(plucker_relations(L.plucker))


def test_dependent_span_rejected():
    with pytest.raises(ValueError):
        ProjectiveLine((1, 2, 0, 0, 0, 0), (2, 4, 0, 0, 0, 0))


def test_line_json_round_trip():
    L = ProjectiveLine((0, 1, 2, 0, 0, 1), (1, 0, 0, Fraction(1, 2), 0, 0))
    assert ProjectiveLine.from_json(L.to_json()) == L


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=8, max_size=8))
def test_chart_round_trip(v):
    ch = PluckerChart(tuple(v[:4]), tuple(v[4:]))
    back = PluckerChart.of_line(ch.line())
    assert back is not None and [Fraction(c) for c in back.values()] == [Fraction(c) for c in v]


def test_line_outside_chart():
    assert PluckerChart.of_line(ProjectiveLine((0, 0, 1, 0, 0, 0), (0, 0, 0, 1, 0, 0))) is None


def test_chart_equations_agree_with_direct_restriction(n1, c1):
    for Y in (n1, c1):
        for s in Y.points[:3]:
            fr = adapt_frame(Y, s)
            assert chart_equations(fr.decomposition()) == chart_equations_direct(fr.F)


def test_chart_equations_biconditional_random(n1):
    fr = adapt_frame(n1, n1.points[1])
    eqs = chart_equations_direct(fr.F)
    rng = random.Random(3)
    for _ in range(30):
        p = [Fraction(rng.randint(-2, 2)) for _ in range(8)]
        local = not any(eqs[n].evaluate(p) for n in CHART_ORDER)
        direct = restrict_to_line(fr.F, PluckerChart(p[:4], p[4:]).line()).is_zero()
        assert local == direct


def test_node_lines_lie_in_Y(n1):
    for s in n1.points:
        assert line_in_Y(n1, ProjectiveLine((1, 0, 0, 0, 0, 0), s))
    x = Poly.gens(VARS)
    assert not restrict_to_line(x[1], ProjectiveLine((1, 0, 0, 0, 0, 0), n1.points[0])).is_zero()


def test_scheme_equality_ignores_representatives():
    a, b = (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0)
    assert Reduced(a, b) == Reduced([0, 0, 3, 0, 0, 0], [0, -2, 0, 0, 0, 0])
    assert Nonreduced(a, b) == Nonreduced([0, 2, 0, 0, 0, 0], [0, 5, 7, 0, 0, 0])
    assert Reduced(a, b) != Nonreduced(a, b)


def test_scheme_validation(n1):
    from fano_lines.linalg import dot

    xi = random_length_two(n1, 0, "nonreduced")
    assert is_valid_scheme(n1, xi)
    v = (0, 1, 1, 1, 1, 1)
    tangent = not dot(n1.q.gradient_at(list(xi.point)), v) and not dot(n1.k.gradient_at(list(xi.point)), v)
    assert is_valid_scheme(n1, Nonreduced(xi.point, v)) == tangent
    assert len(tangent_space(n1, xi.point)) == 3


def test_scheme_json_round_trip(n1):
    for seed in range(5):
        for variant in ("reduced", "nonreduced"):
            xi = random_length_two(n1, seed, variant)
            assert scheme_from_json(xi.to_json()) == xi
    with pytest.raises(ValueError):
        scheme_from_json({"variant": "triple"})


def test_reduced_needs_distinct_points():
    with pytest.raises(ValueError):
        Reduced((0, 1, 0, 0, 0, 0), (0, 2, 0, 0, 0, 0))


def test_canonical_point_scaling():
    assert canonical_point((0, 2, 4, 0, 0, 0)) == canonical_point((0, -1, -2, 0, 0, 0))
