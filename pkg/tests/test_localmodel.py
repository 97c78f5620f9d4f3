from __future__ import annotations

import random
from fractions import Fraction

import pytest

from fano_lines import linalg
from fano_lines.lines import CHART_ORDER
from fano_lines.localmodel import (AdaptedModel, InvariantViolation, adapt_frame,
                                   blowup_chart_equations, blowup_pullback,
                                   classify_transversal_type, exceptional_fibre,
                                   expected_jacobian_pattern, fibre_pair, jacobian_at_center,
                                   local_equations, same_up_to_unit)
from fano_lines.poly import VARS, Poly


def test_frame_is_adapted(n1, c1):
    for Y in (n1, c1):
        for s in Y.points:
            fr = adapt_frame(Y, s)
            T = fr.transform
            assert [row[0] for row in T] == [1, 0, 0, 0, 0, 0]
            assert linalg.det(T) != 0
            d = fr.decomposition()
            assert d.h1.homogeneous_degree() == 1 and d.h2.homogeneous_degree() == 1
            assert linalg.rank([[d.h1.coefficient(tuple(int(i == j) for i in range(6))) for j in range(6)],
                                [d.h2.coefficient(tuple(int(i == j) for i in range(6))) for j in range(6)]]) == 2


def test_frame_rejects_points_off_sigma(n1):
    with pytest.raises(ValueError):
        adapt_frame(n1, (0, 1, 1, 1, 1, 1))


def test_cusp_frame_keeps_vertex(c1):
    for s in c1.points:
        fr = adapt_frame(c1, s)
        assert [row[5] for row in fr.transform] == [0, 0, 0, 0, 0, 1]
        assert not fr.q.involves("x5")


def test_jacobian_rank_three_with_pattern(n1, c1):
    for Y in (n1, c1):
        for s in Y.points[:5]:
            fr = adapt_frame(Y, s)
            J = jacobian_at_center(fr)
            assert linalg.rank(J) == 3
            assert J == expected_jacobian_pattern(fr)
            assert not any(J[0])


def test_transversal_types(n1, n2, c1, c2):
    for Y, want, r in ((n1, "A1", 3), (n2, "A1", 3), (c1, "A2", 2), (c2, "A2", 2)):
        for s in Y.points[:3]:
            v = classify_transversal_type(adapt_frame(Y, s))
            assert v.type == want and v.witness["rank"] == r
            if want == "A2":
                assert not v.witness["p12_linear_term"]
                assert v.witness["p15_cubed"]


def test_reduced_quadratic_part_is_q1_on_ker_h1(n1):
    v = classify_transversal_type(adapt_frame(n1, n1.points[2]))
    assert v.witness["q1_on_ker_h1_rank"] == v.witness["rank"]


def test_blowup_equations_match_pullback(n1, c1):
    rng = random.Random(0)
    for Y in (n1, c1):
        fr = adapt_frame(Y, Y.points[1])
        pull = blowup_pullback(local_equations(fr))
        blow = blowup_chart_equations(fr)
        for name in CHART_ORDER:
            assert pull[name] == blow[name]
        for _ in range(10):
            v = [Fraction(rng.randint(-4, 4)) for _ in range(8)]
            assert all(pull[n].evaluate(v) == blow[n].evaluate(v) for n in CHART_ORDER)


def test_exceptional_fibre_is_h1_q1(n1, c1):
    for Y in (n1, c1):
        fr = adapt_frame(Y, Y.points[0])
        e30, e21 = exceptional_fibre(fr)
        h1, q1 = fibre_pair(fr)
        assert same_up_to_unit(e30, q1) and same_up_to_unit(e21, h1)


def test_same_up_to_unit():
    x, y = Poly.gens(("x", "y"))
    assert same_up_to_unit(x + y, 3 * x + 3 * y)
    assert not same_up_to_unit(x + y, x - y)


def test_normal_form_model():
    x = Poly.gens(VARS)
    q = x[1] * x[2] + x[3] * x[3] + x[4] * x[4] + x[5] * x[5]
    k = x[1] * x[1] * x[3] + x[2] ** 3 + x[4] ** 3 + x[5] ** 3
    m = AdaptedModel(q, k)
    d = m.decomposition()
    assert d.h1 == x[2] and d.h2 == x[3]
    v = classify_transversal_type(m)
    assert v.type == "A1"


def test_dependent_h1_h2_rejected():
    x = Poly.gens(VARS)
    q = x[1] * x[2] + x[3] * x[3] + x[4] * x[4] + x[5] * x[5]
    k = x[1] * x[1] * x[2] + x[3] ** 3 + x[4] ** 3 + x[5] ** 3
    with pytest.raises(InvariantViolation):
        jacobian_at_center(AdaptedModel(q, k))
